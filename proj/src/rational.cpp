#include "holozero/rational.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace holozero {

BarycentricRational::BarycentricRational(std::vector<cplx> support, std::vector<cplx> values,
                                         std::vector<cplx> weights)
    : support_(std::move(support)), values_(std::move(values)), weights_(std::move(weights)) {
  if (support_.empty() || support_.size() != values_.size() ||
      support_.size() != weights_.size()) {
    throw std::invalid_argument("barycentric rational needs m >= 1 equal-length arrays");
  }
  for (std::size_t i = 0; i < support_.size(); ++i) {
    for (std::size_t j = i + 1; j < support_.size(); ++j) {
      if (support_[i] == support_[j]) {
        throw std::invalid_argument("barycentric support points must be distinct");
      }
    }
  }
}

cplx BarycentricRational::operator()(cplx z) const {
  cplx num{};
  cplx den{};
  for (std::size_t j = 0; j < support_.size(); ++j) {
    const cplx diff = z - support_[j];
    if (diff == cplx{}) return values_[j];
    const cplx c = weights_[j] / diff;
    num += c * values_[j];
    den += c;
  }
  return num / den;
}

cplx BarycentricRational::residue(cplx a) const {
  cplx num{};
  cplx dden{};
  for (std::size_t j = 0; j < support_.size(); ++j) {
    const cplx diff = a - support_[j];
    num += weights_[j] * values_[j] / diff;
    dden -= weights_[j] / (diff * diff);
  }
  return num / dden;
}

std::vector<cplx> arrowhead_eigenvalues(std::span<const cplx> support,
                                        std::span<const cplx> top_row) {
  const auto m = static_cast<lapack_int>(support.size());
  if (m < 2) return {};
  const lapack_int n = m + 1;
  std::vector<cplx> a(static_cast<std::size_t>(n * n), cplx{});
  std::vector<cplx> b(static_cast<std::size_t>(n * n), cplx{});
  auto idx = [n](lapack_int i, lapack_int j) { return static_cast<std::size_t>(i + j * n); };
  for (lapack_int j = 0; j < m; ++j) {
    const cplx c = top_row[static_cast<std::size_t>(j)];
    const cplx z = support[static_cast<std::size_t>(j)];
    a[idx(0, j + 1)] = c;
    a[idx(j + 1, 0)] = 1.0;
    a[idx(j + 1, j + 1)] = z;
    b[idx(j + 1, j + 1)] = 1.0;
  }
  std::vector<cplx> alpha(static_cast<std::size_t>(n));
  std::vector<cplx> beta(static_cast<std::size_t>(n));
  const lapack_int info =
      LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, b.data(), n, alpha.data(),
                    beta.data(), nullptr, 1, nullptr, 1);
  if (info != 0) {
    throw EigenSolveError("zggev failed with info = " + std::to_string(info));
  }

  double scale = 0.0;
  for (const cplx& z : support) scale = std::max(scale, std::abs(z));
  const double limit = 1e13 * std::max(scale, 1.0);

  std::vector<cplx> out;
  for (lapack_int k = 0; k < n; ++k) {
    const cplx al = alpha[static_cast<std::size_t>(k)];
    const cplx be = beta[static_cast<std::size_t>(k)];
    if (be == cplx{}) continue;
    const cplx lambda = al / be;
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) continue;
    if (std::abs(lambda) > limit) continue;
    out.push_back(lambda);
  }
  return out;
}

std::vector<PoleInfo> BarycentricRational::poles() const {
  std::vector<PoleInfo> out;
  for (const cplx& a : arrowhead_eigenvalues(support_, weights_)) {
    out.push_back({a, residue(a)});
  }
  return out;
}

std::vector<cplx> BarycentricRational::zeros() const {
  std::vector<cplx> top(support_.size());
  for (std::size_t j = 0; j < support_.size(); ++j) top[j] = weights_[j] * values_[j];
  return arrowhead_eigenvalues(support_, top);
}

}  // namespace holozero
