#include "holozero/baseline.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace holozero {

cplx EquivalentPolynomial::operator()(cplx z) const {
  cplx acc{1.0, 0.0};
  for (const cplx& c : sigma) acc = acc * z + c;
  return acc;
}

MomentVector moments(const FunctionHandle& fh, const Rectangle& r, int N, const QuadConfig& cfg) {
  const auto dim = static_cast<std::size_t>(N + 1);
  const VectorIntegrand g = [&fh](cplx z, std::span<cplx> out) {
    cplx power = fh.log_derivative(z);
    for (cplx& v : out) {
      v = power;
      power *= z;
    }
  };
  MomentVector m;
  m.s.assign(dim, cplx{});
  for (const Edge& e : r.edges()) {
    const VectorQuadResult q = gk_integrate_edge(g, dim, e, cfg);
    if (!q.converged) throw MomentError("moment quadrature did not converge on an edge");
    for (std::size_t k = 0; k < dim; ++k) m.s[k] += q.values[k];
  }
  const cplx two_pi_i(0.0, 2.0 * std::numbers::pi);
  for (cplx& v : m.s) v /= two_pi_i;
  const double n0 = std::round(m.s[0].real());
  if (std::abs(m.s[0] - n0) >= cfg.integer_tol || n0 < 0.0) {
    throw MomentError("zeroth moment is not a nonnegative integer");
  }
  m.s[0] = n0;
  return m;
}

EquivalentPolynomial newton_identities(const MomentVector& s) {
  const int n = s.count();
  if (n > 0 && static_cast<std::size_t>(n) + 1 > s.s.size()) {
    throw MomentError("need moments s_1..s_N for N = s_0");
  }
  EquivalentPolynomial p;
  p.sigma.assign(static_cast<std::size_t>(n), cplx{});
  for (int k = 1; k <= n; ++k) {
    cplx acc = s.s[static_cast<std::size_t>(k)];
    for (int j = 1; j < k; ++j) {
      acc += s.s[static_cast<std::size_t>(k - j)] * p.sigma[static_cast<std::size_t>(j - 1)];
    }
    p.sigma[static_cast<std::size_t>(k - 1)] = -acc / static_cast<double>(k);
  }
  return p;
}

std::vector<cplx> companion_roots(const EquivalentPolynomial& p) {
  const auto n = static_cast<Eigen::Index>(p.degree());
  if (n == 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) companion(0, j) = -p.sigma[static_cast<std::size_t>(j)];
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw EigenSolveError("companion eigensolver failed");
  const Eigen::VectorXcd ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace holozero
