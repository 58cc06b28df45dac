#include "holozero/aaa.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <vector>

namespace holozero {
namespace {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

struct Fit {
  VectorXc weights;
  VectorXc approx;  // r at the sample points
};

// Least-squares weights from the Loewner matrix, then r at the samples.
Fit fit_weights(const std::vector<cplx>& sample_z, const std::vector<cplx>& sample_f,
                const std::vector<cplx>& support_z, const std::vector<cplx>& support_f) {
  const auto rows = static_cast<Eigen::Index>(sample_z.size());
  const auto m = static_cast<Eigen::Index>(support_z.size());
  MatrixXc cauchy(rows, m);
  MatrixXc loewner(rows, m);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const cplx c = 1.0 / (sample_z[static_cast<std::size_t>(i)] - support_z[static_cast<std::size_t>(j)]);
      cauchy(i, j) = c;
      loewner(i, j) = (sample_f[static_cast<std::size_t>(i)] - support_f[static_cast<std::size_t>(j)]) * c;
    }
  }

  Fit fit;
  if (m == 1 || rows == 0) {
    fit.weights = VectorXc::Ones(m) / std::sqrt(static_cast<double>(m));
  } else {
    Eigen::BDCSVD<MatrixXc> svd(loewner, Eigen::ComputeFullV);
    // Singular values are sorted decreasingly; the last column is the
    // minimal right singular vector (also on ties).
    fit.weights = svd.matrixV().col(m - 1);
  }
  VectorXc wf(m);
  for (Eigen::Index j = 0; j < m; ++j) wf(j) = fit.weights(j) * support_f[static_cast<std::size_t>(j)];
  const VectorXc num = cauchy * wf;
  const VectorXc den = cauchy * fit.weights;
  fit.approx = num.cwiseQuotient(den);
  return fit;
}

std::vector<cplx> to_std(const VectorXc& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

AAAResult aaa_discrete(std::span<const cplx> Z, std::span<const cplx> F, const AAAConfig& cfg) {
  if (Z.size() != F.size() || Z.size() < 2) {
    throw std::invalid_argument("aaa_discrete needs at least two samples with matching values");
  }
  double fmax = 0.0;
  for (const cplx& v : F) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("aaa_discrete needs finite sample values");
    }
    fmax = std::max(fmax, std::abs(v));
  }

  std::vector<std::size_t> remaining(Z.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  const cplx mean = std::accumulate(F.begin(), F.end(), cplx{}) / static_cast<double>(F.size());
  std::vector<cplx> approx(Z.size(), mean);

  std::vector<cplx> support_z;
  std::vector<cplx> support_f;
  VectorXc weights;
  double rel_error = 0.0;
  bool converged = false;

  while (!remaining.empty()) {
    std::size_t pick = 0;
    double worst = -1.0;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      const double e = std::abs(F[remaining[k]] - approx[remaining[k]]);
      if (e > worst) {
        worst = e;
        pick = k;
      }
    }
    support_z.push_back(Z[remaining[pick]]);
    support_f.push_back(F[remaining[pick]]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));

    std::vector<cplx> sz;
    std::vector<cplx> sf;
    for (std::size_t idx : remaining) {
      sz.push_back(Z[idx]);
      sf.push_back(F[idx]);
    }
    Fit fit = fit_weights(sz, sf, support_z, support_f);
    weights = fit.weights;
    double err = 0.0;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      approx[remaining[k]] = fit.approx(static_cast<Eigen::Index>(k));
      const double e = std::abs(sf[k] - fit.approx(static_cast<Eigen::Index>(k)));
      err = std::isfinite(e) ? std::max(err, e) : std::numeric_limits<double>::infinity();
    }
    rel_error = fmax > 0.0 ? err / fmax : 0.0;
    if (remaining.empty()) break;
    if (rel_error <= cfg.rel_tol) {
      converged = true;
      break;
    }
    if (static_cast<int>(support_z.size()) > cfg.max_degree) break;
  }

  const int m = static_cast<int>(support_z.size());
  return {BarycentricRational(support_z, support_f, to_std(weights)), rel_error, converged, m, 0};
}

AAAResult aaa_continuum(const std::function<cplx(cplx)>& g, const BoundaryParam& boundary,
                        const AAAConfig& cfg) {
  const double len = boundary.length();
  std::map<double, cplx> memo;
  std::size_t evaluations = 0;
  auto sample = [&](double t) -> cplx {
    if (auto it = memo.find(t); it != memo.end()) return it->second;
    const cplx z = boundary.point(t);
    const cplx v = g(z);
    ++evaluations;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream msg;
      msg << "non-finite target value at boundary point " << z;
      throw AAASampleError(msg.str(), z);
    }
    memo.emplace(t, v);
    return v;
  };

  struct Support {
    double t;
    cplx z;
    cplx f;
  };
  std::vector<Support> supports;

  {
    const int n0 = std::max(cfg.initial_samples, 1);
    std::vector<double> ts(static_cast<std::size_t>(n0));
    std::vector<cplx> vs(static_cast<std::size_t>(n0));
    cplx mean{};
    for (int k = 0; k < n0; ++k) {
      ts[static_cast<std::size_t>(k)] = len * k / n0;
      vs[static_cast<std::size_t>(k)] = sample(ts[static_cast<std::size_t>(k)]);
      mean += vs[static_cast<std::size_t>(k)];
    }
    mean /= static_cast<double>(n0);
    std::size_t best = 0;
    for (std::size_t k = 1; k < vs.size(); ++k) {
      if (std::abs(vs[k] - mean) > std::abs(vs[best] - mean)) best = k;
    }
    supports.push_back({ts[best], boundary.point(ts[best]), vs[best]});
  }

  VectorXc weights;
  double rel_error = 0.0;
  bool converged = false;
  std::vector<cplx> support_z;
  std::vector<cplx> support_f;

  for (;;) {
    std::sort(supports.begin(), supports.end(),
              [](const Support& a, const Support& b) { return a.t < b.t; });
    const std::size_t m = supports.size();
    support_z.clear();
    support_f.clear();
    for (const Support& s : supports) {
      support_z.push_back(s.z);
      support_f.push_back(s.f);
    }

    const int per_gap = std::max(cfg.min_samples_per_gap, cfg.gap_samples_base - static_cast<int>(m));
    std::vector<double> sample_t;
    std::vector<cplx> sample_z;
    std::vector<cplx> sample_f;
    for (std::size_t i = 0; i < m; ++i) {
      const double a = supports[i].t;
      const double b = i + 1 < m ? supports[i + 1].t : supports[0].t + len;
      for (int k = 1; k <= per_gap; ++k) {
        double t = a + (b - a) * k / (per_gap + 1);
        if (t >= len) t -= len;
        const cplx z = boundary.point(t);
        if (std::find(support_z.begin(), support_z.end(), z) != support_z.end()) continue;
        sample_t.push_back(t);
        sample_z.push_back(z);
        sample_f.push_back(sample(t));
      }
    }

    double fmax = 0.0;
    for (const cplx& v : sample_f) fmax = std::max(fmax, std::abs(v));
    for (const cplx& v : support_f) fmax = std::max(fmax, std::abs(v));

    Fit fit = fit_weights(sample_z, sample_f, support_z, support_f);
    weights = fit.weights;
    double err = 0.0;
    std::size_t worst = 0;
    for (std::size_t k = 0; k < sample_f.size(); ++k) {
      double e = std::abs(sample_f[k] - fit.approx(static_cast<Eigen::Index>(k)));
      if (!std::isfinite(e)) e = std::numeric_limits<double>::infinity();
      if (e > err) {
        err = e;
        worst = k;
      }
    }
    rel_error = fmax > 0.0 ? err / fmax : 0.0;
    if (rel_error <= cfg.rel_tol) {
      converged = true;
      break;
    }
    if (static_cast<int>(m) > cfg.max_degree || sample_f.empty()) break;
    supports.push_back({sample_t[worst], sample_z[worst], sample_f[worst]});
  }

  const int m = static_cast<int>(support_z.size());
  return {BarycentricRational(support_z, support_f, to_std(weights)), rel_error, converged, m,
          evaluations};
}

}  // namespace holozero
