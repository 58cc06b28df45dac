#include "holozero/numderiv.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace holozero {

DerivResult cauchy_derivative(const ComplexFn& f, cplx z, const DerivConfig& cfg) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double r = cfg.radius;
  double max_sample = 0.0;

  // Weighted node sum S_m = sum_j e^{-2πij/m} f(z + r e^{2πij/m}).
  auto node_term = [&](int j, int m) {
    const double theta = 2.0 * std::numbers::pi * j / m;
    const cplx unit = std::polar(1.0, theta);
    const cplx xi = z + r * unit;
    const cplx v = f(xi);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream msg;
      msg << "non-finite sample at " << xi;
      throw DerivativeSampleError(msg.str(), xi);
    }
    max_sample = std::max(max_sample, std::abs(v));
    return std::conj(unit) * v;
  };

  DerivResult result;
  int m = cfg.initial_nodes;
  cplx sum{};
  for (int j = 0; j < m; ++j) sum += node_term(j, m);
  cplx estimate = sum / (static_cast<double>(m) * r);
  result.history.push_back(estimate);

  while (2 * m <= cfg.max_nodes) {
    // The new level's even nodes are the previous level's nodes.
    for (int j = 1; j < 2 * m; j += 2) sum += node_term(j, 2 * m);
    m *= 2;
    const cplx next = sum / (static_cast<double>(m) * r);
    result.history.push_back(next);
    const double diff = std::abs(next - estimate);
    estimate = next;
    const double noise = 10.0 * kEps * max_sample / r;
    if (diff <= cfg.rel_tol * std::max(1.0, std::abs(next)) || diff <= noise) {
      result.converged = true;
      break;
    }
  }
  result.value = estimate;
  result.nodes = m;
  return result;
}

FunctionHandle wrap_derivative_free(ComplexFn f, const DerivConfig& cfg) {
  return make_derivative_free_handle(std::move(f), [cfg](const FunctionHandle& h, cplx z) {
    const ComplexFn counted = [&h](cplx x) { return h.f(x); };
    try {
      return cauchy_derivative(counted, z, cfg).value;
    } catch (const DerivativeSampleError&) {
      return cplx(std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN());
    }
  });
}

}  // namespace holozero
