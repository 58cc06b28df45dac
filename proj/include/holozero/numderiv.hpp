#ifndef HOLOZERO_NUMDERIV_HPP
#define HOLOZERO_NUMDERIV_HPP

#include <stdexcept>
#include <vector>

#include "holozero/function_handle.hpp"

namespace holozero {

struct DerivConfig {
  double radius = 1e-2;
  double rel_tol = 1e-15;
  int initial_nodes = 8;
  /// Must be initial_nodes times a power of two.
  int max_nodes = 1 << 12;
};

struct DerivResult {
  cplx value{};
  bool converged = false;
  int nodes = 0;
  /// Estimates at initial_nodes, 2*initial_nodes, ...
  std::vector<cplx> history;
};

class DerivativeSampleError : public std::runtime_error {
 public:
  DerivativeSampleError(const std::string& what, cplx where)
      : std::runtime_error(what), location(where) {}
  cplx location;
};

/// f'(z) from the m-point trapezium rule on the circle |xi - z| = radius,
/// doubling m (reusing previous nodes) until consecutive estimates agree to
/// rel_tol * max(1, |estimate|), or until the difference drops to the
/// rounding level of the samples.
DerivResult cauchy_derivative(const ComplexFn& f, cplx z, const DerivConfig& cfg);

/// Handle whose derivative channel runs cauchy_derivative on the counted f.
/// A non-finite sample makes the derivative NaN.
FunctionHandle wrap_derivative_free(ComplexFn f, const DerivConfig& cfg = {});

}  // namespace holozero

#endif  // HOLOZERO_NUMDERIV_HPP
