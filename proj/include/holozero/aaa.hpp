#ifndef HOLOZERO_AAA_HPP
#define HOLOZERO_AAA_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>

#include "holozero/geometry.hpp"
#include "holozero/rational.hpp"

namespace holozero {

struct AAAConfig {
  double rel_tol = 1e-13;
  /// Largest rational degree; at most max_degree + 1 support points.
  int max_degree = 150;
  /// Equispaced bootstrap samples on the boundary (continuum variant).
  int initial_samples = 16;
  /// Samples per gap between neighbouring support points are
  /// max(min_samples_per_gap, gap_samples_base - m).
  int gap_samples_base = 16;
  int min_samples_per_gap = 3;
};

struct AAAResult {
  BarycentricRational approximation;
  /// max |F - r| over the final sample set, relative to max |F|.
  double achieved_error = 0.0;
  bool converged = false;
  /// Number of support points m; the degree is m - 1.
  int iterations = 0;
  /// Target evaluations (continuum variant).
  std::size_t evaluations = 0;
};

/// Raised by aaa_continuum when the target is not finite at a sample.
class AAASampleError : public std::runtime_error {
 public:
  AAASampleError(const std::string& what, cplx where)
      : std::runtime_error(what), location(where) {}
  cplx location;
};

/// Classical AAA on a fixed point set. Requires |Z| >= 2 and finite F.
AAAResult aaa_discrete(std::span<const cplx> Z, std::span<const cplx> F, const AAAConfig& cfg);

/// Continuum AAA on a rectangle boundary; the sample set is rebuilt every
/// iteration from equispaced points between consecutive support points.
AAAResult aaa_continuum(const std::function<cplx(cplx)>& g, const BoundaryParam& boundary,
                        const AAAConfig& cfg);

}  // namespace holozero

#endif  // HOLOZERO_AAA_HPP
