#ifndef HOLOZERO_QUADRATURE_HPP
#define HOLOZERO_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "holozero/function_handle.hpp"
#include "holozero/geometry.hpp"

namespace holozero {

struct QuadConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-9;
  /// Bisections allowed per edge.
  int max_interval_subdivisions = 50;
  /// Distance from an integer accepted as "an integer" in zero counts.
  double integer_tol = 1e-3;
};

struct QuadResult {
  cplx value{};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

struct VectorQuadResult {
  std::vector<cplx> values;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Integrand writing `out.size()` components at a point.
using VectorIntegrand = std::function<void(cplx, std::span<cplx>)>;

/// Globally adaptive GK10/21 integration of g(z) dz along the edge, starting
/// from its two halves. A non-finite sample aborts with converged = false and
/// infinite error.
QuadResult gk_integrate_edge(const ComplexFn& g, const Edge& e, const QuadConfig& cfg);

/// Vector-valued variant; all components share nodes and subdivisions. The
/// error estimate is the largest component error.
VectorQuadResult gk_integrate_edge(const VectorIntegrand& g, std::size_t components,
                                   const Edge& e, const QuadConfig& cfg);

/// Directed-edge integral memo. A lookup of a reversed edge returns the
/// negated value. Thread-safe.
class EdgeCache {
 public:
  std::optional<QuadResult> find(const Edge& e) const;
  void insert(const Edge& e, const QuadResult& r);
  std::size_t size() const;

 private:
  using Key = std::array<double, 4>;
  static Key key(const Edge& e);

  mutable std::mutex mutex_;
  std::map<Key, QuadResult> entries_;
};

enum class CountStatus { Integer, QuadratureFailure, NonInteger };

struct ArgPrincipleOutcome {
  CountStatus status = CountStatus::Integer;
  int count = 0;                    // valid when status == Integer
  cplx value{};                     // (1/2πi)∮ f'/f dz, when all edges converged
  std::optional<Edge> failed_edge;  // first non-converged edge
};

/// Argument-principle zero count over the rectangle boundary, reusing and
/// filling `cache`.
ArgPrincipleOutcome count_zeros(const FunctionHandle& fh, const Rectangle& r,
                                const QuadConfig& cfg, EdgeCache& cache);

}  // namespace holozero

#endif  // HOLOZERO_QUADRATURE_HPP
