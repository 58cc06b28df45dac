#ifndef HOLOZERO_BASELINE_HPP
#define HOLOZERO_BASELINE_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "holozero/function_handle.hpp"
#include "holozero/geometry.hpp"
#include "holozero/quadrature.hpp"
#include "holozero/rational.hpp"

namespace holozero {

/// Ordinary moments s_k = (1/2πi)∮ z^k f'/f dz, k = 0..N. s[0] is rounded
/// to the nearest integer.
struct MomentVector {
  std::vector<cplx> s;

  int count() const { return s.empty() ? 0 : static_cast<int>(std::lround(s.front().real())); }
};

/// Monic polynomial z^N + σ_1 z^{N-1} + ... + σ_N; sigma holds σ_1..σ_N.
struct EquivalentPolynomial {
  std::vector<cplx> sigma;

  std::size_t degree() const { return sigma.size(); }
  cplx operator()(cplx z) const;
};

/// Quadrature did not converge on an edge, or s_0 was not an integer.
class MomentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// s_0..s_N in one vector-valued pass over the four edges.
MomentVector moments(const FunctionHandle& fh, const Rectangle& r, int N, const QuadConfig& cfg);

/// Forward substitution of Newton's identities
///   s_k + s_{k-1}σ_1 + ... + s_1σ_{k-1} + kσ_k = 0, k = 1..s_0.
EquivalentPolynomial newton_identities(const MomentVector& s);

/// Eigenvalues of the companion matrix; repeated roots appear repeated.
std::vector<cplx> companion_roots(const EquivalentPolynomial& p);

}  // namespace holozero

#endif  // HOLOZERO_BASELINE_HPP
