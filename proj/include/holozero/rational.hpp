#ifndef HOLOZERO_RATIONAL_HPP
#define HOLOZERO_RATIONAL_HPP

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace holozero {

using cplx = std::complex<double>;

struct PoleInfo {
  cplx location;
  cplx residue;
};

/// Raised when the dense eigensolver behind poles()/zeros() fails.
class EigenSolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rational function in barycentric form
///   r(z) = sum_j w_j f_j / (z - z_j)  /  sum_j w_j / (z - z_j),
/// of type (m-1, m-1) for m support points.
class BarycentricRational {
 public:
  /// Throws std::invalid_argument on empty or mismatched input, or on
  /// repeated support points.
  BarycentricRational(std::vector<cplx> support, std::vector<cplx> values,
                      std::vector<cplx> weights);

  const std::vector<cplx>& support_points() const { return support_; }
  const std::vector<cplx>& values() const { return values_; }
  const std::vector<cplx>& weights() const { return weights_; }
  std::size_t size() const { return support_.size(); }
  std::size_t degree() const { return support_.size() - 1; }

  /// Returns f_j exactly at support point z_j.
  cplx operator()(cplx z) const;

  /// Finite poles with residues n(a)/d'(a).
  std::vector<PoleInfo> poles() const;
  /// Finite zeros of the numerator.
  std::vector<cplx> zeros() const;

  /// Residue of r at a (assumed to be a simple pole).
  cplx residue(cplx a) const;

 private:
  std::vector<cplx> support_;
  std::vector<cplx> values_;
  std::vector<cplx> weights_;
};

/// Finite eigenvalues of the arrowhead pencil
///   [0 c^T; 1 diag(support)] v = λ diag(0, 1, ..., 1) v,
/// i.e. the roots of sum_j c_j / (λ - z_j).
std::vector<cplx> arrowhead_eigenvalues(std::span<const cplx> support,
                                        std::span<const cplx> top_row);

}  // namespace holozero

#endif  // HOLOZERO_RATIONAL_HPP
