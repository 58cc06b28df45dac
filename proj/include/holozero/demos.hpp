#ifndef HOLOZERO_DEMOS_HPP
#define HOLOZERO_DEMOS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "holozero/engine.hpp"
#include "holozero/function_handle.hpp"
#include "holozero/geometry.hpp"

namespace holozero {

struct DemoOptions {
  /// Drives the quasi-random shift and the circulant/resolvent draws.
  std::uint64_t seed = 7;
  /// funcchoice parameters.
  int alpha = 2;
  cplx a{0.3, 0.7};
};

enum class DemoMode { Zeros, PolesManual };

struct Demo {
  std::string name;
  std::string description;
  Rectangle rect;
  FunctionHandle handle;
  DemoMode mode = DemoMode::Zeros;
  int manual_depth = 0;
  /// Exact zeros (or poles in PolesManual mode), when known.
  std::vector<cplx> reference;
  /// Optional per-zero tag written next to each result (e.g. Riemann sheet).
  std::function<std::string(cplx)> label;
  EngineConfig config;
};

/// Built-in problem names, in listing order.
const std::vector<std::string>& demo_names();

/// Throws std::invalid_argument for an unknown name.
Demo make_demo(std::string_view name, const DemoOptions& options = {});

/// f(z) = prod (z - r_k) with f' = f * sum 1/(z - r_k).
FunctionHandle polynomial_from_roots(std::vector<cplx> roots);

/// 10x10 grid (x + iy)/10, x, y odd in [-9, 9].
std::vector<cplx> grid100_points();

/// Points 1..n of the 2-D Sobol' sequence with a seeded Cranley-Patterson
/// shift, kept at least `margin` away from the unit-square boundary.
std::vector<cplx> quasirandom_points(int n, std::uint64_t seed, double margin = 1e-3);

/// a_j(n) = 0.1 + 0.8 j/n + 0.5i, j = 0..n (a single zero 0.1 + 0.5i for n = 0).
std::vector<cplx> compfunc_zeros(int n);

/// n x n real circulant matrix with first-row entries drawn from {-0.4, 0.4}.
Eigen::MatrixXd circulant_matrix(int n, std::uint64_t seed);

/// Eigenvalues from a dense nonsymmetric eigensolver.
std::vector<cplx> dense_eigenvalues(const Eigen::MatrixXd& a);

/// det(A - zI) with derivative -det(A - zI) tr((A - zI)^{-1}).
FunctionHandle determinant_handle(Eigen::MatrixXd a);

/// u^H (A - zI)^{-1} v with derivative u^H (A - zI)^{-2} v.
FunctionHandle resolvent_handle(Eigen::MatrixXd a, Eigen::VectorXcd u, Eigen::VectorXcd v);

/// The two Riemann sheets f±(z) = ±sin(sqrt(z^2 + 1)) - z.
cplx sheet_plus(cplx z);
cplx sheet_minus(cplx z);

/// Zero of f+ on the positive imaginary axis near 1.6i, by bisection of
/// sinh(sqrt(y^2 - 1)) = y.
cplx sheets_imaginary_zero();

}  // namespace holozero

#endif  // HOLOZERO_DEMOS_HPP
