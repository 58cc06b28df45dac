#include "holozero/demos.hpp"

#include <boost/random/sobol.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>

namespace holozero {
namespace {

// Annular combustion chamber model constants.
constexpr double kAnnularA = -0.19435;
constexpr double kAnnularB = 1000.41;
constexpr double kAnnularC = 522463.0;
constexpr double kAnnularT = 0.005;

// sin(2u)/u, even in u and therefore entire in u^2.
cplx sin2_over(cplx u) {
  if (std::abs(u) < 1e-4) {
    const cplx u2 = u * u;
    return 2.0 - (4.0 / 3.0) * u2 + (4.0 / 15.0) * u2 * u2;
  }
  return std::sin(2.0 * u) / u;
}

cplx sheets_product(cplx z) {
  const cplx s = std::sin(std::sqrt(z * z + 1.0));
  return z * z - s * s;
}

cplx sheets_product_derivative(cplx z) {
  const cplx u = std::sqrt(z * z + 1.0);
  return 2.0 * z - z * sin2_over(u);
}

// LU-based evaluations keep the last point per thread, since the engine
// asks for f and f' at the same z back to back.
struct DeterminantCache {
  const void* owner = nullptr;
  cplx z{std::nan(""), 0.0};
  cplx det;
  cplx trace_inverse;
};

struct ResolventCache {
  const void* owner = nullptr;
  cplx z{std::nan(""), 0.0};
  cplx value;
  cplx derivative;
};

cplx ipow(cplx base, int n) {
  cplx result{1.0, 0.0};
  for (int k = 0; k < n; ++k) result *= base;
  return result;
}

// exp(-Tz) winds about 24 times along the long edges.
EngineConfig annular_config() {
  EngineConfig cfg;
  cfg.quad.max_interval_subdivisions = 400;
  return cfg;
}

}  // namespace

FunctionHandle polynomial_from_roots(std::vector<cplx> roots) {
  auto r = std::make_shared<const std::vector<cplx>>(std::move(roots));
  auto f = [r](cplx z) {
    cplx p{1.0, 0.0};
    for (const cplx& a : *r) p *= z - a;
    return p;
  };
  auto fp = [r, f](cplx z) {
    cplx s{};
    for (const cplx& a : *r) s += 1.0 / (z - a);
    return f(z) * s;
  };
  return {f, fp};
}

std::vector<cplx> grid100_points() {
  std::vector<cplx> pts;
  for (int x = -9; x <= 9; x += 2) {
    for (int y = -9; y <= 9; y += 2) pts.emplace_back(x / 10.0, y / 10.0);
  }
  return pts;
}

std::vector<cplx> quasirandom_points(int n, std::uint64_t seed, double margin) {
  for (std::uint64_t s = seed;; ++s) {
    std::mt19937_64 rng(s);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double shift_x = unit(rng);
    const double shift_y = unit(rng);
    boost::random::sobol gen(2);
    std::vector<cplx> pts;
    bool ok = true;
    for (int k = 0; k < n; ++k) {
      double x = std::ldexp(static_cast<double>(gen()), -64) + shift_x;
      double y = std::ldexp(static_cast<double>(gen()), -64) + shift_y;
      x -= std::floor(x);
      y -= std::floor(y);
      if (x < margin || x > 1.0 - margin || y < margin || y > 1.0 - margin) ok = false;
      pts.emplace_back(x, y);
    }
    if (ok) return pts;
  }
}

std::vector<cplx> compfunc_zeros(int n) {
  std::vector<cplx> pts;
  for (int j = 0; j <= n; ++j) {
    const double t = n == 0 ? 0.0 : static_cast<double>(j) / n;
    pts.emplace_back(0.1 + 0.8 * t, 0.5);
  }
  return pts;
}

Eigen::MatrixXd circulant_matrix(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<double> row(static_cast<std::size_t>(n));
  for (double& c : row) c = coin(rng) ? 0.4 : -0.4;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = row[static_cast<std::size_t>(((j - i) % n + n) % n)];
  }
  return a;
}

std::vector<cplx> dense_eigenvalues(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  const Eigen::VectorXcd ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

FunctionHandle determinant_handle(Eigen::MatrixXd a) {
  auto mat = std::make_shared<const Eigen::MatrixXcd>(a.cast<cplx>());
  auto eval = [mat](cplx z) -> const DeterminantCache& {
    thread_local DeterminantCache cache;
    if (cache.owner != mat.get() || cache.z != z) {
      Eigen::MatrixXcd shifted = *mat;
      shifted.diagonal().array() -= z;
      const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
      cache.owner = mat.get();
      cache.z = z;
      cache.det = lu.determinant();
      cache.trace_inverse = lu.inverse().trace();
    }
    return cache;
  };
  return {[eval](cplx z) { return eval(z).det; },
          [eval](cplx z) {
            const DeterminantCache& c = eval(z);
            return -c.det * c.trace_inverse;
          }};
}

FunctionHandle resolvent_handle(Eigen::MatrixXd a, Eigen::VectorXcd u, Eigen::VectorXcd v) {
  struct Data {
    Eigen::MatrixXcd a;
    Eigen::VectorXcd u;
    Eigen::VectorXcd v;
  };
  auto data = std::make_shared<const Data>(Data{a.cast<cplx>(), std::move(u), std::move(v)});
  auto eval = [data](cplx z) -> const ResolventCache& {
    thread_local ResolventCache cache;
    if (cache.owner != data.get() || cache.z != z) {
      Eigen::MatrixXcd shifted = data->a;
      shifted.diagonal().array() -= z;
      const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
      const Eigen::VectorXcd x = lu.solve(data->v);
      const Eigen::VectorXcd y = lu.adjoint().solve(data->u);
      cache.owner = data.get();
      cache.z = z;
      cache.value = data->u.dot(x);
      cache.derivative = y.dot(x);
    }
    return cache;
  };
  return {[eval](cplx z) { return eval(z).value; }, [eval](cplx z) { return eval(z).derivative; }};
}

cplx sheet_plus(cplx z) { return std::sin(std::sqrt(z * z + 1.0)) - z; }
cplx sheet_minus(cplx z) { return -std::sin(std::sqrt(z * z + 1.0)) - z; }

cplx sheets_imaginary_zero() {
  auto h = [](double y) { return std::sinh(std::sqrt(y * y - 1.0)) - y; };
  double lo = 1.5;
  double hi = 1.7;
  for (int k = 0; k < 200 && hi - lo > 0.0; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  return {0.0, 0.5 * (lo + hi)};
}

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names = {
      "grid100", "quasirandom100", "annular", "sheets", "circulant-det", "circulant-resolvent",
      "funcchoice"};
  return names;
}

Demo make_demo(std::string_view name, const DemoOptions& options) {
  if (name == "grid100") {
    std::vector<cplx> pts = grid100_points();
    return Demo{.name = "grid100",
                .description = "prod over the 10x10 grid (x+iy)/10, x,y odd in [-9,9]; 100 simple zeros",
                .rect = Rectangle(-1, 1, -1, 1),
                .handle = polynomial_from_roots(pts),
                .reference = pts};
  }
  if (name == "quasirandom100") {
    std::vector<cplx> pts = quasirandom_points(100, options.seed);
    return Demo{.name = "quasirandom100",
                .description = "prod (z - z_j) over 100 shifted Sobol' points in the unit square "
                               "(shift seeded by --seed)",
                .rect = Rectangle(0, 1, 0, 1),
                .handle = polynomial_from_roots(pts),
                .reference = pts};
  }
  if (name == "annular") {
    auto f = [](cplx z) { return z * z + kAnnularA * z + kAnnularB * std::exp(-kAnnularT * z) + kAnnularC; };
    auto fp = [](cplx z) { return 2.0 * z + kAnnularA - kAnnularB * kAnnularT * std::exp(-kAnnularT * z); };
    return Demo{.name = "annular",
                .description = "z^2 + Az + B exp(-Tz) + C, A=-0.19435, B=1000.41, C=522463, T=0.005",
                .rect = Rectangle(-2500, 10, -15000, 15000),
                .handle = FunctionHandle(f, fp),
                .config = annular_config()};
  }
  if (name == "sheets") {
    return Demo{.name = "sheets",
                .description = "F = f+ f-, f±(z) = ±sin(sqrt(z^2+1)) - z; zeros tagged by sheet",
                .rect = Rectangle(-5, 5, -5, 5),
                .handle = FunctionHandle(sheets_product, sheets_product_derivative),
                .label = [](cplx z) {
                  return std::abs(sheet_plus(z)) <= std::abs(sheet_minus(z)) ? std::string("+")
                                                                             : std::string("-");
                }};
  }
  if (name == "circulant-det" || name == "circulant-resolvent") {
    const Eigen::MatrixXd a = circulant_matrix(50, options.seed);
    std::vector<cplx> eig = dense_eigenvalues(a);
    const Rectangle rect(-5.1, 5, -4.9, 4.7);
    std::vector<cplx> inside;
    for (const cplx& l : eig) {
      if (rect.contains(l)) inside.push_back(l);
    }
    if (name == "circulant-det") {
      return Demo{.name = "circulant-det",
                  .description = "det(A - zI) for a seeded 50x50 circulant A with entries in {-0.4, 0.4}",
                  .rect = rect,
                  .handle = determinant_handle(a),
                  .reference = inside};
    }
    std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> normal;
    Eigen::VectorXcd u(50);
    Eigen::VectorXcd v(50);
    for (Eigen::Index k = 0; k < 50; ++k) u(k) = normal(rng);
    for (Eigen::Index k = 0; k < 50; ++k) v(k) = normal(rng);
    return Demo{.name = "circulant-resolvent",
                .description = "u^H (A - zI)^{-1} v for the circulant A and seeded u, v; poles are "
                               "the eigenvalues (6 levels of manual subdivision)",
                .rect = rect,
                .handle = resolvent_handle(a, u, v),
                .mode = DemoMode::PolesManual,
                .manual_depth = 6,
                .reference = inside};
  }
  if (name == "funcchoice") {
    const int alpha = options.alpha;
    const cplx a = options.a;
    auto f = [alpha, a](cplx z) { return std::exp(z) * ipow(z - a, alpha); };
    auto fp = [alpha, a](cplx z) {
      return std::exp(z) * ipow(z - a, alpha - 1) * (z - a + static_cast<double>(alpha));
    };
    return Demo{.name = "funcchoice",
                .description = "exp(z) (z - a)^alpha in the unit square (--alpha, --a)",
                .rect = Rectangle(0, 1, 0, 1),
                .handle = FunctionHandle(f, fp),
                .reference = std::vector<cplx>(static_cast<std::size_t>(std::max(alpha, 0)), a)};
  }
  throw std::invalid_argument("unknown demo '" + std::string(name) + "'");
}

}  // namespace holozero
