#include <doctest.h>

#include <random>

#include "holozero/demos.hpp"
#include "holozero/engine.hpp"

using namespace holozero;

namespace {

FunctionHandle scaled(const FunctionHandle& fh, cplx c) {
  return FunctionHandle([fh, c](cplx z) { return c * fh.raw_f()(z); },
                        [fh, c](cplx z) { return c * fh.raw_f()(z) * fh.log_derivative(z); });
}

double nearest(const ZeroSearchResult& r, cplx z) {
  double best = INFINITY;
  for (const ZeroRecord& x : r.zeros) best = std::min(best, std::abs(x.location - z));
  return best;
}

void check_invariants(const ZeroSearchResult& r, const Rectangle& omega, const EngineConfig& cfg) {
  CHECK(r.multiplicity_sum() == r.report.total_count);
  for (const ZeroRecord& z : r.zeros) {
    CHECK(omega.contains(z.location, 1e-12 * omega.diameter()));
    const double k = std::round(z.raw_residue.real());
    CHECK(k >= 1);
    CHECK(std::abs(z.raw_residue - k) < cfg.residue_tol);
    CHECK(z.multiplicity == static_cast<int>(k));
  }
  for (std::size_t i = 1; i < r.zeros.size(); ++i) {
    const cplx a = r.zeros[i - 1].location, b = r.zeros[i].location;
    CHECK((a.real() < b.real() || (a.real() == b.real() && a.imag() <= b.imag())));
  }
}

}  // namespace

TEST_CASE("subdivide: single zero needs no split") {
  const Subdivision s = subdivide(polynomial_from_roots({{0.5, 0.5}}), Rectangle(0, 1, 0, 1), EngineConfig{});
  CHECK(s.nodes.size() == 1);
  REQUIRE(s.accepted.size() == 1);
  CHECK(s.nodes[0].count == 1);
}

TEST_CASE("subdivide: grid100") {
  const Demo d = make_demo("grid100");
  const Subdivision s = subdivide(d.handle, d.rect, EngineConfig{});
  int total = 0;
  double area = 0;
  for (int id : s.accepted) {
    CHECK(s.nodes[id].count <= 7);
    CHECK(s.nodes[id].count >= 0);
    total += s.nodes[id].count;
    area += s.nodes[id].rect.area();
  }
  CHECK(total == 100);
  CHECK(area == doctest::Approx(4.0));
}

TEST_CASE("subdivide: zero at a corner of the root") {
  try {
    subdivide(polynomial_from_roots({0}), Rectangle(0, 1, 0, 1), EngineConfig{});
    FAIL("expected EngineError");
  } catch (const EngineError& e) {
    CHECK(e.kind() == EngineError::Kind::BoundaryZero);
  }
}

TEST_CASE("subdivide: zeros on the first cut force perturbation") {
  EngineConfig cfg;
  cfg.max_per_region = 1;
  const Subdivision s = subdivide(polynomial_from_roots({0.5, -0.5}), Rectangle(-1, 1, -1, 1), cfg);
  int total = 0;
  for (int id : s.accepted) {
    const Rectangle& r = s.nodes[id].rect;
    total += s.nodes[id].count;
    for (double x : {0.5, -0.5}) {
      const bool on_boundary = r.contains(x) && (x == r.re_min() || x == r.re_max() || r.im_min() == 0 || r.im_max() == 0);
      CHECK_FALSE(on_boundary);
    }
  }
  CHECK(total == 2);
}

TEST_CASE("subdivide: multiplicity above M exhausts the depth budget") {
  EngineConfig cfg;
  cfg.max_per_region = 1;
  cfg.max_depth = 12;
  try {
    subdivide(polynomial_from_roots({{0.3, 0.3}, {0.3, 0.3}}), Rectangle(0, 1, 0, 1), cfg);
    FAIL("expected EngineError");
  } catch (const EngineError& e) {
    CHECK(e.kind() == EngineError::Kind::DepthExceeded);
  }
}

TEST_CASE("find_zeros: triple zero") {
  const cplx a{0.5, 0.5};
  const FunctionHandle fh([a](cplx z) { return std::pow(z - a, 3) * std::exp(z); },
                          [a](cplx z) { return std::pow(z - a, 2) * std::exp(z) * (3.0 + z - a); });
  const ZeroSearchResult r = find_zeros(fh, Rectangle(0, 1, 0, 1), EngineConfig{});
  REQUIRE(r.zeros.size() == 1);
  CHECK(r.zeros[0].multiplicity == 3);
  CHECK(std::abs(r.zeros[0].raw_residue - 3.0) < 1e-2);
  CHECK(std::abs(r.zeros[0].location - a) < 1e-12);
  check_invariants(r, Rectangle(0, 1, 0, 1), EngineConfig{});
}

TEST_CASE("find_zeros: zero on the bottom edge is a boundary error") {
  const FunctionHandle fh([](cplx z) { return std::pow(z - 0.5, 3) * std::exp(z); },
                          [](cplx z) { return std::pow(z - 0.5, 2) * std::exp(z) * (2.5 + z); });
  CHECK_THROWS_AS(find_zeros(fh, Rectangle(0, 1, 0, 1), EngineConfig{}), EngineError);
}

TEST_CASE("find_zeros: random polynomials satisfy the invariants") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-0.97, 0.97);
  const Rectangle omega(-1, 1, -1, 1);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<cplx> roots;
    for (int k = 0; k < 12; ++k) roots.push_back({u(rng), u(rng)});
    roots.push_back(roots[0]);
    const ZeroSearchResult r = find_zeros(polynomial_from_roots(roots), omega, EngineConfig{});
    check_invariants(r, omega, EngineConfig{});
    CHECK(r.multiplicity_sum() == 13);
    for (cplx z : roots) CHECK(nearest(r, z) < 1e-9);
  }
}

TEST_CASE("find_zeros: scale invariance") {
  const std::vector<cplx> roots{{0.1, 0.2}, {-0.4, 0.3}, {0.3, -0.8}, {0.7, 0.7}, {-0.2, -0.1},
                                {0.5, 0.1}, {-0.9, 0.9}, {0.05, 0.6}, {-0.6, -0.6}};
  const FunctionHandle fh = polynomial_from_roots(roots);
  const Rectangle omega(-1, 1, -1, 1);
  const ZeroSearchResult a = find_zeros(fh, omega, EngineConfig{});
  const ZeroSearchResult b = find_zeros(scaled(fh, 1e6), omega, EngineConfig{});
  REQUIRE(a.report.regions.size() == b.report.regions.size());
  for (std::size_t i = 0; i < a.report.regions.size(); ++i) {
    CHECK(a.report.regions[i].rect == b.report.regions[i].rect);
    CHECK(a.report.regions[i].count == b.report.regions[i].count);
  }
  REQUIRE(a.zeros.size() == b.zeros.size());
  for (std::size_t i = 0; i < a.zeros.size(); ++i) {
    CHECK(std::abs(a.zeros[i].location - b.zeros[i].location) < 1e-12);
  }
}

TEST_CASE("find_zeros: deterministic and thread-count independent") {
  EngineConfig cfg;
  cfg.max_per_region = 1;
  const FunctionHandle fh = polynomial_from_roots({0.5, -0.5, {0, 0.5}});
  const Rectangle omega(-1, 1, -1, 1);
  const ZeroSearchResult a = find_zeros(fh, omega, cfg);
  cfg.threads = 3;
  const ZeroSearchResult b = find_zeros(fh, omega, cfg);
  REQUIRE(a.report.regions.size() == b.report.regions.size());
  for (std::size_t i = 0; i < a.report.regions.size(); ++i) {
    CHECK(a.report.regions[i].rect == b.report.regions[i].rect);
  }
  REQUIRE(a.zeros.size() == b.zeros.size());
  for (std::size_t i = 0; i < a.zeros.size(); ++i) CHECK(a.zeros[i].location == b.zeros[i].location);
  CHECK(a.report.perturbations > 0);
}

TEST_CASE("find_zeros: no zeros") {
  const FunctionHandle fh([](cplx z) { return std::exp(z); }, [](cplx z) { return std::exp(z); });
  const ZeroSearchResult r = find_zeros(fh, Rectangle(0, 1, 0, 1), EngineConfig{});
  CHECK(r.zeros.empty());
  CHECK(r.report.total_count == 0);
}

TEST_CASE("find_zeros: evaluation counts are reported") {
  const FunctionHandle fh = polynomial_from_roots({{0.3, 0.4}});
  fh.reset_counts();
  const ZeroSearchResult r = find_zeros(fh, Rectangle(0, 1, 0, 1), EngineConfig{});
  CHECK(r.report.evaluations.f == fh.counts().f);
  CHECK(r.report.evaluations.fprime > 0);
}

TEST_CASE("polish keeps or improves") {
  const cplx a{0.25, 0.75};
  const FunctionHandle fh = polynomial_from_roots({a, a});
  const Rectangle r(0, 1, 0, 1);
  const auto p = newton_polish(fh, a + cplx(1e-6, -1e-6), 2, r);
  REQUIRE(p.has_value());
  CHECK(std::abs(*p - a) < 1e-10);
  CHECK_FALSE(newton_polish(fh, cplx(1.5, 0.5), 2, Rectangle(1, 2, 0, 1)).has_value());
  EngineConfig cfg;
  cfg.polish = true;
  const ZeroSearchResult z = find_zeros(fh, r, cfg);
  REQUIRE(z.zeros.size() == 1);
  CHECK(z.zeros[0].multiplicity == 2);
  CHECK(std::abs(z.zeros[0].location - a) < 1e-12);
}

TEST_CASE("manual: simple pole") {
  const cplx a{0.3, 0.3};
  const FunctionHandle fh([a](cplx z) { return 1.0 / (z - a); }, [a](cplx z) { return -1.0 / ((z - a) * (z - a)); });
  const ZeroSearchResult r = find_poles_manual(fh, Rectangle(0, 1, 0, 1), 0, EngineConfig{});
  REQUIRE(r.zeros.size() == 1);
  CHECK(r.zeros[0].is_pole);
  CHECK(std::abs(r.zeros[0].raw_residue + 1.0) < 1e-2);
  CHECK(std::abs(r.zeros[0].location - a) < 1e-12);
}

TEST_CASE("manual: tan") {
  const FunctionHandle fh([](cplx z) { return std::tan(z); },
                          [](cplx z) { return 1.0 / (std::cos(z) * std::cos(z)); });
  const ZeroSearchResult r = find_poles_manual(fh, Rectangle(-1, 1, -1, 1), 1, EngineConfig{});
  REQUIRE(r.zeros.size() == 1);
  CHECK_FALSE(r.zeros[0].is_pole);
  CHECK(r.zeros[0].multiplicity == 1);
  CHECK(std::abs(r.zeros[0].location) < 1e-12);
  int leaves = 0;
  for (const RegionNode& n : r.report.regions) leaves += n.accepted ? 1 : 0;
  CHECK(leaves == 2);
  CHECK(r.report.perturbations >= 1);
}
