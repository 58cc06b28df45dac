#include <doctest.h>

#include <random>

#include "holozero/geometry.hpp"

using namespace holozero;

TEST_CASE("rectangle rejects empty area") {
  CHECK_THROWS_AS(Rectangle(0, 0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(Rectangle(1, 0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(Rectangle(0, 1, 2, 1), std::invalid_argument);
}

TEST_CASE("closed containment") {
  const Rectangle r(0, 1, 0, 1);
  CHECK(r.contains({0, 0}));
  CHECK(r.contains({1, 1}));
  CHECK(r.contains({0.5, 1}));
  CHECK_FALSE(r.contains({1 + 1e-15, 0.5}));
  CHECK(r.contains({1 + 1e-15, 0.5}, 1e-14));
}

TEST_CASE("edges run counterclockwise and close up") {
  const Rectangle r(-1, 2, -3, 4);
  const auto e = r.edges();
  CHECK(e[0].start == cplx(-1, -3));
  for (int k = 0; k < 4; ++k) CHECK(e[k].end == e[(k + 1) % 4].start);
  // Shoelace area is positive for counterclockwise traversal.
  double twice_area = 0;
  for (const Edge& ed : e) twice_area += ed.start.real() * ed.end.imag() - ed.end.real() * ed.start.imag();
  CHECK(twice_area / 2 == doctest::Approx(r.area()));
}

TEST_CASE("split unit square at one half") {
  const SplitResult s = split(Rectangle(0, 1, 0, 1), 0.5);
  CHECK(s.vertical);
  CHECK(s.first == Rectangle(0, 0.5, 0, 1));
  CHECK(s.second == Rectangle(0.5, 1, 0, 1));
  CHECK(s.shared == Edge{{0.5, 0}, {0.5, 1}});
}

TEST_CASE("wide rectangle splits into unit squares") {
  const SplitResult s = split(Rectangle(0, 2, 0, 1), 0.5);
  CHECK(s.vertical);
  CHECK(s.first == Rectangle(0, 1, 0, 1));
  CHECK(s.second == Rectangle(1, 2, 0, 1));
  CHECK(s.shared == Edge{{1, 0}, {1, 1}});
}

TEST_CASE("off-centre split") {
  const SplitResult s = split(Rectangle(0, 2, 0, 1), 0.6);
  CHECK(s.first.re_max() == doctest::Approx(1.2));
  CHECK(s.second.re_min() == doctest::Approx(1.2));
  CHECK(s.first.re_min() == 0);
  CHECK(s.second.re_max() == 2);
}

TEST_CASE("tall rectangle splits horizontally") {
  const SplitResult s = split(Rectangle(0, 1, 0, 3), 0.5);
  CHECK_FALSE(s.vertical);
  CHECK(s.first == Rectangle(0, 1, 0, 1.5));
  CHECK(s.second == Rectangle(0, 1, 1.5, 3));
}

TEST_CASE("shared edge is traversed oppositely by the two children") {
  for (const Rectangle& r : {Rectangle(0, 1, 0, 1), Rectangle(0, 1, 0, 3), Rectangle(-2, 5, 1, 2)}) {
    const SplitResult s = split(r, 0.37);
    auto has = [](const Rectangle& c, const Edge& e) {
      for (const Edge& x : c.edges()) {
        if (x == e) return true;
      }
      return false;
    };
    CHECK(has(s.first, s.shared));
    CHECK(has(s.second, s.shared.reversed()));
  }
}

TEST_CASE("children areas add up") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10, 10), frac(0.01, 0.99);
  for (int k = 0; k < 200; ++k) {
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (a == b || c == d) continue;
    const Rectangle r(std::min(a, b), std::max(a, b), std::min(c, d), std::max(c, d));
    const SplitResult s = split(r, frac(rng));
    CHECK(s.first.area() + s.second.area() == doctest::Approx(r.area()).epsilon(1e-12));
  }
}

TEST_CASE("split minimizes the worse aspect ratio") {
  auto worst = [](const Rectangle& a, const Rectangle& b) {
    auto ar = [](const Rectangle& r) { return std::max(r.width(), r.height()) / std::min(r.width(), r.height()); };
    return std::max(ar(a), ar(b));
  };
  for (const Rectangle& r : {Rectangle(0, 3, 0, 1), Rectangle(0, 1, 0, 1.7), Rectangle(0, 1.01, 0, 1)}) {
    const SplitResult s = split(r, 0.5);
    const double w = r.width() / 2, h = r.height() / 2;
    const double other = s.vertical
                             ? worst(Rectangle(0, r.width(), 0, h), Rectangle(0, r.width(), 0, h))
                             : worst(Rectangle(0, w, 0, r.height()), Rectangle(0, w, 0, r.height()));
    CHECK(worst(s.first, s.second) <= other + 1e-15);
  }
}

TEST_CASE("boundary parametrization") {
  const BoundaryParam p(Rectangle(0, 1, 0, 1));
  CHECK(p.length() == 4);
  CHECK(p.point(0) == cplx(0, 0));
  CHECK(p.point(0.5) == cplx(0.5, 0));
  CHECK(std::abs(p.point(2.5) - cplx(0.5, 1)) < 1e-15);
  CHECK(std::abs(p.point(1.5) - cplx(1, 0.5)) < 1e-15);
  CHECK(std::abs(p.point(3.5) - cplx(0, 0.5)) < 1e-15);
  CHECK(std::abs(p.point(4.5) - p.point(0.5)) < 1e-15);
  CHECK(std::abs(p.point(-0.5) - p.point(3.5)) < 1e-15);
}

TEST_CASE("boundary parametrization is continuous and stays on the boundary") {
  const Rectangle r(-2, 1, 0.5, 4);
  const BoundaryParam p(r);
  const int n = 1000;
  cplx prev = p.point(0);
  for (int k = 1; k <= n; ++k) {
    const cplx z = p.point(p.length() * k / n);
    CHECK(std::abs(z - prev) <= p.length() / n * (1 + 1e-12));
    const bool on = std::abs(z.real() - r.re_min()) < 1e-12 || std::abs(z.real() - r.re_max()) < 1e-12 ||
                    std::abs(z.imag() - r.im_min()) < 1e-12 || std::abs(z.imag() - r.im_max()) < 1e-12;
    CHECK(on);
    prev = z;
  }
}
