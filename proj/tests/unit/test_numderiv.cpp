#include <doctest.h>

#include <numbers>

#include "holozero/numderiv.hpp"

using namespace holozero;

TEST_CASE("exp at 0") {
  const DerivResult r = cauchy_derivative([](cplx z) { return std::exp(z); }, 0, DerivConfig{});
  CHECK(r.converged);
  CHECK(std::abs(r.value - 1.0) < 1e-13);
}

TEST_CASE("z^2 at 1") {
  const DerivResult r = cauchy_derivative([](cplx z) { return z * z; }, 1, DerivConfig{});
  CHECK(r.converged);
  CHECK(std::abs(r.value - 2.0) < 1e-13);
}

TEST_CASE("exp(z)(z-a)^2 against the product rule") {
  const cplx a{0.6, 0.3}, z0{0.1, 0.1};
  auto f = [a](cplx z) { return std::exp(z) * (z - a) * (z - a); };
  const cplx exact = std::exp(z0) * (z0 - a) * (z0 - a + 2.0);
  const DerivResult r = cauchy_derivative(f, z0, DerivConfig{});
  CHECK(std::abs(r.value - exact) <= 1e-12 * std::abs(exact));
}

TEST_CASE("successive doubling converges exponentially") {
  for (auto f : {+[](cplx z) { return std::exp(z); }, +[](cplx z) { return std::sin(3.0 * z); }}) {
    DerivConfig cfg;
    cfg.radius = 0.5;
    const DerivResult r = cauchy_derivative(f, cplx(0.2, 0.1), cfg);
    REQUIRE(r.history.size() >= 3);
    const auto& h = r.history;
    for (std::size_t k = 2; k < h.size(); ++k) {
      const double prev = std::abs(h[k - 1] - h[k - 2]);
      const double next = std::abs(h[k] - h[k - 1]);
      if (prev > 1e-13) CHECK(next * 10 <= prev);
    }
  }
}

TEST_CASE("history levels double") {
  const DerivResult r = cauchy_derivative([](cplx z) { return std::exp(z); }, 0, DerivConfig{});
  CHECK(r.nodes == DerivConfig{}.initial_nodes << (r.history.size() - 1));
}

TEST_CASE("deterministic") {
  auto f = [](cplx z) { return std::cos(z) * std::exp(z * z); };
  const DerivResult a = cauchy_derivative(f, cplx(0.3, -0.2), DerivConfig{});
  const DerivResult b = cauchy_derivative(f, cplx(0.3, -0.2), DerivConfig{});
  CHECK(a.value == b.value);
  CHECK(a.nodes == b.nodes);
}

TEST_CASE("nearby singularity exhausts the node budget") {
  DerivConfig cfg;
  cfg.max_nodes = 64;
  const DerivResult r =
      cauchy_derivative([](cplx z) { return 1.0 / (z - 0.0105); }, 0, cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.nodes == 64);
}

TEST_CASE("non-finite sample") {
  try {
    cauchy_derivative([](cplx z) { return 1.0 / (z - 0.01); }, 0, DerivConfig{});
    FAIL("expected DerivativeSampleError");
  } catch (const DerivativeSampleError& e) {
    CHECK(std::abs(e.location - 0.01) < 1e-15);
  }
}

TEST_CASE("wrapped handle") {
  const FunctionHandle h = wrap_derivative_free([](cplx z) { return std::exp(z); });
  CHECK(h.derivative_free());
  CHECK(std::abs(h.fprime(1) - std::numbers::e) < 1e-13);
  h.reset_counts();
  h.fprime(0.5);
  const auto c = h.counts();
  CHECK(c.fprime == 1);
  const DerivResult r = cauchy_derivative([](cplx z) { return std::exp(z); }, 0.5, DerivConfig{});
  CHECK(c.f == static_cast<std::uint64_t>(r.nodes));
}

TEST_CASE("wrapped handle returns NaN on a bad sample") {
  const FunctionHandle h = wrap_derivative_free([](cplx z) { return 1.0 / (z - 0.01); });
  const cplx d = h.fprime(0);
  CHECK(std::isnan(d.real()));
}
