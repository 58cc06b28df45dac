#include "holozero/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace holozero {
namespace {

// 21-point Kronrod abscissae on [0, 1] (descending) and weights; odd indices
// are the 10-point Gauss abscissae.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208068074186, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kUflow = std::numeric_limits<double>::min();

struct Interval {
  double a;
  double b;
  std::vector<cplx> value;
  double error;
};

struct ByError {
  bool operator()(const Interval& x, const Interval& y) const { return x.error < y.error; }
};

// One GK21 panel over parameter range [a, b] of the edge. Returns false on a
// non-finite sample.
bool gk21(const VectorIntegrand& g, std::size_t dim, const Edge& e, double a, double b,
          std::vector<cplx>& samples, Interval& out) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const cplx dz = e.end - e.start;

  // Layout: sample 0 is the center, 2k+1 / 2k+2 are center -/+ half*x_k.
  samples.assign(21 * dim, cplx{});
  auto at = [&](std::size_t node) { return std::span<cplx>(samples.data() + node * dim, dim); };
  g(e.point(center), at(0));
  for (std::size_t k = 0; k < 10; ++k) {
    g(e.point(center - half * kXgk[k]), at(2 * k + 1));
    g(e.point(center + half * kXgk[k]), at(2 * k + 2));
  }
  for (const cplx& v : samples) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }

  const double scale = half * std::abs(dz);
  out.a = a;
  out.b = b;
  out.value.assign(dim, cplx{});
  out.error = 0.0;
  for (std::size_t c = 0; c < dim; ++c) {
    const cplx fc = samples[c];
    cplx kronrod = kWgk[10] * fc;
    cplx gauss{};
    double resabs = kWgk[10] * std::abs(fc);
    for (std::size_t k = 0; k < 10; ++k) {
      const cplx f1 = samples[(2 * k + 1) * dim + c];
      const cplx f2 = samples[(2 * k + 2) * dim + c];
      kronrod += kWgk[k] * (f1 + f2);
      resabs += kWgk[k] * (std::abs(f1) + std::abs(f2));
      if (k % 2 == 1) gauss += kWg[k / 2] * (f1 + f2);
    }
    const cplx mean = 0.5 * kronrod;
    double resasc = kWgk[10] * std::abs(fc - mean);
    for (std::size_t k = 0; k < 10; ++k) {
      resasc += kWgk[k] * (std::abs(samples[(2 * k + 1) * dim + c] - mean) +
                           std::abs(samples[(2 * k + 2) * dim + c] - mean));
    }
    resabs *= scale;
    resasc *= scale;
    double err = std::abs(kronrod - gauss) * scale;
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > kUflow / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
    out.value[c] = kronrod * half * dz;
    out.error = std::max(out.error, err);
  }
  return true;
}

double max_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const cplx& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

VectorQuadResult gk_integrate_edge(const VectorIntegrand& g, std::size_t components,
                                   const Edge& e, const QuadConfig& cfg) {
  VectorQuadResult result;
  result.values.assign(components, cplx{});
  std::vector<cplx> samples;

  // Two starting panels: a single panel reports zero error for integrands
  // that are odd about the edge midpoint, singular or not.
  std::priority_queue<Interval, std::vector<Interval>, ByError> heap;
  for (const auto [a, b] : {std::pair{0.0, 0.5}, std::pair{0.5, 1.0}}) {
    Interval panel;
    result.evaluations += 21;
    if (!gk21(g, components, e, a, b, samples, panel)) {
      result.error_estimate = std::numeric_limits<double>::infinity();
      return result;
    }
    heap.push(std::move(panel));
  }

  int bisections = 0;
  for (;;) {
    // Re-summing from the panels avoids drift in the running totals.
    std::vector<cplx> total(components, cplx{});
    double error = 0.0;
    std::vector<Interval> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
      panels.push_back(heap.top());
      heap.pop();
    }
    for (const Interval& p : panels) {
      for (std::size_t c = 0; c < components; ++c) total[c] += p.value[c];
      error += p.error;
    }
    for (Interval& p : panels) heap.push(std::move(p));

    result.values = total;
    result.error_estimate = error;
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * max_abs(total));
    if (error <= tol) {
      result.converged = true;
      return result;
    }
    if (bisections >= cfg.max_interval_subdivisions) return result;

    Interval worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) return result;
    heap.pop();
    Interval left;
    Interval right;
    result.evaluations += 42;
    if (!gk21(g, components, e, worst.a, mid, samples, left) ||
        !gk21(g, components, e, mid, worst.b, samples, right)) {
      result.error_estimate = std::numeric_limits<double>::infinity();
      result.converged = false;
      return result;
    }
    heap.push(std::move(left));
    heap.push(std::move(right));
    ++bisections;
  }
}

QuadResult gk_integrate_edge(const ComplexFn& g, const Edge& e, const QuadConfig& cfg) {
  const VectorIntegrand wrapped = [&g](cplx z, std::span<cplx> out) { out[0] = g(z); };
  const VectorQuadResult r = gk_integrate_edge(wrapped, 1, e, cfg);
  return {r.values[0], r.error_estimate, r.evaluations, r.converged};
}

EdgeCache::Key EdgeCache::key(const Edge& e) {
  return {e.start.real(), e.start.imag(), e.end.real(), e.end.imag()};
}

std::optional<QuadResult> EdgeCache::find(const Edge& e) const {
  std::lock_guard lock(mutex_);
  if (auto it = entries_.find(key(e)); it != entries_.end()) return it->second;
  if (auto it = entries_.find(key(e.reversed())); it != entries_.end()) {
    QuadResult r = it->second;
    r.value = -r.value;
    return r;
  }
  return std::nullopt;
}

void EdgeCache::insert(const Edge& e, const QuadResult& r) {
  std::lock_guard lock(mutex_);
  entries_.insert_or_assign(key(e), r);
}

std::size_t EdgeCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

ArgPrincipleOutcome count_zeros(const FunctionHandle& fh, const Rectangle& r,
                                const QuadConfig& cfg, EdgeCache& cache) {
  const ComplexFn g = [&fh](cplx z) { return fh.log_derivative(z); };
  ArgPrincipleOutcome outcome;
  cplx total{};
  for (const Edge& e : r.edges()) {
    std::optional<QuadResult> q = cache.find(e);
    if (!q) {
      q = gk_integrate_edge(g, e, cfg);
      cache.insert(e, *q);
    }
    if (!q->converged) {
      outcome.status = CountStatus::QuadratureFailure;
      outcome.failed_edge = e;
      return outcome;
    }
    total += q->value;
  }
  outcome.value = total / cplx(0.0, 2.0 * std::numbers::pi);
  const double nearest = std::round(outcome.value.real());
  if (std::abs(outcome.value - nearest) < cfg.integer_tol && nearest >= 0.0) {
    outcome.status = CountStatus::Integer;
    outcome.count = static_cast<int>(nearest);
  } else {
    outcome.status = CountStatus::NonInteger;
  }
  return outcome;
}

}  // namespace holozero
