#include "holozero/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <thread>

namespace holozero {

int ZeroSearchResult::multiplicity_sum() const {
  int total = 0;
  for (const ZeroRecord& z : zeros) total += z.multiplicity;
  return total;
}

namespace {

// Region tree shared by the subdivision and approximation stages.
class RegionTree {
 public:
  RegionTree(const FunctionHandle& fh, const Rectangle& omega, const EngineConfig& cfg)
      : fh_(fh), cfg_(cfg), rng_(cfg.seed) {
    nodes.push_back(RegionNode{.rect = omega, .id = 0});
  }

  std::vector<RegionNode> nodes;
  EdgeCache cache;
  std::size_t perturbations = 0;

  std::pair<int, int> split_node(int id, double offset) {
    const RegionNode parent = nodes[static_cast<std::size_t>(id)];
    if (parent.depth + 1 > cfg_.max_depth) {
      std::ostringstream msg;
      msg << "subdivision depth budget (" << cfg_.max_depth
          << ") exhausted; zeros may be clustered more densely than the per-region limit "
             "or have multiplicity above it";
      throw EngineError(EngineError::Kind::DepthExceeded, msg.str());
    }
    const SplitResult s = split(parent.rect, offset);
    const int a = static_cast<int>(nodes.size());
    const int b = a + 1;
    nodes.push_back(RegionNode{.rect = s.first, .id = a, .parent = id, .sibling = b,
                               .shared_edge = s.shared, .depth = parent.depth + 1});
    nodes.push_back(RegionNode{.rect = s.second, .id = b, .parent = id, .sibling = a,
                               .shared_edge = s.shared.reversed(), .depth = parent.depth + 1});
    return {a, b};
  }

  double perturbed_offset() {
    std::uniform_real_distribution<double> dist(cfg_.perturb_min, cfg_.perturb_max);
    const double delta = dist(rng_);
    const double sign = (perturbations % 2 == 0) ? 1.0 : -1.0;
    ++perturbations;
    return 0.5 + sign * delta;
  }

  ArgPrincipleOutcome count(int id) {
    return count_zeros(fh_, nodes[static_cast<std::size_t>(id)].rect, cfg_.quad, cache);
  }

  bool descends_from(int id, int ancestor) const {
    for (int cur = nodes[static_cast<std::size_t>(id)].parent; cur >= 0;
         cur = nodes[static_cast<std::size_t>(cur)].parent) {
      if (cur == ancestor) return true;
    }
    return false;
  }

  RegionNode& operator[](int id) { return nodes[static_cast<std::size_t>(id)]; }

 private:
  const FunctionHandle& fh_;
  const EngineConfig& cfg_;
  std::mt19937_64 rng_;
};

[[noreturn]] void throw_non_integer(const Rectangle& r, cplx value) {
  std::ostringstream msg;
  msg << "argument principle gave non-integer " << value << " on [" << r.re_min() << ", "
      << r.re_max() << "] x [" << r.im_min() << ", " << r.im_max()
      << "]; f may not be holomorphic there or the quadrature failed";
  throw EngineError(EngineError::Kind::NonInteger, msg.str());
}

// Breadth-first subdivision on an existing tree; returns accepted ids.
std::vector<int> run_subdivision(RegionTree& tree, const EngineConfig& cfg) {
  std::deque<int> queue{0};
  std::vector<int> accepted;
  std::map<int, int> resplits;

  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    const ArgPrincipleOutcome out = tree.count(id);

    if (out.status == CountStatus::QuadratureFailure) {
      if (id == 0) {
        throw EngineError(EngineError::Kind::BoundaryZero,
                          "quadrature failed on the search region boundary: there is a zero "
                          "on or close to the boundary");
      }
      const int parent = tree[id].parent;
      if (++resplits[parent] > cfg.max_resplit_attempts) {
        throw EngineError(EngineError::Kind::DepthExceeded,
                          "could not place a subdivision edge clear of zeros");
      }
      auto stale = [&](int other) { return tree.descends_from(other, parent); };
      std::erase_if(queue, stale);
      std::erase_if(accepted, stale);
      for (RegionNode& n : tree.nodes) {
        if (n.id != parent && tree.descends_from(n.id, parent)) {
          n.discarded = true;
          n.accepted = false;
        }
      }
      const auto [a, b] = tree.split_node(parent, tree.perturbed_offset());
      queue.push_back(a);
      queue.push_back(b);
      continue;
    }
    if (out.status == CountStatus::NonInteger) throw_non_integer(tree[id].rect, out.value);

    tree[id].count = out.count;
    if (out.count > cfg.max_per_region) {
      const auto [a, b] = tree.split_node(id, 0.5);
      queue.push_back(a);
      queue.push_back(b);
    } else {
      tree[id].accepted = true;
      accepted.push_back(id);
    }
  }
  return accepted;
}

struct RegionApprox {
  bool ok = false;
  int degree = -1;
  bool converged = false;
  std::vector<ZeroRecord> records;
  std::string note;
};

enum class ResidueSign { PositiveOnly, Both };

RegionApprox approximate_region(const FunctionHandle& fh, const RegionNode& node,
                                const EngineConfig& cfg, ResidueSign sign) {
  AAAConfig aaa_cfg = cfg.aaa;
  if (fh.derivative_free()) aaa_cfg.rel_tol = std::max(aaa_cfg.rel_tol, 1e-12);
  const ComplexFn g = [&fh](cplx z) { return fh.log_derivative(z); };

  RegionApprox out;
  try {
    const AAAResult fit = aaa_continuum(g, BoundaryParam(node.rect), aaa_cfg);
    out.degree = fit.iterations - 1;
    out.converged = fit.converged;
    if (!fit.converged) out.note = "AAA did not reach its tolerance";
    for (const PoleInfo& p : fit.approximation.poles()) {
      if (!node.rect.contains(p.location)) continue;
      const double k = std::round(p.residue.real());
      if (std::abs(p.residue - k) >= cfg.residue_tol) continue;
      if (k >= 1.0) {
        out.records.push_back({p.location, static_cast<int>(k), p.residue, node.id, false, false});
      } else if (k <= -1.0 && sign == ResidueSign::Both) {
        out.records.push_back({p.location, static_cast<int>(-k), p.residue, node.id, false, true});
      }
    }
    out.ok = true;
  } catch (const AAASampleError& e) {
    out.note = e.what();
  } catch (const EigenSolveError& e) {
    out.note = e.what();
  }
  return out;
}

// Runs `work(i)` for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& work) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < n; i = next++) work(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void sort_records(std::vector<ZeroRecord>& zeros) {
  std::sort(zeros.begin(), zeros.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
}

RunReport make_report(const RegionTree& tree, const FunctionHandle& fh,
                      FunctionHandle::Counts start) {
  RunReport report;
  const FunctionHandle::Counts now = fh.counts();
  report.evaluations = {now.f - start.f, now.fprime - start.fprime};
  report.regions = tree.nodes;
  report.total_count = tree.nodes.front().count;
  report.perturbations = tree.perturbations;
  return report;
}

}  // namespace

Subdivision subdivide(const FunctionHandle& fh, const Rectangle& omega, const EngineConfig& cfg) {
  RegionTree tree(fh, omega, cfg);
  Subdivision out;
  out.accepted = run_subdivision(tree, cfg);
  out.nodes = std::move(tree.nodes);
  out.perturbations = tree.perturbations;
  return out;
}

std::optional<cplx> newton_polish(const FunctionHandle& fh, cplx start, int multiplicity,
                                  const Rectangle& region) {
  auto finite = [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  const double start_residual = std::abs(fh.f(start));
  cplx z = start;
  cplx best = start;
  double best_residual = start_residual;
  for (int iter = 0; iter < 20; ++iter) {
    const cplx fz = fh.f(z);
    const cplx dfz = fh.fprime(z);
    if (!finite(fz) || !finite(dfz) || dfz == cplx{}) break;
    const cplx step = static_cast<double>(multiplicity) * fz / dfz;
    z -= step;
    if (!finite(z) || !region.contains(z)) break;
    const double residual = std::abs(fh.f(z));
    if (residual < best_residual) {
      best_residual = residual;
      best = z;
    }
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
  }
  if (best_residual < start_residual) return best;
  return std::nullopt;
}

ZeroSearchResult find_zeros(const FunctionHandle& fh, const Rectangle& omega,
                            const EngineConfig& cfg) {
  const FunctionHandle::Counts start = fh.counts();
  RegionTree tree(fh, omega, cfg);
  ZeroSearchResult result;

  try {
    std::deque<int> pending;
    for (int id : run_subdivision(tree, cfg)) pending.push_back(id);

    while (!pending.empty()) {
      // Approximate a whole batch (possibly in parallel), then verify in
      // queue order so the region tree does not depend on the thread count.
      std::vector<int> batch(pending.begin(), pending.end());
      pending.clear();
      std::vector<RegionApprox> approx(batch.size());
      parallel_for(batch.size(), cfg.threads, [&](std::size_t i) {
        const RegionNode& node = tree[batch[i]];
        if (node.count > 0) approx[i] = approximate_region(fh, node, cfg, ResidueSign::PositiveOnly);
      });

      for (std::size_t i = 0; i < batch.size(); ++i) {
        RegionNode& node = tree[batch[i]];
        if (node.count == 0) {
          node.verified = true;
          continue;
        }
        const RegionApprox& a = approx[i];
        node.aaa_degree = a.degree;
        node.aaa_converged = a.converged;
        node.note = a.note;
        int found = 0;
        for (const ZeroRecord& r : a.records) found += r.multiplicity;
        if (a.ok && found == node.count) {
          node.verified = true;
          result.zeros.insert(result.zeros.end(), a.records.begin(), a.records.end());
          continue;
        }

        // Mismatch: split again, perturbing the cut while it meets a zero.
        const int id = node.id;
        double offset = 0.5;
        for (int attempt = 0;; ++attempt) {
          const auto [c1, c2] = tree.split_node(id, offset);
          const ArgPrincipleOutcome o1 = tree.count(c1);
          const ArgPrincipleOutcome o2 = o1.status == CountStatus::Integer ? tree.count(c2) : o1;
          if (o1.status == CountStatus::NonInteger) throw_non_integer(tree[c1].rect, o1.value);
          if (o2.status == CountStatus::NonInteger) throw_non_integer(tree[c2].rect, o2.value);
          if (o1.status == CountStatus::Integer && o2.status == CountStatus::Integer) {
            tree[c1].count = o1.count;
            tree[c2].count = o2.count;
            pending.push_back(c1);
            pending.push_back(c2);
            break;
          }
          tree[c1].discarded = true;
          tree[c2].discarded = true;
          if (attempt + 1 >= cfg.max_resplit_attempts) {
            throw EngineError(EngineError::Kind::DepthExceeded,
                              "could not place a subdivision edge clear of zeros");
          }
          offset = tree.perturbed_offset();
        }
      }
    }
  } catch (EngineError& e) {
    sort_records(result.zeros);
    result.report = make_report(tree, fh, start);
    e.partial = result;
    throw;
  }

  if (cfg.polish) {
    for (ZeroRecord& z : result.zeros) {
      if (auto better = newton_polish(fh, z.location, z.multiplicity, tree[z.region_id].rect)) {
        z.location = *better;
        z.refined = true;
      }
    }
  }
  sort_records(result.zeros);
  result.report = make_report(tree, fh, start);
  return result;
}

ZeroSearchResult find_poles_manual(const FunctionHandle& fh, const Rectangle& omega, int depth,
                                   const EngineConfig& cfg) {
  const FunctionHandle::Counts start = fh.counts();
  RegionTree tree(fh, omega, cfg);
  std::vector<int> level{0};
  for (int d = 0; d < depth; ++d) {
    std::vector<int> next;
    for (int id : level) {
      const auto [a, b] = tree.split_node(id, 0.5);
      next.push_back(a);
      next.push_back(b);
    }
    level = std::move(next);
  }

  std::vector<RegionApprox> approx(level.size());
  parallel_for(level.size(), cfg.threads, [&](std::size_t i) {
    approx[i] = approximate_region(fh, tree[level[i]], cfg, ResidueSign::Both);
  });

  // A singularity sampled on an inserted edge: move that edge.
  std::map<int, int> resplits;
  for (std::size_t i = 0; i < level.size(); ++i) {
    const RegionNode& node = tree[level[i]];
    if (approx[i].ok || node.discarded || node.parent < 0) continue;
    const int parent = node.parent;
    if (++resplits[parent] > cfg.max_resplit_attempts) continue;
    tree[node.id].discarded = true;
    tree[node.sibling].discarded = true;
    const auto [a, b] = tree.split_node(parent, tree.perturbed_offset());
    for (int id : {a, b}) {
      level.push_back(id);
      approx.push_back(approximate_region(fh, tree[id], cfg, ResidueSign::Both));
    }
  }

  ZeroSearchResult result;
  const double merge_tol = 1e-8 * omega.diameter();
  for (std::size_t i = 0; i < level.size(); ++i) {
    RegionNode& node = tree[level[i]];
    if (node.discarded) continue;
    node.accepted = true;
    node.aaa_degree = approx[i].degree;
    node.aaa_converged = approx[i].converged;
    node.note = approx[i].note;
    for (const ZeroRecord& r : approx[i].records) {
      // A point on a shared edge is claimed by both neighbours.
      const bool duplicate = std::any_of(result.zeros.begin(), result.zeros.end(), [&](const ZeroRecord& o) {
        return o.is_pole == r.is_pole && std::abs(o.location - r.location) <= merge_tol;
      });
      if (!duplicate) result.zeros.push_back(r);
    }
  }
  if (cfg.polish) {
    for (ZeroRecord& z : result.zeros) {
      if (z.is_pole) continue;
      if (auto better = newton_polish(fh, z.location, z.multiplicity, tree[z.region_id].rect)) {
        z.location = *better;
        z.refined = true;
      }
    }
  }
  sort_records(result.zeros);
  result.report = make_report(tree, fh, start);
  return result;
}

}  // namespace holozero
