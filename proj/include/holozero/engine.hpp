#ifndef HOLOZERO_ENGINE_HPP
#define HOLOZERO_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "holozero/aaa.hpp"
#include "holozero/function_handle.hpp"
#include "holozero/geometry.hpp"
#include "holozero/numderiv.hpp"
#include "holozero/quadrature.hpp"

namespace holozero {

struct EngineConfig {
  /// Largest argument-principle count accepted per region (M).
  int max_per_region = 7;
  /// Accepted distance of a residue from a nonzero integer.
  double residue_tol = 1e-2;
  int max_depth = 50;
  /// Perturbed splits move the cut by a fraction in [min, max] of the split
  /// side, alternating in sign.
  double perturb_min = 0.01;
  double perturb_max = 0.05;
  /// Consecutive perturbed re-splits of one region before giving up.
  int max_resplit_attempts = 25;
  std::uint64_t seed = 20240917;
  bool polish = false;
  /// Worker threads for the approximation stage.
  int threads = 1;
  AAAConfig aaa;
  QuadConfig quad;
  DerivConfig deriv;
};

struct RegionNode {
  Rectangle rect;
  int id = 0;
  int count = -1;  // argument-principle count, -1 until computed
  int parent = -1;
  int sibling = -1;
  std::optional<Edge> shared_edge;  // edge inserted by the parent's split, as seen by this node
  int depth = 0;
  bool accepted = false;  // accepted by the subdivision stage
  bool verified = false;  // AAA result matched the count
  int aaa_degree = -1;
  bool aaa_converged = false;
  bool discarded = false;  // replaced by a perturbed re-split of its parent
  std::string note;
};

struct ZeroRecord {
  cplx location;
  /// Order of the zero (or of the pole when is_pole).
  int multiplicity = 1;
  cplx raw_residue;
  int region_id = -1;
  bool refined = false;
  bool is_pole = false;
};

struct RunReport {
  FunctionHandle::Counts evaluations;
  std::vector<RegionNode> regions;  // every node ever created, indexed by id
  int total_count = 0;              // argument-principle count of the root
  std::size_t perturbations = 0;
};

struct ZeroSearchResult {
  std::vector<ZeroRecord> zeros;  // sorted by real then imaginary part
  RunReport report;

  int multiplicity_sum() const;
};

class EngineError : public std::runtime_error {
 public:
  enum class Kind { BoundaryZero, NonInteger, DepthExceeded };

  EngineError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

  /// Whatever was computed before the failure.
  ZeroSearchResult partial;

 private:
  Kind kind_;
};

/// Breadth-first argument-principle subdivision until every accepted region
/// holds at most max_per_region zeros. Failed inserted edges are moved by a
/// seeded perturbation.
struct Subdivision {
  std::vector<RegionNode> nodes;  // indexed by id
  std::vector<int> accepted;      // ids, in acceptance order
  std::size_t perturbations = 0;
};

Subdivision subdivide(const FunctionHandle& fh, const Rectangle& omega, const EngineConfig& cfg);

/// Subdivision followed by continuum AAA on f'/f per region, residue
/// filtering, and count verification with re-subdivision on mismatch.
ZeroSearchResult find_zeros(const FunctionHandle& fh, const Rectangle& omega,
                            const EngineConfig& cfg);

/// Uniform subdivision `depth` times and AAA per region, without count
/// verification. Residues near positive integers are zeros, near negative
/// integers poles.
ZeroSearchResult find_poles_manual(const FunctionHandle& fh, const Rectangle& omega, int depth,
                                   const EngineConfig& cfg);

/// Newton iteration (scaled by the multiplicity) from `start`. Returns the
/// polished point only if it stays in `region` and reduces |f|.
std::optional<cplx> newton_polish(const FunctionHandle& fh, cplx start, int multiplicity,
                                  const Rectangle& region);

}  // namespace holozero

#endif  // HOLOZERO_ENGINE_HPP
