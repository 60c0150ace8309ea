#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "turnpike/mask.hpp"

namespace turnpike {

/// Single-cell flip on the discrete boundary of the active set: activations
/// target inactive non-frame cells with an active 4-neighbor, deactivations
/// target active cells outside omega with an inactive 4-neighbor.
struct MoveProposal {
  int cell = -1;
  bool activate = false;
};

/// Geometric cooling schedule. initial_temperature 0 degenerates to the
/// strict-improvement rule used by polish (the spec property that pins the
/// acceptance semantics).
struct AnnealSchedule {
  double initial_temperature = 0.0;  // absolute; see auto_temperature_scale
  double cooling = 0.95;             // factor per temperature stage, in (0,1)
  long steps_per_temperature = 20;
  long total_steps = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct TraceRow {
  long step = 0;
  bool accepted = false;
  double cost = 0.0;
  int complement_components = 0;
  double temperature = 0.0;
};

struct OptimizationTrace {
  std::vector<TraceRow> rows;
  double initial_cost = 0.0;
  double best_cost = 0.0;
  long best_step = -1;  // -1 = the start mask
  long evaluations = 0;
  double wall_seconds = 0.0;
};

using CostFn = std::function<double(const DomainMask&)>;
using TraceSink = std::function<void(const TraceRow&)>;

/// All legal move proposals for a mask (type-level legality only, not
/// admissibility). Ordered by cell index, hence deterministic.
std::vector<MoveProposal> legal_moves(const DomainMask& mask, const AdmissibleClass& cls);

struct OptimizeResult {
  DomainMask best;
  OptimizationTrace trace;
};

/// Simulated annealing over single-cell boundary flips with hard rejection of
/// inadmissible proposals. Deterministic for a fixed seed. Throws
/// InfeasibleError if the start mask is not admissible.
OptimizeResult optimize(const CostFn& cost_fn, const AdmissibleClass& cls, const DomainMask& init,
                        const AnnealSchedule& schedule, const TraceSink& sink = {});

/// Greedy first-improvement sweeps over all admissible boundary flips,
/// iterated to a local minimum. Cost never increases.
DomainMask polish(const CostFn& cost_fn, const AdmissibleClass& cls, const DomainMask& mask,
                  long max_passes = 1000);

/// Temperature used when a schedule is built with "auto" scaling: a small
/// multiple of the start cost, so chains near an optimum stay conservative.
double auto_temperature(double initial_cost);

}  // namespace turnpike
