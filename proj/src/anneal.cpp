#include "turnpike/anneal.hpp"

#include <chrono>
#include <cmath>

#include "turnpike/log.hpp"
#include "turnpike/rng.hpp"

namespace turnpike {

void AnnealSchedule::validate() const {
  if (initial_temperature < 0.0) throw Error("AnnealSchedule: temperature must be >= 0");
  if (!(cooling > 0.0 && cooling < 1.0)) throw Error("AnnealSchedule: cooling must be in (0,1)");
  if (steps_per_temperature <= 0) throw Error("AnnealSchedule: steps_per_temperature must be > 0");
  if (total_steps < 0) throw Error("AnnealSchedule: total_steps must be >= 0");
}

double auto_temperature(double initial_cost) { return 0.05 * std::abs(initial_cost); }

std::vector<MoveProposal> legal_moves(const DomainMask& mask, const AdmissibleClass& cls) {
  const GridSpec& g = mask.grid();
  std::vector<MoveProposal> moves;
  static constexpr int di[4] = {-1, 1, 0, 0};
  static constexpr int dj[4] = {0, 0, -1, 1};
  for (int j = 1; j < g.ny - 1; ++j) {
    for (int i = 1; i < g.nx - 1; ++i) {
      const int c = g.index(i, j);
      const bool on = mask.active(c);
      if (on && cls.omega.active(c)) continue;  // omega cells never deactivate
      bool boundary = false;
      for (int k = 0; k < 4 && !boundary; ++k)
        boundary = mask.active(i + di[k], j + dj[k]) != on;
      if (boundary) moves.push_back({c, !on});
    }
  }
  return moves;
}

OptimizeResult optimize(const CostFn& cost_fn, const AdmissibleClass& cls, const DomainMask& init,
                        const AnnealSchedule& schedule, const TraceSink& sink) {
  schedule.validate();
  if (!is_admissible(init, cls)) throw InfeasibleError("optimize: start mask is not admissible");

  const auto start_clock = std::chrono::steady_clock::now();
  Rng rng(schedule.seed);

  DomainMask current = init;
  double current_cost = cost_fn(current);
  int current_components = count_complement_components(current);

  OptimizeResult result{current, OptimizationTrace{}};
  OptimizationTrace& trace = result.trace;
  trace.initial_cost = current_cost;
  trace.best_cost = current_cost;
  trace.evaluations = 1;

  double temperature = schedule.initial_temperature;
  for (long step = 0; step < schedule.total_steps; ++step) {
    if (step > 0 && step % schedule.steps_per_temperature == 0) temperature *= schedule.cooling;

    const auto moves = legal_moves(current, cls);
    if (moves.empty()) break;  // fully frozen mask; nothing can move
    const MoveProposal move = moves[rng.below(moves.size())];

    DomainMask proposal = current.flipped(move.cell);
    if (!is_admissible(proposal, cls)) continue;  // hard rejection, no draw

    const double proposal_cost = cost_fn(proposal);
    ++trace.evaluations;
    const double delta = proposal_cost - current_cost;

    bool accept = delta < 0.0;
    if (!accept && temperature > 0.0) accept = rng.uniform01() < std::exp(-delta / temperature);

    if (accept) {
      current = std::move(proposal);
      current_cost = proposal_cost;
      current_components = count_complement_components(current);
      if (current_cost < trace.best_cost) {
        trace.best_cost = current_cost;
        trace.best_step = step;
        result.best = current;
      }
    }
    const TraceRow row{step, accept, accept ? current_cost : proposal_cost, current_components,
                       temperature};
    trace.rows.push_back(row);
    if (sink) sink(row);
  }

  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_clock).count();
  return result;
}

DomainMask polish(const CostFn& cost_fn, const AdmissibleClass& cls, const DomainMask& mask,
                  long max_passes) {
  if (!is_admissible(mask, cls)) throw InfeasibleError("polish: mask is not admissible");
  DomainMask current = mask;
  double current_cost = cost_fn(current);
  for (long pass = 0; pass < max_passes; ++pass) {
    bool improved = false;
    const auto moves = legal_moves(current, cls);
    for (const MoveProposal& move : moves) {
      // The move list is recomputed lazily: a stale proposal may no longer be
      // on the boundary, but flipping it is still a legal single-cell move.
      DomainMask proposal = current.flipped(move.cell);
      if (!is_admissible(proposal, cls)) continue;
      const double proposal_cost = cost_fn(proposal);
      if (proposal_cost < current_cost) {
        current = std::move(proposal);
        current_cost = proposal_cost;
        improved = true;
      }
    }
    if (!improved) return current;
  }
  log_warn("polish: pass budget exhausted before reaching a local minimum");
  return current;
}

}  // namespace turnpike
