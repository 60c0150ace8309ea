#pragma once

#include <filesystem>
#include <functional>
#include <optional>

#include <nlohmann/json_fwd.hpp>

#include "turnpike/anneal.hpp"
#include "turnpike/costs.hpp"
#include "turnpike/ratefit.hpp"

namespace turnpike {

/// Step-size rule: a fixed dt, or (fixed == 0) the default min(h, T/64).
struct DtRule {
  double fixed = 0.0;
  double dt_for(double h, double horizon) const;
};

/// Full description of a horizon sweep. The annealing budget for the
/// parabolic chains shrinks like 1/sqrt(T) by default: long-horizon chains
/// start from an elliptic optimum, and their cost evaluations are
/// proportionally more expensive.
struct SweepConfig {
  GridSpec grid;
  AdmissibleClass cls;
  TrackingTarget target;
  DomainMask init;

  std::vector<double> horizons;
  DtRule dt_rule;

  double initial_temperature = -1.0;  // < 0: auto, 0.05 x start cost per chain
  double cooling = 0.95;
  long steps_per_temperature = 20;
  long elliptic_steps = 4000;
  long parabolic_steps = 1200;
  long parabolic_steps_min = 150;
  bool parabolic_budget_scaled = true;
  bool polish_elliptic = true;
  bool polish_parabolic = false;
  bool parabolic_init_from_elliptic = true;

  int restarts = 5;
  std::uint64_t seed = 0;
  int jobs = 0;  // 0 = hardware concurrency
  std::filesystem::path out_dir;  // empty: no artifacts written

  SweepConfig(GridSpec g, AdmissibleClass c, TrackingTarget t, DomainMask i)
      : grid(g), cls(std::move(c)), target(std::move(t)), init(std::move(i)) {}

  void validate() const;
};

/// One line of sweep.csv. Column order is part of the file contract:
/// T, J_T, J_s, gap, d_hc, J_T_at_Omega_s, quasi_gap, J_s_at_Omega_T.
struct SweepRow {
  double horizon = 0.0;
  double cost_parabolic = 0.0;       // J^T(Omega_T)
  double cost_elliptic = 0.0;        // J^s(Omega^s)
  double gap = 0.0;                  // |J^T - J^s|
  double hc_distance = 0.0;          // d_Hc(Omega_T, Omega^s)
  double parabolic_at_elliptic = 0.0;  // J^T(Omega^s)
  double quasi_gap = 0.0;            // J^T(Omega^s) - J^T(Omega_T)
  double elliptic_at_parabolic = 0.0;  // J^s(Omega_T)
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::vector<double> elliptic_costs;      // canonical J^s per restart
  std::vector<DomainMask> elliptic_masks;  // per restart
  int best_restart = 0;
  double noise_floor = 0.0;  // spread of J^s across restarts
  std::optional<RateFit> gap_fit;
  std::vector<DomainMask> parabolic_masks;  // best per horizon
  double final_hc_min_over_restarts = 0.0;
  nlohmann::json manifest;
};

using RowSink = std::function<void(const SweepRow&)>;

/// Solve (P^s) per restart, then (P^T) per horizon and restart, assemble the
/// per-horizon ledger, fit |J^T - J^s| against T, and (when out_dir is set)
/// write manifest.json, sweep.csv (flushed row by row), rate.json, the mask
/// files, and the gap/hc plots. Deterministic for a fixed seed and kernel
/// backend; worker count affects wall time only.
SweepReport run_sweep(const SweepConfig& config, const RowSink& sink = {});

/// Per-horizon quasi-optimality gaps J^T(Omega^s) - J^T. Throws Error unless
/// every gap is >= -noise_floor (up to rounding) and the gaps decay: fitted
/// log-log slope <= -0.5 when at least 4 gaps sit above the noise floor,
/// otherwise every above-floor gap must precede every at-floor one (the
/// sequence reached the optimizer's resolution and stayed there).
std::vector<double> quasi_optimality(const SweepReport& report);

struct ProbeRow {
  double hc_distance = 0.0;
  double h1_error = 0.0;
};

/// Poisson solutions along a perturbation schedule shrinking to `base`:
/// pairs (d_Hc(mask_n, base), ||p_n - p||_{H1(D)}) of zero-extended
/// solutions. Requires strictly decreasing d_Hc along the schedule and, when
/// `cls` is given, admissibility of every mask; asserts the H1 column is
/// nonincreasing and exactly zero whenever the schedule reaches base itself.
std::vector<ProbeRow> gamma_convergence_probe(const DomainMask& base,
                                              std::span<const DomainMask> schedule,
                                              const ScalarField& source,
                                              const AdmissibleClass* cls = nullptr);

/// Masks for the standard probe: base minus a rectangular hole that shrinks
/// toward its (i0, j0) corner one cell per step, ending with base itself.
std::vector<DomainMask> shrinking_hole_schedule(const DomainMask& base, int i0, int j0, int i1,
                                                int j1);

nlohmann::json sweep_config_to_json(const SweepConfig& config);
SweepConfig sweep_config_from_json(const nlohmann::json& manifest);

}  // namespace turnpike
