#pragma once

#include <filesystem>
#include <optional>

#include <nlohmann/json_fwd.hpp>

#include "turnpike/solvers.hpp"

namespace turnpike {

/// The tracking data shared by both objectives: target state z on the grid,
/// observation region omega, time-independent source f, initial datum y0.
struct TrackingTarget {
  ScalarField target;   // z, vanishing on the frame
  DomainMask omega;     // observation region
  ScalarField source;   // f
  ScalarField initial;  // y0

  TrackingTarget(ScalarField z, DomainMask omega_, ScalarField f, ScalarField y0);
};

/// One objective evaluation: value = l2_part + h1_part, both nonnegative.
struct CostReport {
  double value = 0.0;
  double l2_part = 0.0;
  double h1_part = 0.0;
  std::optional<double> horizon;  // nullopt = stationary
  PdeStats pde;
};

nlohmann::json cost_report_to_json(const CostReport& r);

/// Stationary cost: sum over omega cells of h^2(|p-z|^2 + |grad_h(p-z)|^2)
/// with p the Poisson solution on the mask, gradients by forward differences
/// of the zero-extended mismatch.
CostReport elliptic_cost(const DomainMask& mask, const TrackingTarget& target);

/// Time-averaged cost (1/T) sum_k dt * [same sum at state y_k], left-endpoint
/// quadrature over the implicit-Euler trajectory on [0, T].
CostReport parabolic_cost(const DomainMask& mask, const TrackingTarget& target, double horizon,
                          double dt);

/// Appends `mask_id,horizon,value,l2_part,h1_part` rows to a CSV file,
/// writing the header when the file starts empty.
class CostLedger {
 public:
  explicit CostLedger(const std::filesystem::path& path);
  void append(std::uint64_t mask_id, const CostReport& report);

 private:
  std::filesystem::path path_;
};

/// Reusable stationary objective for the optimizer: carries scratch buffers
/// and warm-starts each CG solve from the previously evaluated mask's
/// solution (an initial guess only; every solve still converges to the fixed
/// tolerance).
class EllipticObjective {
 public:
  explicit EllipticObjective(const TrackingTarget& target);

  double operator()(const DomainMask& mask);
  CostReport last_report() const { return last_; }
  PdeStats total_stats() const { return total_; }

 private:
  const TrackingTarget& target_;
  ScalarField warm_;
  bool have_warm_ = false;
  CostReport last_;
  PdeStats total_;
};

/// Reusable time-averaged objective for a fixed horizon; trajectories are
/// re-marched per mask (no cross-evaluation state).
class ParabolicObjective {
 public:
  ParabolicObjective(const TrackingTarget& target, double horizon, double dt);

  double operator()(const DomainMask& mask);
  CostReport last_report() const { return last_; }
  PdeStats total_stats() const { return total_; }
  double horizon() const { return horizon_; }
  double dt() const { return dt_; }

 private:
  const TrackingTarget& target_;
  double horizon_;
  double dt_;
  CostReport last_;
  PdeStats total_;
};

}  // namespace turnpike
