#include "turnpike/costs.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

namespace turnpike {

TrackingTarget::TrackingTarget(ScalarField z, DomainMask omega_, ScalarField f, ScalarField y0)
    : target(std::move(z)), omega(std::move(omega_)), source(std::move(f)), initial(std::move(y0)) {
  const GridSpec& g = omega.grid();
  if (target.grid() != g || source.grid() != g || initial.grid() != g)
    throw GridMismatchError("TrackingTarget: fields and omega must share one grid");
  for (int i = 0; i < g.nx; ++i)
    if (target.at(i, 0) != 0.0 || target.at(i, g.ny - 1) != 0.0)
      throw Error("TrackingTarget: target must vanish on the frame");
  for (int j = 0; j < g.ny; ++j)
    if (target.at(0, j) != 0.0 || target.at(g.nx - 1, j) != 0.0)
      throw Error("TrackingTarget: target must vanish on the frame");
}

namespace {

// Observation cells plus their east/north neighbors, flattened for the
// tracking sums. Frame cells are never active, so the neighbors exist.
struct ObservationCells {
  std::vector<int> cell, east, north;

  explicit ObservationCells(const DomainMask& omega) {
    const GridSpec& g = omega.grid();
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        if (omega.active(i, j)) {
          cell.push_back(g.index(i, j));
          east.push_back(g.index(i + 1, j));
          north.push_back(g.index(i, j + 1));
        }
  }
};

// h^2 |s-z|^2 and |grad_h(s-z)|^2 h^2 sums over omega for one state field.
void tracking_terms(const ObservationCells& obs, const ScalarField& state, const ScalarField& z,
                    double h, double& l2, double& h1) {
  double sl2 = 0.0, sh1 = 0.0;
  for (std::size_t k = 0; k < obs.cell.size(); ++k) {
    const double d = state[obs.cell[k]] - z[obs.cell[k]];
    const double de = state[obs.east[k]] - z[obs.east[k]];
    const double dn = state[obs.north[k]] - z[obs.north[k]];
    sl2 += d * d;
    sh1 += (de - d) * (de - d) + (dn - d) * (dn - d);
  }
  l2 = h * h * sl2;
  h1 = sh1;  // ((de-d)/h)^2 * h^2 = (de-d)^2
}

}  // namespace

nlohmann::json cost_report_to_json(const CostReport& r) {
  nlohmann::json j{{"value", r.value},
                   {"l2_part", r.l2_part},
                   {"h1_part", r.h1_part},
                   {"pde",
                    {{"solves", r.pde.solves},
                     {"cg_iterations", r.pde.cg_iterations},
                     {"steps", r.pde.steps},
                     {"last_residual", r.pde.last_residual}}}};
  if (r.horizon)
    j["horizon"] = *r.horizon;
  else
    j["horizon"] = "stationary";
  return j;
}

CostReport elliptic_cost(const DomainMask& mask, const TrackingTarget& target) {
  if (mask.grid() != target.omega.grid())
    throw GridMismatchError("elliptic_cost: mask grid differs from target grid");
  const PoissonSolution sol = solve_poisson(mask, target.source);
  const ObservationCells obs(target.omega);
  CostReport r;
  tracking_terms(obs, sol.field, target.target, mask.grid().h, r.l2_part, r.h1_part);
  r.value = r.l2_part + r.h1_part;
  r.horizon = std::nullopt;
  r.pde.solves = 1;
  r.pde.cg_iterations = sol.cg.iterations;
  r.pde.last_residual = sol.cg.relative_residual;
  return r;
}

CostReport parabolic_cost(const DomainMask& mask, const TrackingTarget& target, double horizon,
                          double dt) {
  if (mask.grid() != target.omega.grid())
    throw GridMismatchError("parabolic_cost: mask grid differs from target grid");
  if (!(horizon > 0.0)) throw Error("parabolic_cost: horizon must be positive");
  if (!(dt > 0.0) || dt > horizon) throw Error("parabolic_cost: need 0 < dt <= horizon");

  const long steps = std::max<long>(1, std::lround(horizon / dt));
  const double dt_adj = horizon / static_cast<double>(steps);

  SparseOperator op(mask);
  const ScalarField y0 = restrict_to(target.initial, mask);
  HeatStepper stepper(op, target.source, y0, dt_adj);
  const ObservationCells obs(target.omega);

  ScalarField state = y0;
  double l2 = 0.0, h1 = 0.0;
  const double h = mask.grid().h;
  for (long s = 0; s < steps; ++s) {
    if (s > 0) op.scatter(stepper.state(), state);
    double tl2 = 0.0, th1 = 0.0;
    tracking_terms(obs, state, target.target, h, tl2, th1);
    l2 += dt_adj * tl2;
    h1 += dt_adj * th1;
    stepper.advance();
  }

  CostReport r;
  r.l2_part = l2 / horizon;
  r.h1_part = h1 / horizon;
  r.value = r.l2_part + r.h1_part;
  r.horizon = horizon;
  r.pde.solves = 1;
  r.pde.steps = steps;
  r.pde.cg_iterations = stepper.cg_iterations();
  r.pde.last_residual = stepper.last_residual();
  return r;
}

CostLedger::CostLedger(const std::filesystem::path& path) : path_(path) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path_, ec) || std::filesystem::file_size(path_, ec) == 0;
  if (fresh) {
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw ConfigError("cannot open cost ledger for writing: " + path_.string());
    out << "mask_id,horizon,value,l2_part,h1_part\n";
  }
}

void CostLedger::append(std::uint64_t mask_id, const CostReport& report) {
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw ConfigError("cannot append to cost ledger: " + path_.string());
  char horizon[40];
  if (report.horizon)
    std::snprintf(horizon, sizeof(horizon), "%.17g", *report.horizon);
  else
    std::snprintf(horizon, sizeof(horizon), "stationary");
  char line[200];
  std::snprintf(line, sizeof(line), "%llu,%s,%.17g,%.17g,%.17g\n",
                static_cast<unsigned long long>(mask_id), horizon, report.value, report.l2_part,
                report.h1_part);
  out << line;
}

EllipticObjective::EllipticObjective(const TrackingTarget& target)
    : target_(target), warm_(target.omega.grid()) {}

double EllipticObjective::operator()(const DomainMask& mask) {
  SparseOperator op(mask);
  const PoissonSolution sol = solve_poisson(op, target_.source, have_warm_ ? &warm_ : nullptr);
  const ObservationCells obs(target_.omega);
  CostReport r;
  tracking_terms(obs, sol.field, target_.target, mask.grid().h, r.l2_part, r.h1_part);
  r.value = r.l2_part + r.h1_part;
  r.pde.solves = 1;
  r.pde.cg_iterations = sol.cg.iterations;
  r.pde.last_residual = sol.cg.relative_residual;
  warm_ = sol.field;
  have_warm_ = true;
  last_ = r;
  total_ += r.pde;
  return r.value;
}

ParabolicObjective::ParabolicObjective(const TrackingTarget& target, double horizon, double dt)
    : target_(target), horizon_(horizon), dt_(dt) {
  if (!(horizon > 0.0)) throw Error("ParabolicObjective: horizon must be positive");
}

double ParabolicObjective::operator()(const DomainMask& mask) {
  last_ = parabolic_cost(mask, target_, horizon_, dt_);
  total_ += last_.pde;
  return last_.value;
}

}  // namespace turnpike
