#include "turnpike/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "turnpike/hausdorff.hpp"
#include "turnpike/kernels.hpp"
#include "turnpike/log.hpp"
#include "turnpike/pool.hpp"
#include "turnpike/rng.hpp"
#include "turnpike/svg.hpp"

namespace turnpike {

double DtRule::dt_for(double h, double horizon) const {
  if (fixed > 0.0) return std::min(fixed, horizon);
  return default_dt(h, horizon);
}

void SweepConfig::validate() const {
  if (horizons.empty()) throw ConfigError("sweep: at least one horizon required");
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (!(horizons[i] > 0.0)) throw ConfigError("sweep: horizons must be positive");
    if (i > 0 && horizons[i] <= horizons[i - 1])
      throw ConfigError("sweep: horizons must be strictly increasing");
  }
  if (restarts < 3) throw ConfigError("sweep: restart count must be >= 3");
  if (restarts > 1024) throw ConfigError("sweep: restart count must be <= 1024");
  if (elliptic_steps < 0 || parabolic_steps < 0) throw ConfigError("sweep: negative step budget");
  if (target.omega.grid() != grid || init.grid() != grid || cls.omega.grid() != grid)
    throw ConfigError("sweep: grid mismatch between fields, masks and grid");
}

namespace {

std::string csv_row(const SweepRow& r) {
  char line_buffer[512];
  std::snprintf(line_buffer, sizeof(line_buffer),
                "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.horizon, r.cost_parabolic,
                r.cost_elliptic, r.gap, r.hc_distance, r.parabolic_at_elliptic, r.quasi_gap,
                r.elliptic_at_parabolic);
  return line_buffer;
}

constexpr const char* kCsvHeader = "T,J_T,J_s,gap,d_hc,J_T_at_Omega_s,quasi_gap,J_s_at_Omega_T\n";

std::string horizon_tag(double horizon) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%g", horizon);
  for (char* p = buf; *p; ++p)
    if (*p == '.') *p = 'p';
  return buf;
}

struct ChainOutcome {
  std::optional<DomainMask> mask;
  double canonical_cost = 0.0;
  long evaluations = 0;
};

// One annealing chain (plus optional polish) against an arbitrary objective.
// `canonical` re-evaluates a mask with a cold, history-free solve so reported
// numbers do not depend on the chain's warm-start path.
ChainOutcome run_chain(const std::function<double(const DomainMask&)>& objective,
                       const std::function<double(const DomainMask&)>& canonical,
                       const AdmissibleClass& cls, const DomainMask& init,
                       const SweepConfig& cfg, long steps, std::uint64_t chain_seed,
                       bool do_polish) {
  AnnealSchedule schedule;
  schedule.cooling = cfg.cooling;
  schedule.steps_per_temperature = cfg.steps_per_temperature;
  schedule.total_steps = steps;
  schedule.seed = chain_seed;
  schedule.initial_temperature = cfg.initial_temperature >= 0.0
                                     ? cfg.initial_temperature
                                     : auto_temperature(canonical(init));

  OptimizeResult result = optimize(objective, cls, init, schedule);
  DomainMask best = do_polish ? polish(objective, cls, result.best) : result.best;
  ChainOutcome out{std::move(best), 0.0, result.trace.evaluations};
  out.canonical_cost = canonical(*out.mask);
  return out;
}

}  // namespace

SweepReport run_sweep(const SweepConfig& config, const RowSink& sink) {
  config.validate();
  const int jobs = config.jobs > 0 ? config.jobs : hardware_jobs();
  const bool write = !config.out_dir.empty();

  SweepReport report;
  report.manifest = sweep_config_to_json(config);

  std::filesystem::path csv_path;
  if (write) {
    std::filesystem::create_directories(config.out_dir);
    std::ofstream manifest(config.out_dir / "manifest.json", std::ios::binary);
    if (!manifest) throw ConfigError("cannot write manifest.json in " + config.out_dir.string());
    manifest << report.manifest.dump(2) << "\n";
    csv_path = config.out_dir / "sweep.csv";
    std::ofstream csv(csv_path, std::ios::binary);
    csv << kCsvHeader;
  }

  // --- stage 1: the stationary problem, once per restart ---------------------
  const int restarts = config.restarts;
  std::vector<ChainOutcome> elliptic(restarts);
  log_info("sweep: solving the stationary problem (" + std::to_string(restarts) + " restarts)");
  parallel_for_indexed(jobs, restarts, [&](std::size_t r) {
    EllipticObjective objective(config.target);
    auto canonical = [&](const DomainMask& m) { return elliptic_cost(m, config.target).value; };
    elliptic[r] = run_chain([&objective](const DomainMask& m) { return objective(m); }, canonical,
                            config.cls, config.init, config, config.elliptic_steps,
                            mix_seed(config.seed, r), config.polish_elliptic);
  });

  report.elliptic_costs.resize(restarts);
  double best_cost = elliptic[0].canonical_cost;
  int best_r = 0;
  for (int r = 0; r < restarts; ++r) {
    report.elliptic_costs[r] = elliptic[r].canonical_cost;
    report.elliptic_masks.push_back(*elliptic[r].mask);
    if (elliptic[r].canonical_cost < best_cost) {
      best_cost = elliptic[r].canonical_cost;
      best_r = r;
    }
  }
  report.best_restart = best_r;
  const DomainMask& mask_s = report.elliptic_masks[best_r];
  report.noise_floor = *std::max_element(report.elliptic_costs.begin(), report.elliptic_costs.end()) -
                       best_cost;

  if (write) {
    save_mask_text(config.out_dir / "mask_s.txt", mask_s);
    for (int r = 0; r < restarts; ++r)
      save_mask_text(config.out_dir / ("mask_s_restart_" + std::to_string(r) + ".txt"),
                     report.elliptic_masks[r]);
  }
  log_info("sweep: J_s = " + std::to_string(best_cost) +
           ", noise floor = " + std::to_string(report.noise_floor));

  // --- stage 2: the time-averaged problem per horizon and restart ------------
  const std::size_t nh = config.horizons.size();
  std::vector<ChainOutcome> chains(nh * restarts);
  parallel_for_indexed(jobs, nh * restarts, [&](std::size_t idx) {
    const std::size_t hi = idx / restarts;
    const int r = static_cast<int>(idx % restarts);
    const double horizon = config.horizons[hi];
    const double dt = config.dt_rule.dt_for(config.grid.h, horizon);
    long steps = config.parabolic_steps;
    if (config.parabolic_budget_scaled)
      steps = std::max(config.parabolic_steps_min,
                       std::lround(config.parabolic_steps / std::sqrt(horizon)));
    ParabolicObjective objective(config.target, horizon, dt);
    auto canonical = [&](const DomainMask& m) {
      return parabolic_cost(m, config.target, horizon, dt).value;
    };
    const DomainMask& init =
        config.parabolic_init_from_elliptic ? *elliptic[r].mask : config.init;
    chains[idx] = run_chain([&objective](const DomainMask& m) { return objective(m); }, canonical,
                            config.cls, init, config, steps,
                            mix_seed(config.seed, 0x10000 + hi * 1024 + r),
                            config.polish_parabolic);
  });

  // --- stage 3: assemble the ledger row by row -------------------------------
  for (std::size_t hi = 0; hi < nh; ++hi) {
    const double horizon = config.horizons[hi];
    const double dt = config.dt_rule.dt_for(config.grid.h, horizon);
    std::size_t best_idx = hi * restarts;
    for (int r = 1; r < restarts; ++r) {
      const std::size_t idx = hi * restarts + r;
      if (chains[idx].canonical_cost < chains[best_idx].canonical_cost) best_idx = idx;
    }
    const DomainMask& mask_t = *chains[best_idx].mask;
    report.parabolic_masks.push_back(mask_t);

    SweepRow row;
    row.horizon = horizon;
    row.cost_parabolic = chains[best_idx].canonical_cost;
    row.cost_elliptic = best_cost;
    row.gap = std::abs(row.cost_parabolic - row.cost_elliptic);
    row.hc_distance = complementary_hausdorff(mask_t, mask_s);
    row.parabolic_at_elliptic = parabolic_cost(mask_s, config.target, horizon, dt).value;
    row.quasi_gap = row.parabolic_at_elliptic - row.cost_parabolic;
    row.elliptic_at_parabolic = elliptic_cost(mask_t, config.target).value;
    report.rows.push_back(row);

    if (write) {
      std::ofstream csv(csv_path, std::ios::binary | std::ios::app);
      csv << csv_row(row);
      save_mask_text(config.out_dir / ("mask_T_" + horizon_tag(horizon) + ".txt"), mask_t);
    }
    if (sink) sink(row);
    log_info("sweep: T = " + std::to_string(horizon) + " done, gap = " + std::to_string(row.gap));
  }

  report.final_hc_min_over_restarts = complementary_hausdorff(report.parabolic_masks.back(), mask_s);
  for (int r = 0; r < restarts; ++r)
    report.final_hc_min_over_restarts =
        std::min(report.final_hc_min_over_restarts,
                 complementary_hausdorff(report.parabolic_masks.back(), report.elliptic_masks[r]));

  // --- rate fit ---------------------------------------------------------------
  std::vector<std::pair<double, double>> points;
  for (const SweepRow& row : report.rows) points.emplace_back(row.horizon, row.gap);
  try {
    report.gap_fit = fit_rate(points);
  } catch (const InsufficientPointsError& e) {
    log_warn(std::string("sweep: no rate fit: ") + e.what());
  }

  if (write) {
    if (report.gap_fit) {
      std::ofstream rate(config.out_dir / "rate.json", std::ios::binary);
      rate << rate_fit_to_json(*report.gap_fit).dump(2) << "\n";
    }
    SvgSeries gap_series;
    gap_series.label = "|J_T - J_s|";
    for (const SweepRow& row : report.rows) gap_series.points.emplace_back(row.horizon, row.gap);
    std::optional<SvgLine> fit_line;
    if (report.gap_fit) fit_line = SvgLine{report.gap_fit->slope, report.gap_fit->intercept, ""};
    write_loglog_svg(config.out_dir / "gap.svg", "optimal-value gap vs horizon", "T",
                     "|J_T - J_s|", {gap_series}, fit_line);

    SvgSeries hc_series;
    hc_series.label = "d_Hc(Omega_T, Omega_s)";
    hc_series.color = "#2a9d5c";
    for (const SweepRow& row : report.rows)
      hc_series.points.emplace_back(row.horizon, row.hc_distance);
    write_loglog_svg(config.out_dir / "hc.svg", "shape distance vs horizon", "T", "d_Hc",
                     {hc_series});
  }
  return report;
}

std::vector<double> quasi_optimality(const SweepReport& report) {
  std::vector<double> values;
  values.reserve(report.rows.size());
  for (const SweepRow& row : report.rows) values.push_back(row.quasi_gap);

  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  const double rounding = 1e-12 * std::max(1.0, scale);
  const double floor = report.noise_floor + rounding;

  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] < -floor)
      throw Error("quasi_optimality: negative gap " + std::to_string(values[i]) + " at horizon " +
                  std::to_string(report.rows[i].horizon) + " exceeds the noise floor");

  // Decay: fit above-floor gaps when there are enough of them; otherwise the
  // sequence must have dropped to the floor and stayed there.
  std::vector<std::pair<double, double>> above;
  std::size_t last_above = 0;
  bool any_above = false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > floor) {
      above.emplace_back(report.rows[i].horizon, values[i]);
      last_above = i;
      any_above = true;
    }
  }
  if (above.size() >= 4) {
    const RateFit fit = fit_rate(above);
    if (fit.slope > -0.5)
      throw Error("quasi_optimality: fitted slope " + std::to_string(fit.slope) +
                  " is above -0.5");
  } else if (any_above) {
    for (std::size_t i = last_above + 1; i < values.size(); ++i)
      if (values[i] > floor)
        throw Error("quasi_optimality: gaps resurface above the noise floor at horizon " +
                    std::to_string(report.rows[i].horizon));
    if (last_above + 1 == values.size() && values.size() > 1)
      throw Error("quasi_optimality: gaps do not decay to the noise floor");
  }
  return values;
}

std::vector<ProbeRow> gamma_convergence_probe(const DomainMask& base,
                                              std::span<const DomainMask> schedule,
                                              const ScalarField& source,
                                              const AdmissibleClass* cls) {
  if (schedule.empty()) throw InfeasibleError("gamma probe: empty schedule");
  if (cls != nullptr && !is_admissible(base, *cls))
    throw InfeasibleError("gamma probe: base mask is not admissible");

  const ScalarField p = extend_by_zero(solve_poisson(base, source).field, base);

  std::vector<ProbeRow> rows;
  double prev_hc = std::numeric_limits<double>::infinity();
  double prev_err = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < schedule.size(); ++n) {
    const DomainMask& mask = schedule[n];
    if (mask.grid() != base.grid())
      throw GridMismatchError("gamma probe: schedule mask grid differs from base");
    if (cls != nullptr && !is_admissible(mask, *cls))
      throw InfeasibleError("gamma probe: schedule mask " + std::to_string(n) +
                            " is not admissible");

    ProbeRow row;
    row.hc_distance = mask.same_cells(base) ? 0.0 : complementary_hausdorff(mask, base);
    if (row.hc_distance >= prev_hc)
      throw InfeasibleError("gamma probe: schedule distances to base must strictly decrease");
    prev_hc = row.hc_distance;

    const ScalarField pn = extend_by_zero(solve_poisson(mask, source).field, mask);
    ScalarField diff = pn;
    for (int c = 0; c < diff.size(); ++c) diff[c] -= p[c];
    row.h1_error = diff.h1_norm();

    if (row.h1_error > prev_err * (1.0 + 1e-12) + 1e-300)
      throw Error("gamma probe: H1 error increased along the schedule at step " +
                  std::to_string(n));
    prev_err = row.h1_error;

    if (mask.same_cells(base) && row.h1_error != 0.0)
      throw Error("gamma probe: identical mask did not reproduce the base solution exactly");
    rows.push_back(row);
  }
  return rows;
}

std::vector<DomainMask> shrinking_hole_schedule(const DomainMask& base, int i0, int j0, int i1,
                                                int j1) {
  if (i1 <= i0 || j1 <= j0) throw Error("shrinking_hole_schedule: empty hole rectangle");
  std::vector<DomainMask> schedule;
  for (int k = 0;; ++k) {
    const int ii1 = i1 - k, jj1 = j1 - k;
    if (ii1 <= i0 || jj1 <= j0) break;
    schedule.push_back(base.with_block(i0, j0, ii1, jj1, false));
  }
  schedule.push_back(base);
  return schedule;
}

nlohmann::json sweep_config_to_json(const SweepConfig& config) {
  nlohmann::json j;
  j["format"] = "turnpike-sweep-manifest-v1";
  j["version"] = "0.1.0";
  j["kernel_backend"] = kernels::backend_name(kernels::active_backend());
  j["grid"] = {{"nx", config.grid.nx},
               {"ny", config.grid.ny},
               {"h", config.grid.h},
               {"origin", {config.grid.origin_x, config.grid.origin_y}}};
  j["omega"] = mask_to_json(config.cls.omega);
  j["max_components"] = config.cls.max_components;
  j["target"] = {{"z", field_to_json(config.target.target)},
                 {"f", field_to_json(config.target.source)},
                 {"y0", field_to_json(config.target.initial)}};
  j["init"] = mask_to_json(config.init);
  j["horizons"] = config.horizons;
  j["dt_fixed"] = config.dt_rule.fixed;
  j["anneal"] = {{"initial_temperature", config.initial_temperature},
                 {"cooling", config.cooling},
                 {"steps_per_temperature", config.steps_per_temperature},
                 {"elliptic_steps", config.elliptic_steps},
                 {"parabolic_steps", config.parabolic_steps},
                 {"parabolic_steps_min", config.parabolic_steps_min},
                 {"parabolic_budget_scaled", config.parabolic_budget_scaled},
                 {"polish_elliptic", config.polish_elliptic},
                 {"polish_parabolic", config.polish_parabolic},
                 {"parabolic_init_from_elliptic", config.parabolic_init_from_elliptic}};
  j["restarts"] = config.restarts;
  j["seed"] = config.seed;
  j["jobs"] = config.jobs;
  j["out_dir"] = config.out_dir.string();
  return j;
}

SweepConfig sweep_config_from_json(const nlohmann::json& m) {
  try {
    if (m.value("format", "") != "turnpike-sweep-manifest-v1")
      throw ConfigError("manifest: unknown format tag");
    GridSpec grid(m.at("grid").at("nx").get<int>(), m.at("grid").at("ny").get<int>(),
                  m.at("grid").at("h").get<double>());
    grid.origin_x = m.at("grid").at("origin").at(0).get<double>();
    grid.origin_y = m.at("grid").at("origin").at(1).get<double>();

    AdmissibleClass cls(mask_from_json(m.at("omega")), m.at("max_components").get<int>());
    TrackingTarget target(field_from_json(m.at("target").at("z")), cls.omega,
                          field_from_json(m.at("target").at("f")),
                          field_from_json(m.at("target").at("y0")));
    SweepConfig config(grid, std::move(cls), std::move(target), mask_from_json(m.at("init")));

    config.horizons = m.at("horizons").get<std::vector<double>>();
    config.dt_rule.fixed = m.at("dt_fixed").get<double>();
    const auto& a = m.at("anneal");
    config.initial_temperature = a.at("initial_temperature").get<double>();
    config.cooling = a.at("cooling").get<double>();
    config.steps_per_temperature = a.at("steps_per_temperature").get<long>();
    config.elliptic_steps = a.at("elliptic_steps").get<long>();
    config.parabolic_steps = a.at("parabolic_steps").get<long>();
    config.parabolic_steps_min = a.at("parabolic_steps_min").get<long>();
    config.parabolic_budget_scaled = a.at("parabolic_budget_scaled").get<bool>();
    config.polish_elliptic = a.at("polish_elliptic").get<bool>();
    config.polish_parabolic = a.at("polish_parabolic").get<bool>();
    config.parabolic_init_from_elliptic = a.at("parabolic_init_from_elliptic").get<bool>();
    config.restarts = m.at("restarts").get<int>();
    config.seed = m.at("seed").get<std::uint64_t>();
    config.jobs = m.value("jobs", 0);
    config.out_dir = m.value("out_dir", std::string{});
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
}

}  // namespace turnpike
