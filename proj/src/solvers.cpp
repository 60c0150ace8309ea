#include "turnpike/solvers.hpp"

#include <cmath>
#include <cstdio>

namespace turnpike {

CgResult conjugate_gradient(const std::function<void(const double*, double*)>& apply,
                            const std::vector<double>& b, std::vector<double>& x,
                            const CgOptions& options) {
  const std::size_t n = b.size();
  const auto& k = kernels::ops();
  x.resize(n);

  const double bnorm = std::sqrt(k.dot(b.data(), b.data(), n));
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return {0, 0.0};
  }

  std::vector<double> r(n), p(n), ap(n);
  apply(x.data(), ap.data());
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
  p = r;
  double rr = k.dot(r.data(), r.data(), n);

  const double target = options.tol * bnorm;
  const long max_iterations =
      options.max_iterations > 0 ? options.max_iterations : static_cast<long>(10 * n);

  long it = 0;
  while (std::sqrt(rr) > target) {
    if (it >= max_iterations) {
      char msg[160];
      std::snprintf(msg, sizeof(msg),
                    "conjugate gradient stalled: residual %.3e after %ld iterations (n=%zu)",
                    std::sqrt(rr) / bnorm, it, n);
      throw SolverError(msg);
    }
    apply(p.data(), ap.data());
    const double pap = k.dot(p.data(), ap.data(), n);
    if (!(pap > 0.0)) throw SolverError("conjugate gradient: operator is not positive definite");
    const double alpha = rr / pap;
    k.axpy(alpha, p.data(), x.data(), n);
    k.axpy(-alpha, ap.data(), r.data(), n);
    const double rr_next = k.dot(r.data(), r.data(), n);
    k.xpay(r.data(), rr_next / rr, p.data(), n);
    rr = rr_next;
    ++it;
  }
  return {static_cast<int>(it), std::sqrt(rr) / bnorm};
}

PoissonSolution solve_poisson(const SparseOperator& op, const ScalarField& source,
                              const ScalarField* warm_start, const CgOptions& options) {
  std::vector<double> b, x;
  op.gather(source, b);
  if (warm_start != nullptr)
    op.gather(*warm_start, x);
  else
    x.assign(op.dimension(), 0.0);
  const CgResult cg = conjugate_gradient(
      [&op](const double* in, double* out) { op.apply(in, out); }, b, x, options);
  PoissonSolution out{op.scatter(x), cg};
  return out;
}

PoissonSolution solve_poisson(const DomainMask& mask, const ScalarField& source,
                              const ScalarField* warm_start, const CgOptions& options) {
  SparseOperator op(mask);
  return solve_poisson(op, source, warm_start, options);
}

HeatStepper::HeatStepper(const SparseOperator& op, const ScalarField& source,
                         const ScalarField& initial, double dt, const CgOptions& options)
    : op_(op), dt_(dt), options_(options) {
  if (!(dt > 0.0)) throw Error("HeatStepper: dt must be positive");
  op_.gather(source, f_);
  op_.gather(initial, y_);
  y_prev_ = y_;
  rhs_.resize(op_.dimension());
  guess_.resize(op_.dimension());
}

void HeatStepper::advance() {
  const std::size_t n = y_.size();
  const auto& k = kernels::ops();
  // rhs = y + dt f
  rhs_ = y_;
  k.axpy(dt_, f_.data(), rhs_.data(), n);
  // guess: linear extrapolation of the last two states
  guess_ = y_;
  if (steps_ > 0) {
    k.xpay(y_.data(), -1.0, y_prev_.data(), n);  // y_prev := y - y_prev
    k.axpy(1.0, y_prev_.data(), guess_.data(), n);
  }
  y_prev_ = y_;
  const CgResult cg = conjugate_gradient(
      [this](const double* in, double* out) { op_.apply_shifted(dt_, in, out); }, rhs_, guess_,
      options_);
  y_ = guess_;
  cg_iterations_ += cg.iterations;
  last_residual_ = cg.relative_residual;
  ++steps_;
}

double default_dt(double h, double horizon) { return std::min(h, horizon / 64.0); }

HeatTrajectory solve_heat(const DomainMask& mask, const ScalarField& source,
                          const ScalarField& initial, double horizon, double dt, int stride) {
  if (!(horizon > 0.0)) throw Error("solve_heat: horizon must be positive");
  if (!(dt > 0.0) || dt > horizon) throw Error("solve_heat: need 0 < dt <= horizon");
  if (stride < 1) stride = 1;

  const long steps = std::max<long>(1, std::lround(horizon / dt));
  const double dt_adj = horizon / static_cast<double>(steps);

  SparseOperator op(mask);
  const ScalarField y0 = restrict_to(initial, mask);
  HeatStepper stepper(op, source, y0, dt_adj);

  HeatTrajectory traj;
  traj.dt = dt_adj;
  traj.times.push_back(0.0);
  traj.states.push_back(y0);
  for (long s = 1; s <= steps; ++s) {
    stepper.advance();
    if (s % stride == 0 || s == steps) {
      traj.times.push_back(static_cast<double>(s) * dt_adj);
      traj.states.emplace_back(op.scatter(stepper.state()));
    }
  }
  traj.stats.solves = 1;
  traj.stats.steps = steps;
  traj.stats.cg_iterations = stepper.cg_iterations();
  traj.stats.last_residual = stepper.last_residual();
  return traj;
}

EigenPair smallest_eigenvalue(const DomainMask& mask, double tol, int max_iterations) {
  SparseOperator op(mask);
  const std::size_t n = op.dimension();
  const auto& k = kernels::ops();

  std::vector<double> v(n, 1.0), w(n, 0.0), av(n);
  auto normalize = [&](std::vector<double>& u) {
    const double norm = std::sqrt(k.dot(u.data(), u.data(), n));
    for (auto& x : u) x /= norm;
  };
  normalize(v);

  auto apply = [&op](const double* in, double* out) { op.apply(in, out); };

  double lambda = 0.0;
  bool converged = false;
  int iterations = 0;
  for (int it = 0; it < max_iterations && !converged; ++it) {
    conjugate_gradient(apply, v, w);
    normalize(w);
    v = w;
    op.apply(v.data(), av.data());
    const double rayleigh = k.dot(av.data(), v.data(), n);
    converged = it > 0 && std::abs(rayleigh - lambda) <= tol * std::abs(rayleigh);
    lambda = rayleigh;
    iterations = it + 1;
  }
  if (!converged)
    throw ConvergenceError("smallest_eigenvalue: Rayleigh quotient did not settle");

  // Sign convention: nonnegative mean; unit L2(Omega) norm.
  double mean = 0.0;
  for (double x : v) mean += x;
  if (mean < 0.0)
    for (auto& x : v) x = -x;
  const double l2 = op.scale() * std::sqrt(k.dot(v.data(), v.data(), n));
  for (auto& x : v) x /= l2;

  EigenPair out{lambda, op.scatter(v), iterations};
  return out;
}

}  // namespace turnpike
