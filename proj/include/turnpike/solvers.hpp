#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "turnpike/laplacian.hpp"

namespace turnpike {

/// Aggregate solver statistics carried through cost reports and run ledgers.
struct PdeStats {
  long solves = 0;
  long cg_iterations = 0;
  long steps = 0;
  double last_residual = 0.0;

  PdeStats& operator+=(const PdeStats& o) {
    solves += o.solves;
    cg_iterations += o.cg_iterations;
    steps += o.steps;
    last_residual = o.last_residual;
    return *this;
  }
};

struct CgResult {
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Relative residual tolerance and iteration cap for the conjugate-gradient
/// solves. The cap defaults to 10x the system dimension.
struct CgOptions {
  double tol = 1e-10;
  long max_iterations = 0;
};

/// Conjugate gradients for y = op^{-1} b where `apply` realizes an SPD
/// operator on packed vectors. `x` carries the initial guess in and the
/// solution out. Throws SolverError if the tolerance is not met within the
/// budget (an SPD assembly bug, not a data condition).
CgResult conjugate_gradient(const std::function<void(const double*, double*)>& apply,
                            const std::vector<double>& b, std::vector<double>& x,
                            const CgOptions& options = {});

struct PoissonSolution {
  ScalarField field;
  CgResult cg;
};

/// Solve -Delta p = f on the mask with homogeneous Dirichlet data, f given on
/// the grid (values off the mask are ignored). `warm_start` seeds CG.
PoissonSolution solve_poisson(const DomainMask& mask, const ScalarField& source,
                              const ScalarField* warm_start = nullptr,
                              const CgOptions& options = {});
PoissonSolution solve_poisson(const SparseOperator& op, const ScalarField& source,
                              const ScalarField* warm_start = nullptr,
                              const CgOptions& options = {});

/// Implicit-Euler time stepper for dy/dt = Delta y + f: each step solves
/// (I + dt A) y+ = y + dt f. Unconditionally stable; steps warm-start from a
/// linear extrapolation of the previous two states.
class HeatStepper {
 public:
  HeatStepper(const SparseOperator& op, const ScalarField& source, const ScalarField& initial,
              double dt, const CgOptions& options = {});

  void advance();

  const std::vector<double>& state() const { return y_; }
  void state_field(ScalarField& out) const { op_.scatter(y_, out); }
  double time() const { return static_cast<double>(steps_) * dt_; }
  long steps_taken() const { return steps_; }
  long cg_iterations() const { return cg_iterations_; }
  double last_residual() const { return last_residual_; }
  double dt() const { return dt_; }

 private:
  const SparseOperator& op_;
  double dt_;
  CgOptions options_;
  std::vector<double> f_;
  std::vector<double> y_;
  std::vector<double> y_prev_;
  std::vector<double> rhs_;
  std::vector<double> guess_;
  long steps_ = 0;
  long cg_iterations_ = 0;
  double last_residual_ = 0.0;
};

/// Sampled implicit-Euler trajectory on [0, T]. The step count is
/// round(T/dt) and dt is adjusted so the last sample lands exactly on T.
struct HeatTrajectory {
  std::vector<double> times;
  std::vector<ScalarField> states;
  double dt = 0.0;
  PdeStats stats;
};

/// March the heat equation and record every `stride`-th state (plus the
/// initial and final ones). y0 is restricted to the mask first.
HeatTrajectory solve_heat(const DomainMask& mask, const ScalarField& source,
                          const ScalarField& initial, double horizon, double dt, int stride = 1);

/// Fixed step-size rule used across the experiments: dt = min(h, T/64).
double default_dt(double h, double horizon);

struct EigenPair {
  double value = 0.0;
  ScalarField vector;
  int iterations = 0;
};

/// Smallest Dirichlet eigenvalue and eigenvector by inverse power iteration
/// (each iteration reuses the CG Poisson solver). The vector is normalized to
/// unit discrete L2 norm with nonnegative mean. Throws ConvergenceError if
/// the Rayleigh quotient has not settled within the budget.
EigenPair smallest_eigenvalue(const DomainMask& mask, double tol = 1e-8, int max_iterations = 500);

}  // namespace turnpike
