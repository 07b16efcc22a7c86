#pragma once

#include "cvrob/robustness.hpp"

namespace cvrob {

// Primal: min sum(d) s.t. diag(d) >= rho.  Dual: max <W, rho> s.t. W >= 0, W_ii <= 1.
enum class SolverMethod {
  kBarrier,               // log-barrier Newton path following (default)
  kBisectionSubgradient,  // bisection on lambda, projected subgradient inner solve
};

struct SolverOptions {
  SolverMethod method = SolverMethod::kBarrier;
  double rel_gap = 1e-6;
  int max_newton = 2000;
  int bisection_steps = 50;
  int subgradient_iters = 4000;
  int mixing_sweeps = 2000;
};

struct CoherenceSolution {
  RobustnessEstimate estimate;
  Matrix witness;          // dual certificate, PSD with unit-bounded diagonal
  RealVector primal_diag;  // diag(d) >= rho, sum(d) = upper
  double gap = 0.0;
  int iterations = 0;
};

CoherenceSolution finite_dim_robustness(const DensityOperator& rho,
                                        const FreeSetSpec& free = {FreeKind::kIncoherent, {}},
                                        const SolverOptions& opts = {});

// Exact dual value of a candidate witness after rescaling its diagonal to <= 1.
double coherence_dual_value(const Matrix& w, const Matrix& rho);
// Smallest feasible primal value obtained by shifting d until diag(d) >= rho.
double coherence_primal_repair(const RealVector& d, const Matrix& rho, RealVector* repaired);

}  // namespace cvrob
