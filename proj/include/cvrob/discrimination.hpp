#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cvrob/robustness.hpp"

namespace cvrob {

// Ensemble {p_i, Lambda_i} with one effect M_i per channel.
struct DiscriminationTask {
  std::vector<Channel> channels;
  std::vector<double> probs;
  std::vector<Matrix> measurement;

  // Throws InvalidArgument unless probs sum to 1, effects are PSD and sum to I (1e-10).
  void validate() const;
};

// sum_i p_i Tr(M_i Lambda_i(rho))
double p_success(const DiscriminationTask& task, const DensityOperator& rho);
// E = sum_i p_i Lambda_i^dag(M_i), so p_success(rho) = Tr(E rho).
Matrix effective_operator(const DiscriminationTask& task);

// Measurement {W/||W||, I - W/||W||} on the ensemble {(1, id), (0, Lambda')}.
DiscriminationTask optimal_task_from_witness(const Witness& w, const Channel& other);

// How sup over free states of p_success is certified.
struct DenominatorSpec {
  enum class Kind { kAnalytic, kIncoherentExtreme, kCoherentGrid };
  Kind kind = Kind::kIncoherentExtreme;
  double value = 0.0;  // kAnalytic only
  std::string method;  // kAnalytic only
  GridSpec grid{};     // kCoherentGrid only

  static DenominatorSpec analytic(double value, std::string method);
  // b / ||W||_inf for tasks built by optimal_task_from_witness from an analytic witness.
  static DenominatorSpec from_witness(const Witness& w);
  static DenominatorSpec incoherent();
  static DenominatorSpec coherent_grid(GridSpec grid = {});
};

struct AdvantageReport {
  double p_succ_state = 0.0;
  double p_succ_best_free = 0.0;  // certified (inflated for grid denominators)
  double p_succ_best_free_raw = 0.0;
  double ratio = 0.0;
  double ratio_raw = 0.0;  // against the uninflated denominator
  std::string denominator_method;
  bool below_random_guess = false;  // best free p_succ < 1/(number of channels)
  std::optional<RobustnessEstimate> robustness_interval;
};

AdvantageReport advantage_ratio(const DiscriminationTask& task, const DensityOperator& rho,
                                const FreeSetSpec& free, const DenominatorSpec& denom,
                                std::optional<RobustnessEstimate> robustness = std::nullopt);

struct DisplacementDemo {
  AdvantageReport report;
  double bound = 0.0;  // e^r
  bool within_bound = true;
  std::vector<double> shifts;
  int cutoff = 0;
};

// Probe S(-r)|0> under displacements D_t (t real) with x-quadrature binning at the nearest sqrt2 t_k.
DisplacementDemo displacement_ensemble_demo(double r, const std::vector<double>& shifts,
                                            int cutoff = 120);

}  // namespace cvrob
