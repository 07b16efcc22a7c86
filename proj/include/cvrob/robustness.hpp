#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cvrob/channel.hpp"
#include "cvrob/fock.hpp"

namespace cvrob {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Certification { kAnalytic, kGridCertified, kSolver };
std::string to_string(Certification c);

// PSD operator W with b >= sup over free states of <W, sigma>.
struct Witness {
  Matrix op;
  double b = 1.0;
  Certification cert = Certification::kAnalytic;
  std::string method;

  static Witness make(Matrix op, double b, Certification cert, std::string method);
};

enum class Side { kLower, kUpper };

struct Endpoint {
  Side side = Side::kLower;
  double value = 1.0;
  std::string method;
};

struct RobustnessEstimate {
  double lower = 1.0;
  double upper = kInfinity;
  std::optional<double> closed_form;
  std::string lower_method = "trivial: R >= 1";
  std::string upper_method = "none";
  std::vector<std::string> methods;  // every endpoint that was offered
  bool converged = true;
  double tail_mass = 0.0;
  std::optional<Witness> witness;
  std::optional<Matrix> ansatz;

  bool upper_infinite() const { return !(upper < kInfinity); }
  double width() const { return upper - lower; }
  double relative_width() const { return (upper - lower) / std::max(1.0, std::abs(upper)); }
  bool contains(double v, double eps = 1e-9) const;
  double midpoint() const { return upper_infinite() ? lower : 0.5 * (lower + upper); }
};

// Tightest interval from the endpoints plus the implicit lower bound 1; lower > upper beyond
// 1e-9 (relative) raises InconsistencyError naming both certificates. Coinciding endpoints
// (or an explicit closed form inside the interval) populate closed_form.
RobustnessEstimate assemble_estimate(const std::vector<Endpoint>& endpoints,
                                     std::optional<double> closed_form = std::nullopt,
                                     double tail_mass = 0.0);

// <psi| sigma^{-1} |psi> for a free sigma; support violations raise SupportError.
double pure_robustness_upper(const KetVector& psi, const DensityOperator& sigma);
double pure_robustness_upper(const Vector& psi, const DensityOperator& sigma);
// lambda_max(sigma^{-1/2} rho sigma^{-1/2}).
double mixed_robustness_upper(const DensityOperator& rho, const DensityOperator& sigma);

double witness_lower(const DensityOperator& rho, const Witness& w);
double witness_lower(const KetVector& psi, const Witness& w);

// <alpha|W|alpha> with the exact projection of |alpha> onto span{|0>,...,|D-1>}.
double coherent_expectation(const Matrix& w, cd alpha);

struct GridSpec {
  double radius = 6.0;
  double step = 0.05;
  double inflation = 1e-3;
};

struct CoherentSup {
  double value = 0.0;  // refined maximum, not inflated
  cd argmax{0.0, 0.0};
  int refined_peaks = 0;
};

// Grid maximum of <alpha|W|alpha> over |alpha| <= radius with refinement of every grid
// peak above half the grid maximum. Throws CertificationFailure if the values still grow
// outward at the boundary radius.
CoherentSup coherent_sup(const Matrix& w, const GridSpec& grid = {});
Witness certify_coherent_witness(const Matrix& w, const GridSpec& grid = {});

enum class FreeKind { kClassical, kGaussianHull, kSeparable, kIncoherent };

struct FreeSetSpec {
  FreeKind kind = FreeKind::kIncoherent;
  BipartiteIndex dims{};
};

std::string to_string(FreeKind k);

// Kind-specific membership test used to vet channels on sampled free states.
bool is_free_member(const DensityOperator& sigma, const FreeSetSpec& free, double eps = 1e-8);

enum class Verdict { kHolds, kViolated, kIndeterminate };
std::string to_string(Verdict v);

using Estimator = std::function<RobustnessEstimate(const DensityOperator&)>;

struct MonotonicityResult {
  Verdict verdict = Verdict::kIndeterminate;
  RobustnessEstimate before;
  RobustnessEstimate after;
};

// Requires a CPTP channel that keeps every supplied free sample free.
MonotonicityResult monotonicity_check(const DensityOperator& rho, const Channel& channel,
                                      const FreeSetSpec& free, const Estimator& estimate,
                                      const std::vector<DensityOperator>& free_samples,
                                      double slack = 1e-6);

}  // namespace cvrob
