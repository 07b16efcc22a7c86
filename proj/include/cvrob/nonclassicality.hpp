#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cvrob/robustness.hpp"
#include "cvrob/states.hpp"

namespace cvrob {

// e^n n! / n^n, and exactly 1 for the vacuum.
double fock_robustness(int n);
// gamma_n = sup_alpha |<alpha|n>|^2 = e^-n n^n / n!
double fock_gamma(int n);
// Witness |n><n| / gamma_n against the Poisson ansatz sigma_n, both evaluated numerically.
RobustnessEstimate fock_estimate(int n, int cutoff = kDefaultCutoff);

double squeezed_s0(double r);
double thermal_photons_for(double s);  // N(s) = (e^{2s} - 1)/2, so N/(N+1) = tanh s
double squeezed_g_closed(double r, double s);
// <zeta_{r-s}| tau_N(s)^-1 |zeta_{r-s}> summed in the Fock basis until convergence.
double squeezed_g_numeric(double r, double s);
// cosh q / cosh(q - r)
double squeezed_witness_value(double r, double q);
// Fock-projected |zeta_q><zeta_q| from exact amplitudes (not renormalized).
Matrix squeezed_witness_operator(double q, int cutoff);

struct SqueezedOptions {
  double q_offset = 8.0;  // witness squeezing q = r + q_offset
};

struct SqueezedCertificate {
  double r = 0.0;
  double value = 1.0;  // e^r
  double s0 = 0.0;
  double s_numeric = 0.0;
  double g_at_s0 = 1.0;
  double q = 0.0;
  RobustnessEstimate estimate;
};

SqueezedCertificate squeezed_robustness(double r, const SqueezedOptions& opts = {});

struct PhotonAddedReport {
  double r = 0.0;
  double lower_general = 1.0;   // q = r
  double lower_regime = 1.0;    // q = 0 (r <= ln sqrt2) or q = ln(2e^{2r}-3)/2
  double lower_optimized = 1.0; // q maximized numerically
  double q_optimized = 0.0;
  double upper_closed = kInfinity;
  double upper_numeric = kInfinity;
  double s_star = 0.0;
  RobustnessEstimate estimate;
};

double photon_added_lower_q(double r, double q);
double photon_added_regime_lower(double r);
double photon_added_g_closed(double r, double s);
double photon_added_g_numeric(double r, double s);
PhotonAddedReport photon_added_bounds(double r);

struct CatSearch {
  int budget = 4;  // outer grid doubles per level: 16 * 2^level points
};

struct CatBoundReport {
  double alpha = 0.0;
  Parity parity = Parity::kEven;
  double lower = 1.0;
  double upper = kInfinity;
  std::string lower_method;
  std::string upper_method;
  double self_witness = 1.0;
  double fixed_witness = 1.0;
  double optimized_witness = 1.0;
  double gamma_opt = 0.0;
  double upper_cat_mixture = kInfinity;                 // 2 / c
  std::optional<double> upper_phase_randomized;         // odd, alpha < 1
  std::vector<double> lower_by_budget;
  bool converged = true;
};

CatBoundReport cat_bounds(double alpha, Parity parity, const CatSearch& search = {});

// One mode of a product state: the state, a witness with analytic b, and the ansatz pair
// (psi', sigma') in the frame where sigma' is diagonal; upper = <psi'|sigma'^-1|psi'>.
struct ModeCertificate {
  std::string label;
  KetVector psi;
  Witness witness;
  KetVector frame_psi;
  DensityOperator frame_sigma;
};

ModeCertificate fock_mode(int n, int cutoff);
ModeCertificate squeezed_mode(double r, int cutoff, double q);
ModeCertificate vacuum_mode(int cutoff);

struct MultiplicativityReport {
  std::vector<RobustnessEstimate> modes;
  double product_of_lowers = 1.0;
  double product_of_uppers = 1.0;
  RobustnessEstimate joint;
  bool holds = false;
};

MultiplicativityReport multiplicativity_check(const std::vector<ModeCertificate>& modes,
                                              double rel_tol = 1e-6);

enum class StandardVerdict { kFiniteUnknown, kInfinite };
enum class PureTag { kFock, kSqueezed, kCat, kPhotonAdded };

struct StandardReport {
  StandardVerdict verdict = StandardVerdict::kFiniteUnknown;
  std::string reason;
};

StandardReport standard_robustness_infinite(const SqueezedThermalParams& p);
StandardReport standard_robustness_infinite(PureTag tag, double param);
// Grid consistency probe: does chi1 exceed 1 anywhere on |alpha| <= radius?
bool chi1_grid_unbounded(const SqueezedThermalParams& p, double radius = 8.0, int rings = 64,
                         int rays = 64);

struct GenericNcOptions {
  GridSpec grid{};
  int starts = 8;
};

// Single-mode pure states without a closed form: self-witness lower bound (grid-certified)
// and a displaced, rotated, squeezed-thermal ansatz upper bound.
RobustnessEstimate nonclassicality_estimate(const KetVector& psi, const GenericNcOptions& opts = {});
RobustnessEstimate nonclassicality_estimate(const DensityOperator& rho,
                                            const GenericNcOptions& opts = {});

}  // namespace cvrob
