#pragma once

#include "cvrob/fock.hpp"

namespace cvrob {

enum class Parity { kEven, kOdd };

struct GaussianPureParams {
  cd alpha{0.0, 0.0};
  cd xi{0.0, 0.0};  // S(xi) = exp[(xi a+^2 - xi* a^2)/2]
};

struct SqueezedThermalParams {
  double N = 0.0;
  double r = 0.0;
};

// P(n >= cutoff) for a Poisson distribution.
double poisson_tail(double mean, int cutoff);

KetVector fock_state(int n, int cutoff);

// Exact projection of |alpha> onto the first `cutoff` levels, not renormalized.
Vector coherent_amplitudes(cd alpha, int cutoff);
KetVector coherent_state(cd alpha, int cutoff, const TruncationPolicy& policy = {});

// Exact (unnormalized) amplitudes of S(r)|0>; r may be negative.
Vector squeezed_amplitudes(double r, int cutoff);
KetVector squeezed_vacuum(double r, int cutoff, const TruncationPolicy& policy = {});

double cat_normalization(double alpha, Parity parity);
KetVector cat_state(double alpha, Parity parity, int cutoff, const TruncationPolicy& policy = {});

// a+ S(r)|0> / cosh r, the single-photon-added squeezed vacuum.
Vector photon_added_amplitudes(double r, int cutoff);
KetVector photon_added_squeezed(double r, int cutoff, const TruncationPolicy& policy = {});
KetVector photon_subtracted_squeezed(double r, int cutoff, const TruncationPolicy& policy = {});

DensityOperator thermal_state(double N, int cutoff, const TruncationPolicy& policy = {});
DensityOperator phase_randomized_coherent(double n, int cutoff,
                                          const TruncationPolicy& policy = {});
DensityOperator squeezed_thermal_state(const SqueezedThermalParams& p, int cutoff,
                                       const TruncationPolicy& policy = {});

// Exponential taken at an internal cutoff 2D+32, then projected to D x D. The first
// `checked_columns` columns must stay isometric to 1e-8 (truncation-error otherwise).
Matrix squeeze_operator(double r, int cutoff, int checked_columns = 2);
Matrix squeeze_operator(cd xi, int cutoff, int checked_columns = 2);
Matrix displacement_operator(cd alpha, int cutoff, int checked_columns = 2);
// exp of the truncated generator: exactly unitary on the D-level space.
Matrix displacement_unitary(cd alpha, int cutoff);
// exp(i theta a+a)
Matrix rotation_operator(double theta, int cutoff);

// Built at an internal cutoff, then projected; tail mass reported on the result.
KetVector displaced_squeezed(const GaussianPureParams& p, int cutoff,
                             const TruncationPolicy& policy = {});

// Normal-ordered characteristic function of rho_{N,r}.
cd chi1_gaussian(const SqueezedThermalParams& p, cd alpha);
// Symbolic boundedness: e^{2r} <= 2N+1.
bool chi1_bounded(const SqueezedThermalParams& p);

}  // namespace cvrob
