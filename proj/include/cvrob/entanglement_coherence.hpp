#pragma once

#include <optional>

#include "cvrob/robustness.hpp"

namespace cvrob {

// (sum_i mu_i)^2 over the Schmidt spectrum.
double pure_entanglement_robustness(const KetVector& psi, const BipartiteIndex& idx);

// |w_xi><w_xi| with w_xi = sum_i xi^i |u_i v_i> in the Schmidt basis of psi; b = 1.
Witness shimony_witness(const KetVector& psi, const BipartiteIndex& idx, double xi);

struct VidalTarrach {
  Matrix omega;                // separable: uniform mixture of psi_theta (x) conj(psi_theta)
  std::optional<Matrix> sigma; // absent for product states
  double mu2 = 1.0;            // (sum mu)^2
  double residual = 0.0;       // ||psi + (mu^2-1) sigma - mu^2 omega||_1
  int quadrature_points = 0;
};

// Requires dA = dB = d <= 6.
VidalTarrach vidal_tarrach_decomposition(const KetVector& psi, const BipartiteIndex& idx);

// (sum_i |psi_i|)^2
double coherence_robustness_pure(const KetVector& psi);

double l1_norm(const Matrix& x);
double l1_norm(const DensityOperator& rho);

// sum_{n,m} omega_{nm} |n n><m m|
DensityOperator maximally_correlated_embed(const DensityOperator& omega);

// 1-based (H)_{nm} = 1/(n - m), zero diagonal.
Matrix hilbert_operator(int n);

enum class Sign { kPlus, kMinus };

struct HilbertExampleState {
  int N = 0;
  Sign sign = Sign::kPlus;
  Matrix omega;               // N x N
  std::optional<Matrix> rho;  // N^2 x N^2 embedding, built only for N <= kHilbertDenseMax
  double c_N = 0.0;
};

struct HilbertReport {
  HilbertExampleState state;
  double hilbert_norm = 0.0;         // ||H||_inf, bounded by pi
  double omega_min_eig = 0.0;
  double certificate_min_eig = 0.0;  // lambda_min(2 sigma_N - rho), evaluated on span{|nn>}
  double l1 = 0.0;                   // ||omega||_l1
  double negativity = 0.0;           // (||rho^Gamma||_1 - 1)/2 = (l1 - 1)/2
  std::optional<double> negativity_direct;  // partial transpose + trace norm, small N only
  double robustness_upper = 2.0;
};

inline constexpr int kHilbertDenseMax = 30;

// Requires 10 <= N <= 400.
HilbertReport hilbert_example(int N, Sign sign);

}  // namespace cvrob
