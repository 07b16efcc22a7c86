#pragma once

#include <vector>

#include "cvrob/robustness.hpp"

namespace cvrob {

// Physicists' Hermite polynomial by H_{n+1} = 2z H_n - 2n H_{n-1}.
cd hermite(int n, cd z);

// |<n|alpha, xi>|^2 with alpha = |alpha| and xi = r e^{i theta}; Poisson limit at r = 0.
double p_n(int n, double abs_alpha, double r, double theta);

struct NgSearch {
  int starts = 16;
  double agree_rel = 1e-6;
};

struct FockNgReport {
  int n = 0;
  double p_star = 0.0;
  double abs_alpha = 0.0;
  double r = 0.0;
  double theta = 0.0;
  double conjecture_residual = 0.0;  // |alpha|^2 + sinh^2 r - n at the optimum
  bool interior = true;              // optimum strictly inside the search box
  bool multimodal = false;           // starts disagree beyond agree_rel
  int agreeing_starts = 0;
  std::vector<double> start_values;
  RobustnessEstimate estimate;
};

// Requires 1 <= n <= 12.
FockNgReport fock_ng_robustness(int n, const NgSearch& search = {});

// Brute-force maximum of P_n on a (|alpha|, r) grid at theta = 0.
double p_n_grid_max_theta0(int n, double step);
// Brute-force 3-D maximum of P_n over (|alpha|, r, theta).
double p_n_grid_max(int n, double step);

// 4e/(3 sqrt 3) for every r >= 0.
double photon_added_ng_robustness(double r);

struct NgRow {
  int n = 0;
  double r_g = 0.0;
  double r_c = 0.0;
  double conjecture_residual = 0.0;
  double theta = 0.0;
};

// Requires n_max <= 10; raises InternalError if some R_G(n) > R_C(n) + 1e-9.
std::vector<NgRow> ng_vs_nc_table(int n_max);

}  // namespace cvrob
