#include "cvrob/nongaussianity.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cvrob/nonclassicality.hpp"
#include "cvrob/optimize.hpp"

namespace cvrob {

cd hermite(int n, cd z) {
  if (n < 0) throw InvalidArgument("hermite: degree must be nonnegative");
  cd h0 = 1.0;
  if (n == 0) return h0;
  cd h1 = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const cd h2 = 2.0 * z * h1 - 2.0 * static_cast<double>(k) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double p_n(int n, double abs_alpha, double r, double theta) {
  if (n < 0 || abs_alpha < 0.0 || r < 0.0) throw InvalidArgument("p_n: negative input");
  const double a2 = abs_alpha * abs_alpha;
  if (r == 0.0) {
    if (n == 0) return std::exp(-a2);
    if (abs_alpha == 0.0) return 0.0;
    return std::exp(-a2 + n * std::log(a2) - std::lgamma(n + 1.0));
  }
  const cd e = std::polar(1.0, theta);
  const cd z = abs_alpha * (std::cosh(r) + e * std::sinh(r)) / std::sqrt(e * std::sinh(2.0 * r));
  const double t = std::tanh(r);
  const double pref = std::exp(n * std::log(0.5 * t) - std::lgamma(n + 1.0)) / std::cosh(r);
  return pref * std::exp(-a2 * (1.0 + std::cos(theta) * t)) * std::norm(hermite(n, z));
}

namespace {

struct Box {
  double amax, rmax;
};

Box box_for(int n) { return {std::sqrt(static_cast<double>(n)) + 3.0, 2.0 + std::log(n + 1.0)}; }

// Map unconstrained NM coordinates into the box; theta folds to [0, pi] by symmetry.
std::array<double, 3> fold(const std::vector<double>& x, const Box& b) {
  const double a = std::min(std::abs(x[0]), b.amax);
  const double r = std::clamp(x[1], 0.0, b.rmax);
  double th = std::fmod(std::abs(x[2]), 2.0 * M_PI);
  if (th > M_PI) th = 2.0 * M_PI - th;
  return {a, r, th};
}

}  // namespace

FockNgReport fock_ng_robustness(int n, const NgSearch& search) {
  if (n < 1 || n > 12) throw InvalidArgument("fock_ng_robustness: n must lie in [1, 12]");
  const Box box = box_for(n);
  auto obj = [&](const std::vector<double>& x) {
    const auto p = fold(x, box);
    return -p_n(n, p[0], p[1], p[2]);
  };

  // Starts: the conjectured curve |alpha|^2 + sinh^2 r = n at theta = 0, then a spread of points.
  std::vector<std::vector<double>> starts;
  const int nstart = std::max(16, search.starts);
  for (int i = 0; i < nstart; ++i) {
    if (i < nstart / 2) {
      const double frac = (i + 0.5) / (nstart / 2);
      const double r = std::asinh(std::sqrt(frac * n));
      const double a = std::sqrt(std::max(0.0, n - std::sinh(r) * std::sinh(r)));
      starts.push_back({a, r, 0.0});
    } else {
      const int j = i - nstart / 2;
      const double a = box.amax * ((j % 4) + 0.5) / 4.0 * 0.8;
      const double r = box.rmax * ((j / 4 % 2) + 0.5) / 2.0 * 0.6;
      const double th = M_PI * ((j % 3) + 0.5) / 3.0;
      starts.push_back({a, r, th});
    }
  }

  FockNgReport rep;
  rep.n = n;
  double best = -1.0;
  std::array<double, 3> bestp{};
  for (const auto& x0 : starts) {
    MinND m = nelder_mead(obj, x0, {0.2, 0.2, 0.3}, 1e-16, 1e-12, 8000);
    // Restart once from the result to shake off a collapsed simplex.
    m = nelder_mead(obj, m.x, {0.02, 0.02, 0.05}, 1e-16, 1e-12, 8000);
    const double v = -m.f;
    rep.start_values.push_back(v);
    if (v > best) {
      best = v;
      bestp = fold(m.x, box);
    }
  }
  rep.p_star = best;
  rep.abs_alpha = bestp[0];
  rep.r = bestp[1];
  rep.theta = bestp[2];
  rep.conjecture_residual = rep.abs_alpha * rep.abs_alpha + std::pow(std::sinh(rep.r), 2) - n;
  rep.interior = rep.abs_alpha < box.amax && rep.r > 0.0 && rep.r < box.rmax;
  const double worst = *std::min_element(rep.start_values.begin(), rep.start_values.end());
  rep.multimodal = best - worst > search.agree_rel * best;
  for (double v : rep.start_values)
    if (best - v <= search.agree_rel * best) ++rep.agreeing_starts;

  const double v = 1.0 / best;
  rep.estimate = assemble_estimate(
      {{Side::kLower, v, "witness |n><n| with b = sup P_n (multi-start search)"},
       {Side::kUpper, v * (1.0 + 1e-6), "phase-randomized Gaussian ansatz at the optimum"}});
  rep.estimate.converged = rep.agreeing_starts >= 2 && rep.interior;
  return rep;
}

double p_n_grid_max_theta0(int n, double step) {
  const Box box = box_for(n);
  double best = 0.0;
  const int na = static_cast<int>(box.amax / step) + 1;
  const int nr = static_cast<int>(box.rmax / step) + 1;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nr; ++j) best = std::max(best, p_n(n, i * step, j * step, 0.0));
  return best;
}

double p_n_grid_max(int n, double step) {
  const Box box = box_for(n);
  double best = 0.0;
  const int na = static_cast<int>(box.amax / step) + 1;
  const int nr = static_cast<int>(box.rmax / step) + 1;
  const int nt = static_cast<int>(M_PI / step) + 1;
  for (int k = 0; k < nt; ++k)
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nr; ++j) best = std::max(best, p_n(n, i * step, j * step, k * step));
  return best;
}

double photon_added_ng_robustness(double r) {
  if (r < 0.0) throw InvalidArgument("photon_added_ng_robustness: r must be nonnegative");
  return 4.0 * std::exp(1.0) / (3.0 * std::sqrt(3.0));
}

std::vector<NgRow> ng_vs_nc_table(int n_max) {
  if (n_max < 1 || n_max > 10) throw InvalidArgument("ng_vs_nc_table: n_max must lie in [1, 10]");
  std::vector<NgRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    const FockNgReport f = fock_ng_robustness(n);
    NgRow row{n, f.estimate.lower, fock_robustness(n), f.conjecture_residual, f.theta};
    if (row.r_g > row.r_c + 1e-9)
      throw InternalError("ng_vs_nc_table: non-Gaussianity exceeds nonclassicality at n = " +
                          std::to_string(n));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cvrob
