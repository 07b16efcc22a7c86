#include "cvrob/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cvrob/error.hpp"

namespace cvrob {

Min1D golden_section_min(const std::function<double(double)>& f, double a, double b,
                         double rel_tol, int max_iter) {
  if (!(a < b)) throw InvalidArgument("golden_section_min: need a < b");
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  Min1D out;
  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it + 1;
    if (b - a <= rel_tol * std::max(1.0, std::abs(0.5 * (a + b)))) {
      out.converged = true;
      break;
    }
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  if (fc <= fd) {
    out.x = c;
    out.f = fc;
  } else {
    out.x = d;
    out.f = fd;
  }
  return out;
}

Min1D bracketed_min(const std::function<double(double)>& f, double a, double b, int grid,
                    double rel_tol, int max_iter) {
  if (grid < 3) grid = 3;
  const double h = (b - a) / (grid - 1);
  int best = 0;
  double fbest = f(a);
  for (int i = 1; i < grid; ++i) {
    const double v = f(a + i * h);
    if (v < fbest) {
      fbest = v;
      best = i;
    }
  }
  const double lo = a + std::max(0, best - 1) * h;
  const double hi = a + std::min(grid - 1, best + 1) * h;
  Min1D m = golden_section_min(f, lo, hi, rel_tol, max_iter);
  if (fbest < m.f) {
    m.x = a + best * h;
    m.f = fbest;
  }
  return m;
}

MinND nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                  std::vector<double> x0, std::vector<double> step, double ftol, double xtol,
                  int max_eval) {
  const std::size_t n = x0.size();
  if (step.size() != n) throw InvalidArgument("nelder_mead: step size mismatch");
  std::vector<std::vector<double>> s(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) s[i + 1][i] += step[i];
  std::vector<double> fv(n + 1);
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };
  for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(s[i]);
  std::vector<std::size_t> order(n + 1);
  MinND out;
  while (evals < max_eval) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return fv[i] < fv[j]; });
    const auto ib = order.front();
    const auto iw = order.back();
    const auto isw = order[n - 1];
    double spread = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k) spread = std::max(spread, std::abs(s[i][k] - s[ib][k]));
    if (std::abs(fv[iw] - fv[ib]) <= ftol * (std::abs(fv[ib]) + 1e-300) && spread <= xtol) {
      out.converged = true;
      break;
    }
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != iw)
        for (std::size_t k = 0; k < n; ++k) c[k] += s[i][k] / n;
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = c[k] + t * (s[iw][k] - c[k]);
      return x;
    };
    auto xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < fv[ib]) {
      auto xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        s[iw] = xe;
        fv[iw] = fe;
      } else {
        s[iw] = xr;
        fv[iw] = fr;
      }
    } else if (fr < fv[isw]) {
      s[iw] = xr;
      fv[iw] = fr;
    } else {
      auto xc = fr < fv[iw] ? along(-0.5) : along(0.5);
      const double fc = eval(xc);
      if (fc < std::min(fr, fv[iw])) {
        s[iw] = xc;
        fv[iw] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == ib) continue;
          for (std::size_t k = 0; k < n; ++k) s[i][k] = s[ib][k] + 0.5 * (s[i][k] - s[ib][k]);
          fv[i] = eval(s[i]);
        }
      }
    }
  }
  const auto ib = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  out.x = s[ib];
  out.f = fv[ib];
  out.evaluations = evals;
  return out;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * M_PI * u2;
  spare_ = rad * std::sin(ang);
  has_spare_ = true;
  return rad * std::cos(ang);
}

}  // namespace cvrob
