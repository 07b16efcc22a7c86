// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cvrob/coherence_solver.hpp"
#include "cvrob/entanglement_coherence.hpp"
#include "cvrob/nonclassicality.hpp"
#include "cvrob/nongaussianity.hpp"
#include "cvrob/optimize.hpp"
#include "cvrob/verify.hpp"

using namespace cvrob;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  o.detail.precision(10);
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  if (!o.ok) ++failures;
  std::printf("%s %2d %s (%.2f s)%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), seconds_since(t0),
              o.detail.str().c_str());
  std::fflush(stdout);
}

Vector random_unit(int d, Rng& rng) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = cd(rng.normal(), rng.normal());
  return v.normalized();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

int main() {
  criterion(1, "Fock nonclassicality pinched by witness and Poisson ansatz", [](Outcome& o) {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int n = 1; n <= 6; ++n) {
      const RobustnessEstimate e = fock_estimate(n, 60);
      o.require(e.contains(fock_robustness(n), 1e-12), "n=" + std::to_string(n) + " containment");
      worst = std::max(worst, e.relative_width());
      if (n == 1) o.require(std::abs(e.lower - 2.718282) <= 1e-6, "n=1 value 2.718282");
      if (n == 2) o.require(std::abs(e.lower - 3.694528) <= 1e-6, "n=2 value 3.694528");
    }
    const double t = seconds_since(t0);
    o.require(worst <= 1e-6, "relative width");
    o.require(t < 5.0, "runtime < 5 s");
    o.detail << " max relative width " << worst << ", " << t << " s";
  });

  criterion(2, "squeezed vacuum pinches e^r and s0", [](Outcome& o) {
    double worst_w = 0.0, worst_s = 0.0;
    for (double r : {0.25, 0.5, 1.0}) {
      const SqueezedCertificate c = squeezed_robustness(r);
      o.require(c.estimate.contains(std::exp(r), 1e-12), "containment r=" + std::to_string(r));
      worst_w = std::max(worst_w, c.estimate.relative_width());
      const double s0 = r / 2.0 + 0.25 * std::log(2.0 - std::exp(-2.0 * r));
      worst_s = std::max(worst_s, std::abs(c.s_numeric - s0));
    }
    o.require(worst_w <= 1e-6, "relative width");
    o.require(worst_s <= 1e-6, "numeric minimizer vs s0");
    o.detail << " max relative width " << worst_w << ", max |s - s0| " << worst_s;
  });

  criterion(3, "cat states at alpha = 2 and the tight odd point", [](Outcome& o) {
    // The printed bounds carry four decimals; half a unit of the last digit is allowed.
    const double slack = 5e-5;
    const CatBoundReport even = cat_bounds(2.0, Parity::kEven);
    const CatBoundReport odd = cat_bounds(2.0, Parity::kOdd);
    o.require(even.lower >= 1.9990 - slack && even.upper <= 1.9993 + slack, "even interval");
    o.require(odd.lower >= 2.0003 - slack && odd.upper <= 2.0007 + slack, "odd interval");
    const CatBoundReport one = cat_bounds(1.0, Parity::kOdd);
    const double tight = 2.0 * std::exp(2.0) / (std::exp(2.0) - 1.0);
    o.require(std::abs(one.lower - tight) <= 1e-5 && std::abs(one.upper - tight) <= 1e-5,
              "odd alpha=1 tight");
    o.detail << " even [" << even.lower << ", " << even.upper << "] odd [" << odd.lower << ", "
             << odd.upper << "] odd(1) [" << one.lower << ", " << one.upper << "]";
  });

  criterion(4, "photon-added squeezed vacuum at r = 1", [](Outcome& o) {
    const PhotonAddedReport p = photon_added_bounds(1.0);
    o.require(p.estimate.lower >= 2.38109 && p.estimate.upper <= 4.84011, "interval containment");
    const double lo = std::pow(std::cosh(1.0), 2);
    const double up = 4.0 * std::exp(2.0) / (3.0 * std::sqrt(3.0) * std::sinh(1.0));
    o.require(std::abs(p.lower_general - lo) <= 1e-4, "general lower endpoint");
    o.require(std::abs(p.estimate.upper - up) <= 1e-4, "upper endpoint");
    const double rc = 0.5 * std::log(2.0);
    const double jump = std::abs(photon_added_regime_lower(rc * (1 - 1e-12)) -
                                 photon_added_regime_lower(rc * (1 + 1e-12)));
    o.require(jump <= 1e-8, "crossover continuity");
    o.detail << " [" << p.estimate.lower << ", " << p.estimate.upper << "] general " << p.lower_general
             << " crossover jump " << jump;
  });

  criterion(5, "non-Gaussianity of Fock states", [](Outcome& o) {
    const auto t0 = Clock::now();
    const double target = 4.0 * std::exp(1.0) / (3.0 * std::sqrt(3.0));
    const FockNgReport one = fock_ng_robustness(1);
    o.require(std::abs(one.estimate.lower - target) <= 1e-6, "value 4e/(3 sqrt3)");
    o.require(std::abs(one.r - std::log(std::sqrt(3.0))) <= 1e-5, "maximizer r");
    o.require(std::min(one.theta, M_PI - one.theta) <= 1e-5, "maximizer theta");
    double worst_res = 0.0;
    for (const NgRow& row : ng_vs_nc_table(10)) {
      o.require(row.r_g <= row.r_c, "R_G <= R_C at n=" + std::to_string(row.n));
      worst_res = std::max(worst_res, std::abs(row.conjecture_residual));
    }
    o.require(worst_res <= 1e-3, "optimizer condition");
    double worst_grid = 0.0;
    for (int n = 1; n <= 3; ++n) {
      const double opt = fock_ng_robustness(n).estimate.lower;
      const double g0 = 1.0 / p_n_grid_max_theta0(n, 1e-3);
      const double g3 = 1.0 / p_n_grid_max(n, 0.05);
      worst_grid = std::max(worst_grid, std::abs(g0 - opt));
      o.require(g3 >= opt - 1e-4, "3-D grid finds nothing better at n=" + std::to_string(n));
    }
    o.require(worst_grid <= 1e-4, "grid oracle");
    const double t = seconds_since(t0);
    o.require(t < 60.0, "runtime < 60 s");
    o.detail << " R_G(1) " << one.estimate.lower << " r " << one.r << " theta " << one.theta
             << " max residual " << worst_res << " max grid gap " << worst_grid;
  });

  criterion(6, "pure-state entanglement: closed form, witness, decomposition", [](Outcome& o) {
    Rng rng(606);
    double worst_w = 0.0, worst_res = 0.0;
    for (int i = 0; i < 50; ++i) {
      const int d = 2 + i % 3;
      const KetVector psi(random_unit(d * d, rng));
      const double closed = pure_entanglement_robustness(psi, {d, d});
      const double lower = witness_lower(psi, shimony_witness(psi, {d, d}, 1.0 - 1e-6));
      const VidalTarrach vt = vidal_tarrach_decomposition(psi, {d, d});
      worst_w = std::max(worst_w, rel(lower, closed));
      worst_res = std::max(worst_res, vt.residual);
      o.require(rel(vt.mu2, closed) <= 1e-12, "decomposition weight");
    }
    Vector bell = Vector::Zero(4);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    const double b = pure_entanglement_robustness(KetVector(bell), {2, 2});
    o.require(worst_w <= 1e-4, "witness agreement");
    o.require(worst_res <= 1e-10, "identity residual");
    o.require(std::abs(b - 2.0) <= 1e-14, "Bell state");
    o.detail << " max witness rel gap " << worst_w << " max residual " << worst_res << " Bell " << b;
  });

  criterion(7, "Hilbert-operator example: R <= 2 with growing negativity", [](Outcome& o) {
    for (Sign s : {Sign::kPlus, Sign::kMinus}) {
      double prev_neg = -1.0, prev_l1 = 0.0;
      for (int n : {25, 50, 100, 200, 400}) {
        const HilbertReport r = hilbert_example(n, s);
        o.require(r.hilbert_norm <= M_PI + 1e-9, "operator norm at N=" + std::to_string(n));
        o.require(r.certificate_min_eig >= -1e-10, "certificate at N=" + std::to_string(n));
        o.require(r.negativity > prev_neg && r.l1 > prev_l1, "growth at N=" + std::to_string(n));
        prev_neg = r.negativity;
        prev_l1 = r.l1;
        if (s == Sign::kPlus) o.detail << " N=" << n << ":" << r.negativity;
      }
    }
  });

  criterion(8, "coherence: solver vs l1 formula, multiplicativity", [](Outcome& o) {
    Rng rng(808);
    double worst_gap = 0.0;
    for (int i = 0; i < 30; ++i) {
      const int d = 2 + i % 7;
      const KetVector psi(random_unit(d, rng));
      const CoherenceSolution s = finite_dim_robustness(DensityOperator::from_ket(psi));
      o.require(s.estimate.contains(coherence_robustness_pure(psi), 1e-9), "containment d=" + std::to_string(d));
      worst_gap = std::max(worst_gap, s.estimate.relative_width());
    }
    double worst_mult = 0.0;
    for (int i = 0; i < 10; ++i) {
      const KetVector a(random_unit(2 + i % 2, rng));
      const KetVector b(random_unit(2 + (i / 2) % 2, rng));
      const KetVector ab(kron(a.amplitudes(), b.amplitudes()));
      const double prod = coherence_robustness_pure(a) * coherence_robustness_pure(b);
      worst_mult = std::max(worst_mult, rel(coherence_robustness_pure(ab), prod));
      o.require(finite_dim_robustness(DensityOperator::from_ket(ab)).estimate.contains(prod, 1e-6),
                "solver on product");
    }
    o.require(worst_gap <= 1e-6, "solver gap");
    o.require(worst_mult <= 1e-9, "multiplicativity");
    o.detail << " max gap " << worst_gap << " max multiplicativity error " << worst_mult;
  });

  VerifyOptions vo;
  std::vector<SuiteResult> suites;
  double verify_seconds = 0.0;

  criterion(9, "discrimination advantage equals robustness", [&](Outcome& o) {
    const auto t0 = Clock::now();
    suites = run_suites("all", vo);
    verify_seconds = seconds_since(t0);
    for (const SuiteResult& s : suites) {
      if (s.suite != "discrimination") continue;
      for (const CheckResult& c : s.checks) {
        o.require(c.status == CheckStatus::kPass, c.name + ": " + c.detail);
      }
      o.detail << " " << s.count(CheckStatus::kPass) << "/" << s.checks.size() << " checks pass";
    }
  });

  criterion(10, "faithfulness, convexity, monotonicity; verify all under 10 min", [&](Outcome& o) {
    int indeterminate = 0;
    for (const SuiteResult& s : suites) {
      o.require(s.count(CheckStatus::kFail) == 0, "suite " + s.suite);
      for (const CheckResult& c : s.checks)
        if (c.status == CheckStatus::kIndeterminate) {
          ++indeterminate;
          o.detail << " {indeterminate " << s.suite << ": " << c.name << "}";
        }
      if (s.suite == "faithfulness" || s.suite == "convexity" || s.suite == "monotonicity")
        o.detail << " " << s.suite << " " << s.count(CheckStatus::kPass) << "/" << s.checks.size();
    }
    o.require(suites.size() == suite_names().size(), "all suites ran");
    o.require(verify_seconds < 600.0, "verify all < 10 min");
    o.detail << " indeterminate " << indeterminate << ", verify all " << verify_seconds << " s";
  });

  criterion(11, "chi1 detector agrees with the grid probe", [](Outcome& o) {
    int agree = 0, infinite = 0;
    for (double n : {0.0, 0.25, 0.5, 1.0, 2.0})
      for (double r : {0.1, 0.3, 0.6, 1.0}) {
        const SqueezedThermalParams p{n, r};
        const bool inf = standard_robustness_infinite(p).verdict == StandardVerdict::kInfinite;
        const bool symbolic = std::exp(2.0 * r) > 2.0 * n + 1.0;
        const bool grid = chi1_grid_unbounded(p);
        if (inf == symbolic && inf == grid) ++agree;
        if (inf) ++infinite;
      }
    o.require(agree == 20, "lattice agreement");
    o.detail << " " << agree << "/20 agree, " << infinite << " infinite";
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
