#include "cvrob/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "cvrob/coherence_solver.hpp"
#include "cvrob/discrimination.hpp"
#include "cvrob/entanglement_coherence.hpp"
#include "cvrob/nonclassicality.hpp"
#include "cvrob/optimize.hpp"
#include "cvrob/states.hpp"

namespace cvrob {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kIndeterminate: return "indeterminate";
  }
  return "unknown";
}

int SuiteResult::count(CheckStatus s) const {
  return static_cast<int>(
      std::count_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.status == s; }));
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void add(SuiteResult& s, std::string name, bool ok, std::string detail) {
  s.checks.push_back({std::move(name), ok ? CheckStatus::kPass : CheckStatus::kFail, std::move(detail)});
}

// Runs body; any library exception becomes a failed check.
void guarded(SuiteResult& s, const std::string& name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    s.checks.push_back({name, CheckStatus::kFail, std::string("exception: ") + e.what()});
  }
}

Vector random_ket(Rng& rng, int d) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = cd(rng.normal(), rng.normal());
  return v.normalized();
}

Matrix random_mixed(Rng& rng, int d, int rank) {
  Matrix g(d, rank);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = cd(rng.normal(), rng.normal());
  Matrix m = g * g.adjoint();
  return m / m.trace().real();
}

std::vector<int> random_perm(Rng& rng, int d) {
  std::vector<int> p(d);
  std::iota(p.begin(), p.end(), 0);
  for (int i = d - 1; i > 0; --i) std::swap(p[i], p[rng.index(i + 1)]);
  return p;
}

// Kraus operators K_k = sum_j c_kj |f_k(j)><j| with permutations f_k: incoherent and CPTP.
Channel random_incoherent_channel(Rng& rng, int d, int terms) {
  Matrix c(terms, d);
  for (int k = 0; k < terms; ++k)
    for (int j = 0; j < d; ++j) c(k, j) = cd(rng.normal(), rng.normal());
  for (int j = 0; j < d; ++j) c.col(j).normalize();
  std::vector<Matrix> kraus;
  for (int k = 0; k < terms; ++k) {
    const auto f = random_perm(rng, d);
    Matrix kk = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j) kk(f[j], j) = c(k, j);
    kraus.push_back(kk);
  }
  return Channel::from_kraus(kraus);
}

Channel random_channel(Rng& rng, int d, int terms) {
  Matrix stack(terms * d, d);
  for (int i = 0; i < terms * d; ++i)
    for (int j = 0; j < d; ++j) stack(i, j) = cd(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Matrix> qr(stack);
  const Matrix q = qr.householderQ() * Matrix::Identity(terms * d, d);
  std::vector<Matrix> kraus;
  for (int k = 0; k < terms; ++k) kraus.push_back(q.block(k * d, 0, d, d));
  return Channel::from_kraus(kraus);
}

std::vector<Matrix> random_povm(Rng& rng, int d, int outcomes) {
  std::vector<Matrix> raw;
  Matrix sum = Matrix::Zero(d, d);
  // The first effect has full rank so the sum is invertible.
  for (int k = 0; k < outcomes; ++k) {
    raw.push_back(random_mixed(rng, d, k == 0 ? d : 1 + rng.index(d)));
    sum += raw.back();
  }
  // M_k = S^{-1/2} A_k S^{-1/2}
  Eigen::SelfAdjointEigenSolver<Matrix> es(sum);
  const Matrix isq = es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                     es.eigenvectors().adjoint();
  std::vector<Matrix> out;
  for (auto& a : raw) {
    Matrix m = isq * a * isq;
    out.push_back(0.5 * (m + m.adjoint()));
  }
  Matrix total = Matrix::Zero(d, d);
  for (std::size_t k = 0; k + 1 < out.size(); ++k) total += out[k];
  out.back() = Matrix::Identity(d, d) - total;  // exact completeness
  return out;
}

std::vector<DensityOperator> basis_states(int d) {
  std::vector<DensityOperator> out;
  for (int i = 0; i < d; ++i) {
    Matrix m = Matrix::Zero(d, d);
    m(i, i) = 1.0;
    out.emplace_back(m);
  }
  return out;
}

RobustnessEstimate coherence_estimate(const DensityOperator& rho) {
  return finite_dim_robustness(rho).estimate;
}

void record_verdict(SuiteResult& s, const std::string& name, const MonotonicityResult& r) {
  const std::string detail = "before [" + fmt(r.before.lower) + ", " + fmt(r.before.upper) +
                             "] after [" + fmt(r.after.lower) + ", " + fmt(r.after.upper) + "]";
  CheckStatus st = CheckStatus::kPass;
  if (r.verdict == Verdict::kViolated) st = CheckStatus::kFail;
  if (r.verdict == Verdict::kIndeterminate) st = CheckStatus::kIndeterminate;
  s.checks.push_back({name, st, detail});
}

}  // namespace

SuiteResult verify_duality(const VerifyOptions& opts) {
  SuiteResult s{"duality", {}};
  Rng rng(opts.seed);
  for (int i = 0; i < 12; ++i) {
    const int d = 2 + rng.index(7);
    const bool pure = i % 2 == 0;
    const std::string name = std::string("coherence solver ") + (pure ? "pure" : "mixed") +
                             " d=" + std::to_string(d) + " #" + std::to_string(i);
    guarded(s, name, [&] {
      Vector psi;
      Matrix rho;
      if (pure) {
        psi = random_ket(rng, d);
        rho = psi * psi.adjoint();
      } else {
        rho = random_mixed(rng, d, 1 + rng.index(d));
      }
      const CoherenceSolution sol = finite_dim_robustness(DensityOperator(rho));
      const auto& e = sol.estimate;
      bool ok = e.relative_width() <= 1e-6;
      std::string detail = "[" + fmt(e.lower) + ", " + fmt(e.upper) + "]";
      // Witness feasibility and primal feasibility, re-checked independently.
      Matrix z = -rho;
      z.diagonal() += sol.primal_diag.cast<cd>();
      ok = ok && min_eigenvalue(z) >= -1e-12 * sol.primal_diag.sum();
      ok = ok && min_eigenvalue(sol.witness) >= -1e-10 &&
           sol.witness.diagonal().real().maxCoeff() <= 1.0 + 1e-12;
      if (pure) {
        const double cf = coherence_robustness_pure(KetVector(psi));
        ok = ok && e.contains(cf, 1e-9 * cf);
        detail += " closed form " + fmt(cf);
      }
      add(s, name, ok, detail);
    });
  }
  for (int n = 1; n <= 6; ++n)
    guarded(s, "fock witness/ansatz n=" + std::to_string(n), [&] {
      const auto e = fock_estimate(n, opts.cutoff);
      add(s, "fock witness/ansatz n=" + std::to_string(n), e.relative_width() <= 1e-6,
          "[" + fmt(e.lower) + ", " + fmt(e.upper) + "]");
    });
  for (double r : {0.25, 0.5, 1.0})
    guarded(s, "squeezed witness/ansatz r=" + fmt(r), [&] {
      const auto c = squeezed_robustness(r);
      add(s, "squeezed witness/ansatz r=" + fmt(r), c.estimate.relative_width() <= 1e-6,
          "[" + fmt(c.estimate.lower) + ", " + fmt(c.estimate.upper) + "]");
    });
  return s;
}

SuiteResult verify_monotonicity(const VerifyOptions& opts) {
  SuiteResult s{"monotonicity", {}};
  Rng rng(opts.seed + 101);
  const FreeSetSpec incoherent{FreeKind::kIncoherent, {}};
  for (int i = 0; i < 10; ++i) {
    const int d = 2 + rng.index(4);
    const std::string name = "coherence under incoherent channel d=" + std::to_string(d) + " #" +
                             std::to_string(i);
    guarded(s, name, [&] {
      const Vector psi = random_ket(rng, d);
      const DensityOperator in(i % 2 == 0 ? Matrix(psi * psi.adjoint()) : random_mixed(rng, d, 2));
      Channel ch = i % 3 == 0   ? Channel::dephasing(d)
                   : i % 3 == 1 ? Channel::permutation(random_perm(rng, d))
                                : random_incoherent_channel(rng, d, 2 + rng.index(2));
      record_verdict(s, name,
                     monotonicity_check(in, ch, incoherent, coherence_estimate, basis_states(d)));
    });
  }

  // Rotations are passive linear optics: coherent states stay coherent.
  const int dc = 24;
  std::vector<DensityOperator> coherent_samples;
  for (cd a : {cd(0.0, 0.0), cd(0.7, -0.3), cd(-1.1, 0.5)})
    coherent_samples.push_back(DensityOperator::from_ket(coherent_state(a, dc)));
  const FreeSetSpec classical{FreeKind::kClassical, {}};
  auto generic = [](const DensityOperator& r) { return nonclassicality_estimate(r); };
  for (int n = 1; n <= 2; ++n) {
    const std::string name = "fock |" + std::to_string(n) + "> under rotation";
    guarded(s, name, [&] {
      const Channel rot = Channel::unitary(rotation_operator(rng.uniform(0.0, 2.0 * M_PI), dc));
      record_verdict(s, name,
                     monotonicity_check(DensityOperator::from_ket(fock_state(n, dc)), rot, classical,
                                        generic, coherent_samples, 1e-6));
    });
  }

  // Local unitaries leave the Schmidt spectrum, hence the closed form, unchanged.
  for (int i = 0; i < 5; ++i) {
    const int d = 2 + rng.index(3);
    const std::string name = "entanglement under local unitary d=" + std::to_string(d) + " #" +
                             std::to_string(i);
    guarded(s, name, [&] {
      const BipartiteIndex idx{d, d};
      const KetVector psi(random_ket(rng, d * d));
      Eigen::HouseholderQR<Matrix> qa(Matrix::Random(d, d)), qb(Matrix::Random(d, d));
      const Matrix u = kron(Matrix(qa.householderQ()), Matrix(qb.householderQ()));
      const KetVector out(u * psi.amplitudes());
      const double a = pure_entanglement_robustness(psi, idx);
      const double b = pure_entanglement_robustness(out, idx);
      add(s, name, std::abs(a - b) <= 1e-9 * a, fmt(a) + " vs " + fmt(b));
    });
  }
  return s;
}

SuiteResult verify_multiplicativity(const VerifyOptions& opts) {
  SuiteResult s{"multiplicativity", {}};
  Rng rng(opts.seed + 202);
  struct Combo {
    std::string name;
    std::function<std::vector<ModeCertificate>()> modes;
  };
  const std::vector<Combo> combos{
      {"fock1 x fock2", [] { return std::vector{fock_mode(1, 16), fock_mode(2, 16)}; }},
      {"fock1 x squeezed0.3",
       [] { return std::vector{fock_mode(1, 20), squeezed_mode(0.3, 20, 0.3)}; }},
      {"squeezed0.2 x vacuum",
       [] { return std::vector{squeezed_mode(0.2, 24, 0.2), vacuum_mode(24)}; }},
      {"fock1 x fock1 x fock1",
       [] { return std::vector{fock_mode(1, 12), fock_mode(1, 12), fock_mode(1, 12)}; }},
  };
  for (const auto& c : combos)
    guarded(s, c.name, [&] {
      const auto rep = multiplicativity_check(c.modes());
      add(s, c.name, rep.holds,
          "joint [" + fmt(rep.joint.lower) + ", " + fmt(rep.joint.upper) + "] products [" +
              fmt(rep.product_of_lowers) + ", " + fmt(rep.product_of_uppers) + "]");
    });
  for (int i = 0; i < 10; ++i) {
    const int d1 = 2 + rng.index(2), d2 = 2 + rng.index(2);
    const std::string name = "coherence closed form d=" + std::to_string(d1) + "x" +
                             std::to_string(d2) + " #" + std::to_string(i);
    guarded(s, name, [&] {
      const KetVector a(random_ket(rng, d1)), b(random_ket(rng, d2));
      const double joint = coherence_robustness_pure(KetVector(kron(a.amplitudes(), b.amplitudes())));
      const double prod = coherence_robustness_pure(a) * coherence_robustness_pure(b);
      add(s, name, std::abs(joint - prod) <= 1e-9 * prod, fmt(joint) + " vs " + fmt(prod));
    });
  }
  return s;
}

SuiteResult verify_discrimination(const VerifyOptions& opts) {
  SuiteResult s{"discrimination", {}};
  Rng rng(opts.seed + 303);
  const int dc = 24;
  for (int n = 1; n <= 4; ++n) {
    const std::string name = "fock |" + std::to_string(n) + "> witness task";
    guarded(s, name, [&] {
      const auto e = fock_estimate(n, dc);
      const auto task = optimal_task_from_witness(*e.witness, Channel::dephasing(dc));
      const auto rep = advantage_ratio(task, DensityOperator::from_ket(fock_state(n, dc)),
                                       {FreeKind::kClassical, {}},
                                       DenominatorSpec::from_witness(*e.witness), e);
      const double target = fock_robustness(n);
      add(s, name, std::abs(rep.ratio - target) <= 1e-6 * target,
          "ratio " + fmt(rep.ratio) + " vs " + fmt(target));
    });
  }
  for (int d = 2; d <= 6; ++d) {
    const std::string name = "coherence solver witness task d=" + std::to_string(d);
    guarded(s, name, [&] {
      const DensityOperator rho(random_mixed(rng, d, 1 + rng.index(2)));
      const auto sol = finite_dim_robustness(rho);
      const auto task = optimal_task_from_witness(*sol.estimate.witness,
                                                  Channel::permutation(random_perm(rng, d)));
      const auto rep = advantage_ratio(task, rho, {FreeKind::kIncoherent, {}},
                                       DenominatorSpec::incoherent(), sol.estimate);
      add(s, name,
          std::abs(rep.ratio - sol.estimate.upper) <= 1e-6 * sol.estimate.upper &&
              sol.estimate.contains(rep.ratio, 1e-9),
          "ratio " + fmt(rep.ratio) + " interval [" + fmt(sol.estimate.lower) + ", " +
              fmt(sol.estimate.upper) + "]");
    });
  }
  guarded(s, "squeezed r=0.5 grid-certified witness task", [&] {
    const double r = 0.5;
    const int d = 120;
    const Witness w = certify_coherent_witness(squeezed_witness_operator(r + 8.0, d));
    const auto task = optimal_task_from_witness(w, Channel::dephasing(d));
    const auto rep = advantage_ratio(task, DensityOperator::from_ket(squeezed_vacuum(r, d)),
                                     {FreeKind::kClassical, {}}, DenominatorSpec::coherent_grid());
    add(s, "squeezed r=0.5 grid-certified witness task",
        std::abs(rep.ratio - std::exp(r)) <= 1e-3 * std::exp(r) && rep.ratio <= std::exp(r),
        "ratio " + fmt(rep.ratio) + " vs e^r " + fmt(std::exp(r)));
  });
  guarded(s, "100 random tasks below robustness", [&] {
    int worst = -1;
    double worst_excess = -kInfinity;
    for (int i = 0; i < 100; ++i) {
      const int d = 2 + rng.index(5);
      const int k = 2 + rng.index(3);
      const DensityOperator rho(random_mixed(rng, d, 1 + rng.index(d)));
      std::vector<Channel> chans;
      std::vector<double> probs;
      for (int j = 0; j < k; ++j) {
        chans.push_back(random_channel(rng, d, 1 + rng.index(3)));
        probs.push_back(rng.uniform(0.05, 1.0));
      }
      const double tot = std::accumulate(probs.begin(), probs.end(), 0.0);
      for (auto& p : probs) p /= tot;
      DiscriminationTask task{chans, probs, random_povm(rng, d, k)};
      task.validate();
      const auto sol = finite_dim_robustness(rho);
      const auto rep = advantage_ratio(task, rho, {FreeKind::kIncoherent, {}},
                                       DenominatorSpec::incoherent());
      const double excess = rep.ratio - sol.estimate.upper;
      if (excess > worst_excess) {
        worst_excess = excess;
        worst = i;
      }
    }
    add(s, "100 random tasks below robustness", worst_excess <= 1e-6,
        "max(ratio - upper) = " + fmt(worst_excess) + " at task " + std::to_string(worst));
  });
  guarded(s, "p_success affine", [&] {
    const int d = 4;
    const DensityOperator a(random_mixed(rng, d, 2)), b(random_mixed(rng, d, 3));
    DiscriminationTask task{{random_channel(rng, d, 2), random_channel(rng, d, 2)},
                            {0.3, 0.7},
                            random_povm(rng, d, 2)};
    const double t = 0.37;
    const double lhs = p_success(task, DensityOperator(t * a.matrix() + (1 - t) * b.matrix()));
    const double rhs = t * p_success(task, a) + (1 - t) * p_success(task, b);
    add(s, "p_success affine", std::abs(lhs - rhs) <= 1e-10, fmt(lhs) + " vs " + fmt(rhs));
  });
  guarded(s, "displacement demo r=1", [&] {
    const auto demo = displacement_ensemble_demo(1.0, {-2.0, 0.0, 2.0});
    add(s, "displacement demo r=1", demo.within_bound && demo.report.ratio > 1.0,
        "ratio " + fmt(demo.report.ratio) + " bound " + fmt(demo.bound));
  });
  return s;
}

SuiteResult verify_faithfulness(const VerifyOptions& opts) {
  SuiteResult s{"faithfulness", {}};
  Rng rng(opts.seed + 404);
  for (int i = 0; i < 5; ++i) {
    const int d = 2 + rng.index(5);
    const std::string name = "incoherent state d=" + std::to_string(d) + " #" + std::to_string(i);
    guarded(s, name, [&] {
      Matrix m = Matrix::Zero(d, d);
      for (int k = 0; k < d; ++k) m(k, k) = rng.uniform(0.01, 1.0);
      const auto e = coherence_estimate(DensityOperator(m));
      add(s, name, e.contains(1.0, 1e-6), "[" + fmt(e.lower) + ", " + fmt(e.upper) + "]");
    });
  }
  for (int i = 0; i < 5; ++i) {
    const int d = 2 + rng.index(5);
    const std::string name = "coherent resource d=" + std::to_string(d) + " #" + std::to_string(i);
    guarded(s, name, [&] {
      const auto e = coherence_estimate(DensityOperator(random_mixed(rng, d, 1 + rng.index(d))));
      add(s, name, e.lower > 1.0 + 1e-9, "[" + fmt(e.lower) + ", " + fmt(e.upper) + "]");
    });
  }
  for (cd a : {cd(0.0, 0.0), cd(1.5, 0.0), cd(-0.4, 0.9)}) {
    const std::string name = "coherent state " + fmt(a.real()) + (a.imag() < 0 ? "" : "+") +
                             fmt(a.imag()) + "i";
    guarded(s, name, [&] {
      const auto e = nonclassicality_estimate(coherent_state(a, 32));
      add(s, name, e.contains(1.0, 1e-6) && e.width() <= 1e-6,
          "[" + fmt(e.lower) + ", " + fmt(e.upper) + "]");
    });
  }
  for (int d = 2; d <= 4; ++d) {
    const std::string name = "product state d=" + std::to_string(d);
    guarded(s, name, [&] {
      const KetVector psi(kron(random_ket(rng, d), random_ket(rng, d)));
      const double v = pure_entanglement_robustness(psi, {d, d});
      add(s, name, std::abs(v - 1.0) <= 1e-9, fmt(v));
    });
  }
  guarded(s, "fock |1> is nonclassical", [&] {
    const auto e = fock_estimate(1, 24);
    add(s, "fock |1> is nonclassical", e.lower > 1.0 + 1e-9, fmt(e.lower));
  });
  return s;
}

SuiteResult verify_convexity(const VerifyOptions& opts) {
  SuiteResult s{"convexity", {}};
  Rng rng(opts.seed + 505);
  for (int i = 0; i < 10; ++i) {
    const int d = 2 + rng.index(5);
    const std::string name = "coherence mixture d=" + std::to_string(d) + " #" + std::to_string(i);
    guarded(s, name, [&] {
      const Matrix a = random_mixed(rng, d, 1 + rng.index(d));
      const Matrix b = random_mixed(rng, d, 1 + rng.index(d));
      const double t = rng.uniform(0.1, 0.9);
      const auto ea = coherence_estimate(DensityOperator(a));
      const auto eb = coherence_estimate(DensityOperator(b));
      const auto em = coherence_estimate(DensityOperator(t * a + (1 - t) * b));
      const double slack = 1e-6;
      const double lo = t * ea.lower + (1 - t) * eb.lower;
      const double hi = t * ea.upper + (1 - t) * eb.upper;
      CheckStatus st = CheckStatus::kIndeterminate;
      if (em.upper <= lo + slack) st = CheckStatus::kPass;
      if (em.lower > hi + slack) st = CheckStatus::kFail;
      s.checks.push_back({name, st,
                          "mix [" + fmt(em.lower) + ", " + fmt(em.upper) + "] combination [" +
                              fmt(lo) + ", " + fmt(hi) + "]"});
    });
  }
  for (int i = 0; i < 5; ++i) {
    const int d = 2 + rng.index(3);
    const std::string name = "pure coherence mixture d=" + std::to_string(d) + " #" + std::to_string(i);
    guarded(s, name, [&] {
      const KetVector a(random_ket(rng, d)), b(random_ket(rng, d));
      const double t = rng.uniform(0.1, 0.9);
      const Matrix mix = t * a.projector() + (1 - t) * b.projector();
      const auto em = coherence_estimate(DensityOperator(mix));
      const double bound = t * coherence_robustness_pure(a) + (1 - t) * coherence_robustness_pure(b);
      add(s, name, em.lower <= bound + 1e-6,
          "mix [" + fmt(em.lower) + ", " + fmt(em.upper) + "] vs " + fmt(bound));
    });
  }
  return s;
}

std::vector<std::string> suite_names() {
  return {"duality", "monotonicity", "multiplicativity", "discrimination", "faithfulness", "convexity"};
}

std::vector<SuiteResult> run_suites(const std::string& name, const VerifyOptions& opts) {
  using Fn = SuiteResult (*)(const VerifyOptions&);
  const std::vector<std::pair<std::string, Fn>> table{
      {"duality", verify_duality},           {"monotonicity", verify_monotonicity},
      {"multiplicativity", verify_multiplicativity}, {"discrimination", verify_discrimination},
      {"faithfulness", verify_faithfulness}, {"convexity", verify_convexity}};
  std::vector<SuiteResult> out;
  for (const auto& [n, fn] : table)
    if (name == "all" || name == n) out.push_back(fn(opts));
  if (out.empty()) throw InvalidArgument("unknown verification suite: " + name);
  return out;
}

}  // namespace cvrob
