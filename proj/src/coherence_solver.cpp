#include "cvrob/coherence_solver.hpp"

#include <algorithm>
#include <cmath>

namespace cvrob {

double coherence_dual_value(const Matrix& w, const Matrix& rho) {
  const double dmax = w.diagonal().real().maxCoeff();
  if (!(dmax > 0.0)) return 0.0;
  return (w.cwiseProduct(rho.transpose())).sum().real() / dmax;
}

double coherence_primal_repair(const RealVector& d, const Matrix& rho, RealVector* repaired) {
  Matrix z = -rho;
  z.diagonal() += d.cast<cd>();
  const double shift = std::max(0.0, -min_eigenvalue(z));
  // Tiny extra shift absorbs eigen-solver rounding so the certificate is strictly feasible.
  const double t = shift > 0.0 ? shift * (1.0 + 1e-12) + 1e-15 : 0.0;
  RealVector out = d.array() + t;
  if (repaired) *repaired = out;
  return out.sum();
}

namespace {

// Newton path following on f_t(d) = t * sum(d) - log det(diag(d) - rho).
CoherenceSolution solve_barrier(const Matrix& rho, const SolverOptions& opts) {
  const int n = static_cast<int>(rho.rows());
  const double lmax = max_eigenvalue(rho);
  RealVector d = RealVector::Constant(n, lmax + 1.0);
  double t = static_cast<double>(n) / d.sum();

  auto factor = [&](const RealVector& x, Eigen::LLT<Matrix>& llt) {
    Matrix z = -rho;
    z.diagonal() += x.cast<cd>();
    llt.compute(z);
    return llt.info() == Eigen::Success;
  };
  auto logdet = [](const Eigen::LLT<Matrix>& llt) {
    return 2.0 * llt.matrixLLT().diagonal().real().array().log().sum();
  };

  CoherenceSolution sol;
  double best_lower = 1.0;
  double best_upper = kInfinity;
  Matrix best_w = Matrix::Identity(n, n);
  RealVector best_d = d;
  int newton = 0;
  Eigen::LLT<Matrix> llt;
  factor(d, llt);

  while (newton < opts.max_newton) {
    // Centering.
    for (int inner = 0; inner < 100 && newton < opts.max_newton; ++inner, ++newton) {
      const Matrix zinv = llt.solve(Matrix::Identity(n, n));
      RealVector g(n);
      RealMatrix h(n, n);
      for (int i = 0; i < n; ++i) {
        g(i) = t - zinv(i, i).real();
        for (int j = 0; j < n; ++j) h(i, j) = std::norm(zinv(i, j));
      }
      const RealVector step = -h.ldlt().solve(g);
      const double dec2 = -g.dot(step);
      if (dec2 < 1e-14) break;
      const double f0 = t * d.sum() - logdet(llt);
      double s = 1.0;
      Eigen::LLT<Matrix> trial;
      while (s > 1e-20) {
        const RealVector cand = d + s * step;
        if (factor(cand, trial)) {
          const double f1 = t * cand.sum() - logdet(trial);
          if (f1 <= f0 - 0.25 * s * dec2) break;
        }
        s *= 0.5;
      }
      if (s <= 1e-20) break;
      d += s * step;
      llt = trial;
    }

    // Certificates at the current point.
    const Matrix zinv = llt.solve(Matrix::Identity(n, n));
    Matrix w = 0.5 * (zinv + zinv.adjoint()) / t;
    w /= w.diagonal().real().maxCoeff();
    const double lower = coherence_dual_value(w, rho);
    RealVector dr;
    const double upper = coherence_primal_repair(d, rho, &dr);
    if (lower > best_lower) {
      best_lower = lower;
      best_w = w;
    }
    if (upper < best_upper) {
      best_upper = upper;
      best_d = dr;
    }
    if (best_upper - best_lower <= 1e-3 * opts.rel_gap * best_upper) break;
    if (static_cast<double>(n) / t < 1e-14 * best_upper) break;
    t *= 8.0;
  }

  sol.witness = best_w;
  sol.primal_diag = best_d;
  sol.iterations = newton;
  sol.gap = best_upper - std::max(best_lower, 1.0);
  sol.estimate = assemble_estimate({{Side::kLower, best_lower, "solver dual witness (barrier)"},
                                    {Side::kUpper, best_upper, "solver primal diagonal (barrier)"}});
  return sol;
}

// Euclidean projection onto {x >= 0, sum x = s}.
RealVector project_simplex(const RealVector& v, double s) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    css += u[k];
    const double th = (css - s) / static_cast<double>(k + 1);
    if (u[k] - th > 0.0) theta = th;
  }
  return (v.array() - theta).max(0.0);
}

CoherenceSolution solve_bisection(const Matrix& rho, const SolverOptions& opts) {
  const int n = static_cast<int>(rho.rows());

  // Dual ascent: unit vectors g_i, W = G^dagger G (mixing method).
  Matrix g = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i) g.col(i) = Vector::Constant(n, cd(1.0 / std::sqrt(n), 0.0));
  for (int i = 0; i < n; ++i) g(i, i) += 0.1;
  for (int i = 0; i < n; ++i) g.col(i).normalize();
  for (int sweep = 0; sweep < opts.mixing_sweeps; ++sweep) {
    double change = 0.0;
    for (int i = 0; i < n; ++i) {
      Vector h = Vector::Zero(n);
      for (int j = 0; j < n; ++j)
        if (j != i) h += rho(j, i) * g.col(j);
      const double hn = h.norm();
      if (hn < 1e-300) continue;
      const Vector gi = h / hn;
      change = std::max(change, (gi - g.col(i)).norm());
      g.col(i) = gi;
    }
    if (change < 1e-13) break;
  }
  Matrix w = g.adjoint() * g;
  double lower = std::max(1.0, coherence_dual_value(w, rho));

  // Inner problem: min over the simplex {d >= 0, sum d = lam} of lambda_max(rho - diag d).
  RealVector d = rho.diagonal().real();
  int iters = 0;
  auto inner = [&](double lam, RealVector& dd) {
    dd = project_simplex(dd * (lam / std::max(dd.sum(), 1e-300)), lam);
    double best = kInfinity;
    RealVector bestd = dd;
    for (int k = 0; k < opts.subgradient_iters; ++k, ++iters) {
      Matrix z = rho;
      z.diagonal() -= dd.cast<cd>();
      Eigen::SelfAdjointEigenSolver<Matrix> es(z);
      const double phi = es.eigenvalues()(n - 1);
      if (phi < best) {
        best = phi;
        bestd = dd;
      }
      if (phi <= 0.0) break;
      const RealVector sub = es.eigenvectors().col(n - 1).cwiseAbs2();
      const double eta = lam / (n * std::sqrt(k + 1.0));
      dd = project_simplex(dd + eta * sub, lam);
    }
    dd = bestd;
    return best;
  };

  RealVector dr;
  double upper = coherence_primal_repair(d, rho, &dr);
  RealVector best_d = dr;
  double lo = lower;
  double hi = upper;
  for (int step = 0; step < opts.bisection_steps && hi - lo > opts.rel_gap * hi; ++step) {
    const double lam = 0.5 * (lo + hi);
    RealVector dd = best_d;
    const double phi = inner(lam, dd);
    const double cand = coherence_primal_repair(dd, rho, &dr);
    if (cand < upper) {
      upper = cand;
      best_d = dr;
    }
    if (phi <= 0.0)
      hi = lam;
    else
      lo = lam;  // heuristic: only the dual certifies the lower end
    hi = std::min(hi, upper);
  }

  CoherenceSolution sol;
  sol.witness = w / w.diagonal().real().maxCoeff();
  sol.primal_diag = best_d;
  sol.iterations = iters;
  sol.gap = upper - lower;
  sol.estimate = assemble_estimate({{Side::kLower, lower, "solver dual witness (mixing method)"},
                                    {Side::kUpper, upper, "solver primal diagonal (subgradient)"}});
  return sol;
}

}  // namespace

CoherenceSolution finite_dim_robustness(const DensityOperator& rho, const FreeSetSpec& free,
                                        const SolverOptions& opts) {
  if (free.kind != FreeKind::kIncoherent)
    throw Unsupported("finite_dim_robustness: only the incoherent free set is supported");
  if (rho.cutoff() > 64) throw InvalidArgument("finite_dim_robustness: dimension must be <= 64");
  CoherenceSolution sol = opts.method == SolverMethod::kBarrier ? solve_barrier(rho.matrix(), opts)
                                                                : solve_bisection(rho.matrix(), opts);
  sol.estimate.converged = sol.gap <= opts.rel_gap * sol.estimate.upper;
  sol.estimate.tail_mass = rho.tail_mass();
  sol.estimate.witness = Witness::make(sol.witness, 1.0, Certification::kSolver,
                                       "dual witness, W_ii <= 1 on incoherent basis states");
  Matrix sigma = Matrix::Zero(rho.cutoff(), rho.cutoff());
  sigma.diagonal() = sol.primal_diag.cast<cd>() / sol.primal_diag.sum();
  sol.estimate.ansatz = sigma;
  return sol;
}

}  // namespace cvrob
