#include "cvrob/discrimination.hpp"

#include <cmath>

#include "cvrob/states.hpp"

namespace cvrob {

void DiscriminationTask::validate() const {
  if (channels.empty() || channels.size() != probs.size() ||
      channels.size() != measurement.size())
    throw InvalidArgument("DiscriminationTask: channels, probs and effects must have equal length");
  double total = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw InvalidArgument("DiscriminationTask: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw InvalidArgument("DiscriminationTask: probabilities must sum to 1");
  const int d = channels.front().output_dim();
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < channels.size(); ++i) {
    if (channels[i].output_dim() != d || channels[i].input_dim() != channels.front().input_dim())
      throw InvalidArgument("DiscriminationTask: channel dimensions differ");
    const Matrix& m = measurement[i];
    if (m.rows() != d || m.cols() != d)
      throw InvalidArgument("DiscriminationTask: effect dimension mismatch");
    if (!is_hermitian(m, 1e-10) || min_eigenvalue(m) < -1e-10)
      throw InvalidArgument("DiscriminationTask: effects must be PSD");
    sum += m;
  }
  if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidArgument("DiscriminationTask: effects must sum to the identity");
}

double p_success(const DiscriminationTask& task, const DensityOperator& rho) {
  if (task.channels.empty() || rho.cutoff() != task.channels.front().input_dim())
    throw InvalidArgument("p_success: dimension mismatch");
  double p = 0.0;
  for (std::size_t i = 0; i < task.channels.size(); ++i) {
    if (task.probs[i] == 0.0) continue;
    const Matrix out = task.channels[i].apply(rho.matrix());
    p += task.probs[i] * (task.measurement[i].cwiseProduct(out.transpose())).sum().real();
  }
  return p;
}

Matrix effective_operator(const DiscriminationTask& task) {
  const int d = task.channels.front().input_dim();
  Matrix e = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < task.channels.size(); ++i)
    if (task.probs[i] != 0.0) e += task.probs[i] * task.channels[i].adjoint_apply(task.measurement[i]);
  return 0.5 * (e + e.adjoint());
}

DiscriminationTask optimal_task_from_witness(const Witness& w, const Channel& other) {
  const double norm = operator_norm(w.op);
  if (!(norm > 0.0)) throw InvalidArgument("optimal_task_from_witness: W = 0");
  const int d = static_cast<int>(w.op.rows());
  if (other.input_dim() != d || other.output_dim() != d)
    throw InvalidArgument("optimal_task_from_witness: channel dimension mismatch");
  const Matrix m0 = w.op / norm;
  return {{Channel::identity(d), other}, {1.0, 0.0}, {m0, Matrix::Identity(d, d) - m0}};
}

DenominatorSpec DenominatorSpec::analytic(double value, std::string method) {
  DenominatorSpec s;
  s.kind = Kind::kAnalytic;
  s.value = value;
  s.method = std::move(method);
  return s;
}

DenominatorSpec DenominatorSpec::from_witness(const Witness& w) {
  if (w.cert != Certification::kAnalytic && w.cert != Certification::kSolver)
    throw Unsupported("DenominatorSpec::from_witness: witness bound is not analytic");
  return analytic(w.b / operator_norm(w.op), "b/||W|| from witness: " + w.method);
}

DenominatorSpec DenominatorSpec::incoherent() { return {}; }

DenominatorSpec DenominatorSpec::coherent_grid(GridSpec grid) {
  DenominatorSpec s;
  s.kind = Kind::kCoherentGrid;
  s.grid = grid;
  return s;
}

AdvantageReport advantage_ratio(const DiscriminationTask& task, const DensityOperator& rho,
                                const FreeSetSpec& free, const DenominatorSpec& denom,
                                std::optional<RobustnessEstimate> robustness) {
  AdvantageReport rep;
  rep.p_succ_state = p_success(task, rho);
  switch (denom.kind) {
    case DenominatorSpec::Kind::kAnalytic:
      rep.p_succ_best_free = rep.p_succ_best_free_raw = denom.value;
      rep.denominator_method = "analytic: " + denom.method;
      break;
    case DenominatorSpec::Kind::kIncoherentExtreme: {
      if (free.kind != FreeKind::kIncoherent)
        throw Unsupported("advantage_ratio: extreme-point enumeration needs the incoherent set");
      const Matrix e = effective_operator(task);
      rep.p_succ_best_free = rep.p_succ_best_free_raw = e.diagonal().real().maxCoeff();
      rep.denominator_method = "exhaustive over incoherent basis states";
      break;
    }
    case DenominatorSpec::Kind::kCoherentGrid: {
      if (free.kind != FreeKind::kClassical)
        throw Unsupported("advantage_ratio: coherent grid denominators need the classical set");
      const CoherentSup s = coherent_sup(effective_operator(task), denom.grid);
      rep.p_succ_best_free_raw = s.value;
      rep.p_succ_best_free = s.value * (1.0 + denom.grid.inflation);
      rep.denominator_method = "coherent-state grid sup, inflated by (1 + delta)";
      break;
    }
  }
  if (!(rep.p_succ_best_free > 0.0))
    throw Unsupported("advantage_ratio: free success probability is zero");
  rep.ratio = rep.p_succ_state / rep.p_succ_best_free;
  rep.ratio_raw = rep.p_succ_state / rep.p_succ_best_free_raw;
  rep.below_random_guess = rep.p_succ_best_free_raw < 1.0 / static_cast<double>(task.channels.size());
  rep.robustness_interval = std::move(robustness);
  return rep;
}

DisplacementDemo displacement_ensemble_demo(double r, const std::vector<double>& shifts, int cutoff) {
  if (shifts.size() < 3) throw InvalidArgument("displacement_ensemble_demo: need at least 3 shifts");
  if (r < 0.0) throw InvalidArgument("displacement_ensemble_demo: r must be nonnegative");
  DisplacementDemo demo;
  demo.shifts = shifts;
  demo.cutoff = cutoff;
  demo.bound = std::exp(r);

  const KetVector probe = squeezed_vacuum(-r, cutoff);
  std::vector<Channel> channels;
  for (double t : shifts) {
    const Matrix u = displacement_unitary(cd(t, 0.0), cutoff);
    // The truncated unitary must agree with the true displacement on the probe; the
    // amplitude error bounds the trace distance, hence the error in every p_success.
    const Matrix exact = displacement_operator(cd(t, 0.0), cutoff);
    const double err = (u * probe.amplitudes() - exact * probe.amplitudes()).norm();
    if (err > 1e-6)
      throw TruncationError("displacement_ensemble_demo: shift " + std::to_string(t) +
                            " exceeds the truncation budget");
    channels.push_back(Channel::unitary(u));
  }

  // Bin eigenvectors of the truncated x quadrature to the nearest displaced centre sqrt2 t_k.
  auto [a, ad] = ladder_ops(cutoff);
  const Matrix x = (a + ad) / std::sqrt(2.0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(x);
  std::vector<Matrix> effects(shifts.size(), Matrix::Zero(cutoff, cutoff));
  for (int k = 0; k < cutoff; ++k) {
    const double xv = es.eigenvalues()(k);
    std::size_t best = 0;
    for (std::size_t j = 1; j < shifts.size(); ++j)
      if (std::abs(xv - std::sqrt(2.0) * shifts[j]) < std::abs(xv - std::sqrt(2.0) * shifts[best]))
        best = j;
    const Vector v = es.eigenvectors().col(k);
    effects[best] += v * v.adjoint();
  }
  DiscriminationTask task{channels,
                          std::vector<double>(shifts.size(), 1.0 / shifts.size()), effects};
  GridSpec grid;
  grid.radius = 4.0;
  demo.report = advantage_ratio(task, DensityOperator::from_ket(probe), {FreeKind::kClassical, {}},
                                DenominatorSpec::coherent_grid(grid));
  demo.within_bound = demo.report.ratio <= demo.bound + 1e-3;
  return demo;
}

}  // namespace cvrob
