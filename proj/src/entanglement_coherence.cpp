#include "cvrob/entanglement_coherence.hpp"

#include <cmath>

namespace cvrob {

namespace {

void check_dims(const KetVector& psi, const BipartiteIndex& idx, const char* who) {
  if (idx.dA <= 0 || idx.dB <= 0 || idx.dim() != psi.cutoff())
    throw InvalidArgument(std::string(who) + ": bipartite dimensions do not match the state");
}

}  // namespace

double pure_entanglement_robustness(const KetVector& psi, const BipartiteIndex& idx) {
  check_dims(psi, idx, "pure_entanglement_robustness");
  const double s = schmidt_spectrum(psi, idx).sum();
  return s * s;
}

Witness shimony_witness(const KetVector& psi, const BipartiteIndex& idx, double xi) {
  check_dims(psi, idx, "shimony_witness");
  if (!(xi > 0.0 && xi < 1.0)) throw InvalidArgument("shimony_witness: xi must lie in (0, 1)");
  const SchmidtDecomposition s = schmidt_decompose(psi, idx);
  Vector w = Vector::Zero(idx.dim());
  double p = 1.0;
  for (Eigen::Index i = 0; i < s.mu.size(); ++i, p *= xi)
    w += p * kron(Vector(s.u.col(i)), Vector(s.v.col(i)));
  return Witness::make(w * w.adjoint(), 1.0, Certification::kAnalytic,
                       "Schmidt-basis witness |w_xi><w_xi|");
}

VidalTarrach vidal_tarrach_decomposition(const KetVector& psi, const BipartiteIndex& idx) {
  check_dims(psi, idx, "vidal_tarrach_decomposition");
  if (idx.dA != idx.dB || idx.dA > 6)
    throw InvalidArgument("vidal_tarrach_decomposition: requires dA = dB <= 6");
  const SchmidtDecomposition s = schmidt_decompose(psi, idx);
  const int d = idx.dA;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.mu.size(); ++i)
    if (s.mu(i) > 1e-12) ++rank;

  VidalTarrach out;
  const Matrix proj = psi.projector();
  if (rank <= 1) {
    out.omega = proj;
    out.mu2 = 1.0;
    return out;
  }
  if (rank < d || s.mu.size() < d)
    throw DegenerateInput("vidal_tarrach_decomposition: zero Schmidt coefficient; restrict to the support first");

  const double mu = s.mu.sum();
  out.mu2 = mu * mu;
  const int k = 1 << (d + 1);
  out.quadrature_points = k;
  Matrix omega = Matrix::Zero(idx.dim(), idx.dim());
  for (int q = 0; q < k; ++q) {
    const double theta = 2.0 * M_PI * q / k;
    Vector a = Vector::Zero(d);
    Vector b = Vector::Zero(d);
    for (int j = 0; j < d; ++j) {
      const cd c = std::polar(std::sqrt(s.mu(j) / mu), std::ldexp(theta, j));
      a += c * s.u.col(j);
      b += std::conj(c) * s.v.col(j);
    }
    const Vector prod = kron(a, b);
    omega += prod * prod.adjoint();
  }
  omega /= static_cast<double>(k);
  out.omega = omega;

  Matrix sigma = Matrix::Zero(idx.dim(), idx.dim());
  for (int j = 0; j < d; ++j)
    for (int m = 0; m < d; ++m) {
      if (j == m) continue;
      const Vector jm = kron(Vector(s.u.col(j)), Vector(s.v.col(m)));
      sigma += s.mu(j) * s.mu(m) * (jm * jm.adjoint());
    }
  sigma /= out.mu2 - 1.0;
  out.sigma = sigma;
  out.residual = trace_norm(proj + (out.mu2 - 1.0) * sigma - out.mu2 * omega);
  return out;
}

double coherence_robustness_pure(const KetVector& psi) {
  const double s = psi.amplitudes().cwiseAbs().sum();
  return s * s;
}

double l1_norm(const Matrix& x) { return x.cwiseAbs().sum(); }
double l1_norm(const DensityOperator& rho) { return l1_norm(rho.matrix()); }

DensityOperator maximally_correlated_embed(const DensityOperator& omega) {
  const int n = omega.cutoff();
  const BipartiteIndex idx{n, n};
  Matrix rho = Matrix::Zero(idx.dim(), idx.dim());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rho(idx.flat(i, i), idx.flat(j, j)) = omega.matrix()(i, j);
  return DensityOperator(rho, omega.tail_mass(), omega.normalized());
}

Matrix hilbert_operator(int n) {
  Matrix h = Matrix::Zero(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) h(i - 1, j - 1) = 1.0 / (i - j);
  return h;
}

HilbertReport hilbert_example(int N, Sign sign) {
  if (N < 10 || N > 400) throw InvalidArgument("hilbert_example: N must lie in [10, 400]");
  HilbertReport rep;
  rep.state.N = N;
  rep.state.sign = sign;

  const Matrix h = hilbert_operator(N);
  // iH is Hermitian, so its spectral radius is the operator norm.
  const Matrix ih = cd(0.0, 1.0) * h;
  rep.hilbert_norm = std::max(std::abs(min_eigenvalue(ih)), std::abs(max_eigenvalue(ih)));

  RealVector d(N);
  for (int n = 1; n <= N; ++n) d(n - 1) = 1.0 / (std::sqrt(n) * std::log(n + 1.0));
  rep.state.c_N = d.squaredNorm();
  const double pm = sign == Sign::kPlus ? 1.0 : -1.0;
  Matrix omega = Matrix::Identity(N, N) + pm * ih / M_PI;
  omega = d.asDiagonal() * omega * d.asDiagonal();
  omega /= rep.state.c_N;
  rep.state.omega = omega;
  rep.omega_min_eig = min_eigenvalue(omega);
  if (rep.omega_min_eig < -tol::kPsd)
    throw InternalError("hilbert_example: omega is not positive semidefinite");

  // sigma_N = (rho_+ + rho_-)/2 embeds diag(omega); 2 sigma_N - rho lives on span{|nn>}.
  Matrix cert = -omega;
  cert.diagonal() += 2.0 * omega.diagonal();
  rep.certificate_min_eig = min_eigenvalue(cert);
  if (rep.certificate_min_eig < -tol::kPsd)
    throw InternalError("hilbert_example: 2 sigma_N - rho is not positive semidefinite");

  rep.l1 = l1_norm(omega);
  rep.negativity = 0.5 * (rep.l1 - 1.0);
  if (N <= kHilbertDenseMax) {
    const DensityOperator rho = maximally_correlated_embed(DensityOperator(omega));
    rep.state.rho = rho.matrix();
    rep.negativity_direct = 0.5 * (trace_norm(partial_transpose(rho, {N, N})) - 1.0);
  }
  return rep;
}

}  // namespace cvrob
