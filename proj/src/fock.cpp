#include "cvrob/fock.hpp"

#include <cmath>
#include <sstream>

namespace cvrob {

void TruncationPolicy::check(double tail, const char* what) const {
  if (allow_truncation || tail <= max_tail) return;
  std::ostringstream os;
  os << what << ": tail mass " << tail << " exceeds " << max_tail << "; raise the cutoff";
  throw TruncationError(os.str());
}

KetVector::KetVector(Vector amplitudes, double tail_mass)
    : amp_(std::move(amplitudes)), tail_(tail_mass) {
  if (amp_.size() == 0) throw InvalidArgument("KetVector: empty amplitude vector");
  if (!amp_.allFinite()) throw InvalidArgument("KetVector: non-finite amplitude");
  const double n = amp_.norm();
  if (n == 0.0) throw InvalidArgument("KetVector: zero vector");
  amp_ /= n;
}

DensityOperator::DensityOperator(Matrix m, double tail_mass, bool normalized)
    : m_(std::move(m)), tail_(tail_mass), normalized_(normalized) {
  if (m_.rows() == 0 || m_.rows() != m_.cols())
    throw InvalidArgument("DensityOperator: matrix must be square and non-empty");
  if (!m_.allFinite()) throw InvalidArgument("DensityOperator: non-finite entry");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if (!is_hermitian(m_, tol::kHerm * scale))
    throw InvalidArgument("DensityOperator: not Hermitian");
  m_ = (0.5 * (m_ + m_.adjoint())).eval();
  if (min_eigenvalue(m_) < -tol::kPsd * scale)
    throw InvalidArgument("DensityOperator: not positive semidefinite");
  if (normalized_) {
    const double tr = m_.trace().real();
    if (tr <= 0.0) throw InvalidArgument("DensityOperator: non-positive trace");
    m_ /= tr;
  }
}

DensityOperator DensityOperator::from_ket(const KetVector& psi) {
  return DensityOperator(psi.projector(), psi.tail_mass());
}

std::pair<Matrix, Matrix> ladder_ops(int cutoff) {
  if (cutoff < 2) throw InvalidArgument("ladder_ops: cutoff must be >= 2");
  Matrix a = Matrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  Matrix ad = a.adjoint();
  return {a, ad};
}

Matrix number_operator(int cutoff) {
  Matrix n = Matrix::Zero(cutoff, cutoff);
  for (int k = 0; k < cutoff; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

double trace_norm(const Matrix& x) {
  if (!x.allFinite()) throw InvalidArgument("trace_norm: non-finite entries");
  if (x.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(x);
  return svd.singularValues().sum();
}

double operator_norm(const Matrix& x) {
  if (!x.allFinite()) throw InvalidArgument("operator_norm: non-finite entries");
  if (x.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(x);
  return svd.singularValues()(0);
}

bool is_hermitian(const Matrix& x, double eps) {
  if (x.rows() != x.cols()) return false;
  return (x - x.adjoint()).cwiseAbs().maxCoeff() <= eps;
}

double min_eigenvalue(const Matrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (x + x.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const Matrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (x + x.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

Spectrum spectral_decompose(const Matrix& x) {
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  if (!is_hermitian(x, tol::kHerm * scale))
    throw InvalidArgument("spectral_decompose: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (x + x.adjoint()));
  const int d = static_cast<int>(x.rows());
  Spectrum s{RealVector(d), Matrix(d, d)};
  for (int k = 0; k < d; ++k) {
    double v = es.eigenvalues()(d - 1 - k);
    if (v < 0.0 && v >= -tol::kPsd) v = 0.0;
    s.values(k) = v;
    s.vectors.col(k) = es.eigenvectors().col(d - 1 - k);
  }
  return s;
}

Spectrum spectral_decompose(const DensityOperator& rho) { return spectral_decompose(rho.matrix()); }

Matrix partial_transpose(const Matrix& rho, const BipartiteIndex& idx) {
  if (rho.rows() != idx.dim() || rho.cols() != idx.dim())
    throw InvalidArgument("partial_transpose: dimension mismatch");
  Matrix out(rho.rows(), rho.cols());
  for (int i = 0; i < idx.dA; ++i)
    for (int j = 0; j < idx.dB; ++j)
      for (int k = 0; k < idx.dA; ++k)
        for (int l = 0; l < idx.dB; ++l)
          out(idx.flat(i, j), idx.flat(k, l)) = rho(idx.flat(i, l), idx.flat(k, j));
  return out;
}

Matrix partial_transpose(const DensityOperator& rho, const BipartiteIndex& idx) {
  return partial_transpose(rho.matrix(), idx);
}

SchmidtDecomposition schmidt_decompose(const KetVector& psi, const BipartiteIndex& idx) {
  if (psi.cutoff() != idx.dim()) throw InvalidArgument("schmidt: dimension mismatch");
  Matrix c(idx.dA, idx.dB);
  for (int i = 0; i < idx.dA; ++i)
    for (int j = 0; j < idx.dB; ++j) c(i, j) = psi[idx.flat(i, j)];
  Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  // psi = sum_k mu_k u_k (x) conj(V)_k since C = U S V^dagger
  return {svd.singularValues(), svd.matrixU(), svd.matrixV().conjugate()};
}

RealVector schmidt_spectrum(const KetVector& psi, const BipartiteIndex& idx) {
  return schmidt_decompose(psi, idx).mu;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

double fidelity(const Vector& a, const Vector& b) {
  const Eigen::Index n = std::min(a.size(), b.size());
  return std::norm(a.head(n).dot(b.head(n)));
}

double fidelity(const KetVector& a, const KetVector& b) {
  return fidelity(a.amplitudes(), b.amplitudes());
}

}  // namespace cvrob
