#include "cvrob/channel.hpp"

#include <cmath>

namespace cvrob {

Channel Channel::from_kraus(std::vector<Matrix> kraus) {
  if (kraus.empty()) throw InvalidArgument("Channel: empty Kraus list");
  Channel c;
  c.din_ = static_cast<int>(kraus.front().cols());
  c.dout_ = static_cast<int>(kraus.front().rows());
  for (const auto& k : kraus)
    if (k.cols() != c.din_ || k.rows() != c.dout_)
      throw InvalidArgument("Channel: inconsistent Kraus shapes");
  c.kraus_ = std::move(kraus);
  return c;
}

Channel Channel::from_superoperator(const Matrix& s, int din, int dout) {
  if (s.rows() != dout * dout || s.cols() != din * din)
    throw InvalidArgument("Channel: superoperator shape mismatch");
  Matrix choi = Matrix::Zero(din * dout, din * dout);
  for (int i = 0; i < din; ++i)
    for (int j = 0; j < din; ++j) {
      const Vector col = s.col(i + j * din);
      for (int a = 0; a < dout; ++a)
        for (int b = 0; b < dout; ++b) choi(i * dout + a, j * dout + b) = col(a + b * dout);
    }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (choi + choi.adjoint()));
  if (es.eigenvalues()(0) < -tol::kPsd * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff()))
    throw InvalidArgument("Channel: superoperator is not completely positive");
  std::vector<Matrix> kraus;
  for (int k = 0; k < din * dout; ++k) {
    const double lam = es.eigenvalues()(k);
    if (lam <= 1e-14) continue;
    Matrix kk(dout, din);
    for (int i = 0; i < din; ++i)
      for (int a = 0; a < dout; ++a) kk(a, i) = std::sqrt(lam) * es.eigenvectors()(i * dout + a, k);
    kraus.push_back(kk);
  }
  if (kraus.empty()) kraus.push_back(Matrix::Zero(dout, din));
  return from_kraus(std::move(kraus));
}

Channel Channel::identity(int d) { return from_kraus({Matrix::Identity(d, d)}); }

Channel Channel::unitary(const Matrix& u) {
  if (u.rows() != u.cols()) throw InvalidArgument("Channel::unitary: matrix must be square");
  return from_kraus({u});
}

Channel Channel::dephasing(int d) {
  std::vector<Matrix> k;
  for (int i = 0; i < d; ++i) {
    Matrix p = Matrix::Zero(d, d);
    p(i, i) = 1.0;
    k.push_back(p);
  }
  return from_kraus(std::move(k));
}

Channel Channel::permutation(const std::vector<int>& perm) {
  const int d = static_cast<int>(perm.size());
  std::vector<bool> seen(d, false);
  Matrix p = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    if (perm[i] < 0 || perm[i] >= d || seen[perm[i]])
      throw InvalidArgument("Channel::permutation: not a permutation");
    seen[perm[i]] = true;
    p(perm[i], i) = 1.0;
  }
  return from_kraus({p});
}

Matrix Channel::apply(const Matrix& rho) const {
  if (rho.rows() != din_ || rho.cols() != din_) throw InvalidArgument("Channel: input dimension");
  Matrix out = Matrix::Zero(dout_, dout_);
  for (const auto& k : kraus_) out.noalias() += k * rho * k.adjoint();
  return out;
}

Matrix Channel::adjoint_apply(const Matrix& x) const {
  if (x.rows() != dout_ || x.cols() != dout_) throw InvalidArgument("Channel: output dimension");
  Matrix out = Matrix::Zero(din_, din_);
  for (const auto& k : kraus_) out.noalias() += k.adjoint() * x * k;
  return out;
}

Matrix Channel::superoperator() const {
  Matrix s = Matrix::Zero(dout_ * dout_, din_ * din_);
  for (const auto& k : kraus_) s += kron(Matrix(k.conjugate()), k);
  return s;
}

Matrix Channel::choi() const {
  Matrix c = Matrix::Zero(din_ * dout_, din_ * dout_);
  for (int i = 0; i < din_; ++i)
    for (int j = 0; j < din_; ++j) {
      Matrix e = Matrix::Zero(din_, din_);
      e(i, j) = 1.0;
      c.block(i * dout_, j * dout_, dout_, dout_) = apply(e);
    }
  return c;
}

bool Channel::is_cptp(double eps) const {
  Matrix sum = Matrix::Zero(din_, din_);
  for (const auto& k : kraus_) sum += k.adjoint() * k;
  if ((sum - Matrix::Identity(din_, din_)).cwiseAbs().maxCoeff() > std::max(eps, 1e-10))
    return false;
  if (din_ * dout_ <= 256) return min_eigenvalue(choi()) >= -eps;
  return true;  // Kraus form is completely positive by construction
}

}  // namespace cvrob
