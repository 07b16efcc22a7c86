#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "cvrob/error.hpp"

namespace cvrob {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr int kDefaultCutoff = 60;

namespace tol {
inline constexpr double kNorm = 1e-12;
inline constexpr double kHerm = 1e-12;
inline constexpr double kPsd = 1e-10;
inline constexpr double kSupport = 1e-12;
inline constexpr double kTail = 1e-8;
}  // namespace tol

// Tail mass = probability weight beyond the cutoff.
struct TruncationPolicy {
  double max_tail = tol::kTail;
  bool allow_truncation = false;

  void check(double tail, const char* what) const;
};

class KetVector {
 public:
  // Renormalizes; tail_mass is the weight lost to the cutoff.
  explicit KetVector(Vector amplitudes, double tail_mass = 0.0);

  int cutoff() const { return static_cast<int>(amp_.size()); }
  const Vector& amplitudes() const { return amp_; }
  cd operator[](int n) const { return amp_(n); }
  double tail_mass() const { return tail_; }
  Matrix projector() const { return amp_ * amp_.adjoint(); }

 private:
  Vector amp_;
  double tail_;
};

class DensityOperator {
 public:
  // Validates Hermiticity and positivity; normalizes the trace when normalized=true.
  explicit DensityOperator(Matrix m, double tail_mass = 0.0, bool normalized = true);
  static DensityOperator from_ket(const KetVector& psi);

  int cutoff() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double tail_mass() const { return tail_; }
  bool normalized() const { return normalized_; }
  double trace() const { return m_.trace().real(); }

 private:
  Matrix m_;
  double tail_;
  bool normalized_;
};

// Row-major flattening: index = iA * dB + iB.
struct BipartiteIndex {
  int dA = 0;
  int dB = 0;

  int dim() const { return dA * dB; }
  int flat(int iA, int iB) const { return iA * dB + iB; }
};

std::pair<Matrix, Matrix> ladder_ops(int cutoff);
Matrix number_operator(int cutoff);

double trace_norm(const Matrix& x);
double operator_norm(const Matrix& x);

bool is_hermitian(const Matrix& x, double eps = tol::kHerm);
double min_eigenvalue(const Matrix& x);
double max_eigenvalue(const Matrix& x);

struct Spectrum {
  RealVector values;  // non-increasing
  Matrix vectors;     // columns
};

Spectrum spectral_decompose(const Matrix& x);
Spectrum spectral_decompose(const DensityOperator& rho);

Matrix partial_transpose(const Matrix& rho, const BipartiteIndex& idx);
Matrix partial_transpose(const DensityOperator& rho, const BipartiteIndex& idx);

struct SchmidtDecomposition {
  RealVector mu;  // non-increasing
  Matrix u;       // dA x k, columns are left Schmidt vectors
  Matrix v;       // dB x k
};

SchmidtDecomposition schmidt_decompose(const KetVector& psi, const BipartiteIndex& idx);
RealVector schmidt_spectrum(const KetVector& psi, const BipartiteIndex& idx);

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

// |<a|b>|^2, zero-padding the shorter vector.
double fidelity(const KetVector& a, const KetVector& b);
double fidelity(const Vector& a, const Vector& b);

}  // namespace cvrob
