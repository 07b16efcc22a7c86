#include "cvrob/states.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

namespace cvrob {

namespace {

int internal_cutoff(int cutoff) { return 2 * cutoff + 32; }

void require_cutoff(int cutoff) {
  if (cutoff < 1) throw InvalidArgument("cutoff must be positive");
}

double captured_tail(const Vector& v) { return std::max(0.0, 1.0 - v.squaredNorm()); }

// exp(G) projected to the leading cutoff x cutoff block, with an isometry check.
Matrix project_exponential(const Matrix& generator, int cutoff, int checked_columns,
                           const char* what) {
  const Matrix full = generator.exp();
  Matrix s = full.topLeftCorner(cutoff, cutoff);
  const int k = std::min(checked_columns, cutoff);
  if (k > 0) {
    const Matrix block = s.leftCols(k).adjoint() * s.leftCols(k);
    const double err = (block - Matrix::Identity(k, k)).cwiseAbs().maxCoeff();
    if (err > 1e-8) {
      throw TruncationError(std::string(what) + ": leading columns leak past the cutoff (" +
                            std::to_string(err) + ")");
    }
  }
  return s;
}

Matrix squeeze_generator(cd xi, int d) {
  auto [a, ad] = ladder_ops(d);
  return 0.5 * (xi * ad * ad - std::conj(xi) * a * a);
}

}  // namespace

double poisson_tail(double mean, int cutoff) {
  if (mean < 0.0) throw InvalidArgument("poisson_tail: negative mean");
  if (mean == 0.0 || cutoff <= 0) return cutoff <= 0 ? 1.0 : 0.0;
  return boost::math::gamma_p(static_cast<double>(cutoff), mean);
}

KetVector fock_state(int n, int cutoff) {
  require_cutoff(cutoff);
  if (n < 0 || n >= cutoff) throw InvalidArgument("fock_state: n must satisfy 0 <= n < cutoff");
  Vector v = Vector::Zero(cutoff);
  v(n) = 1.0;
  return KetVector(v);
}

Vector coherent_amplitudes(cd alpha, int cutoff) {
  require_cutoff(cutoff);
  Vector v = Vector::Zero(cutoff);
  const double m = std::abs(alpha);
  if (m == 0.0) {
    v(0) = 1.0;
    return v;
  }
  const double phi = std::arg(alpha);
  for (int n = 0; n < cutoff; ++n) {
    const double logmag = -0.5 * m * m + n * std::log(m) - 0.5 * std::lgamma(n + 1.0);
    v(n) = std::polar(std::exp(logmag), n * phi);
  }
  return v;
}

KetVector coherent_state(cd alpha, int cutoff, const TruncationPolicy& policy) {
  const double tail = poisson_tail(std::norm(alpha), cutoff);
  policy.check(tail, "coherent_state");
  return KetVector(coherent_amplitudes(alpha, cutoff), tail);
}

Vector squeezed_amplitudes(double r, int cutoff) {
  require_cutoff(cutoff);
  Vector v = Vector::Zero(cutoff);
  const double t = std::tanh(r);
  const double pref = -0.5 * std::log(std::cosh(r));
  v(0) = std::exp(pref);
  if (t == 0.0) return v;
  const double lt = std::log(std::abs(t));
  const double sgn = t < 0 ? -1.0 : 1.0;
  for (int k = 1; 2 * k < cutoff; ++k) {
    const double lg = 0.5 * std::lgamma(2.0 * k + 1) - k * std::log(2.0) - std::lgamma(k + 1.0);
    const double mag = std::exp(pref + lg + k * lt);
    v(2 * k) = (k % 2 == 1 && sgn < 0) ? -mag : mag;
  }
  return v;
}

KetVector squeezed_vacuum(double r, int cutoff, const TruncationPolicy& policy) {
  Vector v = squeezed_amplitudes(r, cutoff);
  const double tail = captured_tail(v);
  policy.check(tail, "squeezed_vacuum");
  return KetVector(v, tail);
}

double cat_normalization(double alpha, Parity parity) {
  const double e = std::exp(-2.0 * alpha * alpha);
  return parity == Parity::kEven ? 1.0 + e : 1.0 - e;
}

KetVector cat_state(double alpha, Parity parity, int cutoff, const TruncationPolicy& policy) {
  if (!(alpha > 0.0)) throw InvalidArgument("cat_state: alpha must be positive");
  require_cutoff(cutoff);
  const Vector coh = coherent_amplitudes(alpha, cutoff);
  const double c = cat_normalization(alpha, parity);
  const int start = parity == Parity::kEven ? 0 : 1;
  Vector v = Vector::Zero(cutoff);
  // (|a> +- |-a>)/sqrt(2c): matching-parity terms double.
  // For small alpha the odd normalization c ~ 2 alpha^2 is evaluated via expm1 for accuracy.
  const double cc = parity == Parity::kOdd ? -std::expm1(-2.0 * alpha * alpha) : c;
  for (int n = start; n < cutoff; n += 2) v(n) = 2.0 * coh(n) / std::sqrt(2.0 * cc);
  const double tail = captured_tail(v);
  policy.check(tail, "cat_state");
  return KetVector(v, tail);
}

Vector photon_added_amplitudes(double r, int cutoff) {
  require_cutoff(cutoff);
  const Vector z = squeezed_amplitudes(r, cutoff + 1);
  Vector v = Vector::Zero(cutoff);
  const double ch = std::cosh(r);
  for (int n = 1; n < cutoff; ++n) v(n) = std::sqrt(static_cast<double>(n)) * z(n - 1) / ch;
  return v;
}

KetVector photon_added_squeezed(double r, int cutoff, const TruncationPolicy& policy) {
  Vector v = photon_added_amplitudes(r, cutoff);
  const double tail = captured_tail(v);
  policy.check(tail, "photon_added_squeezed");
  return KetVector(v, tail);
}

KetVector photon_subtracted_squeezed(double r, int cutoff, const TruncationPolicy& policy) {
  if (r == 0.0) throw InvalidArgument("photon_subtracted_squeezed: r must be nonzero");
  require_cutoff(cutoff);
  const Vector z = squeezed_amplitudes(r, cutoff + 1);
  Vector v = Vector::Zero(cutoff);
  const double sh = std::sinh(r);
  for (int n = 0; n < cutoff; ++n) v(n) = std::sqrt(n + 1.0) * z(n + 1) / sh;
  const double tail = captured_tail(v);
  policy.check(tail, "photon_subtracted_squeezed");
  return KetVector(v, tail);
}

DensityOperator thermal_state(double N, int cutoff, const TruncationPolicy& policy) {
  if (N < 0.0) throw InvalidArgument("thermal_state: N must be nonnegative");
  require_cutoff(cutoff);
  const double q = N / (N + 1.0);
  const double tail = std::pow(q, cutoff);
  policy.check(tail, "thermal_state");
  Matrix m = Matrix::Zero(cutoff, cutoff);
  double p = 1.0 / (N + 1.0);
  for (int n = 0; n < cutoff; ++n, p *= q) m(n, n) = p;
  return DensityOperator(m, tail);
}

DensityOperator phase_randomized_coherent(double n, int cutoff, const TruncationPolicy& policy) {
  if (n < 0.0) throw InvalidArgument("phase_randomized_coherent: n must be nonnegative");
  require_cutoff(cutoff);
  const double tail = poisson_tail(n, cutoff);
  policy.check(tail, "phase_randomized_coherent");
  Matrix m = Matrix::Zero(cutoff, cutoff);
  const Vector amp = coherent_amplitudes(std::sqrt(n), cutoff);
  for (int k = 0; k < cutoff; ++k) m(k, k) = std::norm(amp(k));
  return DensityOperator(m, tail);
}

DensityOperator squeezed_thermal_state(const SqueezedThermalParams& p, int cutoff,
                                       const TruncationPolicy& policy) {
  if (p.N < 0.0 || p.r < 0.0) throw InvalidArgument("squeezed_thermal_state: N, r >= 0");
  const int di = internal_cutoff(cutoff);
  const Matrix s = squeeze_generator(cd(p.r, 0.0), di).exp();
  TruncationPolicy loose;
  loose.allow_truncation = true;
  const Matrix tau = thermal_state(p.N, di, loose).matrix();
  const Matrix full = s * tau * s.adjoint();
  const Matrix m = full.topLeftCorner(cutoff, cutoff);
  const double tail = std::max(0.0, 1.0 - m.trace().real());
  policy.check(tail, "squeezed_thermal_state");
  return DensityOperator(m, tail);
}

Matrix squeeze_operator(double r, int cutoff, int checked_columns) {
  return squeeze_operator(cd(r, 0.0), cutoff, checked_columns);
}

Matrix squeeze_operator(cd xi, int cutoff, int checked_columns) {
  require_cutoff(cutoff);
  return project_exponential(squeeze_generator(xi, internal_cutoff(cutoff)), cutoff,
                             checked_columns, "squeeze_operator");
}

Matrix displacement_operator(cd alpha, int cutoff, int checked_columns) {
  require_cutoff(cutoff);
  auto [a, ad] = ladder_ops(internal_cutoff(cutoff));
  return project_exponential(alpha * ad - std::conj(alpha) * a, cutoff, checked_columns,
                             "displacement_operator");
}

Matrix displacement_unitary(cd alpha, int cutoff) {
  auto [a, ad] = ladder_ops(cutoff);
  const Matrix g = alpha * ad - std::conj(alpha) * a;
  return g.exp();
}

Matrix rotation_operator(double theta, int cutoff) {
  require_cutoff(cutoff);
  Matrix u = Matrix::Zero(cutoff, cutoff);
  for (int n = 0; n < cutoff; ++n) u(n, n) = std::polar(1.0, theta * n);
  return u;
}

KetVector displaced_squeezed(const GaussianPureParams& p, int cutoff,
                             const TruncationPolicy& policy) {
  require_cutoff(cutoff);
  const int di = internal_cutoff(cutoff);
  Vector v = Vector::Zero(di);
  v(0) = 1.0;
  if (std::abs(p.xi) > 0.0) v = squeeze_generator(p.xi, di).exp() * v;
  if (std::abs(p.alpha) > 0.0) {
    auto [a, ad] = ladder_ops(di);
    const Matrix g = p.alpha * ad - std::conj(p.alpha) * a;
    v = g.exp() * v;
  }
  const Vector head = v.head(cutoff);
  const double tail = std::max(0.0, 1.0 - head.squaredNorm());
  policy.check(tail, "displaced_squeezed");
  return KetVector(head, tail);
}

cd chi1_gaussian(const SqueezedThermalParams& p, cd alpha) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  const double expo = 0.5 * std::norm(alpha) -
                      0.5 * (2.0 * p.N + 1.0) *
                          (std::exp(-2.0 * p.r) * ar * ar + std::exp(2.0 * p.r) * ai * ai);
  return cd(std::exp(expo), 0.0);
}

bool chi1_bounded(const SqueezedThermalParams& p) {
  return std::exp(2.0 * p.r) <= 2.0 * p.N + 1.0;
}

}  // namespace cvrob
