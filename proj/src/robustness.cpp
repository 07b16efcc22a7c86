#include "cvrob/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cvrob/optimize.hpp"
#include "cvrob/states.hpp"

namespace cvrob {

std::string to_string(Certification c) {
  switch (c) {
    case Certification::kAnalytic: return "analytic";
    case Certification::kGridCertified: return "grid-certified";
    case Certification::kSolver: return "solver";
  }
  return "unknown";
}

std::string to_string(FreeKind k) {
  switch (k) {
    case FreeKind::kClassical: return "classical-coherent";
    case FreeKind::kGaussianHull: return "gaussian-convex-hull";
    case FreeKind::kSeparable: return "separable";
    case FreeKind::kIncoherent: return "incoherent";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kHolds: return "holds";
    case Verdict::kViolated: return "violated";
    case Verdict::kIndeterminate: return "indeterminate";
  }
  return "unknown";
}

Witness Witness::make(Matrix op, double b, Certification cert, std::string method) {
  if (op.rows() != op.cols() || op.rows() == 0) throw InvalidArgument("Witness: operator shape");
  if (!(b > 0.0) || !std::isfinite(b)) throw InvalidArgument("Witness: b must be positive");
  const double scale = std::max(1.0, op.cwiseAbs().maxCoeff());
  if (!is_hermitian(op, 1e-10 * scale)) throw InvalidArgument("Witness: operator not Hermitian");
  op = (0.5 * (op + op.adjoint())).eval();
  if (min_eigenvalue(op) < -tol::kPsd * scale) throw InvalidArgument("Witness: operator not PSD");
  return Witness{std::move(op), b, cert, std::move(method)};
}

bool RobustnessEstimate::contains(double v, double eps) const {
  const double s = std::max(1.0, std::abs(v));
  return v >= lower - eps * s && (upper_infinite() || v <= upper + eps * s);
}

RobustnessEstimate assemble_estimate(const std::vector<Endpoint>& endpoints,
                                     std::optional<double> closed_form, double tail_mass) {
  RobustnessEstimate e;
  e.tail_mass = tail_mass;
  for (const auto& p : endpoints) {
    if (std::isnan(p.value)) throw InvalidArgument("assemble_estimate: NaN endpoint");
    const std::string tag = (p.side == Side::kLower ? "lower " : "upper ") + p.method;
    e.methods.push_back(tag);
    if (p.side == Side::kLower && p.value > e.lower) {
      e.lower = p.value;
      e.lower_method = p.method;
    } else if (p.side == Side::kUpper && p.value < e.upper) {
      e.upper = p.value;
      e.upper_method = p.method;
    }
  }
  // Renormalized truncated ansaetze can sit up to tail_mass (relative) below the exact value.
  const double slack = std::max(1e-9, 2.0 * tail_mass) * std::max(1.0, std::abs(e.lower));
  if (!e.upper_infinite() && e.lower > e.upper + slack) {
    std::ostringstream os;
    os.precision(12);
    os << "inconsistent certificates: lower " << e.lower << " (" << e.lower_method
       << ") > upper " << e.upper << " (" << e.upper_method << ")";
    throw InconsistencyError(os.str());
  }
  if (closed_form) {
    if (!e.contains(*closed_form, 1e-9)) {
      std::ostringstream os;
      os.precision(12);
      os << "closed form " << *closed_form << " outside certified interval [" << e.lower << ", "
         << e.upper << "]";
      throw InconsistencyError(os.str());
    }
    e.closed_form = closed_form;
  } else if (!e.upper_infinite() && e.upper - e.lower <= slack) {
    e.closed_form = e.lower;
  }
  return e;
}

double pure_robustness_upper(const Vector& psi, const DensityOperator& sigma) {
  if (psi.size() != sigma.cutoff())
    throw InvalidArgument("pure_robustness_upper: dimension mismatch");
  const double norm2 = psi.squaredNorm();
  Matrix off = sigma.matrix();
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() == 0.0) {  // diagonal ansatz: no eigen-solve needed
    double val = 0.0, outside = 0.0;
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
      // Diagonal entries are exact, so any positive weight is kept.
      const double p = sigma.matrix()(k, k).real();
      if (p > 0.0)
        val += std::norm(psi(k)) / p;
      else
        outside += std::norm(psi(k));
    }
    if (outside > 1e-10 * norm2)
      throw SupportError("pure_robustness_upper: state leaves the support of the ansatz");
    return val / norm2;
  }
  const Spectrum s = spectral_decompose(sigma);
  const Vector c = s.vectors.adjoint() * psi;
  double val = 0.0;
  double outside = 0.0;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    const double w = std::norm(c(k));
    if (s.values(k) >= tol::kSupport)
      val += w / s.values(k);
    else
      outside += w;
  }
  if (outside > 1e-10 * norm2) {
    std::ostringstream os;
    os << "pure_robustness_upper: state has mass " << outside
       << " outside the support of the ansatz";
    throw SupportError(os.str());
  }
  return val / norm2;
}

double pure_robustness_upper(const KetVector& psi, const DensityOperator& sigma) {
  return pure_robustness_upper(psi.amplitudes(), sigma);
}

double mixed_robustness_upper(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.cutoff() != sigma.cutoff())
    throw InvalidArgument("mixed_robustness_upper: dimension mismatch");
  const Spectrum s = spectral_decompose(sigma);
  int k = 0;
  while (k < s.values.size() && s.values(k) >= tol::kSupport) ++k;
  const Matrix v = s.vectors.leftCols(k);
  const Matrix vperp = s.vectors.rightCols(s.values.size() - k);
  if (vperp.cols() > 0 && (vperp.adjoint() * rho.matrix() * vperp).trace().real() > 1e-10)
    throw SupportError("mixed_robustness_upper: rho leaves the support of the ansatz");
  RealVector inv_sqrt(k);
  for (int i = 0; i < k; ++i) inv_sqrt(i) = 1.0 / std::sqrt(s.values(i));
  const Matrix m = inv_sqrt.asDiagonal() * (v.adjoint() * rho.matrix() * v) * inv_sqrt.asDiagonal();
  return max_eigenvalue(m);
}

double witness_lower(const DensityOperator& rho, const Witness& w) {
  if (rho.cutoff() != w.op.rows()) throw InvalidArgument("witness_lower: dimension mismatch");
  return (w.op.cwiseProduct(rho.matrix().transpose())).sum().real() / w.b;
}

double witness_lower(const KetVector& psi, const Witness& w) {
  if (psi.cutoff() != w.op.rows()) throw InvalidArgument("witness_lower: dimension mismatch");
  return psi.amplitudes().dot(w.op * psi.amplitudes()).real() / w.b;
}

double coherent_expectation(const Matrix& w, cd alpha) {
  const Vector v = coherent_amplitudes(alpha, static_cast<int>(w.rows()));
  return v.dot(w * v).real();
}

namespace {

// Eigen-factored evaluation of <alpha|W|alpha>.
class CoherentForm {
 public:
  explicit CoherentForm(const Matrix& w) : d_(static_cast<int>(w.rows())) {
    const Spectrum s = spectral_decompose(w);
    const double top = std::max(std::abs(s.values(0)), 1e-300);
    int k = 0;
    while (k < s.values.size() && s.values(k) > 1e-14 * top) ++k;
    lam_ = s.values.head(k);
    u_ = s.vectors.leftCols(k).adjoint();
    buf_.resize(d_);
  }

  double operator()(cd alpha) {
    const double a2 = std::norm(alpha);
    buf_(0) = std::exp(-0.5 * a2);
    for (int n = 1; n < d_; ++n) buf_(n) = buf_(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    const Vector p = u_ * buf_;
    double s = 0.0;
    for (Eigen::Index k = 0; k < p.size(); ++k) s += lam_(k) * std::norm(p(k));
    return s;
  }

 private:
  int d_;
  RealVector lam_;
  Matrix u_;
  Vector buf_;
};

}  // namespace

CoherentSup coherent_sup(const Matrix& w, const GridSpec& grid) {
  if (!(grid.radius > 0.0) || !(grid.step > 0.0) || grid.inflation < 0.0)
    throw InvalidArgument("coherent_sup: bad grid specification");
  CoherentForm f(w);
  const int m = static_cast<int>(std::lround(grid.radius / grid.step));
  const int side = 2 * m + 1;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> vals(static_cast<std::size_t>(side) * side, nan);
  auto at = [&](int i, int j) -> double& { return vals[static_cast<std::size_t>(i) * side + j]; };
  double gmax = -1.0;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      const double x = (i - m) * grid.step;
      const double y = (j - m) * grid.step;
      if (x * x + y * y > grid.radius * grid.radius * (1 + 1e-12)) continue;
      at(i, j) = f(cd(x, y));
      gmax = std::max(gmax, at(i, j));
    }

  // Outward growth at the boundary means the supremum may lie outside the grid.
  const int rays = 256;
  for (int k = 0; k < rays; ++k) {
    const cd dir = std::polar(1.0, 2.0 * M_PI * k / rays);
    const double outer = f(grid.radius * dir);
    const double inner = f((grid.radius - grid.step) * dir);
    if (outer > inner + 1e-9 * gmax && outer > 1e-6 * gmax) {
      std::ostringstream os;
      os << "coherent_sup: <alpha|W|alpha> still increasing at radius " << grid.radius;
      throw CertificationFailure(os.str());
    }
  }

  struct Peak {
    double v;
    int i, j;
  };
  std::vector<Peak> peaks;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      const double v = at(i, j);
      if (std::isnan(v) || v < 0.5 * gmax) continue;
      bool is_max = true;
      for (int di = -1; di <= 1 && is_max; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (!di && !dj) continue;
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= side || jj >= side) continue;
          const double u = at(ii, jj);
          if (!std::isnan(u) && u > v) {
            is_max = false;
            break;
          }
        }
      if (is_max) peaks.push_back({v, i, j});
    }
  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) { return a.v > b.v; });
  if (peaks.size() > 16) peaks.resize(16);

  CoherentSup out;
  out.value = gmax;
  for (const auto& p : peaks) {
    const double x0 = (p.i - m) * grid.step;
    const double y0 = (p.j - m) * grid.step;
    if (p.v >= out.value) {
      out.value = p.v;
      out.argmax = cd(x0, y0);
    }
    auto neg = [&](const std::vector<double>& z) { return -f(cd(z[0], z[1])); };
    const MinND r = nelder_mead(neg, {x0, y0}, {0.5 * grid.step, 0.5 * grid.step}, 1e-15, 1e-10,
                                2000);
    if (-r.f > out.value) {
      out.value = -r.f;
      out.argmax = cd(r.x[0], r.x[1]);
    }
    ++out.refined_peaks;
  }
  return out;
}

Witness certify_coherent_witness(const Matrix& w, const GridSpec& grid) {
  const CoherentSup s = coherent_sup(w, grid);
  if (!(s.value > 0.0)) throw CertificationFailure("certify_coherent_witness: zero witness");
  std::ostringstream os;
  os << "grid radius " << grid.radius << " step " << grid.step << " inflation "
     << grid.inflation;
  return Witness::make(w, s.value * (1.0 + grid.inflation), Certification::kGridCertified,
                       os.str());
}

bool is_free_member(const DensityOperator& sigma, const FreeSetSpec& free, double eps) {
  const Matrix& m = sigma.matrix();
  switch (free.kind) {
    case FreeKind::kIncoherent: {
      Matrix off = m;
      off.diagonal().setZero();
      return off.cwiseAbs().maxCoeff() <= eps;
    }
    case FreeKind::kClassical: {
      // Pure coherent states only: purity and overlap with |<a>>.
      const double purity = (m * m).trace().real();
      if (purity < 1.0 - eps) throw Unsupported("is_free_member: mixed classical test");
      auto [a, ad] = ladder_ops(sigma.cutoff());
      const cd mean = (a * m).trace();
      TruncationPolicy loose;
      loose.allow_truncation = true;
      const Vector v = coherent_state(mean, sigma.cutoff(), loose).amplitudes();
      return v.dot(m * v).real() >= 1.0 - eps;
    }
    case FreeKind::kSeparable: {
      if (free.dims.dim() != sigma.cutoff())
        throw InvalidArgument("is_free_member: bipartite dimension mismatch");
      if (free.dims.dim() <= 6)  // PPT is exact for 2x2 and 2x3
        return min_eigenvalue(partial_transpose(m, free.dims)) >= -eps;
      const Spectrum s = spectral_decompose(m);
      if (s.values.size() > 1 && s.values(1) > eps)
        throw Unsupported("is_free_member: mixed separability beyond 2x3");
      const KetVector psi(s.vectors.col(0));
      const RealVector mu = schmidt_spectrum(psi, free.dims);
      return mu.size() < 2 || mu(1) <= std::sqrt(eps);
    }
    case FreeKind::kGaussianHull:
      throw Unsupported("is_free_member: Gaussian-hull membership is not implemented");
  }
  return false;
}

MonotonicityResult monotonicity_check(const DensityOperator& rho, const Channel& channel,
                                      const FreeSetSpec& free, const Estimator& estimate,
                                      const std::vector<DensityOperator>& free_samples,
                                      double slack) {
  if (!channel.is_cptp()) throw InvalidArgument("monotonicity_check: channel is not CPTP");
  for (const auto& s : free_samples) {
    if (!is_free_member(s, free))
      throw InvalidArgument("monotonicity_check: sample is not a free state");
    const DensityOperator out(channel.apply(s.matrix()), 0.0, true);
    if (!is_free_member(out, free))
      throw InvalidArgument("monotonicity_check: channel maps a free sample outside the free set");
  }
  MonotonicityResult r;
  r.before = estimate(rho);
  r.after = estimate(DensityOperator(channel.apply(rho.matrix()), rho.tail_mass(), true));
  if (r.before.lower >= r.after.upper - slack)
    r.verdict = Verdict::kHolds;
  else if (!r.before.upper_infinite() && r.before.upper < r.after.lower - slack)
    r.verdict = Verdict::kViolated;
  else
    r.verdict = Verdict::kIndeterminate;
  return r;
}

}  // namespace cvrob
