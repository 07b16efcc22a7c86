#include "cvrob/nonclassicality.hpp"

#include <cmath>
#include <sstream>

#include "cvrob/optimize.hpp"

namespace cvrob {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// Undo the trace renormalization of a truncated diagonal ansatz. The pure state lives on the
// first D levels, so <psi|sigma^-1|psi> only needs the exact leading diagonal entries.
DensityOperator exact_leading_block(const DensityOperator& s) {
  return DensityOperator(s.matrix() * (1.0 - s.tail_mass()), s.tail_mass(), false);
}

double lncosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - kLn2;
}

// x > 0
double lnsinh(double x) { return x + std::log1p(-std::exp(-2.0 * x)) - kLn2; }

// sum_k C(2k,k)/4^k x^k (weight = 0) or sum_k (2k+1) C(2k,k)/4^k x^k (weight = 1), x in [0,1).
double central_binomial_series(double x, int weight) {
  if (x < 0.0 || x >= 1.0) return kInfinity;
  double term = 1.0;
  double sum = 1.0;
  for (long k = 0; k < 50000000; ++k) {
    const double ratio = weight == 0 ? (2.0 * k + 1.0) / (2.0 * k + 2.0) * x
                                     : (2.0 * k + 3.0) / (2.0 * k + 2.0) * x;
    term *= ratio;
    sum += term;
    if (term * x / (1.0 - x) < 1e-17 * sum) break;
  }
  return sum;
}

}  // namespace

double fock_gamma(int n) {
  if (n < 0) throw InvalidArgument("fock_gamma: n must be nonnegative");
  if (n == 0) return 1.0;
  return std::exp(-n + n * std::log(static_cast<double>(n)) - std::lgamma(n + 1.0));
}

double fock_robustness(int n) {
  if (n < 0) throw InvalidArgument("fock_robustness: n must be nonnegative");
  if (n == 0) return 1.0;
  return 1.0 / fock_gamma(n);
}

RobustnessEstimate fock_estimate(int n, int cutoff) {
  if (n < 0) throw InvalidArgument("fock_estimate: n must be nonnegative");
  if (n == 0) return assemble_estimate({{Side::kUpper, 1.0, "vacuum is coherent"}}, 1.0);
  const KetVector psi = fock_state(n, cutoff);
  const Witness w = Witness::make(psi.projector(), fock_gamma(n), Certification::kAnalytic,
                                  "|n><n| with b = gamma_n");
  const DensityOperator sigma = exact_leading_block(phase_randomized_coherent(n, cutoff));
  const double lower = witness_lower(psi, w);
  const double upper = pure_robustness_upper(psi, sigma);
  RobustnessEstimate e = assemble_estimate(
      {{Side::kLower, lower, "witness |n><n|/gamma_n (analytic b)"},
       {Side::kUpper, upper, "phase-randomized coherent ansatz sigma_n"}},
      fock_robustness(n), sigma.tail_mass());
  e.witness = w;
  e.ansatz = sigma.matrix();
  return e;
}

double squeezed_s0(double r) { return 0.5 * r + 0.25 * std::log(2.0 - std::exp(-2.0 * r)); }

double thermal_photons_for(double s) { return 0.5 * std::expm1(2.0 * s); }

double squeezed_g_closed(double r, double s) {
  const double a = std::sinh(r) * std::sinh(2.0 * s - r);
  if (!(a > 0.0)) return kInfinity;
  return std::sinh(s) / ((1.0 - std::tanh(s)) * std::sqrt(a));
}

double squeezed_g_numeric(double r, double s) {
  if (!(s > 0.0)) return r == 0.0 ? 1.0 : kInfinity;
  const double n = thermal_photons_for(s);
  const double u = r - s;
  const double x = std::pow(std::tanh(u) / std::tanh(s), 2);
  const double series = central_binomial_series(x, 0);
  return (n + 1.0) / std::cosh(u) * series;
}

double squeezed_witness_value(double r, double q) { return std::cosh(q) / std::cosh(q - r); }

Matrix squeezed_witness_operator(double q, int cutoff) {
  const Vector v = squeezed_amplitudes(q, cutoff);
  return v * v.adjoint();
}

SqueezedCertificate squeezed_robustness(double r, const SqueezedOptions& opts) {
  if (r < 0.0) throw InvalidArgument("squeezed_robustness: r must be nonnegative");
  SqueezedCertificate c;
  c.r = r;
  if (r == 0.0) {
    c.estimate = assemble_estimate({{Side::kUpper, 1.0, "vacuum is coherent"}}, 1.0);
    return c;
  }
  c.value = std::exp(r);
  c.s0 = squeezed_s0(r);
  c.q = r + opts.q_offset;

  const Min1D m = bracketed_min([&](double s) { return squeezed_g_numeric(r, s); },
                                0.5 * r * (1.0 + 1e-9), r + 2.0, 96, 1e-12, 400);
  c.s_numeric = m.x;
  c.g_at_s0 = squeezed_g_numeric(r, c.s0);
  if (std::abs(c.g_at_s0 - c.value) > 1e-8 * c.value) {
    std::ostringstream os;
    os.precision(15);
    os << "squeezed_robustness: g(r, s0) = " << c.g_at_s0 << " differs from e^r = " << c.value;
    throw InternalError(os.str());
  }

  // |<zeta_q|zeta_r>|^2 * cosh q with the overlap summed in the Fock basis.
  const double y = std::tanh(c.q) * std::tanh(r);
  const double amp = central_binomial_series(y, 0) / std::sqrt(std::cosh(c.q) * std::cosh(r));
  const double lower = amp * amp * std::cosh(c.q);

  const double upper = std::min(m.f, c.g_at_s0);
  std::ostringstream wl, ul;
  wl << "witness |zeta_q><zeta_q| with b = 1/cosh q, q = " << c.q;
  ul << "squeezed thermal ansatz S(s) tau_N(s) S(s)^dag at s = "
     << (m.f < c.g_at_s0 ? c.s_numeric : c.s0);
  c.estimate = assemble_estimate({{Side::kLower, lower, wl.str()}, {Side::kUpper, upper, ul.str()}},
                                 c.value);
  return c;
}

double photon_added_lower_q(double r, double q) {
  // |<zeta_q|a a^dag|zeta_r>|^2 / (cosh^2 q cosh^2 r), then divided by sup_alpha |<alpha|zeta_q>_+|^2.
  const double y = std::tanh(r) * std::tanh(q);
  const double s = central_binomial_series(y, 1);
  const double overlap2 = s * s / (std::cosh(r) * std::cosh(q)) /
                          (std::pow(std::cosh(q), 2) * std::pow(std::cosh(r), 2));
  const double sup = std::exp(q - 1.0) / std::pow(std::cosh(q), 2);
  return overlap2 / sup;
}

double photon_added_regime_lower(double r) {
  if (r <= std::log(std::sqrt(2.0))) return std::exp(1.0) / std::pow(std::cosh(r), 3);
  return 4.0 / 27.0 * std::exp(1.0 + 2.0 * r) / std::sinh(r);
}

double photon_added_g_closed(double r, double s) {
  const double a = std::sinh(r) * std::sinh(2.0 * s - r);
  if (!(a > 0.0)) return kInfinity;
  return std::cosh(s) * std::pow(std::sinh(s), 2) / ((1.0 - std::tanh(s)) * std::pow(a, 1.5));
}

double photon_added_g_numeric(double r, double s) {
  if (!(s > 0.0)) return kInfinity;
  const double n = thermal_photons_for(s);
  const double u = r - s;
  const double ratio = 1.0 / std::tanh(s);  // (N+1)/N
  const double x = std::pow(std::tanh(u) * ratio, 2);
  const double series = central_binomial_series(x, 1);
  return (n + 1.0) * ratio / std::pow(std::cosh(u), 3) * series;
}

PhotonAddedReport photon_added_bounds(double r) {
  if (!(r > 0.0))
    throw InvalidArgument("photon_added_bounds: r must be positive (r = 0 is the Fock state |1>)");
  PhotonAddedReport p;
  p.r = r;
  p.lower_general = photon_added_lower_q(r, r);
  const double q_regime =
      r <= std::log(std::sqrt(2.0)) ? 0.0 : 0.5 * std::log(2.0 * std::exp(2.0 * r) - 3.0);
  p.lower_regime = photon_added_lower_q(r, q_regime);
  const Min1D qm =
      bracketed_min([&](double q) { return -photon_added_lower_q(r, q); }, 0.0, r + 3.0, 96);
  p.q_optimized = qm.x;
  p.lower_optimized = -qm.f;

  p.s_star = 0.25 * std::log(4.0 * std::exp(2.0 * r) - 3.0);
  p.upper_closed = 4.0 * std::exp(2.0 * r) / (3.0 * std::sqrt(3.0) * std::sinh(r));
  p.upper_numeric = photon_added_g_numeric(r, p.s_star);
  if (std::abs(p.upper_numeric - p.upper_closed) > 1e-8 * p.upper_closed) {
    std::ostringstream os;
    os.precision(15);
    os << "photon_added_bounds: numeric g_PA " << p.upper_numeric << " vs closed form "
       << p.upper_closed;
    throw InternalError(os.str());
  }
  std::ostringstream qo;
  qo << "witness |zeta_q>_+ at optimized q = " << p.q_optimized;
  p.estimate = assemble_estimate(
      {{Side::kLower, p.lower_general, "witness |zeta_r>_+ (q = r)"},
       {Side::kLower, p.lower_regime,
        r <= std::log(std::sqrt(2.0)) ? "witness |zeta_0>_+ = |1> (q = 0)"
                                      : "witness |zeta_q>_+ at q = ln(2e^{2r}-3)/2"},
       {Side::kLower, p.lower_optimized, qo.str()},
       {Side::kUpper, p.upper_numeric, "squeezed thermal ansatz at s = ln(4e^{2r}-3)/4"}});
  return p;
}

namespace {

// ln inf_beta e^{beta^2} / cosh^2(gamma beta) (even) or / sinh^2 (odd), deflated so the
// returned value never exceeds the true infimum by more than the golden-section error.
double log_inner_inf(double gamma, Parity parity) {
  if (parity == Parity::kEven) {
    auto h = [&](double b) { return b * b - 2.0 * lncosh(gamma * b); };
    const Min1D m = bracketed_min(h, 0.0, gamma + 5.0, 64, 1e-12, 300);
    return std::min(m.f, h(0.0)) - 1e-12;
  }
  auto h = [&](double b) { return b * b - 2.0 * lnsinh(gamma * b); };
  const Min1D m = bracketed_min(h, 1e-8, gamma + 5.0, 64, 1e-12, 300);
  return m.f - 1e-12;
}

double log_cat_witness(double alpha, double gamma, Parity parity) {
  if (parity == Parity::kEven)
    return 2.0 * lncosh(alpha * gamma) - lncosh(alpha * alpha) + log_inner_inf(gamma, parity);
  return 2.0 * lnsinh(alpha * gamma) - lnsinh(alpha * alpha) + log_inner_inf(gamma, parity);
}

}  // namespace

CatBoundReport cat_bounds(double alpha, Parity parity, const CatSearch& search) {
  if (!(alpha > 0.0)) throw InvalidArgument("cat_bounds: alpha must be positive");
  CatBoundReport rep;
  rep.alpha = alpha;
  rep.parity = parity;
  const double a2 = alpha * alpha;

  rep.self_witness = std::exp(log_cat_witness(alpha, alpha, parity));
  rep.fixed_witness = parity == Parity::kEven ? std::exp(2.0 * lncosh(alpha) - lncosh(a2))
                                              : a2 * std::exp(1.0 - lnsinh(a2));

  const double glo = parity == Parity::kEven ? 0.0 : 1e-3;
  const double ghi = alpha + 3.0;
  double best = -kInfinity;
  double best_g = alpha;
  for (int level = 0; level <= search.budget; ++level) {
    const int pts = 16 << level;
    const double h = (ghi - glo) / (pts - 1);
    int ib = 0;
    double vb = -kInfinity;
    for (int i = 0; i < pts; ++i) {
      const double v = log_cat_witness(alpha, glo + i * h, parity);
      if (v > vb) {
        vb = v;
        ib = i;
      }
    }
    const double lo = glo + std::max(0, ib - 1) * h;
    const double hi = glo + std::min(pts - 1, ib + 1) * h;
    const Min1D m = golden_section_min([&](double g) { return -log_cat_witness(alpha, g, parity); },
                                       lo, hi, 1e-12, 300);
    if (vb > best) {
      best = vb;
      best_g = glo + ib * h;
    }
    if (-m.f > best) {
      best = -m.f;
      best_g = m.x;
    }
    rep.lower_by_budget.push_back(std::exp(best));
  }
  rep.optimized_witness = std::exp(best);
  rep.gamma_opt = best_g;
  const auto& lb = rep.lower_by_budget;
  rep.converged = lb.size() < 2 || lb.back() - lb[lb.size() - 2] <= 1e-10 * lb.back();

  const double c = parity == Parity::kEven ? 1.0 + std::exp(-2.0 * a2) : -std::expm1(-2.0 * a2);
  rep.upper_cat_mixture = 2.0 / c;
  rep.upper = rep.upper_cat_mixture;
  rep.upper_method = "cat mixture ansatz: 2/c";
  if (parity == Parity::kOdd && alpha < 1.0) {
    const double v = a2 * std::exp(1.0) / ((1.0 - a2 * a2) * std::exp(lnsinh(a2)));
    rep.upper_phase_randomized = v;
    if (v < rep.upper) {
      rep.upper = v;
      rep.upper_method = "phase-randomized coherent ansatz sigma_1";
    }
  }

  rep.lower = rep.self_witness;
  rep.lower_method = "self witness |alpha_pm><alpha_pm|";
  if (rep.fixed_witness > rep.lower) {
    rep.lower = rep.fixed_witness;
    rep.lower_method = parity == Parity::kEven ? "fixed witness, cosh^2(alpha)/cosh(alpha^2)"
                                               : "witness |1><1|/gamma_1";
  }
  if (rep.optimized_witness > rep.lower) {
    rep.lower = rep.optimized_witness;
    std::ostringstream os;
    os << "optimized cat witness |gamma_pm>, gamma = " << rep.gamma_opt;
    rep.lower_method = os.str();
  }
  if (rep.lower > rep.upper + 1e-9 * rep.upper) {
    std::ostringstream os;
    os.precision(12);
    os << "cat_bounds: lower " << rep.lower << " exceeds upper " << rep.upper;
    throw InconsistencyError(os.str());
  }
  return rep;
}

ModeCertificate fock_mode(int n, int cutoff) {
  const KetVector psi = fock_state(n, cutoff);
  if (n == 0) return vacuum_mode(cutoff);
  return {"fock:" + std::to_string(n), psi,
          Witness::make(psi.projector(), fock_gamma(n), Certification::kAnalytic,
                        "|n><n|/gamma_n"),
          psi, exact_leading_block(phase_randomized_coherent(n, cutoff))};
}

ModeCertificate squeezed_mode(double r, int cutoff, double q) {
  const KetVector psi = squeezed_vacuum(r, cutoff);
  const KetVector wq = squeezed_vacuum(q, cutoff);
  const double s = squeezed_s0(r);
  std::ostringstream os;
  os << "squeezed:" << r;
  return {os.str(), psi,
          Witness::make(wq.projector(), 1.0 / std::cosh(q), Certification::kAnalytic,
                        "|zeta_q><zeta_q| with b = 1/cosh q"),
          squeezed_vacuum(r - s, cutoff),
          exact_leading_block(thermal_state(thermal_photons_for(s), cutoff))};
}

ModeCertificate vacuum_mode(int cutoff) {
  const KetVector psi = fock_state(0, cutoff);
  return {"vacuum", psi,
          Witness::make(Matrix::Identity(cutoff, cutoff), 1.0, Certification::kAnalytic,
                        "identity"),
          psi, DensityOperator::from_ket(psi)};
}

MultiplicativityReport multiplicativity_check(const std::vector<ModeCertificate>& modes,
                                              double rel_tol) {
  if (modes.size() < 2 || modes.size() > 3)
    throw InvalidArgument("multiplicativity_check: need 2 or 3 modes");
  MultiplicativityReport rep;
  Vector psi = Vector::Ones(1);
  Vector frame = Vector::Ones(1);
  Matrix w = Matrix::Ones(1, 1);
  Matrix sigma = Matrix::Ones(1, 1);
  double b = 1.0;
  double tail = 0.0;
  for (const auto& m : modes) {
    const double lo = witness_lower(m.psi, m.witness);
    const double up = pure_robustness_upper(m.frame_psi, m.frame_sigma);
    rep.modes.push_back(assemble_estimate(
        {{Side::kLower, lo, m.witness.method}, {Side::kUpper, up, "frame ansatz"}}, std::nullopt,
        m.frame_sigma.tail_mass()));
    rep.product_of_lowers *= lo;
    rep.product_of_uppers *= up;
    psi = kron(psi, m.psi.amplitudes());
    frame = kron(frame, m.frame_psi.amplitudes());
    w = kron(w, m.witness.op);
    sigma = kron(sigma, m.frame_sigma.matrix());
    b *= m.witness.b;
    tail = 1.0 - (1.0 - tail) * (1.0 - m.frame_sigma.tail_mass());
  }
  // Tensor products of PSD witnesses stay PSD; skip the O(n^3) re-validation.
  const Witness joint_w{w, b, Certification::kAnalytic, "tensor-product witness"};
  const double lo = witness_lower(KetVector(psi), joint_w);
  const double up = pure_robustness_upper(frame, DensityOperator(sigma, tail, false));
  rep.joint = assemble_estimate(
      {{Side::kLower, lo, "tensor-product witness"}, {Side::kUpper, up, "tensor-product ansatz"}},
      std::nullopt, tail);
  rep.holds = std::abs(lo - rep.product_of_lowers) <= rel_tol * rep.product_of_lowers &&
              std::abs(up - rep.product_of_uppers) <= rel_tol * rep.product_of_uppers;
  return rep;
}

StandardReport standard_robustness_infinite(const SqueezedThermalParams& p) {
  if (p.N < 0.0 || p.r < 0.0) throw InvalidArgument("standard_robustness_infinite: N, r >= 0");
  if (chi1_bounded(p))
    return {StandardVerdict::kFiniteUnknown,
            "chi1 bounded (e^{2r} <= 2N+1): classical state, no infinity certificate"};
  return {StandardVerdict::kInfinite,
          "unbounded chi1: exponent coefficient (1 - (2N+1)e^{-2r})/2 > 0 along the real axis"};
}

StandardReport standard_robustness_infinite(PureTag tag, double param) {
  switch (tag) {
    case PureTag::kFock:
      if (param < 1.0) return {StandardVerdict::kFiniteUnknown, "vacuum is coherent"};
      return {StandardVerdict::kInfinite, "unbounded chi1 (non-Gaussian pure state)"};
    case PureTag::kSqueezed:
      if (param <= 0.0) return {StandardVerdict::kFiniteUnknown, "vacuum is coherent"};
      return {StandardVerdict::kInfinite, "unbounded chi1 (e^{2r} > 1 = 2N+1 at N = 0)"};
    case PureTag::kCat:
      if (!(param > 0.0)) throw InvalidArgument("standard_robustness_infinite: alpha > 0");
      return {StandardVerdict::kInfinite, "unbounded chi1 (non-Gaussian pure state)"};
    case PureTag::kPhotonAdded:
      if (!(param > 0.0)) throw InvalidArgument("standard_robustness_infinite: r > 0");
      return {StandardVerdict::kInfinite, "unbounded chi1 (non-Gaussian pure state)"};
  }
  throw Unsupported("standard_robustness_infinite: unsupported input class");
}

bool chi1_grid_unbounded(const SqueezedThermalParams& p, double radius, int rings, int rays) {
  double mx = 0.0;
  for (int i = 1; i <= rings; ++i)
    for (int k = 0; k < rays; ++k) {
      const cd a = std::polar(radius * i / rings, 2.0 * M_PI * k / rays);
      mx = std::max(mx, std::abs(chi1_gaussian(p, a)));
    }
  return mx > 1.0 + 1e-9;
}

namespace {

// Frame map psi -> S(s)^dag R(phi)^dag D(beta)^dag psi using two fixed eigendecompositions.
class GaussianFrame {
 public:
  explicit GaussianFrame(int dint) : d_(dint) {
    auto [a, ad] = ladder_ops(dint);
    // i K with K Hermitian; exp(t (ad - a)) = V exp(i t lam) V^dag.
    Eigen::SelfAdjointEigenSolver<Matrix> e1(cd(0, -1) * (ad - a));
    disp_v_ = e1.eigenvectors();
    disp_l_ = e1.eigenvalues();
    Eigen::SelfAdjointEigenSolver<Matrix> e2(cd(0, -0.5) * (ad * ad - a * a));
    sq_v_ = e2.eigenvectors();
    sq_l_ = e2.eigenvalues();
  }

  Vector map(const Vector& psi, cd beta, double phi, double s) const {
    Vector v = psi;
    if (std::abs(beta) > 0.0) {
      const double th = std::arg(beta);
      rotate(v, -th);
      v = apply(disp_v_, disp_l_, -std::abs(beta), v);
      rotate(v, th);
    }
    rotate(v, -phi);
    if (s != 0.0) v = apply(sq_v_, sq_l_, -s, v);
    return v;
  }

 private:
  static Vector apply(const Matrix& v, const RealVector& l, double t, const Vector& x) {
    Vector c = v.adjoint() * x;
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, t * l(k));
    return v * c;
  }
  static void rotate(Vector& v, double phi) {
    for (Eigen::Index n = 0; n < v.size(); ++n) v(n) *= std::polar(1.0, phi * n);
  }

  int d_;
  Matrix disp_v_, sq_v_;
  RealVector disp_l_, sq_l_;
};

}  // namespace

RobustnessEstimate nonclassicality_estimate(const KetVector& psi, const GenericNcOptions& opts) {
  const int d = psi.cutoff();
  const Witness w = certify_coherent_witness(psi.projector(), opts.grid);
  const double lower = witness_lower(psi, w);

  const int dint = 2 * d + 32;
  const GaussianFrame frame(dint);
  Vector padded = Vector::Zero(dint);
  padded.head(d) = psi.amplitudes();
  auto [a, ad] = ladder_ops(d);
  const cd mean = psi.amplitudes().dot(a * psi.amplitudes());

  // ln <f| tau_N^-1 |f> = ln(N+1) + ln sum_k w_k (1 + 1/N)^k, minimized over u = ln N.
  auto log_value_at = [](const RealVector& lw, double u) {
    const double n = std::exp(u);
    const double lr = std::log1p(1.0 / n);
    double mx = -kInfinity;
    for (Eigen::Index k = 0; k < lw.size(); ++k) mx = std::max(mx, lw(k) + k * lr);
    double acc = 0.0;
    for (Eigen::Index k = 0; k < lw.size(); ++k)
      if (std::isfinite(lw(k))) acc += std::exp(lw(k) + k * lr - mx);
    return std::log1p(n) + mx + std::log(acc);
  };
  auto inner = [&](const std::vector<double>& p, double* n_opt) {
    const Vector f = frame.map(padded, cd(p[0], p[1]), p[2], p[3]);
    // Generator truncation corrupts the top levels; refuse frames that reach them.
    if (f.tail(dint - d - 16).squaredNorm() > 1e-20) return kInfinity;
    // The eigen-factored frame map leaves ~1e-15 amplitude noise on every level; weights
    // below 1e-28 are treated as zeros, since (1 + 1/N)^k would amplify the noise without bound.
    RealVector lw(dint);
    for (int k = 0; k < dint; ++k) {
      const double wk = std::norm(f(k));
      lw(k) = wk > 1e-28 ? std::log(wk) : -kInfinity;
    }
    // Classical only when e^{2|s|} <= 2N + 1.
    const double umin = std::max(-60.0, std::log(std::max(0.5 * std::expm1(2.0 * std::abs(p[3])), 1e-300)));
    const Min1D m = bracketed_min([&](double u) { return log_value_at(lw, u); }, umin,
                                  std::max(8.0, umin + 1.0), 48, 1e-12, 200);
    // s = 0, N = 0: coherent sigma = |g><g|, pseudo-inverse with the usual 1e-10 support slack.
    const double w0 = std::norm(f(0));
    if (p[3] == 0.0 && 1.0 - w0 <= 1e-10 && -std::log(w0) < m.f) {
      if (n_opt) *n_opt = 0.0;
      return -std::log(w0);
    }
    if (n_opt) *n_opt = std::exp(m.x);
    return m.f;
  };
  auto value = [&](const std::vector<double>& p) { return inner(p, nullptr); };

  double best = kInfinity;
  std::vector<double> bestp;
  const int starts = std::max(1, opts.starts);
  for (int i = 0; i < starts; ++i) {
    // Two unsqueezed starts, then squeezed starts rotated in pi/4 steps.
    const int j = i - 2;
    const double phi = i < 2 ? 0.0 : M_PI * (j % 4) / 4.0;
    const cd b0 = (i < 2 ? i == 0 : (j / 4) % 2 == 0) ? mean : cd(0.0, 0.0);
    const double s0 = i < 2 ? 0.0 : 0.3;
    MinND m = nelder_mead(value, {b0.real(), b0.imag(), phi, s0}, {0.2, 0.2, 0.3, 0.2}, 1e-15,
                          1e-11, 4000);
    m = nelder_mead(value, m.x, {0.01, 0.01, 0.05, 0.01}, 1e-15, 1e-12, 4000);
    if (m.f < best) {
      best = m.f;
      bestp = m.x;
    }
  }
  std::vector<Endpoint> ends{{Side::kLower, lower, "self witness (grid-certified b)"}};
  if (std::isfinite(best)) {
    double n_opt = 0.0;
    inner(bestp, &n_opt);
    std::ostringstream os;
    os << "displaced squeezed thermal ansatz (beta=" << bestp[0] << (bestp[1] < 0 ? "" : "+")
       << bestp[1] << "i, phi=" << bestp[2] << ", s=" << bestp[3] << ", N=" << n_opt << ")";
    ends.push_back({Side::kUpper, std::exp(best), os.str()});
  }
  RobustnessEstimate e = assemble_estimate(ends, std::nullopt, psi.tail_mass());
  e.witness = w;
  return e;
}

RobustnessEstimate nonclassicality_estimate(const DensityOperator& rho,
                                            const GenericNcOptions& opts) {
  const Spectrum s = spectral_decompose(rho);
  if (s.values.size() == 1 || s.values(1) <= 1e-12)
    return nonclassicality_estimate(KetVector(s.vectors.col(0), rho.tail_mass()), opts);
  const Witness w = certify_coherent_witness(rho.matrix(), opts.grid);
  return assemble_estimate({{Side::kLower, witness_lower(rho, w), "self witness (grid-certified b)"}},
                           std::nullopt, rho.tail_mass());
}

}  // namespace cvrob
