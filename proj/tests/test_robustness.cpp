#include "catch_amalgamated.hpp"

#include <cmath>

#include "cvrob/coherence_solver.hpp"
#include "cvrob/nonclassicality.hpp"
#include "cvrob/robustness.hpp"
#include "cvrob/states.hpp"

using namespace cvrob;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("pure-state upper bound against a free ansatz", "[robustness]") {
  for (int n = 1; n <= 4; ++n) {
    const double expect = std::exp(n) * std::tgamma(n + 1.0) / std::pow(n, n);
    const double v = pure_robustness_upper(fock_state(n, 60), phase_randomized_coherent(n, 60));
    CHECK_THAT(v, WithinRel(expect, 1e-10));
  }
  CHECK_THAT(pure_robustness_upper(fock_state(1, 60), phase_randomized_coherent(1, 60)),
             WithinAbs(2.718282, 1e-6));

  // A pure free sigma is its own optimal ansatz.
  const KetVector c = coherent_state(cd(0.3, 0.2), 30);
  CHECK_THAT(pure_robustness_upper(c, DensityOperator::from_ket(c)), WithinAbs(1.0, 1e-9));

  const double a = 0.5;
  const double a2 = a * a;
  const double expect = a2 * std::exp(1.0) / ((1.0 - a2 * a2) * std::sinh(a2));
  const double v = pure_robustness_upper(cat_state(a, Parity::kOdd, 40), phase_randomized_coherent(1.0, 40));
  CHECK_THAT(v, WithinRel(expect, 1e-10));
  CHECK_THAT(v, WithinAbs(2.869516, 1e-6));
}

TEST_CASE("support violations are reported", "[robustness]") {
  CHECK_THROWS_AS(pure_robustness_upper(fock_state(1, 10), thermal_state(0.0, 10)), SupportError);
}

TEST_CASE("witness lower bounds", "[robustness]") {
  const double g2 = fock_gamma(2);
  const Witness w = Witness::make(fock_state(2, 30).projector(), g2, Certification::kAnalytic, "fock");
  CHECK_THAT(witness_lower(DensityOperator::from_ket(fock_state(2, 30)), w), WithinRel(std::exp(2.0) / 2.0, 1e-12));
  CHECK_THAT(witness_lower(fock_state(2, 30), w), WithinAbs(3.694528, 1e-6));

  const Witness id = Witness::make(Matrix::Identity(10, 10), 1.0, Certification::kAnalytic, "identity");
  CHECK_THAT(witness_lower(thermal_state(0.3, 10, {1e-8, true}), id), WithinAbs(1.0, 1e-12));

  // P|zeta_4> is far from normalized at this cutoff, but the overlap with |zeta_1> converges.
  const int d = 200;
  const Matrix zq = squeezed_witness_operator(4.0, d);
  const Witness wz = Witness::make(zq, 1.0 / std::cosh(4.0), Certification::kAnalytic, "squeezed");
  const double v = witness_lower(squeezed_vacuum(1.0, d), wz);
  CHECK_THAT(v, WithinRel(std::cosh(4.0) / std::cosh(3.0), 1e-6));
  CHECK_THAT(v, WithinAbs(2.71247, 1e-5));

  CHECK_THROWS_AS(Witness::make(-Matrix::Identity(2, 2), 1.0, Certification::kAnalytic, ""), InvalidArgument);
  CHECK_THROWS_AS(Witness::make(Matrix::Identity(2, 2), 0.0, Certification::kAnalytic, ""), InvalidArgument);
}

TEST_CASE("grid certification of coherent witnesses", "[robustness]") {
  GridSpec g;
  g.radius = 6.0;
  const Witness w1 = certify_coherent_witness(fock_state(1, 60).projector(), g);
  CHECK(w1.cert == Certification::kGridCertified);
  CHECK(w1.b >= std::exp(-1.0));
  CHECK(w1.b <= std::exp(-1.0) * (1.0 + 1e-3) * (1.0 + 1e-12));

  const Witness wi = certify_coherent_witness(Matrix::Identity(60, 60), g);
  CHECK(wi.b >= 1.0 - 1e-12);
  CHECK(wi.b <= (1.0 + 1e-3) * (1.0 + 1e-12));

  const Witness wz = certify_coherent_witness(squeezed_witness_operator(0.5, 60), g);
  CHECK(wz.b >= 1.0 / std::cosh(0.5) - 1e-12);
  CHECK(wz.b <= (1.0 + 1e-3) * (1.0 + 1e-12) / std::cosh(0.5));
  CHECK_THAT(wz.b, WithinAbs(0.8873, 5e-4));

  // |<alpha|N|alpha>| = |alpha|^2 keeps growing past the radius.
  CHECK_THROWS_AS(certify_coherent_witness(number_operator(60), g), CertificationFailure);
}

TEST_CASE("finite-dimensional incoherent robustness", "[robustness]") {
  const Matrix plus = Matrix::Constant(2, 2, 0.5);
  const CoherenceSolution s = finite_dim_robustness(DensityOperator(plus));
  CHECK(s.estimate.contains(2.0, 1e-6));
  CHECK(s.estimate.relative_width() <= 1e-6);

  Matrix diag = Matrix::Zero(3, 3);
  diag.diagonal() << 0.2, 0.5, 0.3;
  const CoherenceSolution sd = finite_dim_robustness(DensityOperator(diag));
  CHECK(sd.estimate.contains(1.0, 1e-6));

  const Matrix max3 = Matrix::Constant(3, 3, 1.0 / 3.0);
  const CoherenceSolution s3 = finite_dim_robustness(DensityOperator(max3));
  CHECK(s3.estimate.contains(3.0, 1e-6));
}

TEST_CASE("interval assembly", "[robustness]") {
  const RobustnessEstimate a = assemble_estimate({{Side::kLower, 2.71, "l"}, {Side::kUpper, 2.72, "u"}});
  CHECK(a.lower == 2.71);
  CHECK(a.upper == 2.72);
  CHECK_FALSE(a.closed_form.has_value());

  const double e = std::exp(1.0);
  const RobustnessEstimate b = assemble_estimate({{Side::kLower, e, "witness"}, {Side::kUpper, e, "ansatz"}});
  REQUIRE(b.closed_form.has_value());
  CHECK(*b.closed_form == e);

  CHECK_THROWS_AS(assemble_estimate({{Side::kLower, 3.0, "l"}, {Side::kUpper, 2.0, "u"}}), InconsistencyError);

  // Lower bounds below 1 are replaced by the trivial bound; the tightest endpoints win.
  const RobustnessEstimate c = assemble_estimate({{Side::kLower, 0.5, "weak"},
                                                  {Side::kUpper, 5.0, "loose"},
                                                  {Side::kUpper, 4.0, "tight"}});
  CHECK(c.lower == 1.0);
  CHECK(c.upper == 4.0);
  CHECK(c.upper_method == "tight");
  CHECK(c.methods.size() == 3);

  const RobustnessEstimate d = assemble_estimate({});
  CHECK(d.upper_infinite());
}

TEST_CASE("monotonicity under free operations", "[robustness]") {
  const FreeSetSpec inc{FreeKind::kIncoherent, {}};
  const Estimator solve = [](const DensityOperator& r) { return finite_dim_robustness(r).estimate; };
  std::vector<DensityOperator> samples;
  for (int i = 0; i < 2; ++i) samples.push_back(DensityOperator::from_ket(fock_state(i, 2)));

  const DensityOperator plus(Matrix::Constant(2, 2, 0.5));
  const MonotonicityResult perm = monotonicity_check(plus, Channel::permutation({1, 0}), inc, solve, samples);
  CHECK(perm.before.contains(2.0, 1e-6));
  CHECK(perm.after.contains(2.0, 1e-6));
  CHECK(perm.verdict != Verdict::kViolated);

  const MonotonicityResult deph = monotonicity_check(plus, Channel::dephasing(2), inc, solve, samples);
  CHECK(deph.after.contains(1.0, 1e-6));
  CHECK(deph.verdict == Verdict::kHolds);

  // Rotation commutes with the coherent family, so a rotated squeezed state keeps its value.
  const int d = 40;
  const FreeSetSpec cl{FreeKind::kClassical, {}};
  std::vector<DensityOperator> coh;
  for (cd a : {cd(0.0), cd(0.5, 0.2), cd(-0.3, 0.8)})
    coh.push_back(DensityOperator::from_ket(coherent_state(a, d)));
  const Estimator nc = [](const DensityOperator& r) { return nonclassicality_estimate(r); };
  const DensityOperator z = DensityOperator::from_ket(squeezed_vacuum(0.5, d));
  const MonotonicityResult rot = monotonicity_check(z, Channel::unitary(rotation_operator(M_PI / 3, d)), cl, nc, coh);
  CHECK(rot.verdict != Verdict::kViolated);
  CHECK_THAT(rot.after.lower, WithinRel(rot.before.lower, 1e-6));
  CHECK(rot.before.contains(std::exp(0.5), 1e-6));
  CHECK(rot.after.contains(std::exp(0.5), 1e-6));

  // A channel that creates coherence is rejected.
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  CHECK_THROWS_AS(monotonicity_check(plus, Channel::unitary(h / std::sqrt(2.0)), inc, solve, samples),
                  InvalidArgument);
}

TEST_CASE("free-set membership", "[robustness]") {
  CHECK(is_free_member(thermal_state(0.4, 10, {1e-8, true}), {FreeKind::kIncoherent, {}}));
  CHECK(is_free_member(DensityOperator::from_ket(coherent_state(cd(0.4, 0.1), 30)), {FreeKind::kClassical, {}}));
  CHECK_FALSE(is_free_member(DensityOperator::from_ket(fock_state(1, 30)), {FreeKind::kClassical, {}}));

  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  CHECK_FALSE(is_free_member(DensityOperator::from_ket(KetVector(bell)), {FreeKind::kSeparable, {2, 2}}));
  CHECK(is_free_member(DensityOperator(Matrix::Identity(4, 4) / 4.0), {FreeKind::kSeparable, {2, 2}}));
}
