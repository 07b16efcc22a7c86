#include "catch_amalgamated.hpp"

#include <cmath>

#include "cvrob/coherence_solver.hpp"
#include "cvrob/entanglement_coherence.hpp"
#include "cvrob/optimize.hpp"

using namespace cvrob;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

KetVector random_ket(int d, Rng& rng) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = cd(rng.normal(), rng.normal());
  return KetVector(v);
}

DensityOperator random_mixed(int d, int rank, Rng& rng) {
  Matrix g(d, rank);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = cd(rng.normal(), rng.normal());
  return DensityOperator(g * g.adjoint());
}

void check_certificates(const CoherenceSolution& s, const DensityOperator& rho) {
  const Matrix& w = s.witness;
  CHECK(min_eigenvalue(w) >= -tol::kPsd);
  CHECK(w.diagonal().real().maxCoeff() <= 1.0 + 1e-10);
  CHECK_THAT((w * rho.matrix()).trace().real(), WithinRel(s.estimate.lower, 1e-9));

  Matrix gap = -rho.matrix();
  gap.diagonal() += s.primal_diag.cast<cd>();
  CHECK(min_eigenvalue(gap) >= -tol::kPsd);
  CHECK_THAT(s.primal_diag.sum(), WithinRel(s.estimate.upper, 1e-9));
  CHECK(s.estimate.relative_width() <= 1e-6);
}

}  // namespace

TEST_CASE("pure states match the l1 closed form", "[coherence_solver]") {
  Rng rng(17);
  for (int d = 2; d <= 8; ++d) {
    const KetVector psi = random_ket(d, rng);
    const DensityOperator rho = DensityOperator::from_ket(psi);
    const CoherenceSolution s = finite_dim_robustness(rho);
    CHECK(s.estimate.contains(coherence_robustness_pure(psi), 1e-6));
    check_certificates(s, rho);
  }
}

TEST_CASE("mixed states carry primal and dual certificates", "[coherence_solver]") {
  Rng rng(23);
  for (int d : {3, 5, 8}) {
    const DensityOperator rho = random_mixed(d, 2, rng);
    const CoherenceSolution s = finite_dim_robustness(rho);
    check_certificates(s, rho);
    CHECK(s.estimate.lower >= 1.0);
    // R <= ||rho||_l1 for every state.
    CHECK(s.estimate.upper <= l1_norm(rho) + 1e-9);
  }
}

TEST_CASE("bisection alternate agrees with the barrier solver", "[coherence_solver]") {
  Rng rng(31);
  SolverOptions alt;
  alt.method = SolverMethod::kBisectionSubgradient;
  alt.rel_gap = 1e-3;
  for (int d : {2, 3, 4}) {
    const DensityOperator rho = DensityOperator::from_ket(random_ket(d, rng));
    const CoherenceSolution a = finite_dim_robustness(rho);
    const CoherenceSolution b = finite_dim_robustness(rho, {FreeKind::kIncoherent, {}}, alt);
    // The alternate returns a certified but looser interval; both must overlap.
    CHECK(b.estimate.lower <= a.estimate.upper + 1e-9);
    CHECK(a.estimate.lower <= b.estimate.upper + 1e-9);
    CHECK(b.estimate.relative_width() <= 5e-2);
  }
}

TEST_CASE("certificate helpers", "[coherence_solver]") {
  const Matrix plus = Matrix::Constant(2, 2, 0.5);
  CHECK_THAT(coherence_dual_value(Matrix::Constant(2, 2, 2.0), plus), WithinAbs(2.0, 1e-12));

  RealVector d(2);
  d << 0.5, 0.5;
  RealVector repaired;
  const double v = coherence_primal_repair(d, plus, &repaired);
  CHECK(v >= 2.0 - 1e-12);
  Matrix gap = -plus;
  gap.diagonal() += repaired.cast<cd>();
  CHECK(min_eigenvalue(gap) >= -1e-12);
}

TEST_CASE("solver rejects other free sets", "[coherence_solver]") {
  const DensityOperator rho(Matrix::Identity(4, 4) / 4.0);
  CHECK_THROWS(finite_dim_robustness(rho, {FreeKind::kSeparable, {2, 2}}));
}
