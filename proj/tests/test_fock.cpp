#include "catch_amalgamated.hpp"

#include <cmath>

#include "cvrob/fock.hpp"
#include "cvrob/optimize.hpp"
#include "cvrob/states.hpp"

using namespace cvrob;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Matrix random_hermitian(int d, Rng& rng) {
  Matrix x(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = cd(rng.normal(), rng.normal());
  return (x + x.adjoint()) / 2.0;
}

Vector random_unit(int d, Rng& rng) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = cd(rng.normal(), rng.normal());
  return v.normalized();
}

}  // namespace

TEST_CASE("ladder operators at cutoff 3", "[fock]") {
  auto [a, ad] = ladder_ops(3);
  Matrix expect = Matrix::Zero(3, 3);
  expect(0, 1) = 1.0;
  expect(1, 2) = std::sqrt(2.0);
  CHECK((a - expect).norm() == 0.0);
  CHECK((ad - a.adjoint()).norm() == 0.0);

  const Matrix comm = a * ad - ad * a;
  Matrix id = Matrix::Identity(3, 3);
  id(2, 2) = -2.0;
  CHECK((comm - id).norm() < 1e-14);
}

TEST_CASE("number operator at cutoff 2", "[fock]") {
  auto [a, ad] = ladder_ops(2);
  const Matrix n = ad * a;
  CHECK(std::abs(n(0, 0)) < 1e-15);
  CHECK_THAT(n(1, 1).real(), WithinAbs(1.0, 1e-15));
  CHECK((n - number_operator(2)).norm() < 1e-15);
}

TEST_CASE("trace norm", "[fock]") {
  CHECK_THAT(trace_norm(Matrix::Identity(3, 3)), WithinAbs(3.0, 1e-14));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  CHECK_THAT(trace_norm(d), WithinAbs(2.0, 1e-14));

  Rng rng(11);
  for (int k = 0; k < 5; ++k) {
    const Matrix x = random_hermitian(6, rng);
    Eigen::SelfAdjointEigenSolver<Matrix> es(x);
    CHECK_THAT(trace_norm(x), WithinAbs(es.eigenvalues().cwiseAbs().sum(), 1e-10));
  }
}

TEST_CASE("spectral decomposition", "[fock]") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.3;
  d(1, 1) = 0.7;
  const Spectrum s = spectral_decompose(DensityOperator(d));
  CHECK_THAT(s.values(0), WithinAbs(0.7, 1e-14));
  CHECK_THAT(s.values(1), WithinAbs(0.3, 1e-14));

  const Matrix plus = Matrix::Constant(2, 2, 0.5);
  const Spectrum p = spectral_decompose(DensityOperator(plus));
  CHECK_THAT(p.values(0), WithinAbs(1.0, 1e-14));
  CHECK_THAT(p.values(1), WithinAbs(0.0, 1e-14));
  CHECK((p.vectors.adjoint() * p.vectors - Matrix::Identity(2, 2)).norm() < 1e-13);

  TruncationPolicy loose;
  loose.allow_truncation = true;
  const DensityOperator tau = thermal_state(1.0, 40, loose);
  const Spectrum t = spectral_decompose(tau);
  // Renormalized by 1 - 2^-40, which is below the comparison tolerance.
  for (int n = 0; n < 40; ++n) CHECK_THAT(t.values(n), WithinAbs(std::ldexp(1.0, -(n + 1)), 1e-11));
}

TEST_CASE("partial transpose", "[fock]") {
  Rng rng(5);
  const Vector a = random_unit(2, rng);
  const Vector b = random_unit(3, rng);
  const Matrix sa = a * a.adjoint();
  const Matrix sb = b * b.adjoint();
  const Matrix pt = partial_transpose(kron(sa, sb), {2, 3});
  CHECK((pt - kron(sa, Matrix(sb.transpose()))).norm() < 1e-14);

  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const Matrix rho = bell * bell.adjoint();
  const Matrix g = partial_transpose(rho, {2, 2});
  CHECK_THAT(min_eigenvalue(g), WithinAbs(-0.5, 1e-12));
  CHECK((partial_transpose(g, {2, 2}) - rho).norm() == 0.0);
}

TEST_CASE("Schmidt spectrum", "[fock]") {
  Vector prod = Vector::Zero(4);
  prod(0) = 1.0;
  const RealVector m0 = schmidt_spectrum(KetVector(prod), {2, 2});
  CHECK_THAT(m0(0), WithinAbs(1.0, 1e-14));
  CHECK_THAT(m0(1), WithinAbs(0.0, 1e-14));

  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const RealVector m1 = schmidt_spectrum(KetVector(bell), {2, 2});
  CHECK_THAT(m1(0), WithinAbs(1.0 / std::sqrt(2.0), 1e-14));
  CHECK_THAT(m1(1), WithinAbs(1.0 / std::sqrt(2.0), 1e-14));

  Rng rng(3);
  const Vector v = random_unit(9, rng);
  Matrix m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = v(i * 3 + j);
  const RealVector sv = Eigen::JacobiSVD<Matrix>(m).singularValues();
  const SchmidtDecomposition s = schmidt_decompose(KetVector(v), {3, 3});
  for (int i = 0; i < 3; ++i) CHECK_THAT(s.mu(i), WithinAbs(sv(i), 1e-10));

  Vector back = Vector::Zero(9);
  for (int i = 0; i < 3; ++i) back += s.mu(i) * kron(Vector(s.u.col(i)), Vector(s.v.col(i)));
  CHECK((back - v).norm() < 1e-12);
}

TEST_CASE("state validation", "[fock]") {
  Vector v(3);
  v << 3.0, 4.0, 0.0;
  const KetVector k(v);
  CHECK_THAT(k.amplitudes().squaredNorm(), WithinAbs(1.0, tol::kNorm));
  CHECK(k.cutoff() == 3);

  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(DensityOperator(bad), InvalidArgument);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityOperator(neg), InvalidArgument);

  Matrix unnorm = Matrix::Identity(2, 2);
  const DensityOperator u(unnorm, 0.0, false);
  CHECK_FALSE(u.normalized());
  CHECK_THAT(u.trace(), WithinAbs(2.0, 1e-15));
}

TEST_CASE("fidelity pads the shorter vector", "[fock]") {
  CHECK_THAT(fidelity(fock_state(1, 3), fock_state(1, 6)), WithinAbs(1.0, 1e-15));
  CHECK_THAT(fidelity(fock_state(1, 3), fock_state(2, 6)), WithinAbs(0.0, 1e-15));
}
