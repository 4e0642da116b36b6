#include "qcpn/projections.hpp"

#include <doctest.h>

using namespace qcpn;

TEST_CASE("multi-indices") {
  auto idx = multi_indices(2, 1);
  REQUIRE(idx.size() == 3);
  for (const auto& J : idx) CHECK(J[0] + J[1] == 2);
  CHECK(multi_indices(3, 2).size() == 10);
  CHECK(multi_indices(0, 3).size() == 1);
}

TEST_CASE("Psi_N components") {
  Presentation P(1);
  AlgebraVector p1 = psi(1, P);
  REQUIRE(p1.size() == 2);
  CHECK(p1.core[0] == P.zs(0));
  CHECK(p1.core[1] == P.zs(1));
  CHECK(p1.radicand[0].is_one());
  AlgebraVector m1 = psi(-1, P);
  REQUIRE(m1.size() == 2);
  CHECK(m1.core[0] == P.z(0));
  CHECK(m1.core[1] == QScalar::q_pow(1) * P.z(1));
  Presentation P2(2);
  AlgebraVector p0 = psi(0, P2);
  REQUIRE(p0.size() == 1);
  CHECK(p0.core[0] == NCPoly(1));
}

TEST_CASE("defining projection and trivial projection") {
  for (int n = 1; n <= 2; ++n) {
    Presentation P(n);
    AlgebraMatrix p1 = projection(1, P);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) CHECK(p1.core[i][j] == P.mul(P.zs(i), P.z(j)));
    CHECK(qtrace(p1, P) == NCPoly(1));
    AlgebraMatrix p0 = projection(0, P);
    REQUIRE(p0.size() == 1);
    CHECK(p0.core[0][0] == NCPoly(1));
    CHECK(qtrace(p0, P) == NCPoly(1));
  }
}

TEST_CASE("q-trace of P_{-1} at n = 1") {
  Presentation P(1);
  NCPoly expected = P.normalize(parse_expression("z0 z0* + q^4 z1 z1*"));
  CHECK(qtrace(projection(-1, P), P) == expected);
}

TEST_CASE("weight matrices") {
  CHECK(weight_matrix(0, 2) == std::vector<QScalar>{QScalar(1)});
  CHECK(weight_matrix(-1, 1) == std::vector<QScalar>{QScalar::q_pow_half(1), QScalar::q_pow_half(-1)});
  CHECK(weight_matrix(1, 1) == std::vector<QScalar>{QScalar::q_pow_half(-1), QScalar::q_pow_half(1)});
  CHECK(weight_matrix_unsigned(1, 1) == weight_matrix(-1, 1));
}

TEST_CASE("projection identities for n <= 2, |N| <= 3") {
  for (int n = 1; n <= 2; ++n) {
    Presentation P(n);
    for (int N = -3; N <= 3; ++N) {
      ProjectionReport r = check_projection(N, P);
      CHECK(r.psi_normalised);
      CHECK(r.idempotent);
      CHECK(r.selfadjoint);
      CHECK(psi_norm(psi(N, P), P) == NCPoly(1));
    }
  }
}

TEST_CASE("covariance of P'_N") {
  Presentation P(1);
  for (int N = -3; N <= 3; ++N) {
    for (const auto& x : {UqGen::E(1), UqGen::F(1), UqGen::K(1), UqGen::Kinv(1)})
      CHECK(is_zero_matrix(check_equivariance(N, x, P)));
    CHECK(check_sigma_relations(N, P));
    CHECK(check_antipode_conjugation(N, P));
    CHECK(sigma_rep(N, P).dim() == static_cast<std::size_t>((N < 0 ? -N : N) + 1));
  }
  Presentation P2(2);
  for (int N = -2; N <= 2; ++N) {
    for (int i = 1; i <= 2; ++i)
      for (const auto& x : {UqGen::E(i), UqGen::F(i), UqGen::K(i)}) CHECK(is_zero_matrix(check_equivariance(N, x, P2)));
    CHECK(check_sigma_relations(N, P2));
  }
}

TEST_CASE("covariance fails for the literal sigma = R sigma~ R^-1") {
  Presentation P(1);
  std::vector<QScalar> R = weight_matrix(-2, 1), Rinv;
  for (const auto& r : R) Rinv.push_back(r.inverse());
  bool any_nonzero = false;
  for (const auto& x : {UqGen::E(1), UqGen::F(1)})
    any_nonzero = any_nonzero || !is_zero_matrix(check_equivariance_gauge(-2, x, P, R, R));
  CHECK(any_nonzero);
  CHECK(is_zero_matrix(check_equivariance_gauge(-2, UqGen::E(1), P, R, Rinv)));
}
