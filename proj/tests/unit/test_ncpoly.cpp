#include "qcpn/ncpoly.hpp"
#include "qcpn/projections.hpp"

#include <doctest.h>

#include <random>

using namespace qcpn;

namespace {

NCPoly q_times(int exp, const NCPoly& a) { return a * QScalar::q_pow(exp); }

// Random combination of normal words with small q-power coefficients.
NCPoly random_poly(const Presentation& P, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> terms(1, 3), power(-2, 2), coeff(-2, 2);
  NCPoly out;
  int t = terms(rng);
  for (int i = 0; i < t; ++i) {
    int c = coeff(rng);
    out.add_term(random_normal_word(P, 2, rng), QScalar::q_pow(power(rng)) * QScalar(c == 0 ? 1 : c));
  }
  return out;
}

}  // namespace

TEST_CASE("commutation examples") {
  Presentation P(1);
  CHECK(P.mul(P.z(1), P.z(0)) == q_times(1, NCPoly::word(Word{letter(0, false), letter(1, false)})));
  NCPoly a = P.mul(P.zs(0), P.z(1));
  CHECK(P.mul(NCPoly(1), a) == a);
  CHECK(P.normalize(P.zs(0).free_mul(P.z(1)) - q_times(1, P.z(1).free_mul(P.zs(0)))).is_zero());
}

TEST_CASE("z0 z0^* at n = 1 with and without the sphere reduction") {
  Presentation free(1, false);
  NCPoly z0s_z0 = free.mul(free.zs(0), free.z(0)), z1s_z1 = free.mul(free.zs(1), free.z(1));
  NCPoly expected = z0s_z0 - (QScalar(1) - QScalar::q_pow(2)) * z1s_z1;
  CHECK(free.mul(free.z(0), free.zs(0)) == expected);

  Presentation P(1);
  NCPoly reduced = (QScalar(1) - QScalar::q_pow(-2)) + QScalar::q_pow(-2) * P.mul(P.zs(0), P.z(0));
  CHECK(P.mul(P.z(0), P.zs(0)) == reduced);
  // z1^* z1 itself is rewritten by the sphere rule.
  CHECK(P.normalize(P.zs(1).free_mul(P.z(1))) == QScalar::q_pow(-2) * (NCPoly(1) - P.mul(P.zs(0), P.z(0))));
}

TEST_CASE("sphere relations") {
  for (int n = 1; n <= 3; ++n) {
    Presentation P(n);
    NCPoly a, b;
    for (int j = 0; j <= n; ++j) {
      a += P.z(j).free_mul(P.zs(j));
      b += QScalar::q_pow(2 * j) * P.zs(j).free_mul(P.z(j));
    }
    CHECK(P.normalize(a) == NCPoly(1));
    CHECK(P.normalize(b) == NCPoly(1));
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        if (i != j) CHECK(P.is_zero(P.zs(i).free_mul(P.z(j)) - q_times(1, P.z(j).free_mul(P.zs(i)))));
  }
}

TEST_CASE("star") {
  Presentation P(1);
  CHECK(P.star(P.z(0)) == P.zs(0));
  NCPoly x = q_times(1, P.mul(P.z(0), P.z(1)));
  CHECK(P.star(x) == P.normalize(q_times(1, P.zs(1).free_mul(P.zs(0)))));
  AlgebraMatrix p1 = projection(1, P);
  CHECK(P.star(p1.core[0][1]) == p1.core[1][0]);
}

TEST_CASE("canonical action") {
  Presentation P(1);
  for (const auto& x : {UqGen::E(1), UqGen::F(1), UqGen::K(1), UqGen::Kinv(1)}) {
    NCPoly img = uq_act(x, NCPoly(1), P);
    if (x.kind == UqGen::Kind::K || x.kind == UqGen::Kind::Kinv)
      CHECK(img == NCPoly(1));
    else
      CHECK(img.is_zero());
  }
  for (int n = 1; n <= 2; ++n) {
    Presentation Pn(n);
    for (int N = 1; N <= 3; ++N) {
      NCPoly z0N = Pn.pow(Pn.z(0), N);
      CHECK(uq_act(UqGen::E(n), z0N, Pn).is_zero());
      CHECK(uq_act(UqGen::K(n), z0N, Pn) == QScalar::q_pow_half(N) * z0N);
    }
  }
}

TEST_CASE("K_2rho acts diagonally on the unstarred Psi components") {
  for (int n = 1; n <= 2; ++n) {
    Presentation P(n);
    for (int N = 1; N <= 3; ++N) {
      AlgebraVector v = psi(-N, P);
      for (std::size_t J = 0; J < v.size(); ++J) {
        int e = 0;
        for (int i = 1; i <= n; ++i) e += i * (n + 1 - i) * (v.index[J][i - 1] - v.index[J][i]);
        CHECK(uq_act(UqGen::k2rho(n), v.core[J], P) == QScalar::q_pow(e) * v.core[J]);
      }
    }
  }
}

TEST_CASE("property: confluence on random triples") {
  for (int n = 1; n <= 3; ++n) {
    Presentation P(n);
    AssociativityReport r = check_associativity(P, 500, 3, 1000 + n);
    CHECK(r.samples == 500);
    CHECK(r.failures == 0);
    std::mt19937_64 rng(n);
    for (int t = 0; t < 60; ++t) {
      NCPoly a = random_poly(P, rng), b = random_poly(P, rng), c = random_poly(P, rng);
      CHECK(P.mul(P.mul(a, b), c) == P.mul(a, P.mul(b, c)));
    }
  }
}

TEST_CASE("property: star is an involutive antihomomorphism") {
  for (int n = 1; n <= 2; ++n) {
    Presentation P(n);
    std::mt19937_64 rng(40 + n);
    for (int t = 0; t < 80; ++t) {
      NCPoly a = random_poly(P, rng), b = random_poly(P, rng);
      CHECK(P.star(P.mul(a, b)) == P.mul(P.star(b), P.star(a)));
      CHECK(P.star(P.star(a)) == P.normalize(a));
      CHECK(P.normalize(a.free_star()) == P.star(P.normalize(a)));
    }
  }
}

TEST_CASE("property: the action is a module algebra") {
  for (int n = 1; n <= 2; ++n) {
    Presentation P(n);
    std::mt19937_64 rng(90 + n);
    for (int t = 0; t < 30; ++t) {
      NCPoly a = random_poly(P, rng), b = random_poly(P, rng);
      NCPoly ab = P.mul(a, b);
      for (int i = 1; i <= n; ++i) {
        auto act = [&](const UqGen& x, const NCPoly& y) { return uq_act(x, y, P); };
        UqGen K = UqGen::K(i), Ki = UqGen::Kinv(i), E = UqGen::E(i), F = UqGen::F(i);
        CHECK(act(K, ab) == P.mul(act(K, a), act(K, b)));
        CHECK(act(E, ab) == P.mul(act(E, a), act(K, b)) + P.mul(act(Ki, a), act(E, b)));
        CHECK(act(F, ab) == P.mul(act(F, a), act(K, b)) + P.mul(act(Ki, a), act(F, b)));
      }
    }
  }
}

TEST_CASE("pullback") {
  Presentation P2(2), P1(1);
  CHECK(pullback(P2.z(2), 1, P1).is_zero());
  NCPoly a = P2.mul(P2.zs(1), P2.z(2)) + P2.z(0);
  CHECK(pullback(a, 2, P2) == a);
  NCPoly s = P2.z(0).free_mul(P2.zs(0)) + P2.z(1).free_mul(P2.zs(1)) + P2.z(2).free_mul(P2.zs(2));
  CHECK(pullback(s, 1, P1) == NCPoly(1));
}

TEST_CASE("expression parser") {
  Presentation P(1);
  CHECK(P.normalize(parse_expression("z0* z1 - q z1 z0*")).is_zero());
  CHECK(P.normalize(parse_expression("1")) == NCPoly(1));
  CHECK(P.normalize(parse_expression("q^-2 * (1 - z0* z0)")) == P.normalize(P.zs(1).free_mul(P.z(1))));
  CHECK(parse_expression("q^1/2 z0") == QScalar::q_pow_half(1) * P.z(0));
  CHECK(parse_expression("(z0 + z1)^2") == P.z(0).free_mul(P.z(0)) + P.z(0).free_mul(P.z(1)) +
                                              P.z(1).free_mul(P.z(0)) + P.z(1).free_mul(P.z(1)));
  CHECK(parse_expression("3/4 z1*") == QScalar::rational(3, 4) * P.zs(1));
  CHECK(parse_expression("-z0 z1") == -P.z(0).free_mul(P.z(1)));
  CHECK_THROWS(parse_expression("z0 +"));
  CHECK_THROWS(parse_expression("w1"));
}

TEST_CASE("property: printed polynomials reparse to the same value") {
  Presentation P(2);
  const char* corpus[] = {"z0* z1 - q z1 z0*", "q^-2 * (1 - z0* z0)", "(z0 + q^1/2 z1*)^3", "z2 z2* + 1/3",
                          "(q - q^-1) z0 z1 z2", "z1* z0 + z0* z1 - 2"};
  for (const char* t : corpus) {
    NCPoly raw = parse_expression(t);
    CHECK(parse_expression(raw.str()) == raw);
    NCPoly nf = P.normalize(raw);
    CHECK(parse_expression(nf.str()) == nf);
  }
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    NCPoly a = P.normalize(random_poly(P, rng) * (qint(3) / qint(2)));
    CHECK(parse_expression(a.str()) == a);
  }
}
