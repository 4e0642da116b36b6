#include "qcpn/sphere_rep.hpp"
#include "qcpn/suq2.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

using namespace qcpn;

namespace {

std::vector<Word> normal_words(const Presentation& P, int max_len) {
  std::vector<Word> out{Word()};
  std::vector<Word> frontier{Word()};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (int i = 0; i <= P.n(); ++i) {
        for (bool s : {true, false}) {
          Word v = w + letter(i, s);
          if (!std::is_sorted(v.begin(), v.end())) continue;
          next.push_back(v);
          if (P.is_normal_word(v)) out.push_back(v);
        }
      }
    }
    frontier = next;
  }
  return out;
}

// Haar state on words of degree <= 2 from invariance alone: h(E|>w) = h(F|>w) = 0,
// h(K|>w) = h(w), h(1) = 1.
std::map<Word, double> haar_oracle(double q0) {
  Presentation P(1);
  std::vector<Word> W = normal_words(P, 2);
  std::map<Word, int> col;
  for (std::size_t i = 0; i < W.size(); ++i) col[W[i]] = static_cast<int>(i);
  std::vector<Eigen::VectorXd> rows;
  auto add_row = [&](const NCPoly& a, const NCPoly& b) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(W.size()));
    for (const auto& [w, c] : a.terms()) r[col.at(w)] += c.eval(q0);
    for (const auto& [w, c] : b.terms()) r[col.at(w)] -= c.eval(q0);
    rows.push_back(r);
  };
  for (const auto& w : W) {
    NCPoly a = NCPoly::word(w);
    add_row(uq_act(UqGen::E(1), a, P), NCPoly());
    add_row(uq_act(UqGen::F(1), a, P), NCPoly());
    add_row(uq_act(UqGen::K(1), a, P), a);
  }
  Eigen::MatrixXd M(static_cast<Eigen::Index>(rows.size() + 1), static_cast<Eigen::Index>(W.size()));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(M.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) M.row(static_cast<Eigen::Index>(i)) = rows[i];
  M.row(M.rows() - 1).setZero();
  M(M.rows() - 1, col.at(Word())) = 1;
  rhs[M.rows() - 1] = 1;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
  REQUIRE(qr.rank() == static_cast<Eigen::Index>(W.size()));
  Eigen::VectorXd h = qr.solve(rhs);
  REQUIRE((M * h - rhs).norm() < 1e-12);
  std::map<Word, double> out;
  for (std::size_t i = 0; i < W.size(); ++i) out[W[i]] = h[static_cast<Eigen::Index>(i)];
  return out;
}

double apply_functional(const std::map<Word, double>& h, const NCPoly& a, double q0) {
  double s = 0;
  for (const auto& [w, c] : a.terms()) s += c.eval(q0) * h.at(w);
  return s;
}

}  // namespace

TEST_CASE("basis indexing") {
  LeftRegular reg(6, 0.5);
  CHECK(reg.size() == 1 + 4 + 9 + 16 + 25 + 36 + 49);
  for (std::size_t i = 0; i < reg.size(); ++i) CHECK(reg.index(reg.basis()[i]) == static_cast<long>(i));
  CHECK(reg.index({1, 0, 1}) == -1);
  CHECK(reg.index({8, 0, 0}) == -1);
}

TEST_CASE("L_E and L_F at l = 1/2 have unit coefficients") {
  LeftRegular reg(4, 0.5);
  for (const SparseOperator* op : {&reg.LE(), &reg.LF()}) {
    int count = 0;
    for (int k = 0; k < op->outerSize(); ++k)
      for (SparseOperator::InnerIterator it(*op, k); it; ++it)
        if (reg.basis()[static_cast<std::size_t>(it.col())].l2 == 1) {
          CHECK(it.value() == doctest::Approx(1.0).epsilon(1e-15));
          ++count;
        }
    CHECK(count == 2);
  }
}

TEST_CASE("relations of the left regular representation") {
  Presentation P(1);
  LeftRegular reg(14, 0.5);
  auto window = reg.interior(2);
  for (const auto& r : sphere_relations(P)) CHECK(window_norm(reg.rep(r), window, reg.size()) < 1e-12);
  SparseOperator A = reg.rep(P.zs(1).free_mul(P.z(1)));
  CHECK(window_norm(SparseOperator(reg.A() - A), window, reg.size()) < 1e-12);
  SparseOperator B = reg.rep(P.zs(1).free_mul(P.z(0)));
  CHECK(window_norm(SparseOperator(reg.B() - B), window, reg.size()) < 1e-12);
}

TEST_CASE("star map realizes the involution") {
  Presentation P(1);
  LeftRegular reg(10, 0.5);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    NCPoly a = NCPoly::word(random_normal_word(P, 3, rng), QScalar::q_pow(t % 3 - 1));
    Eigen::VectorXd lhs = reg.star_map() * reg.apply(a, reg.vacuum());
    Eigen::VectorXd rhs = reg.apply(P.star(a), reg.vacuum());
    CHECK((lhs - rhs).norm() < 1e-12);
  }
}

TEST_CASE("property: symbolic L action matches the operators") {
  Presentation P(1);
  LeftRegular reg(10, 0.5);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 60; ++t) {
    NCPoly a = NCPoly::word(random_normal_word(P, 4, rng));
    Eigen::VectorXd va = reg.apply(a, reg.vacuum());
    CHECK((reg.LE() * va - reg.apply(laction_poly(LAct::E, a, P), reg.vacuum())).norm() < 1e-12);
    CHECK((reg.LF() * va - reg.apply(laction_poly(LAct::F, a, P), reg.vacuum())).norm() < 1e-12);
    CHECK((reg.LK() * va - reg.apply(laction_poly(LAct::K, a, P), reg.vacuum())).norm() < 1e-12);
  }
}

TEST_CASE("Haar state") {
  Presentation P(1);
  for (double q0 : {0.3, 0.5, 0.8}) {
    LeftRegular reg(6, q0);
    auto oracle = haar_oracle(q0);
    CHECK(haar(reg, NCPoly(1)) == doctest::Approx(1.0));
    NCPoly A = P.mul(P.zs(1), P.z(1)), B = P.mul(P.zs(1), P.z(0));
    CHECK(std::abs(haar(reg, B)) < 1e-15);
    CHECK(haar(reg, A) == doctest::Approx(apply_functional(oracle, A, q0)).epsilon(1e-12));
    for (const auto& w : normal_words(P, 2))
      CHECK(haar(reg, NCPoly::word(w)) == doctest::Approx(apply_functional(oracle, NCPoly::word(w), q0)).scale(1));
  }
  LeftRegular reg(6, 0.5);
  CHECK(haar(reg, P.mul(P.zs(1), P.z(1))) == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("modular property") {
  Presentation P(1);
  NCPoly A = P.mul(P.zs(1), P.z(1)), B = P.mul(P.zs(1), P.z(0));
  CHECK(modular_check(NCPoly(1), NCPoly(1), 0.5) == 0.0);
  CHECK(modular_check(A, A, 0.5) < 1e-9);
  CHECK(modular_check(B, P.star(B), 0.5) < 1e-9);
  CHECK(modular_check(P.star(B), B, 0.5) < 1e-9);
  for (const auto& a : {A, B, P.star(B)})
    for (const auto& b : {A, B, P.star(B), P.mul(A, B)}) CHECK(modular_check(a, b, 0.3) < 1e-9);
}

TEST_CASE("spectral triple axioms") {
  for (int j2 : {1, 3}) {
    for (const auto& r : triple_axiom_suite(j2, 24, 0.5)) {
      INFO(r.name);
      CHECK(r.value < 1e-9);
      if (r.name == "gamma^2 - 1") CHECK(r.value == 0.0);
    }
  }
  CHECK_THROWS_AS(build_triple(3, 6, 0.5), std::invalid_argument);
}

TEST_CASE("property: J is an antilinear isometry") {
  SpectralTriple T = build_triple(3, 16, 0.5);
  CHECK(T.J_conjugates);
  auto window = T.interior(2);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  using CVec = Eigen::VectorXcd;
  const auto d = static_cast<Eigen::Index>(T.basis.size());
  Eigen::SparseMatrix<std::complex<double>> J = T.J_linear.cast<std::complex<double>>();
  for (int t = 0; t < 20; ++t) {
    CVec a = CVec::Zero(d), b = CVec::Zero(d);
    for (std::size_t i : window) {
      a[static_cast<Eigen::Index>(i)] = {g(rng), g(rng)};
      b[static_cast<Eigen::Index>(i)] = {g(rng), g(rng)};
    }
    CVec Ja = J * a.conjugate(), Jb = J * b.conjugate();
    CHECK(std::abs(Ja.dot(Jb) - b.dot(a)) < 1e-12);
    CHECK(std::abs((J * Ja.conjugate() + a).norm()) < 1e-12);
  }
}

TEST_CASE("spectrum of D_j^2") {
  for (int j2 : {1, 3}) {
    SpectrumReport s = spectrum(j2, 24, 0.5);
    CHECK(s.d2_error < 1e-10);
    CHECK(s.casimir_error < 1e-10);
    CHECK(s.sectors > 0);
    CHECK(std::is_sorted(s.abs_eigenvalues.begin(), s.abs_eigenvalues.end()));
  }
}

TEST_CASE("index") {
  const int expected[] = {-1, -2, -3, -4, -5};
  const int stated[] = {-1, 1, 2, 6, 9};
  for (int i = 0; i < 5; ++i) {
    int j2 = 2 * i + 1;
    CHECK(index_analytic(j2) == expected[i]);
    CHECK(index_branch_formula(j2) == stated[i]);
    for (double q0 : {0.3, 0.5, 0.8}) {
      IndexNumeric r = index_numeric(j2, 2 * j2 + 6, q0);
      CHECK(r.value == expected[i]);
      CHECK(r.value == r.kernel - r.cokernel);
      CHECK_FALSE(r.unstable);
      CHECK(r.tail_zero);
    }
  }
  CHECK(index_numeric(3, 16, 0.5).value == -2);
  CHECK_THROWS_AS(index_numeric(5, 10, 0.5), std::invalid_argument);
}

TEST_CASE("index pairing on K-theory classes") {
  CHECK(poincare_pairing(1, 1, 1, 0, 3) == index_analytic(3));
  for (long long i = -2; i <= 2; ++i)
    for (long long k = -2; k <= 2; ++k) {
      CHECK(poincare_pairing(i, k, i, k, 1) == 0);
      CHECK(poincare_pairing(i, k, 1, 2, 5) == -poincare_pairing(1, 2, i, k, 5));
    }
}

TEST_CASE("holomorphic sections") {
  for (int N = -4; N <= 2; ++N) {
    HoloResult h = holo_dim(N, std::abs(N) + 8, 0.5);
    CHECK(h.dim == (N <= 0 ? -N + 1 : 0));
    CHECK(h.truncation_safe);
  }
  CHECK(holo_dim(-2, 10, 0.3).dim == 3);
}

TEST_CASE("twisted Hochschild pairing") {
  for (int N = 0; N <= 2; ++N) {
    Tau1Result r = tau1_pairing(N, 4 * N + 4, 0.5);
    double target = std::pow(0.5, -4) * static_cast<double>(qint(N).eval(0.5));
    CHECK(r.target == doctest::Approx(target).epsilon(1e-14));
    CHECK(std::abs(r.value - target) <= 1e-6 * std::max(1.0, target));
    CHECK(std::abs(r.value - r.value_larger) <= 1e-9 * std::max(1.0, target));
  }
  CHECK(tau1_pairing(1, 8, 0.5).value == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(tau1_pairing(2, 12, 0.5).value == doctest::Approx(40.0).epsilon(1e-12));
}
