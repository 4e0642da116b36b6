#include "qcpn/parallel.hpp"
#include "qcpn/sphere_rep.hpp"

#include <doctest.h>

#include <cmath>

using namespace qcpn;

namespace {

long long choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("box enumeration") {
  RepSpec s{2, 1, 5, 0.5};
  CHECK(s.box_size() == 36);
  for (std::size_t i = 0; i < s.box_size(); ++i) CHECK(s.index(s.state(i)) == i);
  CHECK(s.state(1) == std::vector<int>{1, 0});
  CHECK_THROWS_AS((RepSpec{1, 2, 5, 0.5}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((RepSpec{1, 1, 5, 1.5}).validate(), std::invalid_argument);
}

TEST_CASE("constants act as the projection onto the admissible subspace") {
  for (auto [n, k] : {std::pair{1, 1}, std::pair{2, 1}}) {
    RepSpec s{n, k, 6, 0.5};
    SparseOperator one = rep_poly(NCPoly(1), s);
    SparseOperator id(static_cast<Eigen::Index>(s.box_size()), static_cast<Eigen::Index>(s.box_size()));
    id.setIdentity();
    CHECK((one - id).norm() == 0.0);
  }
  RepSpec s{2, 2, 6, 0.5};
  SparseOperator one = rep_poly(NCPoly(1), s);
  for (std::size_t i = 0; i < s.box_size(); ++i) {
    double d = one.coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
    CHECK(d == (s.in_subspace(s.state(i)) ? 1.0 : 0.0));
  }
}

TEST_CASE("top generator is normal") {
  Presentation P(1);
  RepSpec s{1, 1, 20, 0.5};
  SparseOperator c = rep_poly(P.z(1).free_mul(P.zs(1)) - P.zs(1).free_mul(P.z(1)), s);
  CHECK(window_norm(c, s.interior(2), s.box_size()) < 1e-15);
}

TEST_CASE("property: relations hold on the interior window") {
  for (int n = 1; n <= 2; ++n) {
    Presentation P(n);
    auto rels = sphere_relations(P);
    for (int k = 0; k <= n; ++k) {
      for (double q0 : {0.3, 0.5, 0.8}) {
        RepSpec s{n, k, n == 1 ? 24 : 10, q0};
        auto window = s.interior(2);
        for (const auto& r : rels) CHECK(window_norm(rep_poly(r, s), window, s.box_size()) < 1e-10);
      }
    }
  }
}

TEST_CASE("representations with far apart labels are orthogonal") {
  Presentation P(2);
  RepSpec s0{2, 0, 8, 0.5}, s2{2, 2, 8, 0.5};
  auto window = s0.interior(2);
  for (int i = 0; i <= 2; ++i) {
    for (int j = 0; j <= 2; ++j) {
      for (bool si : {false, true}) {
        for (bool sj : {false, true}) {
          SparseOperator prod = rep_generator(s0, i, si) * rep_generator(s2, j, sj);
          CHECK(window_norm(prod, window, s0.box_size()) == 0.0);
          SparseOperator rev = rep_generator(s2, i, si) * rep_generator(s0, j, sj);
          CHECK(window_norm(rev, window, s0.box_size()) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("path-following diagonal matches the sparse operator") {
  Presentation P(2);
  NCPoly a = P.mul(P.z(0), P.zs(0)) + QScalar::q_pow(2) * P.mul(P.mul(P.z(1), P.z(2)), P.mul(P.zs(2), P.zs(1)));
  RepSpec s{2, 1, 8, 0.5};
  SparseOperator op = rep_poly(a, s);
  for (std::size_t i : s.interior(3)) {
    double d = op.coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
    CHECK(static_cast<double>(rep_diagonal(a, s, s.state(i))) == doctest::Approx(d).epsilon(1e-13));
  }
}

TEST_CASE("Fredholm pairing values") {
  CHECK(std::abs(fredholm_pairing(2, 1, 2, 40, 0.5).value - 2) < 1e-8);
  CHECK(std::abs(fredholm_pairing(1, 2, 2, 40, 0.5).value) < 1e-8);
  for (int k = 0; k <= 2; ++k) {
    PairingResult r = fredholm_pairing(0, k, 2, 20, 0.5);
    CHECK(r.value == doctest::Approx(k == 0 ? 1.0 : 0.0));
    CHECK(r.target == (k == 0 ? 1 : 0));
  }
  for (int n = 1; n <= 3; ++n)
    for (int N = 0; N <= 3; ++N)
      for (int k = 0; k <= n; ++k) {
        PairingResult r = fredholm_pairing(N, k, n, n == 3 ? 30 : 40, 0.5);
        CHECK(r.target == choose(N, k));
        CHECK(std::abs(r.value - static_cast<double>(r.target)) < 1e-8);
      }
  CHECK_THROWS_AS(fredholm_pairing(-1, 0, 1, 10, 0.5), std::invalid_argument);
}

TEST_CASE("property: truncation error decays geometrically") {
  for (auto [N, k] : {std::pair{3, 1}, std::pair{4, 2}}) {
    double prev = 0;
    for (int M = 8; M <= 20; M += 4) {
      PairingResult r = fredholm_pairing(N, k, 2, M, 0.5);
      double err = std::abs(r.value - static_cast<double>(r.target));
      if (M > 8) CHECK(err < 0.02 * prev);
      CHECK(r.tail >= 0.1 * err);
      prev = err;
    }
  }
}

TEST_CASE("parallel helpers are deterministic") {
  auto body = [](std::size_t i) { return 1.0 / static_cast<double>(i + 1); };
  double a = parallel_sum(10000, body), b = parallel_sum(10000, body);
  CHECK(a == b);
  double serial = 0;
  for (std::size_t i = 0; i < 10000; ++i) serial += body(i);
  CHECK(a == doctest::Approx(serial).epsilon(1e-14));
  CHECK(thread_count() >= 1);
}
