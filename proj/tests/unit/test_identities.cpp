#include "qcpn/identities.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace qcpn;

namespace {

// Set partitions of {0..k-1} into exactly j blocks, by enumerating restricted growth strings.
BigInt count_partitions(int k, int j) {
  if (k == 0) return j == 0 ? 1 : 0;
  std::vector<int> a(static_cast<std::size_t>(k), 0);
  BigInt count = 0;
  while (true) {
    int blocks = *std::max_element(a.begin(), a.end()) + 1;
    if (blocks == j) ++count;
    int i = k - 1;
    while (i > 0) {
      int mx = *std::max_element(a.begin(), a.begin() + i);
      if (a[static_cast<std::size_t>(i)] <= mx) break;
      a[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i == 0) break;
    ++a[static_cast<std::size_t>(i)];
  }
  return count;
}

// Permutations of k letters with j cycles, with the sign (-1)^{k-j}.
BigInt signed_cycle_count(int k, int j) {
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  BigInt count = 0;
  do {
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    int cycles = 0;
    for (int s = 0; s < k; ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      ++cycles;
      for (int t = s; !seen[static_cast<std::size_t>(t)]; t = p[static_cast<std::size_t>(t)]) seen[static_cast<std::size_t>(t)] = true;
    }
    if (cycles == j) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return (k - j) % 2 == 0 ? count : BigInt(-count);
}

}  // namespace

TEST_CASE("Laplacian eigenvalues") {
  CHECK(laplacian_eig(0, 0).is_zero());
  CHECK(laplacian_eig(1, 0) == (QScalar(1) + QScalar::q_pow(-3)) * qint(3));
  for (int k = 0; k <= 10; ++k) {
    for (int N = 0; N <= 10; ++N) {
      CHECK(laplacian_gap_defect(k, N).is_zero());
      BigRat lim = laplacian_eig(k, N).limit_q1();
      CHECK(lim == BigRat(2 * (k * k + k * N + 2 * k + N)));
      CHECK(lim == laplacian_eig(k, -N).limit_q1());
    }
  }
  CHECK_THROWS_AS(laplacian_eig(-1, 0), std::invalid_argument);
}

TEST_CASE("curvature and Casimir values") {
  CHECK(monopole_curvature(0).is_zero());
  CHECK(monopole_curvature(1).is_one());
  for (int N = -5; N <= 5; ++N) CHECK(monopole_curvature(N).limit_q1() == BigRat(N));
  CHECK(casimir_value(1).is_one());
  QScalar half = (QScalar::q_pow_half(1) - QScalar::q_pow_half(-1)) / (QScalar::q_pow(1) - QScalar::q_pow(-1));
  CHECK(casimir_value(0) == half * half);
  for (int d = 0; d <= 6; ++d) CHECK(casimir_value(d).limit_q1() == BigRat(d + 1, 2) * BigRat(d + 1, 2));
}

TEST_CASE("Stirling numbers against enumeration") {
  for (int k = 0; k <= 7; ++k) {
    for (int j = 0; j <= k; ++j) {
      CHECK(stirling2(k, j) == count_partitions(k, j));
      CHECK(stirling1(k, j) == signed_cycle_count(k, j));
    }
  }
  CHECK(stirling2(10, 3) == 9330);
  CHECK(stirling1(6, 2) == 274);
  CHECK(stirling1(5, 2) == -50);
}

TEST_CASE("pairing table") {
  auto t = pairing_table(4, 6);
  REQUIRE(t.size() == 7);
  CHECK(t[0] == std::vector<BigInt>{1, 0, 0, 0, 0});
  CHECK(t[3][2] == 3);
  CHECK(t[6][4] == 15);
}

TEST_CASE("property: Chern conversions are inverse") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  for (int n = 0; n <= 4; ++n) {
    for (int t = 0; t < 30; ++t) {
      ChernVector phi{ChernBasis::Phi, {}};
      for (int i = 0; i <= n; ++i) phi.components.emplace_back(num(rng), den(rng));
      ChernVector ch = chern_from_phi(phi);
      CHECK(ch.basis == ChernBasis::Ch);
      CHECK(phi_from_chern(ch).components == phi.components);
      CHECK(chern_from_phi(phi_from_chern(ch)).components == ch.components);
    }
  }
}

TEST_CASE("property: phi_2 is integral on integer combinations of pairing rows") {
  for (int n = 2; n <= 4; ++n) {
    auto t = pairing_table(n, 8);
    std::mt19937 rng(n);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
      ChernVector phi{ChernBasis::Phi, std::vector<BigRat>(static_cast<std::size_t>(n + 1), BigRat(0))};
      for (const auto& row : t) {
        int w = c(rng);
        for (int k = 0; k <= n; ++k) phi.components[static_cast<std::size_t>(k)] += BigRat(row[static_cast<std::size_t>(k)] * w);
      }
      ChernVector ch = chern_from_phi(phi);
      BigRat phi2 = ch.components[2] - ch.components[1] / 2;
      CHECK(denominator(phi2) == 1);
      CHECK(phi2 == phi.components[2]);
    }
    for (std::size_t N = 0; N < t.size(); ++N) {
      ChernVector phi{ChernBasis::Phi, {}};
      for (const auto& v : t[N]) phi.components.emplace_back(v);
      ChernVector ch = chern_from_phi(phi);
      BigRat fact = 1, pw = 1;
      for (int k = 0; k <= n; ++k) {
        if (k > 0) {
          fact *= k;
          pw *= static_cast<int>(N);
        }
        CHECK(ch.components[static_cast<std::size_t>(k)] == pw / fact);
      }
    }
  }
}
