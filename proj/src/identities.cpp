#include "qcpn/identities.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace qcpn {

QScalar laplacian_eig(int k, int N) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  QScalar pref = QScalar(1) + QScalar::q_pow(-3);
  if (N >= 0) return pref * qint(k) * qint(k + N + 2) + qint(2) * qint(N);
  return pref * qint(k + 2) * qint(k - N) + qint(2) * qint(N);
}

QScalar laplacian_gap_defect(int k, int N) {
  QScalar rhs = (QScalar(1) - QScalar::q_pow(-3)) * qint(2) * qint(N);
  return laplacian_eig(k, N) - laplacian_eig(k, -N) - rhs;
}

QScalar monopole_curvature(int N) { return QScalar::q_pow(N - 1) * qint(N); }

QScalar casimir_value(int d) {
  if (d < 0) throw std::invalid_argument("representation label must be >= 0");
  QScalar v = qint_half(d + 1);
  return v * v;
}

namespace {

BigInt memo_lookup(std::map<std::pair<int, int>, BigInt>& memo, std::mutex& mu, int k, int j,
                   BigInt (*compute)(int, int)) {
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({k, j});
    if (it != memo.end()) return it->second;
  }
  BigInt v = compute(k, j);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(std::make_pair(k, j), v);
  return v;
}

BigInt stirling2_raw(int k, int j) {
  if (k == 0 && j == 0) return 1;
  if (k == 0 || j == 0) return 0;
  return BigInt(j) * stirling2(k - 1, j) + stirling2(k - 1, j - 1);
}

BigInt stirling1_raw(int k, int j) {
  if (k == 0 && j == 0) return 1;
  if (k == 0 || j == 0) return 0;
  return stirling1(k - 1, j - 1) - BigInt(k - 1) * stirling1(k - 1, j);
}

BigInt factorial(int k) {
  BigInt r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

}  // namespace

BigInt stirling2(int k, int j) {
  if (k < 0 || j < 0) throw std::invalid_argument("Stirling arguments must be >= 0");
  if (j > k) return 0;
  static std::map<std::pair<int, int>, BigInt> memo;
  static std::mutex mu;
  return memo_lookup(memo, mu, k, j, stirling2_raw);
}

BigInt stirling1(int k, int j) {
  if (k < 0 || j < 0) throw std::invalid_argument("Stirling arguments must be >= 0");
  if (j > k) return 0;
  static std::map<std::pair<int, int>, BigInt> memo;
  static std::mutex mu;
  return memo_lookup(memo, mu, k, j, stirling1_raw);
}

ChernVector chern_from_phi(const ChernVector& phi) {
  if (phi.basis != ChernBasis::Phi) throw std::invalid_argument("expected a vector in the phi basis");
  ChernVector out{ChernBasis::Ch, {}};
  const int n = static_cast<int>(phi.components.size());
  for (int k = 0; k < n; ++k) {
    BigRat s = 0;
    for (int j = 0; j <= k; ++j) s += BigRat(stirling2(k, j) * factorial(j)) * phi.components[j];
    out.components.push_back(s / BigRat(factorial(k)));
  }
  return out;
}

ChernVector phi_from_chern(const ChernVector& ch) {
  if (ch.basis != ChernBasis::Ch) throw std::invalid_argument("expected a vector in the Ch basis");
  ChernVector out{ChernBasis::Phi, {}};
  const int n = static_cast<int>(ch.components.size());
  for (int j = 0; j < n; ++j) {
    BigRat s = 0;
    for (int i = 0; i <= j; ++i) s += BigRat(stirling1(j, i) * factorial(i)) * ch.components[i];
    out.components.push_back(s / BigRat(factorial(j)));
  }
  return out;
}

std::vector<std::vector<BigInt>> pairing_table(int n, int Nmax) {
  if (n < 0 || Nmax < 0) throw std::invalid_argument("n and Nmax must be >= 0");
  std::vector<std::vector<BigInt>> t(Nmax + 1, std::vector<BigInt>(n + 1, 0));
  for (int N = 0; N <= Nmax; ++N) {
    BigInt c = 1;
    for (int k = 0; k <= n && k <= N; ++k) {
      t[N][k] = c;
      c = c * (N - k) / (k + 1);
    }
  }
  return t;
}

}  // namespace qcpn
