#pragma once

#include "qcpn/ncpoly.hpp"
#include "qcpn/sparse.hpp"

#include <vector>

namespace qcpn {

/// Representation pi_{n,k} truncated to the box 0 <= m_i <= M.
struct RepSpec {
  int n = 1;
  int k = 1;
  int M = 20;
  double q0 = 0.5;

  /// Validates 0 <= k <= n, M >= 1 and 0 < q0 <= 1; throws std::invalid_argument.
  void validate() const;
  std::size_t box_size() const;
  /// Box enumeration: m_1 varies fastest.
  std::vector<int> state(std::size_t index) const;
  std::size_t index(const std::vector<int>& m) const;
  /// Membership in V^n_k.
  bool in_subspace(const std::vector<int>& m) const;
  /// Indices whose entries are all <= M - margin.
  std::vector<std::size_t> interior(int margin) const;
};

/// Result of applying one generator to a basis vector: coefficient and target.
/// A zero coefficient means the image vanishes.
struct BasisImage {
  long double coeff = 0;
  std::vector<int> m;
};

/// pi_{n,k}(z_i) or its adjoint on |m>, without truncation.
BasisImage rep_apply(const RepSpec& spec, int i, bool starred, const std::vector<int>& m);

SparseOperator rep_generator(const RepSpec& spec, int i, bool starred);
/// Multiplicative extension; constants act as multiples of the projection onto V^n_k.
SparseOperator rep_poly(const NCPoly& a, const RepSpec& spec);
/// <m| pi(a) |m> computed exactly by following each word along its path.
long double rep_diagonal(const NCPoly& a, const RepSpec& spec, const std::vector<int>& m);

/// Largest |entry| of op restricted to rows and columns in the window.
double window_norm(const SparseOperator& op, const std::vector<std::size_t>& window, std::size_t size);

/// Two-letter relations w - normal(w) together with sum_j z_j z_j^* - 1.
std::vector<NCPoly> sphere_relations(const Presentation& P);

struct PairingResult {
  double value = 0;
  /// Estimated contribution of the states outside the box.
  double tail = 0;
  /// Binomial(N, k).
  long long target = 0;
  std::size_t states = 0;
};

/// <[F_k], [P_{-N}]> at level n, truncated to m_i <= M.
PairingResult fredholm_pairing(int N, int k, int n, int M, double q0);

}  // namespace qcpn
