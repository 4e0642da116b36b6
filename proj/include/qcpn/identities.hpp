#pragma once

#include "qcpn/qscalar.hpp"

#include <vector>

namespace qcpn {

/// Eigenvalue lambda_{k,N} of the monopole Laplacian on CP^1_q.
QScalar laplacian_eig(int k, int N);
/// lambda_{k,N} - lambda_{k,-N} - (1 - q^-3)[2][N]; zero for N >= 0.
QScalar laplacian_gap_defect(int k, int N);
/// q^{N-1}[N].
QScalar monopole_curvature(int N);
/// [(d+1)/2]^2, the Casimir on the (d+1)-dimensional irreducible module.
QScalar casimir_value(int d);

/// Stirling numbers of the second kind {k j}.
BigInt stirling2(int k, int j);
/// Signed Stirling numbers of the first kind s(k, j).
BigInt stirling1(int k, int j);

enum class ChernBasis { Phi, Ch };

struct ChernVector {
  ChernBasis basis = ChernBasis::Phi;
  std::vector<BigRat> components;
};

/// Ch_k = (1/k!) sum_j {k j} j! phi_j.
ChernVector chern_from_phi(const ChernVector& phi);
/// phi_j = (1/j!) sum_i s(j,i) i! Ch_i.
ChernVector phi_from_chern(const ChernVector& ch);

/// Rows N = 0..Nmax, columns k = 0..n: binomial(N, k).
std::vector<std::vector<BigInt>> pairing_table(int n, int Nmax);

}  // namespace qcpn
