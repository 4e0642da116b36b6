#pragma once

#include "qcpn/ncpoly.hpp"

#include <vector>

namespace qcpn {

using MultiIndex = std::vector<int>;

/// All (j_0..j_n) with sum `total`, in colexicographic order.
std::vector<MultiIndex> multi_indices(int total, int n);

/// Vector with components sqrt(radicand[J]) * core[J].
///
/// The q-multinomial square roots of Psi_N are kept symbolic as radicands so
/// that every identity below is checked over Q(q^{1/2}).
struct AlgebraVector {
  int N = 0;
  int n = 1;
  std::vector<MultiIndex> index;
  std::vector<QScalar> radicand;
  std::vector<NCPoly> core;

  std::size_t size() const { return core.size(); }
};

/// Square matrix with entries sqrt(row_rad[i] * col_rad[j]) * core[i][j].
struct AlgebraMatrix {
  std::vector<QScalar> row_rad;
  std::vector<QScalar> col_rad;
  std::vector<std::vector<NCPoly>> core;

  std::size_t size() const { return core.size(); }
  bool operator==(const AlgebraMatrix& o) const = default;
};

using QMatrix = std::vector<std::vector<QScalar>>;
QMatrix qmatrix_identity(std::size_t d);
QMatrix qmatrix_mul(const QMatrix& a, const QMatrix& b);
QMatrix qmatrix_transpose(const QMatrix& a);
QMatrix qmatrix_scale(const QMatrix& a, const QScalar& c);
QMatrix qmatrix_add(const QMatrix& a, const QMatrix& b);
bool qmatrix_is_zero(const QMatrix& a);

AlgebraVector psi(int N, const Presentation& P);
/// Sum_J radicand_J * core_J^* core_J, normalised.
NCPoly psi_norm(const AlgebraVector& v, const Presentation& P);

AlgebraMatrix projection(int N, const Presentation& P);
AlgebraMatrix matrix_mul(const AlgebraMatrix& a, const AlgebraMatrix& b, const Presentation& P);
AlgebraMatrix matrix_adjoint(const AlgebraMatrix& a, const Presentation& P);
/// sum_i q^{2i} M_ii; requires row and column radicands to agree.
NCPoly qtrace(const AlgebraMatrix& m, const Presentation& P);

/// Diagonal weights R_N = sigma^N(K_{2rho}^{1/2})^t on the Psi_N basis.
std::vector<QScalar> weight_matrix(int N, int n);
/// Diagonal q^{1/2 sum_i (n-2i) j_i} for every sign of N.
std::vector<QScalar> weight_matrix_unsigned(int N, int n);

/// Representation on the span of Psi_N. With D = diag(sqrt(radicand)) and
/// R = weight_matrix, the matrix of x is R^{-1} D^{-1} core(x) D R, so that
/// x |> R Psi = sigma(x)^t R Psi.
struct UqMatrixRep {
  int N = 0;
  int n = 1;
  std::vector<QScalar> radicand;
  std::vector<QScalar> weights;

  /// Exact matrix of x acting on the core monomials.
  QMatrix core(const UqGen& x, const Presentation& P) const;
  /// Numeric sigma^N(x) at q = q0.
  std::vector<std::vector<double>> numeric(const UqGen& x, const Presentation& P, double q0) const;
  std::size_t dim() const { return radicand.size(); }
};

UqMatrixRep sigma_rep(int N, const Presentation& P);

/// Residual of (x_(1) |> P') sigma(x_(2))^t - sigma(x)^t P' with P' = R P_N R^{-1},
/// conjugated by diag(sqrt(radicand)) so that it is exact. It vanishes iff the
/// untransformed residual does.
std::vector<std::vector<NCPoly>> check_equivariance(int N, const UqGen& x, const Presentation& P);
/// Same identity for P' = A P_N A^{-1} and sigma = B sigma~ B^{-1} with diagonal A, B.
std::vector<std::vector<NCPoly>> check_equivariance_gauge(int N, const UqGen& x, const Presentation& P,
                                                          const std::vector<QScalar>& A,
                                                          const std::vector<QScalar>& B);
bool is_zero_matrix(const std::vector<std::vector<NCPoly>>& m);

/// Exact checks used by the acceptance suite and the CLI.
struct ProjectionReport {
  bool psi_normalised = false;
  bool idempotent = false;
  bool selfadjoint = false;
};
ProjectionReport check_projection(int N, const Presentation& P);

/// KEK^{-1} = qE and [E,F] = (K^2 - K^-2)/(q - q^-1) for each i (exact).
bool check_sigma_relations(int N, const Presentation& P);
/// R^2 sigma(S(x))^t R^-2 = sigma(S^{-1}(x))^t for each generator (exact).
bool check_antipode_conjugation(int N, const Presentation& P);

}  // namespace qcpn
