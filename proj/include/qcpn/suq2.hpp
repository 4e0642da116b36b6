#pragma once

#include "qcpn/ncpoly.hpp"
#include "qcpn/sparse.hpp"

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

namespace qcpn {

/// Basis label |l,m,n> stored as twice the half-integers.
struct Lmn {
  int l2 = 0;
  int m2 = 0;
  int n2 = 0;
  bool operator==(const Lmn&) const = default;
};

/// q-number [x] at a numeric point; x may be a half-integer.
long double qnum(long double x, long double q0);

enum class LeftGen { Alpha, Beta, AlphaStar, BetaStar, A, B, BStar };

/// Left regular representation of A(SU_q(2)) truncated to l <= L.
/// Generators z0, z1 of the n = 1 sphere algebra act as alpha, beta.
class LeftRegular {
 public:
  /// L2 = 2L.
  LeftRegular(int L2, double q0);

  int L2() const { return L2_; }
  double q0() const { return q0_; }
  std::size_t size() const { return basis_.size(); }
  const std::vector<Lmn>& basis() const { return basis_; }
  /// -1 when outside the truncation or not admissible.
  long index(const Lmn& b) const;

  const SparseOperator& op(LeftGen g) const;
  const SparseOperator& alpha() const { return op(LeftGen::Alpha); }
  const SparseOperator& beta() const { return op(LeftGen::Beta); }
  const SparseOperator& A() const { return op(LeftGen::A); }
  const SparseOperator& B() const { return op(LeftGen::B); }

  const SparseOperator& LE() const { return le_; }
  const SparseOperator& LF() const { return lf_; }
  const SparseOperator& LK() const { return lk_; }
  /// Matrix of the antilinear map a -> a^* on the basis (real coefficients).
  const SparseOperator& star_map() const { return star_; }

  Eigen::VectorXd vacuum() const;
  /// pi(a) v for a at level 1; words act right to left.
  Eigen::VectorXd apply(const NCPoly& a, const Eigen::VectorXd& v) const;
  SparseOperator rep(const NCPoly& a) const;
  /// Indices with l <= L - margin.
  std::vector<std::size_t> interior(int margin) const;

 private:
  int L2_;
  double q0_;
  std::vector<Lmn> basis_;
  std::map<LeftGen, SparseOperator> gens_;
  SparseOperator le_, lf_, lk_, star_;
};

/// Vacuum expectation <0,0,0| pi(a) |0,0,0>.
double haar(const LeftRegular& reg, const NCPoly& a);
/// |h(ab) - h(eta(b) a)| with eta = K_{2rho}^{-1} |>, at q0. Truncation chosen from the degrees.
double modular_check(const NCPoly& a, const NCPoly& b, double q0);

enum class LAct { E, F, K, Kinv };
/// Symbolic L_x on level-1 polynomials using the module rule with the
/// coproduct E (x) K^{-1} + K (x) E on generators.
NCPoly laction_poly(LAct x, const NCPoly& a, const Presentation& P);

/// Hilbert space H_j = sum_{n=-j..j} W_n with D_j, gamma_j and J_j.
struct SpectralTriple {
  int j2 = 1;
  int L2 = 24;
  double q0 = 0.5;
  std::vector<Lmn> basis;
  SparseOperator D;
  SparseOperator gamma;
  /// Real-linear part of J_j; J_j = J_linear composed with complex conjugation.
  SparseOperator J_linear;
  bool J_conjugates = true;

  long index(const Lmn& b) const;
  /// Restriction of an n-preserving left-regular operator to H_j.
  SparseOperator restrict(const SparseOperator& full, const LeftRegular& reg) const;
  /// Indices with l <= L - margin.
  std::vector<std::size_t> interior(int margin) const;
};

/// Requires L >= j + 2 (L2 >= j2 + 4); throws std::invalid_argument.
SpectralTriple build_triple(int j2, int L2, double q0);

struct Residual {
  std::string name;
  double value = 0;
};
/// Interior-window residuals of the real even spectral triple axioms.
std::vector<Residual> triple_axiom_suite(int j2, int L2, double q0);

struct SpectrumReport {
  /// Largest deviation between D_j^2 eigenvalues and the q-integer products.
  double d2_error = 0;
  /// Largest deviation of the Casimir blocks from [l+1/2]^2.
  double casimir_error = 0;
  std::size_t sectors = 0;
  /// Sorted eigenvalues of |D_j| on the truncated space.
  std::vector<double> abs_eigenvalues;
};
SpectrumReport spectrum(int j2, int L2, double q0);

/// Exact sector-by-sector index of p D_j^+ p.
int index_analytic(int j2);
/// Closed-form branches (j^2 - 9/4)/2 and (j^2 - 1/4)/2 claimed for the index.
int index_branch_formula(int j2);

struct IndexNumeric {
  int value = 0;
  int kernel = 0;
  int cokernel = 0;
  /// Some rank or projection decision fell within the ambiguity band.
  bool unstable = false;
  /// Sectors beyond l = j + 1/2 contributed nothing.
  bool tail_zero = true;
};
/// Requires L >= 2j + 3 (L2 >= 2 j2 + 6).
IndexNumeric index_numeric(int j2, int L2, double q0, double tol = 1e-8);

/// <(i,k),(i',k')> = (k i' - i k') Index(p D_j^+ p).
long long poincare_pairing(long long i, long long k, long long i2, long long k2, int j2);

struct HoloResult {
  int dim = 0;
  bool truncation_safe = true;
};
/// Kernel dimension of a <| F = -q^{-1} L_F a on Gamma_N truncated at L.
HoloResult holo_dim(int N, int L2, double q0, double tol = 1e-9);

struct Tau1Result {
  double value = 0;
  /// Same quantity with L raised by 4.
  double value_larger = 0;
  double target = 0;
};
/// <[tau_1], [(P'_N, sigma^N)]> at n = 1 via the Haar state in the left regular representation.
Tau1Result tau1_pairing(int N, int L2, double q0);

}  // namespace qcpn
