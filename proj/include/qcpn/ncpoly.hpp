#pragma once

#include "qcpn/qscalar.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

namespace qcpn {

/// One of the generators z_i or z_i^*.
struct Generator {
  int index = 0;
  bool starred = false;
};

/// Words are strings of letter codes. Starred z_i has code i, unstarred z_i
/// has code 16 + i, so normal order is ascending code order.
using Word = std::string;

inline char letter(int index, bool starred) { return static_cast<char>(starred ? index : 16 + index); }
inline Generator decode(char c) {
  int v = static_cast<unsigned char>(c);
  return v >= 16 ? Generator{v - 16, false} : Generator{v, true};
}
inline char star_letter(char c) {
  Generator g = decode(c);
  return letter(g.index, !g.starred);
}

std::string word_str(const Word& w);

/// Finite linear combination of words with QScalar coefficients.
class NCPoly {
 public:
  using Terms = std::map<Word, QScalar>;

  NCPoly() = default;
  NCPoly(const QScalar& c);  // NOLINT
  NCPoly(long long c) : NCPoly(QScalar(c)) {}  // NOLINT
  static NCPoly word(const Word& w, const QScalar& c = QScalar(1));
  static NCPoly gen(int index, bool starred = false) { return word(Word(1, letter(index, starred))); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of the empty word.
  QScalar constant() const;
  bool is_scalar() const;
  std::size_t size() const { return terms_.size(); }
  int degree() const;

  void add_term(const Word& w, const QScalar& c);
  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly& operator*=(const QScalar& c);
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(NCPoly a, const QScalar& c) { return a *= c; }
  friend NCPoly operator*(const QScalar& c, NCPoly a) { return a *= c; }
  NCPoly operator-() const;

  /// Free (unreduced) product: concatenation of words.
  NCPoly free_mul(const NCPoly& o) const;
  /// Word-reversing adjoint without renormalisation.
  NCPoly free_star() const;

  bool operator==(const NCPoly& o) const = default;

  std::string str() const;

 private:
  Terms terms_;
};

/// Presentation of A(S^{2n+1}_q) with its rewriting system.
/// Copies share the memo tables; all methods are safe to call concurrently.
class Presentation {
 public:
  explicit Presentation(int n, bool sphere_reduction = true);

  int n() const { return n_; }
  bool sphere_reduction() const { return sphere_; }

  NCPoly z(int i) const;
  NCPoly zs(int i) const;

  NCPoly normalize(const NCPoly& a) const;
  NCPoly normalize_word(const Word& w) const;
  NCPoly mul(const NCPoly& a, const NCPoly& b) const;
  NCPoly star(const NCPoly& a) const;
  NCPoly pow(const NCPoly& a, int k) const;
  bool is_normal_word(const Word& w) const;

  /// Reduce modulo the relations and report whether the result is zero.
  bool is_zero(const NCPoly& a) const { return normalize(a).is_zero(); }

 private:
  NCPoly mulgen(const Word& m, char g) const;
  NCPoly fold(const Word& prefix, const Word& letters) const;
  NCPoly sphere_step(const Word& m) const;

  struct Cache {
    std::mutex mu;
    std::unordered_map<Word, NCPoly> mulgen;
  };

  int n_;
  bool sphere_;
  std::shared_ptr<Cache> cache_;
};

/// Elements of U_q(su(n+1)) acting on the sphere algebra.
struct UqGen {
  enum class Kind { E, F, K, Kinv, KWord };
  Kind kind = Kind::K;
  int i = 1;
  /// Exponents (e_1..e_n) of prod_i K_i^{e_i} when kind == KWord.
  std::vector<int> kexp;

  static UqGen E(int i) { return {Kind::E, i, {}}; }
  static UqGen F(int i) { return {Kind::F, i, {}}; }
  static UqGen K(int i) { return {Kind::K, i, {}}; }
  static UqGen Kinv(int i) { return {Kind::Kinv, i, {}}; }
  static UqGen kword(std::vector<int> e) { return {Kind::KWord, 0, std::move(e)}; }
  /// K_{2rho}^{power/2}: exponents power * i (n - i + 1).
  static UqGen k2rho(int n, int half_power = 2);

  std::string str() const;
};

/// Exponent of s = q^{1/2} by which a K-word scales the letter c.
int kword_weight(const Presentation& P, const std::vector<int>& kexp, char c);

/// Left module-algebra action x |> a, result in normal form.
NCPoly uq_act(const UqGen& x, const NCPoly& a, const Presentation& P);

/// Substitution z_i -> 0 for i > k followed by normalisation at level k.
NCPoly pullback(const NCPoly& a, int k, const Presentation& target);

/// Parse the text grammar (rationals, q^k with k integer or half-integer,
/// z0..z9 with optional *, juxtaposition, + - * /, parentheses, ^int).
/// The result is not normalised.
NCPoly parse_expression(const std::string& text);

/// Uniformly drawn length, letters sorted into normal order; rejected until normal.
Word random_normal_word(const Presentation& P, int max_len, std::mt19937_64& rng);

struct AssociativityReport {
  int samples = 0;
  int failures = 0;
};
/// (ab)c = a(bc) = normal(abc) on random normal monomials.
AssociativityReport check_associativity(const Presentation& P, int samples, int max_len, std::uint64_t seed);

}  // namespace qcpn
