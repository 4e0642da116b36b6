#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace qcpn {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Laurent polynomial in s = q^{1/2} with integer coefficients.
/// Invariant: coeffs is either empty (the zero polynomial) or has nonzero
/// first and last entries; coeffs[k] multiplies s^(low + k).
class Laurent {
 public:
  Laurent() = default;
  explicit Laurent(BigInt c, int power = 0);
  static Laurent monomial(BigInt c, int power) { return Laurent(std::move(c), power); }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return low_ == 0 && coeffs_.size() == 1 && coeffs_[0] == 1; }
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  BigInt coeff(int power) const;
  const BigInt& lead() const { return coeffs_.back(); }

  Laurent operator-() const;
  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  Laurent& scale(const BigInt& c);
  Laurent shifted(int by) const;

  BigInt content() const;
  long double eval(long double s) const;
  BigInt at_one() const;

  bool operator==(const Laurent& o) const = default;

  // Construction helpers for raw coefficient vectors (normalises zeros).
  static Laurent from(std::vector<BigInt> coeffs, int low);

 private:
  void trim();
  int low_ = 0;
  std::vector<BigInt> coeffs_;
};

/// Exact element of Q(s), s = q^{1/2}.
///
/// Canonical form: den is an ordinary polynomial with nonzero constant term
/// and positive leading coefficient; num and den share no polynomial factor
/// and no integer factor. Two equal values therefore have identical fields.
class QScalar {
 public:
  QScalar() : den_(BigInt(1)) {}
  QScalar(long long v) : num_(BigInt(v)), den_(BigInt(1)) {}  // NOLINT
  explicit QScalar(const BigRat& r);
  explicit QScalar(Laurent num) : num_(std::move(num)), den_(BigInt(1)) {}
  QScalar(Laurent num, Laurent den);

  /// c * q^(half_exp/2)
  static QScalar q_pow_half(int half_exp, long long c = 1);
  static QScalar q_pow(int exp) { return q_pow_half(2 * exp); }
  static QScalar rational(long long p, long long d);

  const Laurent& num() const { return num_; }
  const Laurent& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_laurent() const { return den_.is_one(); }

  QScalar operator-() const;
  QScalar& operator+=(const QScalar& o);
  QScalar& operator-=(const QScalar& o);
  QScalar& operator*=(const QScalar& o);
  QScalar& operator/=(const QScalar& o);
  friend QScalar operator+(QScalar a, const QScalar& b) { return a += b; }
  friend QScalar operator-(QScalar a, const QScalar& b) { return a -= b; }
  friend QScalar operator*(QScalar a, const QScalar& b) { return a *= b; }
  friend QScalar operator/(QScalar a, const QScalar& b) { return a /= b; }
  QScalar pow(int k) const;
  QScalar inverse() const;

  bool operator==(const QScalar& o) const = default;

  /// Numeric value at q = q0 > 0.
  double eval(double q0) const;
  long double eval_ld(long double q0) const;
  /// Exact value at q = 1; throws std::domain_error on a pole.
  BigRat limit_q1() const;
  /// True when every exponent of s is even, i.e. the value lies in Q(q).
  bool is_in_q() const;

  std::string str() const;

 private:
  void canonicalize();
  Laurent num_;
  Laurent den_;
};

/// q-integer [x] = (q^x - q^-x)/(q - q^-1) for x = twice_x / 2.
QScalar qint_half(int twice_x);
inline QScalar qint(int x) { return qint_half(2 * x); }
QScalar qfactorial(int k);
QScalar qmultinomial(const std::vector<int>& parts);

/// Polynomial gcd over Z (both arguments ordinary polynomials, i.e. low() >= 0),
/// primitive with positive leading coefficient.
Laurent poly_gcd(const Laurent& a, const Laurent& b);
/// Exact quotient a / b; throws if b does not divide a.
Laurent poly_divexact(const Laurent& a, const Laurent& b);

std::string to_string(const BigRat& r);

}  // namespace qcpn
