#include "qcpn/qscalar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcpn {

namespace mp = boost::multiprecision;

Laurent::Laurent(BigInt c, int power) {
  if (c != 0) {
    low_ = power;
    coeffs_.push_back(std::move(c));
  }
}

Laurent Laurent::from(std::vector<BigInt> coeffs, int low) {
  Laurent r;
  r.coeffs_ = std::move(coeffs);
  r.low_ = low;
  r.trim();
  return r;
}

void Laurent::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  std::size_t first = 0;
  while (first < coeffs_.size() && coeffs_[first] == 0) ++first;
  if (first == coeffs_.size()) {
    coeffs_.clear();
    low_ = 0;
    return;
  }
  if (first > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(first));
    low_ += static_cast<int>(first);
  }
}

BigInt Laurent::coeff(int power) const {
  if (is_zero() || power < low_ || power > high()) return 0;
  return coeffs_[static_cast<std::size_t>(power - low_)];
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  int lo = std::min(low_, o.low_);
  int hi = std::max(high(), o.high());
  if (lo < low_) {
    coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - lo), BigInt(0));
    low_ = lo;
  }
  coeffs_.resize(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
    coeffs_[static_cast<std::size_t>(o.low_ - low_) + k] += o.coeffs_[k];
  }
  trim();
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += -o; }

Laurent operator*(const Laurent& a, const Laurent& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Laurent::from(std::move(out), a.low_ + b.low_);
}

Laurent& Laurent::scale(const BigInt& c) {
  if (c == 0) {
    coeffs_.clear();
    low_ = 0;
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

Laurent Laurent::shifted(int by) const {
  Laurent r = *this;
  if (!r.is_zero()) r.low_ += by;
  return r;
}

BigInt Laurent::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) {
    g = mp::gcd(g, c);
    if (g == 1) break;
  }
  return g;
}

long double Laurent::eval(long double s) const {
  long double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + it->convert_to<long double>();
  return acc * std::pow(s, static_cast<long double>(low_));
}

BigInt Laurent::at_one() const {
  BigInt acc = 0;
  for (const auto& c : coeffs_) acc += c;
  return acc;
}

namespace {

int degree(const Laurent& p) { return p.high(); }

Laurent primitive(const Laurent& p) {
  if (p.is_zero()) return p;
  BigInt c = p.content();
  if (p.lead() < 0) c = -c;
  std::vector<BigInt> out = p.coeffs();
  for (auto& x : out) x /= c;
  return Laurent::from(std::move(out), p.low());
}

// Pseudo-remainder of a by b, both ordinary polynomials.
Laurent prem(Laurent a, const Laurent& b) {
  const int db = degree(b);
  const BigInt& lb = b.lead();
  while (!a.is_zero() && degree(a) >= db) {
    BigInt la = a.lead();
    Laurent t = b;
    t.scale(la);
    a.scale(lb);
    a -= t.shifted(degree(a) - db);
  }
  return a;
}

// Make an ordinary polynomial out of a Laurent one by dropping the s-power.
Laurent unshift(const Laurent& p) { return p.shifted(-p.low()); }

}  // namespace

Laurent poly_gcd(const Laurent& a0, const Laurent& b0) {
  if (a0.is_zero()) return primitive(b0);
  if (b0.is_zero()) return primitive(a0);
  Laurent a = primitive(a0);
  Laurent b = primitive(b0);
  if (degree(a) < degree(b)) std::swap(a, b);
  while (!b.is_zero()) {
    Laurent r = prem(a, b);
    a = std::move(b);
    b = primitive(r);
  }
  return primitive(a);
}

Laurent poly_divexact(const Laurent& a, const Laurent& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  if (a.is_zero()) return {};
  std::vector<BigInt> rem = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t nb = bc.size();
  if (rem.size() < nb) throw std::domain_error("inexact polynomial division");
  std::vector<BigInt> quot(rem.size() - nb + 1);
  for (std::size_t k = quot.size(); k-- > 0;) {
    BigInt top = rem[k + nb - 1];
    if (top == 0) continue;
    BigInt qk;
    BigInt r;
    mp::divide_qr(top, bc.back(), qk, r);
    if (r != 0) throw std::domain_error("inexact polynomial division");
    quot[k] = qk;
    for (std::size_t j = 0; j < nb; ++j) rem[k + j] -= qk * bc[j];
  }
  for (const auto& x : rem) {
    if (x != 0) throw std::domain_error("inexact polynomial division");
  }
  return Laurent::from(std::move(quot), a.low() - b.low());
}

QScalar::QScalar(const BigRat& r)
    : num_(mp::numerator(r)), den_(mp::denominator(r)) {
  canonicalize();
}

QScalar::QScalar(Laurent num, Laurent den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("QScalar with zero denominator");
  canonicalize();
}

QScalar QScalar::q_pow_half(int half_exp, long long c) {
  QScalar r;
  r.num_ = Laurent(BigInt(c), half_exp);
  return r;
}

QScalar QScalar::rational(long long p, long long d) { return QScalar(BigRat(p, d)); }

void QScalar::canonicalize() {
  if (num_.is_zero()) {
    den_ = Laurent(BigInt(1));
    return;
  }
  // Move the s-power of the denominator to the numerator.
  int shift = num_.low() - den_.low();
  Laurent n = unshift(num_);
  Laurent d = unshift(den_);
  if (d.coeffs().size() > 1) {
    Laurent g = poly_gcd(n, d);
    if (g.coeffs().size() > 1) {
      n = poly_divexact(n, g);
      d = poly_divexact(d, g);
    }
  }
  BigInt c = mp::gcd(n.content(), d.content());
  if (d.lead() < 0) c = -c;
  if (c != 1) {
    std::vector<BigInt> nc = n.coeffs();
    for (auto& x : nc) x /= c;
    std::vector<BigInt> dc = d.coeffs();
    for (auto& x : dc) x /= c;
    n = Laurent::from(std::move(nc), 0);
    d = Laurent::from(std::move(dc), 0);
  }
  num_ = n.shifted(shift);
  den_ = std::move(d);
}

QScalar QScalar::operator-() const {
  QScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

QScalar& QScalar::operator+=(const QScalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (is_laurent() && o.is_laurent()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  canonicalize();
  return *this;
}

QScalar& QScalar::operator-=(const QScalar& o) { return *this += -o; }

QScalar& QScalar::operator*=(const QScalar& o) {
  if (is_zero() || o.is_zero()) return *this = QScalar();
  num_ = num_ * o.num_;
  if (!(is_laurent() && o.is_laurent())) {
    den_ = den_ * o.den_;
    canonicalize();
  }
  return *this;
}

QScalar QScalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  return QScalar(den_, num_);
}

QScalar& QScalar::operator/=(const QScalar& o) { return *this *= o.inverse(); }

QScalar QScalar::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  QScalar r(1);
  QScalar b = *this;
  while (k > 0) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

long double QScalar::eval_ld(long double q0) const {
  long double s = std::sqrt(q0);
  return num_.eval(s) / den_.eval(s);
}

double QScalar::eval(double q0) const { return static_cast<double>(eval_ld(q0)); }

BigRat QScalar::limit_q1() const {
  BigInt d = den_.at_one();
  if (d == 0) throw std::domain_error("pole at q = 1");
  return BigRat(num_.at_one(), d);
}

bool QScalar::is_in_q() const {
  auto even = [](const Laurent& p) {
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
      if (p.coeffs()[k] != 0 && ((p.low() + static_cast<int>(k)) % 2) != 0) return false;
    }
    return true;
  };
  return even(num_) && even(den_);
}

namespace {

std::string q_power(int half) {
  if (half == 0) return "";
  if (half == 2) return "q";
  if (half % 2 == 0) return "q^" + std::to_string(half / 2);
  return "q^" + std::to_string(half) + "/2";
}

std::string laurent_str(const Laurent& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int e = p.high(); e >= p.low(); --e) {
    BigInt c = p.coeff(e);
    if (c == 0) continue;
    bool neg = c < 0;
    BigInt a = neg ? BigInt(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    std::string qp = q_power(e);
    if (qp.empty()) {
      os << a;
    } else {
      if (a != 1) os << a << " ";
      os << qp;
    }
    first = false;
  }
  return os.str();
}

bool single_term(const Laurent& p) { return p.coeffs().size() == 1; }

}  // namespace

std::string QScalar::str() const {
  std::string n = laurent_str(num_);
  if (den_.is_one()) return n;
  std::string d = laurent_str(den_);
  if (!single_term(num_)) n = "(" + n + ")";
  if (!single_term(den_)) d = "(" + d + ")";
  return n + "/" + d;
}

QScalar qint_half(int twice_x) {
  if (twice_x == 0) return {};
  if (twice_x % 2 == 0) {
    int x = twice_x / 2;
    int sign = x < 0 ? -1 : 1;
    int ax = x < 0 ? -x : x;
    std::vector<BigInt> c(static_cast<std::size_t>(4 * (ax - 1) + 1));
    for (int k = 0; k < ax; ++k) c[static_cast<std::size_t>(4 * k)] = sign;
    return QScalar(Laurent::from(std::move(c), -2 * (ax - 1)));
  }
  // (s^{2x} - s^{-2x}) / (s^2 - s^{-2}) with 2x = twice_x odd
  Laurent num = Laurent(BigInt(1), twice_x) - Laurent(BigInt(1), -twice_x);
  Laurent den = Laurent(BigInt(1), 2) - Laurent(BigInt(1), -2);
  return QScalar(num, den);
}

QScalar qfactorial(int k) {
  if (k < 0) throw std::domain_error("q-factorial of a negative integer");
  QScalar r(1);
  for (int i = 2; i <= k; ++i) r *= qint(i);
  return r;
}

QScalar qmultinomial(const std::vector<int>& parts) {
  int total = 0;
  for (int p : parts) {
    if (p < 0) throw std::domain_error("negative part in q-multinomial");
    total += p;
  }
  Laurent num = qfactorial(total).num();
  for (int p : parts) {
    if (p > 1) num = poly_divexact(num, qfactorial(p).num());
  }
  return QScalar(num);
}

std::string to_string(const BigRat& r) {
  std::ostringstream os;
  os << mp::numerator(r);
  if (mp::denominator(r) != 1) os << "/" << mp::denominator(r);
  return os.str();
}

}  // namespace qcpn
