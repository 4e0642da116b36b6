#include "qcpn/ncpoly.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qcpn {

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  std::size_t k = 0;
  bool first = true;
  while (k < w.size()) {
    std::size_t run = 1;
    while (k + run < w.size() && w[k + run] == w[k]) ++run;
    Generator g = decode(w[k]);
    if (!first) os << ' ';
    os << 'z' << g.index << (g.starred ? "*" : "");
    if (run > 1) os << '^' << run;
    first = false;
    k += run;
  }
  return os.str();
}

NCPoly::NCPoly(const QScalar& c) {
  if (!c.is_zero()) terms_.emplace(Word(), c);
}

NCPoly NCPoly::word(const Word& w, const QScalar& c) {
  NCPoly p;
  p.add_term(w, c);
  return p;
}

QScalar NCPoly::constant() const {
  auto it = terms_.find(Word());
  return it == terms_.end() ? QScalar() : it->second;
}

bool NCPoly::is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

int NCPoly::degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

void NCPoly::add_term(const Word& w, const QScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPoly& NCPoly::operator*=(const QScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& [w, x] : terms_) x *= c;
  return *this;
}

NCPoly NCPoly::operator-() const {
  NCPoly r = *this;
  for (auto& [w, x] : r.terms_) x = -x;
  return r;
}

NCPoly NCPoly::free_mul(const NCPoly& o) const {
  NCPoly r;
  for (const auto& [w1, c1] : terms_) {
    for (const auto& [w2, c2] : o.terms_) r.add_term(w1 + w2, c1 * c2);
  }
  return r;
}

NCPoly NCPoly::free_star() const {
  NCPoly r;
  for (const auto& [w, c] : terms_) {
    Word s(w.rbegin(), w.rend());
    for (auto& ch : s) ch = star_letter(ch);
    r.add_term(s, c);
  }
  return r;
}

std::string NCPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    bool compound = false;
    {
      // A coefficient is compound when it has a top-level + or - after its sign.
      int depth = 0;
      for (std::size_t k = 1; k < cs.size(); ++k) {
        if (cs[k] == '(') ++depth;
        if (cs[k] == ')') --depth;
        if (depth == 0 && (cs[k] == '+' || (cs[k] == '-' && cs[k - 1] == ' '))) compound = true;
      }
    }
    if (compound) neg = false;
    std::string mag = neg ? cs.substr(1) : cs;
    if (compound) mag = "(" + cs + ")";
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (w.empty()) {
      os << mag;
    } else {
      if (mag != "1") os << mag << " ";
      os << word_str(w);
    }
    first = false;
  }
  return os.str();
}

Presentation::Presentation(int n, bool sphere_reduction)
    : n_(n), sphere_(sphere_reduction), cache_(std::make_shared<Cache>()) {
  if (n < 1 || n > 9) throw std::invalid_argument("presentation level n must be in 1..9");
}

NCPoly Presentation::z(int i) const { return NCPoly::gen(i, false); }
NCPoly Presentation::zs(int i) const { return NCPoly::gen(i, true); }

bool Presentation::is_normal_word(const Word& w) const {
  if (!std::is_sorted(w.begin(), w.end())) return false;
  for (char c : w) {
    if (decode(c).index > n_) return false;
  }
  if (sphere_ && w.find(letter(n_, true)) != Word::npos && w.find(letter(n_, false)) != Word::npos) return false;
  return true;
}

namespace {

thread_local int rewrite_depth = 0;
constexpr int kDepthBudget = 20000;

struct DepthGuard {
  DepthGuard() {
    if (++rewrite_depth > kDepthBudget) {
      --rewrite_depth;
      throw std::runtime_error("rewriting step budget exceeded");
    }
  }
  ~DepthGuard() { --rewrite_depth; }
  DepthGuard(const DepthGuard&) = delete;
  DepthGuard& operator=(const DepthGuard&) = delete;
};

}  // namespace

NCPoly Presentation::fold(const Word& prefix, const Word& letters) const {
  NCPoly cur = NCPoly::word(prefix);
  for (char c : letters) {
    NCPoly next;
    for (const auto& [w, coef] : cur.terms()) {
      NCPoly part = mulgen(w, c);
      part *= coef;
      next += part;
    }
    cur = std::move(next);
    if (cur.is_zero()) break;
  }
  return cur;
}

NCPoly Presentation::sphere_step(const Word& w) const {
  // w = (starred, ending in z_n^*) (unstarred below n) z_n
  std::size_t a = 0;
  while (a < w.size() && decode(w[a]).starred) ++a;
  Word starpart = w.substr(0, a - 1);
  Word unstar = w.substr(a, w.size() - a - 1);
  QScalar pref = QScalar::q_pow_half(-2 * static_cast<int>(unstar.size()) - 4 * n_);
  NCPoly res = NCPoly::word(starpart + unstar);
  for (int j = 0; j < n_; ++j) {
    Word tail;
    tail.push_back(letter(j, true));
    tail.push_back(letter(j, false));
    tail += unstar;
    NCPoly t = fold(starpart, tail);
    t *= QScalar::q_pow(2 * j);
    res -= t;
  }
  res *= pref;
  return res;
}

NCPoly Presentation::mulgen(const Word& m, char g) const {
  DepthGuard guard;
  Word key = m;
  key.push_back(g);
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->mulgen.find(key);
    if (it != cache_->mulgen.end()) return it->second;
  }
  NCPoly res;
  if (m.empty()) {
    res = NCPoly::word(key);
  } else {
    char last = m.back();
    if (static_cast<unsigned char>(last) <= static_cast<unsigned char>(g)) {
      if (sphere_ && g == letter(n_, false) && m.find(letter(n_, true)) != Word::npos) {
        res = sphere_step(key);
      } else {
        res = NCPoly::word(key);
      }
    } else {
      Word prefix = m.substr(0, m.size() - 1);
      Generator a = decode(last);
      Generator b = decode(g);
      Word swapped{g, last};
      if (!a.starred && !b.starred) {
        res = fold(prefix, swapped) * QScalar::q_pow(1);
      } else if (a.starred && b.starred) {
        res = fold(prefix, swapped) * QScalar::q_pow(-1);
      } else if (a.index != b.index) {
        res = fold(prefix, swapped) * QScalar::q_pow(-1);
      } else {
        res = fold(prefix, swapped);
        const QScalar c = QScalar(1) - QScalar::q_pow(2);
        for (int k = a.index + 1; k <= n_; ++k) {
          NCPoly t = fold(prefix, Word{letter(k, false), letter(k, true)});
          t *= c;
          res -= t;
        }
      }
    }
  }
  std::lock_guard lock(cache_->mu);
  cache_->mulgen.emplace(std::move(key), res);
  return res;
}

NCPoly Presentation::normalize_word(const Word& w) const {
  for (char c : w) {
    if (decode(c).index > n_) throw std::invalid_argument("generator index exceeds presentation level");
  }
  if (is_normal_word(w)) return NCPoly::word(w);
  return fold(Word(), w);
}

NCPoly Presentation::normalize(const NCPoly& a) const {
  NCPoly r;
  for (const auto& [w, c] : a.terms()) {
    if (is_normal_word(w)) {
      r.add_term(w, c);
    } else {
      NCPoly t = normalize_word(w);
      t *= c;
      r += t;
    }
  }
  return r;
}

NCPoly Presentation::mul(const NCPoly& a0, const NCPoly& b) const {
  bool normal = true;
  for (const auto& [w, c] : a0.terms()) normal = normal && is_normal_word(w);
  const NCPoly a = normal ? a0 : normalize(a0);
  NCPoly r;
  for (const auto& [w1, c1] : a.terms()) {
    for (const auto& [w2, c2] : b.terms()) {
      NCPoly t = fold(w1, w2);
      t *= c1 * c2;
      r += t;
    }
  }
  return r;
}

NCPoly Presentation::star(const NCPoly& a) const { return normalize(a.free_star()); }

NCPoly Presentation::pow(const NCPoly& a, int k) const {
  if (k < 0) throw std::invalid_argument("negative power of an algebra element");
  NCPoly r(1);
  for (int i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

UqGen UqGen::k2rho(int n, int half_power) {
  std::vector<int> e(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) e[static_cast<std::size_t>(i - 1)] = half_power * i * (n - i + 1);
  return kword(std::move(e));
}

std::string UqGen::str() const {
  switch (kind) {
    case Kind::E: return "E" + std::to_string(i);
    case Kind::F: return "F" + std::to_string(i);
    case Kind::K: return "K" + std::to_string(i);
    case Kind::Kinv: return "K" + std::to_string(i) + "^-1";
    case Kind::KWord: {
      std::string s = "K[";
      for (std::size_t k = 0; k < kexp.size(); ++k) s += (k ? "," : "") + std::to_string(kexp[k]);
      return s + "]";
    }
  }
  return "?";
}

int kword_weight(const Presentation& P, const std::vector<int>& kexp, char c) {
  const int n = P.n();
  Generator g = decode(c);
  // primed index of z_k is n + 1 - k
  int j = n + 1 - g.index;
  auto e = [&](int i) { return (i >= 1 && i <= n && static_cast<std::size_t>(i - 1) < kexp.size()) ? kexp[static_cast<std::size_t>(i - 1)] : 0; };
  int w = e(j - 1) - e(j);
  return g.starred ? -w : w;
}

namespace {

std::vector<int> unit_exp(int n, int i, int power) {
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  e[static_cast<std::size_t>(i - 1)] = power;
  return e;
}

// Action of E_i or F_i on a single letter: (coefficient, new letter) or nothing.
bool raise_letter(bool is_e, int i, int n, char c, QScalar& coef, char& out) {
  Generator g = decode(c);
  if (is_e) {
    if (!g.starred && g.index == n + 1 - i) {
      coef = QScalar(1);
      out = letter(g.index - 1, false);
      return true;
    }
    if (g.starred && g.index == n - i) {
      coef = -QScalar::q_pow(1);
      out = letter(g.index + 1, true);
      return true;
    }
  } else {
    if (!g.starred && g.index == n - i) {
      coef = QScalar(1);
      out = letter(g.index + 1, false);
      return true;
    }
    if (g.starred && g.index == n + 1 - i) {
      coef = -QScalar::q_pow(-1);
      out = letter(g.index - 1, true);
      return true;
    }
  }
  return false;
}

}  // namespace

NCPoly uq_act(const UqGen& x, const NCPoly& a, const Presentation& P) {
  const int n = P.n();
  if (x.kind != UqGen::Kind::KWord && (x.i < 1 || x.i > n)) throw std::invalid_argument("U_q generator index out of range");
  NCPoly out;
  if (x.kind == UqGen::Kind::K || x.kind == UqGen::Kind::Kinv || x.kind == UqGen::Kind::KWord) {
    std::vector<int> e = x.kind == UqGen::Kind::KWord ? x.kexp : unit_exp(n, x.i, x.kind == UqGen::Kind::K ? 1 : -1);
    for (const auto& [w, c] : a.terms()) {
      int s = 0;
      for (char ch : w) s += kword_weight(P, e, ch);
      out.add_term(w, c * QScalar::q_pow_half(s));
    }
    return out;
  }
  const bool is_e = x.kind == UqGen::Kind::E;
  const std::vector<int> e = unit_exp(n, x.i, 1);
  NCPoly raw;
  for (const auto& [w, c] : a.terms()) {
    std::vector<int> wt(w.size());
    int total = 0;
    for (std::size_t t = 0; t < w.size(); ++t) {
      wt[t] = kword_weight(P, e, w[t]);
      total += wt[t];
    }
    int before = 0;
    for (std::size_t t = 0; t < w.size(); ++t) {
      int after = total - before - wt[t];
      QScalar coef;
      char nl = 0;
      if (raise_letter(is_e, x.i, n, w[t], coef, nl)) {
        Word nw = w;
        nw[t] = nl;
        raw.add_term(nw, c * coef * QScalar::q_pow_half(after - before));
      }
      before += wt[t];
    }
  }
  return P.normalize(raw);
}

NCPoly pullback(const NCPoly& a, int k, const Presentation& target) {
  if (k != target.n()) throw std::invalid_argument("pullback target level mismatch");
  NCPoly r;
  for (const auto& [w, c] : a.terms()) {
    bool killed = false;
    for (char ch : w) {
      if (decode(ch).index > k) {
        killed = true;
        break;
      }
    }
    if (!killed) r.add_term(w, c);
  }
  return target.normalize(r);
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NCPoly parse() {
    NCPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse error at position " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool starts_atom(char c) const { return std::isdigit(static_cast<unsigned char>(c)) || c == 'q' || c == 'z' || c == '('; }

  long long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoll(s_.substr(start, pos_ - start));
  }

  long long signed_integer() {
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    long long v = integer();
    return neg ? -v : v;
  }

  NCPoly expr() {
    NCPoly r;
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    r = term();
    if (neg) r = -r;
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        r += term();
      } else if (c == '-') {
        ++pos_;
        r -= term();
      } else {
        break;
      }
    }
    return r;
  }

  NCPoly term() {
    NCPoly r = factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        r = r.free_mul(factor());
      } else if (c == '/') {
        ++pos_;
        NCPoly d = factor();
        if (!d.is_scalar() || d.is_zero()) fail("division by a non-scalar or zero");
        r *= d.constant().inverse();
      } else if (starts_atom(c)) {
        r = r.free_mul(factor());
      } else {
        break;
      }
    }
    return r;
  }

  NCPoly factor() {
    if (peek() == '-') {
      ++pos_;
      return -factor();
    }
    NCPoly base = atom();
    if (peek() == '^') {
      ++pos_;
      long long k = signed_integer();
      if (k < 0) {
        if (!base.is_scalar() || base.is_zero()) fail("negative power of a non-scalar");
        return NCPoly(base.constant().pow(static_cast<int>(k)));
      }
      NCPoly r(1);
      for (long long i = 0; i < k; ++i) r = r.free_mul(base);
      return r;
    }
    return base;
  }

  NCPoly atom() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return NCPoly(QScalar(integer()));
    if (c == '(') {
      ++pos_;
      NCPoly r = expr();
      if (peek() != ')') fail("expected )");
      ++pos_;
      return r;
    }
    if (c == 'q') {
      ++pos_;
      if (peek() != '^') return NCPoly(QScalar::q_pow(1));
      ++pos_;
      bool paren = false;
      if (peek() == '(') {
        paren = true;
        ++pos_;
      }
      long long num = signed_integer();
      long long den = 1;
      skip();
      if (pos_ + 1 < s_.size() && s_[pos_] == '/' && s_[pos_ + 1] == '2' &&
          (pos_ + 2 >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 2])))) {
        pos_ += 2;
        den = 2;
      }
      if (paren) {
        if (peek() != ')') fail("expected ) after q exponent");
        ++pos_;
      }
      return NCPoly(QScalar::q_pow_half(static_cast<int>(den == 2 ? num : 2 * num)));
    }
    if (c == 'z') {
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected generator index");
      int idx = s_[pos_] - '0';
      ++pos_;
      bool starred = false;
      if (pos_ < s_.size() && s_[pos_] == '*') {
        starred = true;
        ++pos_;
      }
      return NCPoly::gen(idx, starred);
    }
    fail("expected a number, q, z<i> or (");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

NCPoly parse_expression(const std::string& text) { return Parser(text).parse(); }

Word random_normal_word(const Presentation& P, int max_len, std::mt19937_64& rng) {
  std::vector<char> letters;
  for (int i = 0; i <= P.n(); ++i) {
    letters.push_back(letter(i, true));
    letters.push_back(letter(i, false));
  }
  std::uniform_int_distribution<int> len_dist(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  for (;;) {
    Word w;
    int len = len_dist(rng);
    for (int i = 0; i < len; ++i) w.push_back(letters[pick(rng)]);
    std::sort(w.begin(), w.end());
    if (P.is_normal_word(w)) return w;
  }
}

AssociativityReport check_associativity(const Presentation& P, int samples, int max_len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  AssociativityReport rep;
  for (int s = 0; s < samples; ++s) {
    NCPoly a = NCPoly::word(random_normal_word(P, max_len, rng));
    NCPoly b = NCPoly::word(random_normal_word(P, max_len, rng));
    NCPoly c = NCPoly::word(random_normal_word(P, max_len, rng));
    NCPoly left = P.mul(P.mul(a, b), c);
    NCPoly right = P.mul(a, P.mul(b, c));
    NCPoly direct = P.normalize(a.free_mul(b).free_mul(c));
    ++rep.samples;
    if (!(left == right) || !(left == direct)) ++rep.failures;
  }
  return rep;
}

}  // namespace qcpn
