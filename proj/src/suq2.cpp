#include "qcpn/suq2.hpp"

#include "qcpn/parallel.hpp"
#include "qcpn/projections.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace qcpn {

long double qnum(long double x, long double q0) {
  if (q0 == 1.0L) return x;
  return (std::pow(q0, x) - std::pow(q0, -x)) / (q0 - 1.0L / q0);
}

namespace {

using Trips = std::vector<Eigen::Triplet<double>>;

long double sqrt0(long double x) { return x > 0 ? std::sqrt(x) : 0.0L; }

SparseOperator from_trips(std::size_t rows, std::size_t cols, const Trips& t) {
  SparseOperator op(static_cast<int>(rows), static_cast<int>(cols));
  op.setFromTriplets(t.begin(), t.end());
  return op;
}

bool admissible(const Lmn& b) {
  return b.l2 >= 0 && std::abs(b.m2) <= b.l2 && std::abs(b.n2) <= b.l2 && (b.l2 - b.m2) % 2 == 0 &&
         (b.l2 - b.n2) % 2 == 0;
}

}  // namespace

LeftRegular::LeftRegular(int L2, double q0) : L2_(L2), q0_(q0) {
  if (L2 < 0) throw std::invalid_argument("truncation L must be >= 0");
  if (!(q0 > 0 && q0 <= 1)) throw std::invalid_argument("q0 must lie in (0,1]");
  for (int l2 = 0; l2 <= L2; ++l2)
    for (int m2 = -l2; m2 <= l2; m2 += 2)
      for (int n2 = -l2; n2 <= l2; n2 += 2) basis_.push_back({l2, m2, n2});

  const long double q = q0;
  auto Q = [&](long double x) { return qnum(x, q); };
  Trips ta, tb, tA, tB, te, tf, tk, ts;
  auto add = [&](Trips& t, std::size_t src, Lmn dst, long double c) {
    if (c == 0 || !admissible(dst)) return;
    long di = index(dst);
    if (di < 0) return;
    t.emplace_back(static_cast<int>(di), static_cast<int>(src), static_cast<double>(c));
  };

  for (std::size_t s = 0; s < basis_.size(); ++s) {
    const Lmn b = basis_[s];
    const long double l = b.l2 / 2.0L, m = b.m2 / 2.0L, n = b.n2 / 2.0L;

    add(ta, s, {b.l2 + 1, b.m2 + 1, b.n2 + 1},
        std::pow(q, -l + (m + n - 1) / 2) * sqrt0(Q(l + m + 1) * Q(l + n + 1) / (Q(2 * l + 1) * Q(2 * l + 2))));
    if (b.l2 > 0)
      add(ta, s, {b.l2 - 1, b.m2 + 1, b.n2 + 1},
          std::pow(q, l + (m + n + 1) / 2) * sqrt0(Q(l - m) * Q(l - n) / (Q(2 * l) * Q(2 * l + 1))));

    add(tb, s, {b.l2 + 1, b.m2 - 1, b.n2 + 1},
        std::pow(q, (m + n - 1) / 2) * sqrt0(Q(l - m + 1) * Q(l + n + 1) / (Q(2 * l + 1) * Q(2 * l + 2))));
    if (b.l2 > 0)
      add(tb, s, {b.l2 - 1, b.m2 - 1, b.n2 + 1},
          -std::pow(q, (m + n - 1) / 2) * sqrt0(Q(l + m) * Q(l - n) / (Q(2 * l) * Q(2 * l + 1))));

    const long double w = std::pow(q, m + n - 1);
    add(tA, s, {b.l2 + 2, b.m2, b.n2},
        -w / Q(2 * l + 2) *
            sqrt0(Q(l + m + 1) * Q(l - m + 1) * Q(l + n + 1) * Q(l - n + 1) / (Q(2 * l + 1) * Q(2 * l + 3))));
    long double diag = Q(l - m + 1) * Q(l + n + 1) / (Q(2 * l + 1) * Q(2 * l + 2));
    if (b.l2 > 0) diag += Q(l + m) * Q(l - n) / (Q(2 * l) * Q(2 * l + 1));
    add(tA, s, b, w * diag);
    if (b.l2 >= 2)
      add(tA, s, {b.l2 - 2, b.m2, b.n2},
          -w / Q(2 * l) * sqrt0(Q(l + m) * Q(l - m) * Q(l + n) * Q(l - n) / (Q(2 * l - 1) * Q(2 * l + 1))));

    add(tB, s, {b.l2 + 2, b.m2 + 2, b.n2},
        -std::pow(q, -l + m + n - 0.5L) / Q(2 * l + 2) *
            sqrt0(Q(l + m + 1) * Q(l + m + 2) * Q(l + n + 1) * Q(l - n + 1) / (Q(2 * l + 1) * Q(2 * l + 3))));
    if (b.l2 > 0)
      add(tB, s, {b.l2, b.m2 + 2, b.n2},
          std::pow(q, m + n) * sqrt0(Q(l + m + 1) * Q(l - m)) / Q(2 * l + 1) *
              (std::pow(q, -l - 0.5L) * Q(l + n + 1) / Q(2 * l + 2) - std::pow(q, l + 0.5L) * Q(l - n) / Q(2 * l)));
    if (b.l2 >= 2)
      add(tB, s, {b.l2 - 2, b.m2 + 2, b.n2},
          std::pow(q, l + m + n + 0.5L) / Q(2 * l) *
              sqrt0(Q(l - m) * Q(l - m - 1) * Q(l + n) * Q(l - n) / (Q(2 * l - 1) * Q(2 * l + 1))));

    tk.emplace_back(static_cast<int>(s), static_cast<int>(s), static_cast<double>(std::pow(q, -n)));
    add(tf, s, {b.l2, b.m2, b.n2 + 2}, sqrt0(Q(l - n) * Q(l + n + 1)));
    add(te, s, {b.l2, b.m2, b.n2 - 2}, sqrt0(Q(l - n + 1) * Q(l + n)));
    long double sign = ((b.n2 - b.m2) / 2) % 2 == 0 ? 1.0L : -1.0L;
    add(ts, s, {b.l2, -b.m2, -b.n2}, sign * std::pow(q, m + n));
  }
  const std::size_t d = basis_.size();
  gens_[LeftGen::Alpha] = from_trips(d, d, ta);
  gens_[LeftGen::Beta] = from_trips(d, d, tb);
  gens_[LeftGen::AlphaStar] = SparseOperator(gens_[LeftGen::Alpha].transpose());
  gens_[LeftGen::BetaStar] = SparseOperator(gens_[LeftGen::Beta].transpose());
  gens_[LeftGen::A] = from_trips(d, d, tA);
  gens_[LeftGen::B] = from_trips(d, d, tB);
  gens_[LeftGen::BStar] = SparseOperator(gens_[LeftGen::B].transpose());
  le_ = from_trips(d, d, te);
  lf_ = from_trips(d, d, tf);
  lk_ = from_trips(d, d, tk);
  star_ = from_trips(d, d, ts);
}

long LeftRegular::index(const Lmn& b) const {
  if (!admissible(b) || b.l2 > L2_) return -1;
  long l2 = b.l2;
  long offset = l2 * (l2 + 1) * (2 * l2 + 1) / 6;
  return offset + ((b.m2 + l2) / 2) * (l2 + 1) + (b.n2 + l2) / 2;
}

const SparseOperator& LeftRegular::op(LeftGen g) const { return gens_.at(g); }

Eigen::VectorXd LeftRegular::vacuum() const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size()));
  v[0] = 1;
  return v;
}

namespace {

const SparseOperator& letter_op(const LeftRegular& reg, char c) {
  Generator g = decode(c);
  if (g.index > 1) throw std::invalid_argument("left regular representation needs level n = 1");
  if (g.index == 0) return reg.op(g.starred ? LeftGen::AlphaStar : LeftGen::Alpha);
  return reg.op(g.starred ? LeftGen::BetaStar : LeftGen::Beta);
}

}  // namespace

Eigen::VectorXd LeftRegular::apply(const NCPoly& a, const Eigen::VectorXd& v) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  for (const auto& [w, c] : a.terms()) {
    Eigen::VectorXd cur = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it) cur = letter_op(*this, *it) * cur;
    out += static_cast<double>(c.eval_ld(q0_)) * cur;
  }
  return out;
}

SparseOperator LeftRegular::rep(const NCPoly& a) const {
  const int d = static_cast<int>(size());
  SparseOperator out(d, d);
  SparseOperator id(d, d);
  id.setIdentity();
  for (const auto& [w, c] : a.terms()) {
    SparseOperator term = id;
    for (char ch : w) term = SparseOperator(term * letter_op(*this, ch));
    out += static_cast<double>(c.eval_ld(q0_)) * term;
  }
  return out;
}

std::vector<std::size_t> LeftRegular::interior(int margin) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].l2 <= L2_ - 2 * margin) out.push_back(i);
  return out;
}

double haar(const LeftRegular& reg, const NCPoly& a) {
  if (a.degree() > reg.L2()) throw std::invalid_argument("truncation too small for the Haar state of this element");
  Eigen::VectorXd v = reg.apply(a, reg.vacuum());
  return v[0];
}

double modular_check(const NCPoly& a, const NCPoly& b, double q0) {
  Presentation P(1);
  NCPoly eta_b = uq_act(UqGen::k2rho(1, -2), b, P);
  NCPoly lhs = a.free_mul(b);
  NCPoly rhs = eta_b.free_mul(a);
  int deg = std::max({lhs.degree(), rhs.degree(), 0});
  LeftRegular reg(deg + 2, q0);
  return std::abs(haar(reg, lhs) - haar(reg, rhs));
}

namespace {

// s-exponent of L_K on a letter.
int lk_weight(char c) { return decode(c).starred ? 1 : -1; }

NCPoly letter_image(LAct x, char c) {
  Generator g = decode(c);
  if (g.index > 1) throw std::invalid_argument("L action is defined at level n = 1");
  if (x == LAct::F) {
    if (!g.starred) return NCPoly();
    return g.index == 0 ? NCPoly::gen(1, false) * QScalar::q_pow(1) : -NCPoly::gen(0, false);
  }
  if (g.starred) return NCPoly();
  return g.index == 0 ? -NCPoly::gen(1, true) : NCPoly::gen(0, true) * QScalar::q_pow(-1);
}

}  // namespace

NCPoly laction_poly(LAct x, const NCPoly& a, const Presentation& P) {
  if (P.n() != 1) throw std::invalid_argument("L action is defined at level n = 1");
  NCPoly out;
  for (const auto& [w, c] : a.terms()) {
    if (x == LAct::K || x == LAct::Kinv) {
      int s = 0;
      for (char ch : w) s += lk_weight(ch);
      out.add_term(w, c * QScalar::q_pow_half(x == LAct::K ? s : -s));
      continue;
    }
    int total = 0;
    for (char ch : w) total += lk_weight(ch);
    int before = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int here = lk_weight(w[i]);
      int after = total - before - here;
      NCPoly img = letter_image(x, w[i]);
      // prefix gets L_K, suffix gets L_{K^{-1}}
      QScalar factor = c * QScalar::q_pow_half(before - after);
      for (const auto& [iw, ic] : img.terms())
        out.add_term(w.substr(0, i) + iw + w.substr(i + 1), factor * ic);
      before += here;
    }
  }
  return P.normalize(out);
}

long SpectralTriple::index(const Lmn& b) const {
  auto it = std::find(basis.begin(), basis.end(), b);
  return it == basis.end() ? -1 : static_cast<long>(it - basis.begin());
}

namespace {

long long triple_key(const Lmn& b) { return (static_cast<long long>(b.l2) * 4096 + b.m2 + 2048) * 4096 + b.n2 + 2048; }

}  // namespace

SparseOperator SpectralTriple::restrict(const SparseOperator& full, const LeftRegular& reg) const {
  if (reg.L2() != L2) throw std::invalid_argument("truncations differ");
  std::vector<long> local(reg.size(), -1);
  std::vector<long> global(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    global[i] = reg.index(basis[i]);
    local[static_cast<std::size_t>(global[i])] = static_cast<long>(i);
  }
  Trips t;
  for (std::size_t r = 0; r < basis.size(); ++r) {
    for (SparseOperator::InnerIterator it(full, static_cast<int>(global[r])); it; ++it) {
      long c = local[static_cast<std::size_t>(it.col())];
      if (c >= 0) t.emplace_back(static_cast<int>(r), static_cast<int>(c), it.value());
    }
  }
  return from_trips(basis.size(), basis.size(), t);
}

std::vector<std::size_t> SpectralTriple::interior(int margin) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].l2 <= L2 - 2 * margin) out.push_back(i);
  return out;
}

SpectralTriple build_triple(int j2, int L2, double q0) {
  if (j2 < 1 || j2 % 2 == 0) throw std::invalid_argument("j must lie in N + 1/2");
  if (L2 < j2 + 4) throw std::invalid_argument("truncation L must be >= j + 2");
  if (!(q0 > 0 && q0 <= 1)) throw std::invalid_argument("q0 must lie in (0,1]");
  SpectralTriple T;
  T.j2 = j2;
  T.L2 = L2;
  T.q0 = q0;
  for (int n2 = -j2; n2 <= j2; n2 += 2)
    for (int l2 = std::abs(n2); l2 <= L2; l2 += 2)
      for (int m2 = -l2; m2 <= l2; m2 += 2) T.basis.push_back({l2, m2, n2});
  std::unordered_map<long long, int> pos;
  for (std::size_t i = 0; i < T.basis.size(); ++i) pos[triple_key(T.basis[i])] = static_cast<int>(i);

  const long double q = q0;
  Trips td, tg, tj;
  for (std::size_t i = 0; i < T.basis.size(); ++i) {
    const Lmn b = T.basis[i];
    bool lower = ((b.n2 + j2) / 2) % 2 == 0;
    tg.emplace_back(static_cast<int>(i), static_cast<int>(i), lower ? -1.0 : 1.0);
    if (lower) {
      auto it = pos.find(triple_key({b.l2, b.m2, b.n2 + 2}));
      if (it != pos.end()) {
        long double l = b.l2 / 2.0L, n = b.n2 / 2.0L;
        double c = static_cast<double>(sqrt0(qnum(l - n, q) * qnum(l + n + 1, q)));
        td.emplace_back(it->second, static_cast<int>(i), c);
        td.emplace_back(static_cast<int>(i), it->second, c);
      }
    }
    int sign = (((j2 - b.m2) / 2) % 2 == 0) ? 1 : -1;
    tj.emplace_back(pos.at(triple_key({b.l2, -b.m2, -b.n2})), static_cast<int>(i), static_cast<double>(sign));
  }
  const std::size_t d = T.basis.size();
  T.D = from_trips(d, d, td);
  T.gamma = from_trips(d, d, tg);
  T.J_linear = from_trips(d, d, tj);
  return T;
}

namespace {

double column_window_norm(const SparseOperator& op, const std::vector<char>& inside) {
  double worst = 0;
  for (int r = 0; r < op.outerSize(); ++r)
    for (SparseOperator::InnerIterator it(op, r); it; ++it)
      if (inside[static_cast<std::size_t>(it.col())]) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
  return SparseOperator(a * b) - SparseOperator(b * a);
}

}  // namespace

std::vector<Residual> triple_axiom_suite(int j2, int L2, double q0) {
  SpectralTriple T = build_triple(j2, L2, q0);
  LeftRegular reg(L2, q0);
  const std::size_t d = T.basis.size();
  std::vector<char> inside(d, 0);
  for (auto i : T.interior(3)) inside[i] = 1;
  SparseOperator id(static_cast<int>(d), static_cast<int>(d));
  id.setIdentity();
  const SparseOperator& J = T.J_linear;
  SparseOperator Jinv = SparseOperator(J.transpose());

  std::vector<Residual> out;
  out.push_back({"J^2 + 1", column_window_norm(SparseOperator(J * J) + id, inside)});
  out.push_back({"JD - DJ", column_window_norm(commutator(J, T.D), inside)});
  out.push_back({"J gamma + gamma J", column_window_norm(SparseOperator(J * T.gamma) + SparseOperator(T.gamma * J), inside)});
  out.push_back({"gamma^2 - 1", column_window_norm(SparseOperator(T.gamma * T.gamma) - id, inside)});
  out.push_back({"D gamma + gamma D", column_window_norm(SparseOperator(T.D * T.gamma) + SparseOperator(T.gamma * T.D), inside)});
  out.push_back({"D - D^T", column_window_norm(T.D - SparseOperator(T.D.transpose()), inside)});
  out.push_back({"J^T J - 1", column_window_norm(SparseOperator(Jinv * J) - id, std::vector<char>(d, 1))});

  std::vector<SparseOperator> ops = {T.restrict(reg.A(), reg), T.restrict(reg.B(), reg),
                                     T.restrict(reg.op(LeftGen::BStar), reg)};
  double zero_order = 0, first_order = 0, grading = 0;
  for (const auto& a : ops) {
    SparseOperator Da = commutator(T.D, a);
    grading = std::max(grading, column_window_norm(commutator(T.gamma, a), inside));
    for (const auto& b : ops) {
      SparseOperator JbJ = SparseOperator(SparseOperator(J * b) * Jinv);
      zero_order = std::max(zero_order, column_window_norm(commutator(a, JbJ), inside));
      first_order = std::max(first_order, column_window_norm(commutator(Da, JbJ), inside));
    }
  }
  out.push_back({"[a, J b J^-1]", zero_order});
  out.push_back({"[[D, a], J b J^-1]", first_order});
  out.push_back({"[gamma, a]", grading});
  return out;
}

SpectrumReport spectrum(int j2, int L2, double q0) {
  if (!(q0 > 0 && q0 < 1)) throw std::invalid_argument("spectrum needs 0 < q0 < 1");
  SpectralTriple T = build_triple(j2, L2, q0);
  SpectrumReport rep;
  const long double q = q0;

  std::map<std::pair<int, int>, std::vector<std::size_t>> sectors;
  for (std::size_t i = 0; i < T.basis.size(); ++i) sectors[{T.basis[i].l2, T.basis[i].m2}].push_back(i);
  Eigen::MatrixXd Ddense = Eigen::MatrixXd(T.D);
  for (const auto& [key, idx] : sectors) {
    const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd block(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = 0; b < k; ++b) block(a, b) = Ddense(static_cast<Eigen::Index>(idx[a]), static_cast<Eigen::Index>(idx[b]));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
    std::vector<double> numeric, formula;
    for (Eigen::Index a = 0; a < k; ++a) {
      numeric.push_back(es.eigenvalues()[a] * es.eigenvalues()[a]);
      rep.abs_eigenvalues.push_back(std::abs(es.eigenvalues()[a]));
      const Lmn b = T.basis[idx[static_cast<std::size_t>(a)]];
      long double l = b.l2 / 2.0L, n = b.n2 / 2.0L;
      bool lower = ((b.n2 + j2) / 2) % 2 == 0;
      formula.push_back(static_cast<double>(lower ? qnum(l - n, q) * qnum(l + n + 1, q)
                                                  : qnum(l - n + 1, q) * qnum(l + n, q)));
    }
    std::sort(numeric.begin(), numeric.end());
    std::sort(formula.begin(), formula.end());
    for (std::size_t a = 0; a < numeric.size(); ++a)
      rep.d2_error = std::max(rep.d2_error, std::abs(numeric[a] - formula[a]) / std::max(1.0, std::abs(formula[a])));
    ++rep.sectors;
  }
  std::sort(rep.abs_eigenvalues.begin(), rep.abs_eigenvalues.end());

  LeftRegular reg(L2, q0);
  const int d = static_cast<int>(reg.size());
  Trips tx;
  const long double sq = std::sqrt(q);
  for (int i = 0; i < d; ++i) {
    long double k = reg.LK().coeff(i, i);
    tx.emplace_back(i, i, static_cast<double>((sq * k - 1.0L / (sq * k)) / (q - 1.0L / q)));
  }
  SparseOperator X = from_trips(reg.size(), reg.size(), tx);
  SparseOperator cas = SparseOperator(X * X) + SparseOperator(reg.LF() * reg.LE());
  Eigen::MatrixXd cas_dense = Eigen::MatrixXd(cas);
  std::map<std::pair<int, int>, std::vector<Eigen::Index>> blocks;
  for (std::size_t i = 0; i < reg.size(); ++i) {
    const Lmn b = reg.basis()[i];
    if (std::abs(b.n2) <= j2) blocks[{b.n2, b.l2}].push_back(static_cast<Eigen::Index>(i));
  }
  for (const auto& [key, idx] : blocks) {
    const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd block(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = 0; b < k; ++b) block(a, b) = cas_dense(idx[a], idx[b]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
    long double target = qnum(key.second / 2.0L + 0.5L, q);
    target *= target;
    for (Eigen::Index a = 0; a < k; ++a)
      rep.casimir_error = std::max(rep.casimir_error, static_cast<double>(std::abs(es.eigenvalues()[a] - target) / target));
  }
  return rep;
}

namespace {

QScalar qhalf(int twice) { return qint_half(twice); }

// P^{11}_{l,m,n} with l integer and n = n2/2.
QScalar p11(int l, int n2) {
  return QScalar::q_pow_half(n2 - 2 * l - 1) * qhalf(2 * l + n2 + 1) / qhalf(2 * (2 * l + 1));
}

// (P^{12}_{l,m,n})^2.
QScalar p12_sq(int l, int n2) {
  QScalar den = qhalf(2 * (2 * l + 1));
  return QScalar::q_pow_half(2 * n2) * qhalf(2 * l + n2 + 1) * qhalf(2 * l - n2 + 1) / (den * den);
}

bool positive_nonzero(const QScalar& x) {
  if (x.is_zero()) return false;
  if (x.eval(0.5) < 0 || x.eval(0.9) < 0) throw std::logic_error("squared coefficient is negative");
  return true;
}

struct SectorPresence {
  bool w = false;
  bool v_down = false;
  bool any() const { return w || v_down; }
};

SectorPresence presence(int l, int n2) {
  SectorPresence s;
  s.w = 2 * l >= std::abs(n2) + 1;
  s.v_down = 2 * l == std::abs(n2) - 1 && n2 < 0;
  return s;
}

// Whether L_E maps the p-image of sector (l, .) in W_{n+1} onto that of W_n.
bool connected(int l, int n2) {
  SectorPresence up = presence(l, n2 + 2), lo = presence(l, n2);
  if (!up.any() || !lo.any()) return false;
  if (up.w && lo.w) {
    QScalar t1 = qhalf(2 * l - n2 - 1) * qhalf(2 * l + n2 + 1) * p11(l, n2) * p11(l, n2 + 2);
    QScalar t2 = qhalf(2 * l - n2 + 1) * qhalf(2 * l + n2 + 3) * p12_sq(l, n2) * p12_sq(l, n2 + 2) /
                 (p11(l, n2) * p11(l, n2 + 2));
    bool a = positive_nonzero(t1);
    bool b = positive_nonzero(t2);
    return a || b;
  }
  if (up.w && lo.v_down) return positive_nonzero(p12_sq(l, n2 + 2) / p11(l, n2 + 2) * qhalf(-2 * n2));
  // L_E v^{n+1,down}_{|n+1|-1/2} = 0
  return false;
}

}  // namespace

int index_analytic(int j2) {
  if (j2 < 1 || j2 % 2 == 0) throw std::invalid_argument("j must lie in N + 1/2");
  int kernel = 0, cokernel = 0;
  const int lmax = (j2 + 1) / 2 + 1;
  for (int n2 = -j2; n2 + 2 <= j2; n2 += 4) {
    for (int l = 0; l <= lmax; ++l) {
      SectorPresence up = presence(l, n2 + 2), lo = presence(l, n2);
      if (connected(l, n2)) continue;
      int mult = 2 * l + 1;
      if (up.any()) kernel += mult;
      if (lo.any()) cokernel += mult;
      if (l > (j2 + 1) / 2 && (up.any() || lo.any())) throw std::logic_error("unexpected contribution beyond l = j + 1/2");
    }
  }
  return kernel - cokernel;
}

int index_branch_formula(int j2) {
  if (j2 < 1 || j2 % 2 == 0) throw std::invalid_argument("j must lie in N + 1/2");
  // j in 2N + 1/2 iff 2j = 1 mod 4
  int jsq4 = j2 * j2;
  return j2 % 4 == 1 ? (jsq4 - 9) / 8 : (jsq4 - 1) / 8;
}

namespace {

struct Doublet {
  Eigen::VectorXd top, bottom;
  double dot(const Doublet& o) const { return top.dot(o.top) + bottom.dot(o.bottom); }
};

Doublet zero_doublet(std::size_t d) {
  return {Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d)), Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d))};
}

void put(const LeftRegular& reg, Eigen::VectorXd& v, Lmn b, long double c) {
  if (c == 0) return;
  if (!admissible(b)) return;
  long i = reg.index(b);
  if (i < 0) throw std::invalid_argument("truncation L too small for the index sectors");
  v[i] += static_cast<double>(c);
}

// v^{n,up}_{l,m}; empty when l < |n| + 1/2.
std::optional<Doublet> v_up(const LeftRegular& reg, int n2, int l, int m) {
  if (2 * l < std::abs(n2) + 1) return std::nullopt;
  const long double q = reg.q0();
  Doublet v = zero_doublet(reg.size());
  long double f = 1.0L / std::sqrt(qnum(2 * l, q));
  put(reg, v.top, {2 * l - 1, 2 * m - 1, n2}, f * sqrt0(std::pow(q, -l + m) * qnum(l + m, q)));
  put(reg, v.bottom, {2 * l - 1, 2 * m + 1, n2}, f * sqrt0(std::pow(q, l + m) * qnum(l - m, q)));
  return v;
}

std::optional<Doublet> v_down(const LeftRegular& reg, int n2, int l, int m) {
  if (2 * l < std::abs(n2) - 1) return std::nullopt;
  const long double q = reg.q0();
  Doublet v = zero_doublet(reg.size());
  long double f = 1.0L / std::sqrt(qnum(2 * l + 2, q));
  put(reg, v.top, {2 * l + 1, 2 * m - 1, n2}, f * sqrt0(std::pow(q, l + m + 1) * qnum(l - m + 1, q)));
  put(reg, v.bottom, {2 * l + 1, 2 * m + 1, n2}, -f * sqrt0(std::pow(q, -l + m - 1) * qnum(l + m + 1, q)));
  return v;
}

Doublet apply_p(const LeftRegular& reg, const Doublet& x) {
  const double q = reg.q0();
  Doublet y;
  y.top = x.top - q * q * (reg.A() * x.top) + reg.op(LeftGen::BStar) * x.bottom;
  y.bottom = reg.B() * x.top + reg.A() * x.bottom;
  return y;
}

struct SectorImage {
  std::vector<Doublet> vectors;
  bool unstable = false;
};

SectorImage p_image(const LeftRegular& reg, int n2, int l, int m) {
  std::vector<Doublet> v;
  if (auto a = v_up(reg, n2, l, m)) v.push_back(*a);
  if (auto b = v_down(reg, n2, l, m)) v.push_back(*b);
  SectorImage out;
  if (v.empty()) return out;
  const Eigen::Index k = static_cast<Eigen::Index>(v.size());
  std::vector<Doublet> pv;
  for (const auto& x : v) pv.push_back(apply_p(reg, x));
  Eigen::MatrixXd G(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b) G(a, b) = v[a].dot(pv[b]);
  // the sector must be invariant under p
  for (Eigen::Index b = 0; b < k; ++b) {
    Doublet r = pv[b];
    for (Eigen::Index a = 0; a < k; ++a) {
      r.top -= G(a, b) * v[a].top;
      r.bottom -= G(a, b) * v[a].bottom;
    }
    if (std::sqrt(r.dot(r)) > 1e-8) out.unstable = true;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (G + G.transpose()));
  for (Eigen::Index c = 0; c < k; ++c) {
    double lam = es.eigenvalues()[c];
    if (std::min(std::abs(lam), std::abs(1 - lam)) > 1e-6) out.unstable = true;
    if (lam > 0.5) {
      Doublet u = zero_doublet(reg.size());
      for (Eigen::Index a = 0; a < k; ++a) {
        u.top += es.eigenvectors()(a, c) * v[a].top;
        u.bottom += es.eigenvectors()(a, c) * v[a].bottom;
      }
      out.vectors.push_back(std::move(u));
    }
  }
  return out;
}

}  // namespace

IndexNumeric index_numeric(int j2, int L2, double q0, double tol) {
  if (j2 < 1 || j2 % 2 == 0) throw std::invalid_argument("j must lie in N + 1/2");
  if (L2 < 2 * j2 + 6) throw std::invalid_argument("truncation L must be >= 2j + 3");
  LeftRegular reg(L2, q0);
  struct Task {
    int n2, l, m;
  };
  std::vector<Task> tasks;
  const int lmax = (j2 + 1) / 2 + 1;
  for (int n2 = -j2; n2 + 2 <= j2; n2 += 4)
    for (int l = 0; l <= lmax; ++l)
      for (int m = -l; m <= l; ++m) tasks.push_back({n2, l, m});

  struct Out {
    int ker = 0, coker = 0;
    bool unstable = false;
  };
  std::vector<Out> results(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t t) {
    const Task& task = tasks[t];
    SectorImage up = p_image(reg, task.n2 + 2, task.l, task.m);
    SectorImage lo = p_image(reg, task.n2, task.l, task.m);
    Out& o = results[t];
    o.unstable = up.unstable || lo.unstable;
    const Eigen::Index rows = static_cast<Eigen::Index>(lo.vectors.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(up.vectors.size());
    int rank = 0;
    if (rows > 0 && cols > 0) {
      Eigen::MatrixXd M(rows, cols);
      for (Eigen::Index c = 0; c < cols; ++c) {
        Doublet e{reg.LE() * up.vectors[c].top, reg.LE() * up.vectors[c].bottom};
        for (Eigen::Index r = 0; r < rows; ++r) M(r, c) = lo.vectors[r].dot(e);
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
      for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        double s = svd.singularValues()[i];
        if (s > tol) ++rank;
        if (s > tol / 10 && s < tol * 10) o.unstable = true;
      }
    }
    o.ker = static_cast<int>(cols) - rank;
    o.coker = static_cast<int>(rows) - rank;
  });

  IndexNumeric res;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    res.kernel += results[t].ker;
    res.cokernel += results[t].coker;
    res.unstable = res.unstable || results[t].unstable;
    if (tasks[t].l > (j2 + 1) / 2 && (results[t].ker || results[t].coker)) res.tail_zero = false;
  }
  res.value = res.kernel - res.cokernel;
  return res;
}

long long poincare_pairing(long long i, long long k, long long i2, long long k2, int j2) {
  return (k * i2 - i * k2) * index_analytic(j2);
}

HoloResult holo_dim(int N, int L2, double q0, double tol) {
  if (L2 < std::abs(N) + 6) throw std::invalid_argument("truncation L must be >= |N|/2 + 3");
  LeftRegular reg(L2, q0);
  const int n2 = -N;
  std::vector<long> cols, rows;
  for (std::size_t i = 0; i < reg.size(); ++i) {
    if (reg.basis()[i].n2 == n2) cols.push_back(static_cast<long>(i));
    if (reg.basis()[i].n2 == n2 + 2) rows.push_back(static_cast<long>(i));
  }
  std::unordered_map<long, Eigen::Index> row_pos;
  for (std::size_t r = 0; r < rows.size(); ++r) row_pos[rows[r]] = static_cast<Eigen::Index>(r);
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(std::max<std::size_t>(rows.size(), 1)),
                                            static_cast<Eigen::Index>(cols.size()));
  SparseOperator lf_cols = SparseOperator(reg.LF().transpose());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (SparseOperator::InnerIterator it(lf_cols, static_cast<int>(cols[c])); it; ++it)
      T(row_pos.at(it.col()), static_cast<Eigen::Index>(c)) = -it.value() / q0;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(T, Eigen::ComputeFullV);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol) ++rank;
  HoloResult res;
  res.dim = static_cast<int>(cols.size()) - rank;
  const Eigen::MatrixXd& V = svd.matrixV();
  for (Eigen::Index k = rank; k < V.cols(); ++k)
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (std::abs(V(static_cast<Eigen::Index>(c), k)) > tol && reg.basis()[cols[c]].l2 > L2 - 2)
        res.truncation_safe = false;
  return res;
}

namespace {

double tau1_at(int N, int L2, double q0) {
  Presentation P(1);
  AlgebraMatrix proj = projection(N, P);
  UqMatrixRep sigma = sigma_rep(N, P);
  auto kappa = sigma.numeric(UqGen::k2rho(1, -2), P, q0);
  LeftRegular reg(L2, q0);
  const std::size_t d = proj.size();
  const Eigen::VectorXd vac = reg.vacuum();
  auto entry = [&](std::size_t a, std::size_t b) -> const NCPoly& { return proj.core[a][b]; };
  auto scale = [&](std::size_t a, std::size_t b) {
    return std::sqrt(proj.row_rad[a].eval(q0) * proj.col_rad[b].eval(q0));
  };
  auto dbar = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return (-1.0 / (q0 * q0)) * (reg.LF() * v); };
  const SparseOperator& C = reg.star_map();
  // tau_1(a0, a1, a2) = h(a0 (dbar a1^*)^* dbar a2)
  auto tau = [&](const NCPoly& a0, const NCPoly& a1, const NCPoly& a2) {
    Eigen::VectorXd x = dbar(reg.apply(P.star(a1), vac));
    Eigen::VectorXd xa0 = C * reg.apply(a0, C * x);
    Eigen::VectorXd y = dbar(reg.apply(a2, vac));
    return xa0.dot(y);
  };
  long double total = 0;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c)
        total += static_cast<long double>(scale(a, b) * scale(b, c) * scale(c, a)) *
                 tau(entry(a, b), entry(b, c), entry(c, a)) * kappa[a][a];
  return static_cast<double>(total);
}

}  // namespace

Tau1Result tau1_pairing(int N, int L2, double q0) {
  if (L2 < 4 * std::abs(N)) throw std::invalid_argument("truncation L must be >= 2|N|");
  Tau1Result r;
  r.value = tau1_at(N, L2, q0);
  r.value_larger = tau1_at(N, L2 + 8, q0);
  r.target = static_cast<double>(std::pow(static_cast<long double>(q0), -4) * qnum(N, q0));
  return r;
}

}  // namespace qcpn
