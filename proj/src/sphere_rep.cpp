#include "qcpn/sphere_rep.hpp"

#include "qcpn/parallel.hpp"
#include "qcpn/projections.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace qcpn {

void RepSpec::validate() const {
  if (n < 1) throw std::invalid_argument("level n must be >= 1");
  if (k < 0 || k > n) throw std::invalid_argument("k must lie in 0..n");
  if (M < 1) throw std::invalid_argument("truncation M must be >= 1");
  if (!(q0 > 0 && q0 <= 1)) throw std::invalid_argument("q0 must lie in (0,1]");
}

std::size_t RepSpec::box_size() const {
  std::size_t s = 1;
  for (int i = 0; i < n; ++i) s *= static_cast<std::size_t>(M + 1);
  return s;
}

std::vector<int> RepSpec::state(std::size_t index) const {
  std::vector<int> m(n);
  for (int i = 0; i < n; ++i) {
    m[i] = static_cast<int>(index % (M + 1));
    index /= (M + 1);
  }
  return m;
}

std::size_t RepSpec::index(const std::vector<int>& m) const {
  std::size_t idx = 0;
  for (int i = n - 1; i >= 0; --i) idx = idx * (M + 1) + static_cast<std::size_t>(m[i]);
  return idx;
}

bool RepSpec::in_subspace(const std::vector<int>& m) const {
  for (int i = 0; i < n; ++i)
    if (m[i] < 0) return false;
  for (int i = 1; i < k; ++i)
    if (m[i - 1] > m[i]) return false;
  for (int i = k + 1; i < n; ++i)
    if (m[i - 1] <= m[i]) return false;
  return true;
}

std::vector<std::size_t> RepSpec::interior(int margin) const {
  std::vector<std::size_t> out;
  std::size_t total = box_size();
  for (std::size_t i = 0; i < total; ++i) {
    auto m = state(i);
    if (std::all_of(m.begin(), m.end(), [&](int v) { return v <= M - margin; })) out.push_back(i);
  }
  return out;
}

namespace {

long double forward_coeff(const RepSpec& spec, int i, const std::vector<int>& m) {
  long double q = spec.q0;
  int mi = i == 0 ? 0 : m[i - 1];
  int next = m[i];
  return std::pow(q, mi) * std::sqrt(1.0L - std::pow(q, 2 * (next - mi + 1)));
}

}  // namespace

BasisImage rep_apply(const RepSpec& spec, int i, bool starred, const std::vector<int>& m) {
  BasisImage out;
  if (!spec.in_subspace(m)) return out;
  if (spec.k == 0) {
    if (i == 0) out = {1.0, m};
    return out;
  }
  if (i > spec.k) return out;
  if (i == spec.k) return {std::pow(static_cast<long double>(spec.q0), m[spec.k - 1]), m};
  std::vector<int> target = m;
  int step = starred ? -1 : 1;
  for (int p = i; p < spec.k; ++p) target[p] += step;
  if (starred) {
    if (!spec.in_subspace(target)) return out;
    return {forward_coeff(spec, i, target), std::move(target)};
  }
  return {forward_coeff(spec, i, m), std::move(target)};
}

SparseOperator rep_generator(const RepSpec& spec, int i, bool starred) {
  spec.validate();
  if (i < 0 || i > spec.n) throw std::invalid_argument("generator index out of range");
  std::size_t size = spec.box_size();
  std::vector<Eigen::Triplet<double>> trips;
  for (std::size_t col = 0; col < size; ++col) {
    auto m = spec.state(col);
    BasisImage img = rep_apply(spec, i, starred, m);
    if (img.coeff == 0) continue;
    if (std::any_of(img.m.begin(), img.m.end(), [&](int v) { return v > spec.M; })) continue;
    trips.emplace_back(static_cast<int>(spec.index(img.m)), static_cast<int>(col), static_cast<double>(img.coeff));
  }
  SparseOperator op(static_cast<int>(size), static_cast<int>(size));
  op.setFromTriplets(trips.begin(), trips.end());
  return op;
}

SparseOperator rep_poly(const NCPoly& a, const RepSpec& spec) {
  spec.validate();
  int size = static_cast<int>(spec.box_size());
  std::map<char, SparseOperator> gens;
  SparseOperator unit(size, size);
  {
    std::vector<Eigen::Triplet<double>> trips;
    for (int i = 0; i < size; ++i)
      if (spec.in_subspace(spec.state(i))) trips.emplace_back(i, i, 1.0);
    unit.setFromTriplets(trips.begin(), trips.end());
  }
  SparseOperator out(size, size);
  for (const auto& [w, c] : a.terms()) {
    SparseOperator term = unit;
    for (char ch : w) {
      auto it = gens.find(ch);
      if (it == gens.end()) {
        Generator g = decode(ch);
        it = gens.emplace(ch, rep_generator(spec, g.index, g.starred)).first;
      }
      term = SparseOperator(term * it->second);
    }
    out += c.eval(spec.q0) * term;
  }
  out.prune(0.0);
  return out;
}

long double rep_diagonal(const NCPoly& a, const RepSpec& spec, const std::vector<int>& m) {
  if (!spec.in_subspace(m)) return 0;
  long double total = 0;
  for (const auto& [w, c] : a.terms()) {
    std::vector<int> cur = m;
    long double amp = 1;
    for (auto it = w.rbegin(); it != w.rend() && amp != 0; ++it) {
      Generator g = decode(*it);
      BasisImage img = rep_apply(spec, g.index, g.starred, cur);
      amp *= img.coeff;
      cur = std::move(img.m);
    }
    if (amp != 0 && cur == m) total += c.eval_ld(spec.q0) * amp;
  }
  return total;
}

double window_norm(const SparseOperator& op, const std::vector<std::size_t>& window, std::size_t size) {
  std::vector<char> inside(size, 0);
  for (auto i : window) inside[i] = 1;
  double worst = 0;
  for (int r = 0; r < op.outerSize(); ++r) {
    if (!inside[r]) continue;
    for (SparseOperator::InnerIterator it(op, r); it; ++it)
      if (inside[it.col()]) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

std::vector<NCPoly> sphere_relations(const Presentation& P) {
  std::vector<NCPoly> rels;
  std::vector<char> letters;
  for (int i = 0; i <= P.n(); ++i) {
    letters.push_back(letter(i, true));
    letters.push_back(letter(i, false));
  }
  for (char a : letters) {
    for (char b : letters) {
      Word w{a, b};
      NCPoly r = NCPoly::word(w) - P.normalize_word(w);
      if (!r.is_zero()) rels.push_back(std::move(r));
    }
  }
  NCPoly sphere = NCPoly(-1);
  for (int i = 0; i <= P.n(); ++i) sphere += NCPoly::word(Word{letter(i, false), letter(i, true)});
  rels.push_back(sphere);
  return rels;
}

namespace {

long long binomial(int N, int k) {
  if (k < 0 || k > N) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (N - k + i) / i;
  return r;
}

}  // namespace

PairingResult fredholm_pairing(int N, int k, int n, int M, double q0) {
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  RepSpec base{n, k, M, q0};
  base.validate();
  PairingResult res;
  res.target = binomial(N, k);

  // diagonal entries of P_{-N} are rad_J psi_J psi_J^*: <m|.|m> = rad_J |c_J|^2 |pi(w_J)^* m|^2
  Presentation Pn(n);
  AlgebraVector v = psi(-N, Pn);
  struct Term {
    long double weight;
    Word adjoint;
  };
  std::vector<Term> terms;
  for (std::size_t J = 0; J < v.size(); ++J) {
    const auto& [w, c] = *v.core[J].terms().begin();
    long double cj = c.eval_ld(q0);
    Word adj(w.rbegin(), w.rend());
    for (auto& ch : adj) ch = star_letter(ch);
    bool survives = std::all_of(w.begin(), w.end(), [k](char ch) { return decode(ch).index <= k; });
    if (survives) terms.push_back({v.radicand[J].eval_ld(q0) * cj * cj, adj});
  }

  if (k == 0) {
    long double total = 0;
    for (const auto& t : terms) total += t.weight;
    res.value = static_cast<double>(total);
    res.states = 1;
    return res;
  }

  RepSpec level{k, 0, M, q0};
  std::size_t size = level.box_size();
  std::vector<long double> per_state(size);
  parallel_for(size, [&](std::size_t idx) {
    auto m = level.state(idx);
    long double sum = 0;
    for (int j = 0; j <= k; ++j) {
      RepSpec sj{k, j, M, q0};
      if (!sj.in_subspace(m)) continue;
      long double d = 0;
      for (const auto& t : terms) {
        long double coeff = 1;
        std::vector<int> cur = m;
        for (auto it = t.adjoint.rbegin(); it != t.adjoint.rend() && coeff != 0; ++it) {
          Generator g = decode(*it);
          BasisImage img = rep_apply(sj, g.index, g.starred, cur);
          coeff *= img.coeff;
          cur = std::move(img.m);
        }
        d += t.weight * coeff * coeff;
      }
      sum += (j % 2 == 0) ? d : -d;
    }
    per_state[idx] = sum;
  });
  std::vector<long double> shell(M + 1, 0.0L);
  for (std::size_t idx = 0; idx < size; ++idx) {
    auto m = level.state(idx);
    shell[*std::max_element(m.begin(), m.end())] += per_state[idx];
  }
  long double total = 0;
  for (auto s : shell) total += s;
  res.value = static_cast<double>(total);
  res.states = size;
  // tail: states in the outer quarter of the box
  int inner = M - std::max(1, M / 4);
  long double outer = 0;
  for (int s = inner + 1; s <= M; ++s) outer += shell[s];
  res.tail = static_cast<double>(std::abs(outer));
  return res;
}

}  // namespace qcpn
