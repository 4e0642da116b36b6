#include "qcpn/projections.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcpn {

std::vector<MultiIndex> multi_indices(int total, int n) {
  std::vector<MultiIndex> out;
  MultiIndex cur(static_cast<std::size_t>(n + 1), 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n) {
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, total);
  std::sort(out.begin(), out.end(), [](const MultiIndex& a, const MultiIndex& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return out;
}

QMatrix qmatrix_identity(std::size_t d) {
  QMatrix m(d, std::vector<QScalar>(d));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = QScalar(1);
  return m;
}

QMatrix qmatrix_mul(const QMatrix& a, const QMatrix& b) {
  const std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  QMatrix out(r, std::vector<QScalar>(c));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (std::size_t j = 0; j < c; ++j) {
        if (!b[t][j].is_zero()) out[i][j] += a[i][t] * b[t][j];
      }
    }
  }
  return out;
}

QMatrix qmatrix_transpose(const QMatrix& a) {
  if (a.empty()) return a;
  QMatrix out(a[0].size(), std::vector<QScalar>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
  }
  return out;
}

QMatrix qmatrix_scale(const QMatrix& a, const QScalar& c) {
  QMatrix out = a;
  for (auto& row : out) {
    for (auto& x : row) x *= c;
  }
  return out;
}

QMatrix qmatrix_add(const QMatrix& a, const QMatrix& b) {
  QMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] += b[i][j];
  }
  return out;
}

bool qmatrix_is_zero(const QMatrix& a) {
  for (const auto& row : a) {
    for (const auto& x : row) {
      if (!x.is_zero()) return false;
    }
  }
  return true;
}

namespace {

int pair_sum(const MultiIndex& j) {
  int s = 0;
  for (std::size_t r = 0; r < j.size(); ++r) {
    for (std::size_t t = r + 1; t < j.size(); ++t) s += j[r] * j[t];
  }
  return s;
}

}  // namespace

AlgebraVector psi(int N, const Presentation& P) {
  const int n = P.n();
  AlgebraVector v;
  v.N = N;
  v.n = n;
  v.index = multi_indices(N >= 0 ? N : -N, n);
  for (const auto& J : v.index) {
    v.radicand.push_back(qmultinomial(J));
    Word w;
    int half = 0;
    if (N >= 0) {
      half = -pair_sum(J);
      for (int i = 0; i <= n; ++i) w.append(static_cast<std::size_t>(J[static_cast<std::size_t>(i)]), letter(i, true));
    } else {
      half = pair_sum(J);
      for (int i = 0; i <= n; ++i) {
        half += 2 * i * J[static_cast<std::size_t>(i)];
        w.append(static_cast<std::size_t>(J[static_cast<std::size_t>(i)]), letter(i, false));
      }
    }
    v.core.push_back(NCPoly::word(w, QScalar::q_pow_half(half)));
  }
  return v;
}

NCPoly psi_norm(const AlgebraVector& v, const Presentation& P) {
  NCPoly s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    NCPoly t = P.mul(v.core[k].free_star(), v.core[k]);
    t *= v.radicand[k];
    s += t;
  }
  return s;
}

AlgebraMatrix projection(int N, const Presentation& P) {
  AlgebraVector v = psi(N, P);
  AlgebraMatrix m;
  m.row_rad = v.radicand;
  m.col_rad = v.radicand;
  const std::size_t d = v.size();
  m.core.assign(d, std::vector<NCPoly>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m.core[i][j] = P.mul(v.core[i], v.core[j].free_star());
  }
  return m;
}

AlgebraMatrix matrix_mul(const AlgebraMatrix& a, const AlgebraMatrix& b, const Presentation& P) {
  if (a.col_rad != b.row_rad) throw std::invalid_argument("radicand mismatch in algebra matrix product");
  AlgebraMatrix m;
  m.row_rad = a.row_rad;
  m.col_rad = b.col_rad;
  const std::size_t d = a.size();
  m.core.assign(d, std::vector<NCPoly>(b.col_rad.size()));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < b.col_rad.size(); ++j) {
      NCPoly s;
      for (std::size_t k = 0; k < a.col_rad.size(); ++k) {
        NCPoly t = P.mul(a.core[i][k], b.core[k][j]);
        t *= a.col_rad[k];
        s += t;
      }
      m.core[i][j] = std::move(s);
    }
  }
  return m;
}

AlgebraMatrix matrix_adjoint(const AlgebraMatrix& a, const Presentation& P) {
  AlgebraMatrix m;
  m.row_rad = a.col_rad;
  m.col_rad = a.row_rad;
  const std::size_t r = a.row_rad.size(), c = a.col_rad.size();
  m.core.assign(c, std::vector<NCPoly>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m.core[j][i] = P.star(a.core[i][j]);
  }
  return m;
}

NCPoly qtrace(const AlgebraMatrix& m, const Presentation& P) {
  if (m.row_rad != m.col_rad) throw std::invalid_argument("q-trace needs matching row and column radicands");
  NCPoly s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    NCPoly t = m.core[i][i];
    t *= m.row_rad[i] * QScalar::q_pow(2 * static_cast<int>(i));
    s += t;
  }
  return P.normalize(s);
}

std::vector<QScalar> weight_matrix_unsigned(int N, int n) {
  std::vector<QScalar> out;
  for (const auto& J : multi_indices(N >= 0 ? N : -N, n)) {
    int half = 0;
    for (int i = 0; i <= n; ++i) half += (n - 2 * i) * J[static_cast<std::size_t>(i)];
    out.push_back(QScalar::q_pow_half(half));
  }
  return out;
}

std::vector<QScalar> weight_matrix(int N, int n) {
  std::vector<QScalar> out = weight_matrix_unsigned(N, n);
  if (N > 0) {
    for (auto& x : out) x = x.inverse();
  }
  return out;
}

QMatrix UqMatrixRep::core(const UqGen& x, const Presentation& P) const {
  AlgebraVector v = psi(N, P);
  const std::size_t d = v.size();
  QMatrix m(d, std::vector<QScalar>(d));
  std::vector<std::pair<Word, QScalar>> basis;
  for (const auto& c : v.core) basis.push_back(*c.terms().begin());
  for (std::size_t j = 0; j < d; ++j) {
    NCPoly image = uq_act(x, v.core[j], P);
    for (const auto& [w, c] : image.terms()) {
      auto it = std::find_if(basis.begin(), basis.end(), [&](const auto& b) { return b.first == w; });
      if (it == basis.end()) throw std::logic_error("action does not preserve the span of Psi_N");
      m[static_cast<std::size_t>(it - basis.begin())][j] = c / it->second;
    }
  }
  return m;
}

std::vector<std::vector<double>> UqMatrixRep::numeric(const UqGen& x, const Presentation& P, double q0) const {
  QMatrix c = core(x, P);
  const std::size_t d = dim();
  std::vector<std::vector<double>> out(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (c[i][j].is_zero()) continue;
      double g = 1.0 / (weights[i].eval(q0) * std::sqrt(radicand[i].eval(q0)));
      double gj = 1.0 / (weights[j].eval(q0) * std::sqrt(radicand[j].eval(q0)));
      out[i][j] = g * c[i][j].eval(q0) / gj;
    }
  }
  return out;
}

UqMatrixRep sigma_rep(int N, const Presentation& P) {
  UqMatrixRep r;
  r.N = N;
  r.n = P.n();
  r.radicand = psi(N, P).radicand;
  r.weights = weight_matrix(N, P.n());
  return r;
}

namespace {

using PolyMatrix = std::vector<std::vector<NCPoly>>;

PolyMatrix act_matrix(const UqGen& x, const PolyMatrix& m, const Presentation& P) {
  PolyMatrix out = m;
  for (auto& row : out) {
    for (auto& e : row) e = uq_act(x, e, P);
  }
  return out;
}

PolyMatrix scale_rows(PolyMatrix m, const std::vector<QScalar>& d) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (auto& e : m[i]) e *= d[i];
  }
  return m;
}

PolyMatrix scale_cols(PolyMatrix m, const std::vector<QScalar>& d) {
  for (auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) row[j] *= d[j];
  }
  return m;
}

PolyMatrix times_q(const PolyMatrix& m, const QMatrix& t) {
  const std::size_t d = m.size();
  PolyMatrix out(d, std::vector<NCPoly>(t[0].size()));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (m[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < t[k].size(); ++j) {
        if (!t[k][j].is_zero()) out[i][j] += m[i][k] * t[k][j];
      }
    }
  }
  return out;
}

PolyMatrix q_times(const QMatrix& t, const PolyMatrix& m) {
  const std::size_t d = t.size();
  PolyMatrix out(d, std::vector<NCPoly>(m[0].size()));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (t[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < m[k].size(); ++j) {
        if (!m[k][j].is_zero()) out[i][j] += t[i][k] * m[k][j];
      }
    }
  }
  return out;
}

PolyMatrix sub(PolyMatrix a, const PolyMatrix& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= b[i][j];
  }
  return a;
}

PolyMatrix add(PolyMatrix a, const PolyMatrix& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] += b[i][j];
  }
  return a;
}

std::vector<QScalar> powv(const std::vector<QScalar>& d, int k) {
  std::vector<QScalar> out;
  for (const auto& x : d) out.push_back(x.pow(k));
  return out;
}

}  // namespace

std::vector<std::vector<NCPoly>> check_equivariance_gauge(int N, const UqGen& x, const Presentation& P,
                                                          const std::vector<QScalar>& A,
                                                          const std::vector<QScalar>& B) {
  AlgebraMatrix pm = projection(N, P);
  const PolyMatrix& Q = pm.core;
  const std::vector<QScalar>& W = pm.row_rad;
  UqMatrixRep rep = sigma_rep(N, P);
  const auto Ainv = powv(A, -1), Binv = powv(B, -1);

  // A (y |> Q) W A^-1 B^-1 tau(z)^t B
  auto lhs_term = [&](const UqGen& y, const UqGen& z) {
    PolyMatrix t = act_matrix(y, Q, P);
    t = scale_rows(t, A);
    t = scale_cols(t, W);
    t = scale_cols(t, Ainv);
    t = scale_cols(t, Binv);
    t = times_q(t, qmatrix_transpose(rep.core(z, P)));
    return scale_cols(t, B);
  };
  PolyMatrix lhs;
  using K = UqGen::Kind;
  switch (x.kind) {
    case K::K:
    case K::Kinv:
    case K::KWord:
      lhs = lhs_term(x, x);
      break;
    case K::E:
    case K::F: {
      UqGen k = UqGen::K(x.i), ki = UqGen::Kinv(x.i);
      lhs = add(lhs_term(x, k), lhs_term(ki, x));
      break;
    }
  }
  // B^-1 tau(x)^t B A Q W A^-1
  PolyMatrix rhs = scale_rows(Q, A);
  rhs = scale_rows(rhs, B);
  rhs = q_times(qmatrix_transpose(rep.core(x, P)), rhs);
  rhs = scale_rows(rhs, Binv);
  rhs = scale_cols(rhs, W);
  rhs = scale_cols(rhs, Ainv);
  PolyMatrix res = sub(lhs, rhs);
  for (auto& row : res) {
    for (auto& e : row) e = P.normalize(e);
  }
  return res;
}

std::vector<std::vector<NCPoly>> check_equivariance(int N, const UqGen& x, const Presentation& P) {
  std::vector<QScalar> R = weight_matrix(N, P.n());
  return check_equivariance_gauge(N, x, P, R, powv(R, -1));
}

bool is_zero_matrix(const std::vector<std::vector<NCPoly>>& m) {
  for (const auto& row : m) {
    for (const auto& e : row) {
      if (!e.is_zero()) return false;
    }
  }
  return true;
}

ProjectionReport check_projection(int N, const Presentation& P) {
  ProjectionReport r;
  r.psi_normalised = P.normalize(psi_norm(psi(N, P), P)) == NCPoly(1);
  AlgebraMatrix pm = projection(N, P);
  r.idempotent = matrix_mul(pm, pm, P) == pm;
  r.selfadjoint = matrix_adjoint(pm, P) == pm;
  return r;
}

namespace {

int cartan(int i, int j) {
  if (i == j) return 2;
  if (i - j == 1 || j - i == 1) return -1;
  return 0;
}

}  // namespace

bool check_sigma_relations(int N, const Presentation& P) {
  UqMatrixRep rep = sigma_rep(N, P);
  const int n = P.n();
  const std::size_t d = rep.dim();
  const QScalar qq = QScalar::q_pow(1) - QScalar::q_pow(-1);
  for (int i = 1; i <= n; ++i) {
    QMatrix Ki = rep.core(UqGen::K(i), P), Kinv = rep.core(UqGen::Kinv(i), P);
    if (qmatrix_mul(Ki, Kinv) != qmatrix_identity(d)) return false;
    for (int j = 1; j <= n; ++j) {
      QMatrix Ej = rep.core(UqGen::E(j), P), Fj = rep.core(UqGen::F(j), P);
      QMatrix lhsE = qmatrix_mul(qmatrix_mul(Ki, Ej), Kinv);
      if (lhsE != qmatrix_scale(Ej, QScalar::q_pow_half(cartan(i, j)))) return false;
      QMatrix lhsF = qmatrix_mul(qmatrix_mul(Ki, Fj), Kinv);
      if (lhsF != qmatrix_scale(Fj, QScalar::q_pow_half(-cartan(i, j)))) return false;
      QMatrix Ei = rep.core(UqGen::E(i), P);
      QMatrix comm = qmatrix_add(qmatrix_mul(Ei, Fj), qmatrix_scale(qmatrix_mul(Fj, Ei), QScalar(-1)));
      QMatrix expect(d, std::vector<QScalar>(d));
      if (i == j) {
        QMatrix k2 = qmatrix_mul(Ki, Ki), km2 = qmatrix_mul(Kinv, Kinv);
        expect = qmatrix_scale(qmatrix_add(k2, qmatrix_scale(km2, QScalar(-1))), qq.inverse());
      }
      if (comm != expect) return false;
    }
  }
  return true;
}

bool check_antipode_conjugation(int N, const Presentation& P) {
  UqMatrixRep rep = sigma_rep(N, P);
  const std::size_t d = rep.dim();
  const auto& R = rep.weights;
  auto conj = [&](const QMatrix& m) {
    QMatrix out = m;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) out[i][j] = R[i].pow(2) * m[i][j] * R[j].pow(-2);
    }
    return out;
  };
  for (int i = 1; i <= P.n(); ++i) {
    QMatrix E = qmatrix_transpose(rep.core(UqGen::E(i), P));
    QMatrix F = qmatrix_transpose(rep.core(UqGen::F(i), P));
    QMatrix K = qmatrix_transpose(rep.core(UqGen::K(i), P));
    QMatrix Ki = qmatrix_transpose(rep.core(UqGen::Kinv(i), P));
    // S(E) = -qE, S^{-1}(E) = -q^{-1}E; S(F) = -q^{-1}F, S^{-1}(F) = -qF; S(K) = S^{-1}(K) = K^{-1}
    if (conj(qmatrix_scale(E, -QScalar::q_pow(1))) != qmatrix_scale(E, -QScalar::q_pow(-1))) return false;
    if (conj(qmatrix_scale(F, -QScalar::q_pow(-1))) != qmatrix_scale(F, -QScalar::q_pow(1))) return false;
    if (conj(Ki) != Ki) return false;
    if (conj(K) != K) return false;
  }
  return true;
}

}  // namespace qcpn
