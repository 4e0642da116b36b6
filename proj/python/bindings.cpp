#include "qcpn/identities.hpp"
#include "qcpn/ncpoly.hpp"
#include "qcpn/projections.hpp"
#include "qcpn/sphere_rep.hpp"
#include "qcpn/suq2.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace qcpn;

namespace {

std::string big_str(const BigInt& v) { return v.str(); }

py::tuple rational_pair(const BigRat& r) {
  return py::make_tuple(py::int_(py::str(numerator(r).str())), py::int_(py::str(denominator(r).str())));
}

BigRat rational_from(const py::handle& x) {
  py::object num = x.attr("numerator"), den = x.attr("denominator");
  return BigRat(BigInt(py::str(num).cast<std::string>()), BigInt(py::str(den).cast<std::string>()));
}

ChernVector chern_vector(const py::sequence& seq, ChernBasis basis) {
  ChernVector v{basis, {}};
  for (const auto& x : seq) v.components.push_back(rational_from(x));
  return v;
}

std::vector<py::tuple> chern_out(const ChernVector& v) {
  std::vector<py::tuple> out;
  for (const auto& c : v.components) out.push_back(rational_pair(c));
  return out;
}

NCPoly parse_at(const std::string& expr, const Presentation& P) { return P.normalize(parse_expression(expr)); }

}  // namespace

PYBIND11_MODULE(_qcpn, m) {
  m.doc() = "Exact and numeric routines for quantum projective spaces";

  py::class_<QScalar>(m, "QScalar")
      .def(py::init<long long>(), py::arg("value") = 0)
      .def_static("q_pow_half", &QScalar::q_pow_half, py::arg("half_exp"), py::arg("c") = 1)
      .def_static("q_pow", &QScalar::q_pow)
      .def("__add__", [](const QScalar& a, const QScalar& b) { return a + b; })
      .def("__sub__", [](const QScalar& a, const QScalar& b) { return a - b; })
      .def("__mul__", [](const QScalar& a, const QScalar& b) { return a * b; })
      .def("__truediv__", [](const QScalar& a, const QScalar& b) { return a / b; })
      .def("__neg__", [](const QScalar& a) { return -a; })
      .def("__eq__", [](const QScalar& a, const QScalar& b) { return a == b; })
      .def("pow", &QScalar::pow)
      .def("is_zero", &QScalar::is_zero)
      .def("eval", &QScalar::eval, py::arg("q0"))
      .def("_limit_q1", [](const QScalar& a) { return rational_pair(a.limit_q1()); })
      .def("__str__", &QScalar::str)
      .def("__repr__", [](const QScalar& a) { return "QScalar(" + a.str() + ")"; });

  m.def("qint_half", &qint_half, py::arg("twice_x"));
  m.def("qint", &qint, py::arg("x"));
  m.def("qfactorial", &qfactorial, py::arg("k"));
  m.def("qmultinomial", &qmultinomial, py::arg("parts"));

  m.def(
      "normalize", [](const std::string& expr, int n, bool sphere) { return Presentation(n, sphere).normalize(parse_expression(expr)).str(); },
      py::arg("expr"), py::arg("n") = 1, py::arg("sphere") = true);
  m.def(
      "is_zero", [](const std::string& expr, int n) { return Presentation(n).is_zero(parse_expression(expr)); },
      py::arg("expr"), py::arg("n") = 1);
  m.def(
      "check_associativity",
      [](int n, int samples, int max_len, std::uint64_t seed) {
        AssociativityReport r = check_associativity(Presentation(n), samples, max_len, seed);
        return py::dict(py::arg("samples") = r.samples, py::arg("failures") = r.failures);
      },
      py::arg("n"), py::arg("samples") = 500, py::arg("max_len") = 3, py::arg("seed") = 1);

  m.def(
      "check_projection",
      [](int N, int n) {
        ProjectionReport r = check_projection(N, Presentation(n));
        return py::dict(py::arg("psi_normalised") = r.psi_normalised, py::arg("idempotent") = r.idempotent,
                        py::arg("selfadjoint") = r.selfadjoint);
      },
      py::arg("N"), py::arg("n") = 1);
  m.def(
      "projection",
      [](int N, int n) {
        Presentation P(n);
        AlgebraMatrix a = projection(N, P);
        std::vector<std::vector<std::string>> core;
        for (const auto& row : a.core) {
          core.emplace_back();
          for (const auto& e : row) core.back().push_back(e.str());
        }
        std::vector<std::string> rad;
        for (const auto& r : a.row_rad) rad.push_back(r.str());
        return py::dict(py::arg("radicands") = rad, py::arg("core") = core);
      },
      py::arg("N"), py::arg("n") = 1);
  m.def(
      "qtrace_projection", [](int N, int n) {
        Presentation P(n);
        return qtrace(projection(N, P), P).str();
      },
      py::arg("N"), py::arg("n") = 1);
  m.def(
      "check_equivariance",
      [](int N, int n) {
        Presentation P(n);
        bool ok = check_sigma_relations(N, P);
        for (int i = 1; i <= n; ++i)
          for (const auto& x : {UqGen::E(i), UqGen::F(i), UqGen::K(i), UqGen::Kinv(i)})
            ok = ok && is_zero_matrix(check_equivariance(N, x, P));
        return ok;
      },
      py::arg("N"), py::arg("n") = 1);

  m.def(
      "fredholm_pairing",
      [](int N, int k, int n, int M, double q0) {
        PairingResult r = fredholm_pairing(N, k, n, M, q0);
        return py::dict(py::arg("value") = r.value, py::arg("tail") = r.tail, py::arg("target") = r.target,
                        py::arg("states") = r.states);
      },
      py::arg("N"), py::arg("k"), py::arg("n"), py::arg("M") = 40, py::arg("q0") = 0.5);

  m.def("index_analytic", &index_analytic, py::arg("j2"));
  m.def("index_branch_formula", &index_branch_formula, py::arg("j2"));
  m.def(
      "index_numeric",
      [](int j2, int L2, double q0, double tol) {
        IndexNumeric r = index_numeric(j2, L2, q0, tol);
        return py::dict(py::arg("value") = r.value, py::arg("kernel") = r.kernel, py::arg("cokernel") = r.cokernel,
                        py::arg("unstable") = r.unstable, py::arg("tail_zero") = r.tail_zero);
      },
      py::arg("j2"), py::arg("L2"), py::arg("q0") = 0.5, py::arg("tol") = 1e-8);
  m.def("poincare_pairing", &poincare_pairing, py::arg("i"), py::arg("k"), py::arg("i2"), py::arg("k2"), py::arg("j2"));
  m.def(
      "triple_axioms",
      [](int j2, int L2, double q0) {
        py::dict d;
        for (const auto& r : triple_axiom_suite(j2, L2, q0)) d[py::str(r.name)] = r.value;
        return d;
      },
      py::arg("j2"), py::arg("L2") = 24, py::arg("q0") = 0.5);
  m.def(
      "spectrum",
      [](int j2, int L2, double q0) {
        SpectrumReport s = spectrum(j2, L2, q0);
        return py::dict(py::arg("d2_error") = s.d2_error, py::arg("casimir_error") = s.casimir_error,
                        py::arg("sectors") = s.sectors, py::arg("abs_eigenvalues") = s.abs_eigenvalues);
      },
      py::arg("j2"), py::arg("L2") = 24, py::arg("q0") = 0.5);
  m.def(
      "holo_dim",
      [](int N, int L2, double q0) {
        HoloResult h = holo_dim(N, L2, q0);
        return py::make_tuple(h.dim, h.truncation_safe);
      },
      py::arg("N"), py::arg("L2"), py::arg("q0") = 0.5);
  m.def(
      "tau1_pairing",
      [](int N, int L2, double q0) {
        Tau1Result t = tau1_pairing(N, L2, q0);
        return py::dict(py::arg("value") = t.value, py::arg("value_larger") = t.value_larger, py::arg("target") = t.target);
      },
      py::arg("N"), py::arg("L2"), py::arg("q0") = 0.5);
  m.def(
      "haar", [](const std::string& expr, double q0) {
        Presentation P(1);
        NCPoly a = parse_at(expr, P);
        LeftRegular reg(std::max(a.degree(), 0) + 2, q0);
        return haar(reg, a);
      },
      py::arg("expr"), py::arg("q0") = 0.5);
  m.def(
      "modular_check", [](const std::string& a, const std::string& b, double q0) {
        Presentation P(1);
        return modular_check(parse_at(a, P), parse_at(b, P), q0);
      },
      py::arg("a"), py::arg("b"), py::arg("q0") = 0.5);

  m.def("laplacian_eig", &laplacian_eig, py::arg("k"), py::arg("N"));
  m.def("laplacian_gap_defect", &laplacian_gap_defect, py::arg("k"), py::arg("N"));
  m.def("monopole_curvature", &monopole_curvature, py::arg("N"));
  m.def("casimir_value", &casimir_value, py::arg("d"));
  m.def("stirling2", [](int k, int j) { return py::int_(py::str(big_str(stirling2(k, j)))); });
  m.def("stirling1", [](int k, int j) { return py::int_(py::str(big_str(stirling1(k, j)))); });
  m.def("_chern_from_phi", [](const py::sequence& s) { return chern_out(chern_from_phi(chern_vector(s, ChernBasis::Phi))); });
  m.def("_phi_from_chern", [](const py::sequence& s) { return chern_out(phi_from_chern(chern_vector(s, ChernBasis::Ch))); });
  m.def("pairing_table", [](int n, int Nmax) {
    std::vector<std::vector<py::int_>> out;
    for (const auto& row : pairing_table(n, Nmax)) {
      out.emplace_back();
      for (const auto& v : row) out.back().push_back(py::int_(py::str(big_str(v))));
    }
    return out;
  });
}
