#include "qcpn/identities.hpp"
#include "qcpn/ncpoly.hpp"
#include "qcpn/projections.hpp"
#include "qcpn/sphere_rep.hpp"
#include "qcpn/suq2.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using qcpn::QScalar;
using json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnstable = 3;

struct Record {
  std::string check;
  std::vector<std::pair<std::string, std::string>> params;
  std::string value;
  std::string target;
  double error = 0;
  bool pass = true;
  bool unstable = false;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<Record> records;
  std::vector<std::string> lines;

  int exit_code() const {
    bool fail = false, unstable = false;
    for (const auto& r : records) {
      fail = fail || !r.pass;
      unstable = unstable || r.unstable;
    }
    if (unstable) return kExitUnstable;
    return fail ? kExitFail : kExitPass;
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string half(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit(const Report& rep, const std::string& format) {
  if (format == "json") {
    json j;
    j["command"] = rep.command;
    json meta = json::object();
    for (const auto& [k, v] : rep.meta) meta[k] = v;
    j["meta"] = meta;
    json recs = json::array();
    for (const auto& r : rep.records) {
      json e;
      e["check"] = r.check;
      json p = json::object();
      for (const auto& [k, v] : r.params) p[k] = v;
      e["params"] = p;
      e["value"] = r.value;
      e["target"] = r.target;
      e["error"] = r.error;
      e["status"] = r.unstable ? "unstable" : (r.pass ? "pass" : "fail");
      recs.push_back(e);
    }
    j["records"] = recs;
    if (!rep.lines.empty()) j["output"] = rep.lines;
    j["exit_code"] = rep.exit_code();
    std::cout << j.dump(2) << "\n";
    return;
  }
  if (format == "csv") {
    std::vector<std::string> keys;
    for (const auto& r : rep.records)
      for (const auto& [k, v] : r.params)
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    std::cout << "check";
    for (const auto& k : keys) std::cout << "," << k;
    std::cout << ",value,target,error,status\n";
    for (const auto& r : rep.records) {
      std::cout << csv_escape(r.check);
      for (const auto& k : keys) {
        std::string v;
        for (const auto& [pk, pv] : r.params)
          if (pk == k) v = pv;
        std::cout << "," << csv_escape(v);
      }
      std::cout << "," << csv_escape(r.value) << "," << csv_escape(r.target) << "," << num(r.error) << ","
                << (r.unstable ? "unstable" : (r.pass ? "pass" : "fail")) << "\n";
    }
    return;
  }
  std::cout << rep.command;
  for (const auto& [k, v] : rep.meta) std::cout << "  " << k << "=" << v;
  std::cout << "\n";
  for (const auto& line : rep.lines) std::cout << line << "\n";
  for (const auto& r : rep.records) {
    std::cout << (r.unstable ? "UNSTABLE " : (r.pass ? "PASS     " : "FAIL     ")) << r.check;
    for (const auto& [k, v] : r.params) std::cout << " " << k << "=" << v;
    std::cout << "  value=" << r.value;
    if (!r.target.empty()) std::cout << " target=" << r.target;
    std::cout << " error=" << num(r.error) << "\n";
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stoi(part));
      continue;
    }
    int a = std::stoi(part.substr(0, dots)), b = std::stoi(part.substr(dots + 2));
    if (a > b) throw std::invalid_argument("empty range " + part);
    for (int i = a; i <= b; ++i) out.push_back(i);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

// Twice the value of "3/2", "1.5" or "2".
int parse_twice(const std::string& t) {
  auto slash = t.find('/');
  if (slash != std::string::npos) {
    if (t.substr(slash + 1) != "2") throw std::invalid_argument("only halves are accepted: " + t);
    return std::stoi(t.substr(0, slash));
  }
  double v = std::stod(t);
  double tw = 2 * v;
  if (std::abs(tw - std::round(tw)) > 1e-12) throw std::invalid_argument("not a half-integer: " + t);
  return static_cast<int>(std::lround(tw));
}

// Half-integer list with unit steps, e.g. "1/2..9/2".
std::vector<int> parse_half_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_twice(part));
      continue;
    }
    int a = parse_twice(part.substr(0, dots)), b = parse_twice(part.substr(dots + 2));
    if (a > b || (b - a) % 2 != 0) throw std::invalid_argument("bad half-integer range " + part);
    for (int i = a; i <= b; i += 2) out.push_back(i);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(std::stod(part));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

void check_q(double q0) {
  if (!(q0 > 0 && q0 < 1)) throw std::invalid_argument("q0 must lie in (0,1)");
}

Record exact_record(const std::string& check, std::vector<std::pair<std::string, std::string>> params, bool ok) {
  Record r;
  r.check = check;
  r.params = std::move(params);
  r.value = ok ? "exact" : "nonzero";
  r.target = "exact";
  r.pass = ok;
  r.error = ok ? 0 : 1;
  return r;
}

struct Settings {
  double q0 = 0.5;
  int M = 40;
  std::string L = "12";
  double tol = 1e-8;
};

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcpn: exact and numeric checks for quantum projective spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "table";
  bool as_json = false, as_csv = false;
  std::string config_path;
  app.add_flag("--json", as_json, "JSON output");
  app.add_flag("--csv", as_csv, "CSV output");
  app.add_option("--config", config_path, "key=value file with defaults for q, M, L, tol");

  Settings S;
  auto add_q = [&](CLI::App* c) { return c->add_option("--q", S.q0, "evaluation point q0 in (0,1)"); };
  auto add_tol = [&](CLI::App* c) { return c->add_option("--tol", S.tol, "tolerance"); };

  // normalize
  auto* c_norm = app.add_subcommand("normalize", "print the normal form of an expression");
  std::string expr;
  int norm_n = 1;
  bool no_sphere = false;
  c_norm->add_option("expr", expr, "expression, e.g. \"z0* z1 - q z1 z0*\"")->required();
  c_norm->add_option("--n", norm_n, "level");
  c_norm->add_flag("--no-sphere", no_sphere, "skip the sphere reduction");

  // verify
  auto* c_verify = app.add_subcommand("verify", "exact and numeric verification suites");
  c_verify->require_subcommand(1);
  c_verify->fallthrough();
  int v_n = 1, v_Nmax = 3, v_samples = 500, v_maxlen = 3;
  std::uint64_t v_seed = 1;
  auto* v_proj = c_verify->add_subcommand("projections", "Psi^dag Psi = 1, P^2 = P = P^dag, qtrace(P_1) = 1");
  v_proj->add_option("--n", v_n, "level");
  v_proj->add_option("--Nmax", v_Nmax, "charges -Nmax..Nmax");
  auto* v_rel = c_verify->add_subcommand("relations", "relations normalize to zero; randomized associativity");
  v_rel->add_option("--n", v_n, "level");
  v_rel->add_option("--samples", v_samples, "random triples");
  v_rel->add_option("--max-len", v_maxlen, "maximal word length");
  v_rel->add_option("--seed", v_seed, "random seed");
  auto* v_eq = c_verify->add_subcommand("equivariance", "exact covariance of P'_N under sigma^N");
  v_eq->add_option("--n", v_n, "level");
  v_eq->add_option("--Nmax", v_Nmax, "charges -Nmax..Nmax");
  auto* v_tri = c_verify->add_subcommand("triple", "real spectral triple axioms on the interior window");
  std::string tri_j = "1/2,3/2";
  v_tri->add_option("--j", tri_j, "half-integers, e.g. 1/2..3/2");
  auto* tri_L = v_tri->add_option("--L", S.L, "truncation");
  auto* tri_q = add_q(v_tri);
  double tri_tol = 1e-9;
  v_tri->add_option("--tol", tri_tol, "tolerance");

  // pairing
  auto* c_pair = app.add_subcommand("pairing", "Fredholm pairing <[F_k],[P_{-N}]>");
  int p_n = 2;
  std::string p_N = "0..4", p_k = "0..2";
  c_pair->add_option("--n", p_n, "level");
  c_pair->add_option("--N", p_N, "charges, e.g. 0..4");
  c_pair->add_option("--k", p_k, "modules, e.g. 0..2");
  auto* pair_q = add_q(c_pair);
  auto* pair_M = c_pair->add_option("--M", S.M, "truncation");
  auto* pair_tol = add_tol(c_pair);

  // index
  auto* c_index = app.add_subcommand("index", "Index(p D_j^+ p)");
  std::string i_j = "1/2..9/2", i_q = "0.5";
  int i_L = 0;
  double i_tol = 1e-8;
  c_index->add_option("--j", i_j, "half-integers");
  c_index->add_option("--q", i_q, "comma separated q0 values");
  c_index->add_option("--L", i_L, "truncation (default 2j + 3)");
  c_index->add_option("--tol", i_tol, "rank tolerance");

  // spectrum
  auto* c_spec = app.add_subcommand("spectrum", "D_j^2 against q-integer products and Casimir blocks");
  std::string s_j = "1/2";
  double s_tol = 1e-10;
  c_spec->add_option("--j", s_j, "half-integers");
  auto* spec_L = c_spec->add_option("--L", S.L, "truncation");
  auto* spec_q = add_q(c_spec);
  c_spec->add_option("--tol", s_tol, "relative tolerance");
  bool s_dump = false;
  c_spec->add_flag("--eigenvalues", s_dump, "list |D| eigenvalues with multiplicities");

  // holo-dim
  auto* c_holo = app.add_subcommand("holo-dim", "dimension of holomorphic sections of Gamma_N on CP^1_q");
  std::string h_N = "-4..2";
  c_holo->add_option("--N", h_N, "charges");
  auto* holo_q = add_q(c_holo);
  int h_L = 0;
  c_holo->add_option("--L", h_L, "truncation (default |N|/2 + 4)");

  // tau1
  auto* c_tau = app.add_subcommand("tau1", "twisted Hochschild pairing at n = 1");
  std::string t_N = "0..2";
  double t_tol = 1e-6;
  c_tau->add_option("--N", t_N, "charges");
  auto* tau_q = add_q(c_tau);
  int t_L = 0;
  c_tau->add_option("--L", t_L, "truncation (default 2|N| + 2)");
  c_tau->add_option("--tol", t_tol, "relative tolerance");

  // identities
  auto* c_id = app.add_subcommand("identities", "Laplacian gap, q = 1 limits, curvature and Casimir values");
  int id_kmax = 10, id_Nmax = 10;
  c_id->add_option("--kmax", id_kmax, "largest k");
  c_id->add_option("--Nmax", id_Nmax, "largest N");

  // chern
  auto* c_chern = app.add_subcommand("chern", "Chern characters from Fredholm pairings and back");
  int ch_n = 4, ch_Nmax = 6;
  std::string ch_phi;
  c_chern->add_option("--n", ch_n, "level");
  c_chern->add_option("--Nmax", ch_Nmax, "rows of the pairing table");
  c_chern->add_option("--phi", ch_phi, "convert one comma separated phi vector (rationals a/b allowed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  }
  if (as_json && as_csv) {
    std::cerr << "choose one of --json and --csv\n";
    return kExitUsage;
  }
  format = as_json ? "json" : (as_csv ? "csv" : "table");

  Report rep;
  try {
    if (!config_path.empty()) {
      auto kv = read_config(config_path);
      auto unset = [](CLI::Option* o) { return o == nullptr || o->count() == 0; };
      if (kv.count("q") || kv.count("q0")) {
        double q = std::stod(kv.count("q") ? kv["q"] : kv["q0"]);
        if (unset(pair_q) && unset(spec_q) && unset(holo_q) && unset(tau_q) && unset(tri_q)) S.q0 = q;
      }
      if (kv.count("M") && unset(pair_M)) S.M = std::stoi(kv["M"]);
      if (kv.count("L") && unset(tri_L) && unset(spec_L)) S.L = kv["L"];
      if (kv.count("tol") && unset(pair_tol)) S.tol = std::stod(kv["tol"]);
    }

    if (c_norm->parsed()) {
      rep.command = "normalize";
      qcpn::Presentation P(norm_n, !no_sphere);
      qcpn::NCPoly nf = P.normalize(qcpn::parse_expression(expr));
      rep.meta = {{"n", std::to_string(norm_n)}, {"sphere", no_sphere ? "off" : "on"}};
      rep.lines.push_back(nf.str());
    } else if (v_proj->parsed()) {
      rep.command = "verify projections";
      rep.meta = {{"n", std::to_string(v_n)}, {"Nmax", std::to_string(v_Nmax)}};
      qcpn::Presentation P(v_n);
      for (int N = -v_Nmax; N <= v_Nmax; ++N) {
        auto r = qcpn::check_projection(N, P);
        std::vector<std::pair<std::string, std::string>> pp = {{"n", std::to_string(v_n)}, {"N", std::to_string(N)}};
        rep.records.push_back(exact_record("Psi^dag Psi = 1", pp, r.psi_normalised));
        rep.records.push_back(exact_record("P^2 = P", pp, r.idempotent));
        rep.records.push_back(exact_record("P^dag = P", pp, r.selfadjoint));
      }
      qcpn::NCPoly tr = qcpn::qtrace(qcpn::projection(1, P), P);
      Record r = exact_record("qtrace(P_1) = 1", {{"n", std::to_string(v_n)}, {"N", "1"}}, tr == qcpn::NCPoly(1));
      r.value = tr.str();
      r.target = "1";
      rep.records.push_back(r);
    } else if (v_rel->parsed()) {
      rep.command = "verify relations";
      rep.meta = {{"n", std::to_string(v_n)}, {"seed", std::to_string(v_seed)}};
      qcpn::Presentation P(v_n);
      auto rels = qcpn::sphere_relations(P);
      int bad = 0;
      for (const auto& r : rels)
        if (!P.is_zero(r)) ++bad;
      Record rr = exact_record("relations normalize to zero", {{"n", std::to_string(v_n)}}, bad == 0);
      rr.value = std::to_string(rels.size() - bad) + "/" + std::to_string(rels.size());
      rep.records.push_back(rr);
      auto a = qcpn::check_associativity(P, v_samples, v_maxlen, v_seed);
      Record ra = exact_record("associativity (ab)c = a(bc)", {{"n", std::to_string(v_n)}, {"samples", std::to_string(a.samples)}},
                               a.failures == 0);
      ra.value = std::to_string(a.samples - a.failures) + "/" + std::to_string(a.samples);
      rep.records.push_back(ra);
    } else if (v_eq->parsed()) {
      rep.command = "verify equivariance";
      rep.meta = {{"n", std::to_string(v_n)}, {"Nmax", std::to_string(v_Nmax)}};
      qcpn::Presentation P(v_n);
      for (int N = -v_Nmax; N <= v_Nmax; ++N) {
        std::vector<std::pair<std::string, std::string>> pp = {{"n", std::to_string(v_n)}, {"N", std::to_string(N)}};
        for (int i = 1; i <= v_n; ++i) {
          for (const auto& x : {qcpn::UqGen::E(i), qcpn::UqGen::F(i), qcpn::UqGen::K(i), qcpn::UqGen::Kinv(i)}) {
            auto res = qcpn::check_equivariance(N, x, P);
            auto p2 = pp;
            p2.emplace_back("x", x.str());
            rep.records.push_back(exact_record("covariance of P'_N", p2, qcpn::is_zero_matrix(res)));
          }
        }
        rep.records.push_back(exact_record("sigma^N relations", pp, qcpn::check_sigma_relations(N, P)));
        rep.records.push_back(exact_record("antipode conjugation by R_N^2", pp, qcpn::check_antipode_conjugation(N, P)));
      }
    } else if (v_tri->parsed()) {
      rep.command = "verify triple";
      check_q(S.q0);
      int L2 = parse_twice(S.L);
      rep.meta = {{"q0", num(S.q0)}, {"L", S.L}, {"tol", num(tri_tol)}};
      for (int j2 : parse_half_list(tri_j)) {
        for (const auto& r : qcpn::triple_axiom_suite(j2, L2, S.q0)) {
          Record rec;
          rec.check = r.name;
          rec.params = {{"j", half(j2)}};
          rec.value = num(r.value);
          rec.target = "0";
          rec.error = r.value;
          rec.pass = r.value < tri_tol;
          rep.records.push_back(rec);
        }
      }
    } else if (c_pair->parsed()) {
      rep.command = "pairing";
      check_q(S.q0);
      rep.meta = {{"n", std::to_string(p_n)}, {"q0", num(S.q0)}, {"M", std::to_string(S.M)}, {"tol", num(S.tol)}};
      for (int N : parse_int_list(p_N)) {
        for (int k : parse_int_list(p_k)) {
          auto r = qcpn::fredholm_pairing(N, k, p_n, S.M, S.q0);
          Record rec;
          rec.check = "<[F_k],[P_-N]>";
          rec.params = {{"n", std::to_string(p_n)}, {"k", std::to_string(k)}, {"N", std::to_string(N)},
                        {"q0", num(S.q0)}, {"M", std::to_string(S.M)}};
          rec.value = num(r.value);
          rec.target = std::to_string(r.target);
          rec.error = std::abs(r.value - static_cast<double>(r.target));
          rec.pass = rec.error < S.tol;
          rec.unstable = r.tail > S.tol;
          rep.records.push_back(rec);
        }
      }
    } else if (c_index->parsed()) {
      rep.command = "index";
      rep.meta = {{"q0", i_q}, {"tol", num(i_tol)}};
      for (int j2 : parse_half_list(i_j)) {
        int analytic = qcpn::index_analytic(j2);
        int branch = qcpn::index_branch_formula(j2);
        Record ra;
        ra.check = "index_analytic vs branch formula";
        ra.params = {{"j", half(j2)}};
        ra.value = std::to_string(analytic);
        ra.target = std::to_string(branch);
        ra.error = std::abs(analytic - branch);
        ra.pass = analytic == branch;
        rep.records.push_back(ra);
        for (double q0 : parse_double_list(i_q)) {
          check_q(q0);
          int L2 = i_L > 0 ? 2 * i_L : 2 * j2 + 6;
          auto r = qcpn::index_numeric(j2, L2, q0, i_tol);
          Record rn;
          rn.check = "index_numeric vs index_analytic";
          rn.params = {{"j", half(j2)}, {"q0", num(q0)}, {"L", half(L2)}};
          rn.value = std::to_string(r.value);
          rn.target = std::to_string(analytic);
          rn.error = std::abs(r.value - analytic);
          rn.pass = r.value == analytic && r.tail_zero;
          rn.unstable = r.unstable;
          rep.records.push_back(rn);
        }
      }
    } else if (c_spec->parsed()) {
      rep.command = "spectrum";
      check_q(S.q0);
      int L2 = parse_twice(S.L);
      rep.meta = {{"q0", num(S.q0)}, {"L", S.L}, {"tol", num(s_tol)}};
      for (int j2 : parse_half_list(s_j)) {
        auto s = qcpn::spectrum(j2, L2, S.q0);
        Record r1{"D_j^2 eigenvalues vs q-integer products", {{"j", half(j2)}, {"sectors", std::to_string(s.sectors)}},
                  num(s.d2_error), "0", s.d2_error, s.d2_error < s_tol, false};
        Record r2{"Casimir blocks vs [l+1/2]^2", {{"j", half(j2)}}, num(s.casimir_error), "0", s.casimir_error,
                  s.casimir_error < s_tol, false};
        rep.records.push_back(r1);
        rep.records.push_back(r2);
        if (s_dump) {
          std::vector<std::pair<double, int>> mult;
          for (double e : s.abs_eigenvalues) {
            if (!mult.empty() && std::abs(mult.back().first - e) <= 1e-9 * std::max(1.0, e))
              ++mult.back().second;
            else
              mult.emplace_back(e, 1);
          }
          for (const auto& [e, m] : mult)
            rep.lines.push_back("j=" + half(j2) + " eigenvalue=" + num(e) + " multiplicity=" + std::to_string(m));
        }
      }
    } else if (c_holo->parsed()) {
      rep.command = "holo-dim";
      check_q(S.q0);
      rep.meta = {{"q0", num(S.q0)}};
      for (int N : parse_int_list(h_N)) {
        int L2 = h_L > 0 ? 2 * h_L : std::abs(N) + 8;
        auto h = qcpn::holo_dim(N, L2, S.q0);
        int target = N <= 0 ? -N + 1 : 0;
        Record r{"dim H^0(Gamma_N)", {{"N", std::to_string(N)}, {"L", half(L2)}}, std::to_string(h.dim),
                 std::to_string(target), static_cast<double>(std::abs(h.dim - target)), h.dim == target, !h.truncation_safe};
        rep.records.push_back(r);
      }
    } else if (c_tau->parsed()) {
      rep.command = "tau1";
      check_q(S.q0);
      rep.meta = {{"q0", num(S.q0)}, {"tol", num(t_tol)}};
      for (int N : parse_int_list(t_N)) {
        int L2 = t_L > 0 ? 2 * t_L : 4 * std::abs(N) + 4;
        auto t = qcpn::tau1_pairing(N, L2, S.q0);
        double err = std::abs(t.value - t.target) / std::max(1.0, std::abs(t.target));
        double shift = std::abs(t.value - t.value_larger) / std::max(1.0, std::abs(t.value));
        Record r{"<[tau_1],[(P'_N,sigma^N)]>", {{"N", std::to_string(N)}, {"L", half(L2)}}, num(t.value),
                 num(t.target + 0.0), err, err < t_tol, shift > t_tol};
        if (N < 0) {
          r.target = "";
          r.error = 0;
          r.pass = true;
        }
        rep.records.push_back(r);
      }
      qcpn::Presentation P(1);
      qcpn::NCPoly A = P.mul(P.zs(1), P.z(1)), B = P.mul(P.zs(1), P.z(0)), Bs = P.star(B);
      std::vector<std::pair<std::string, qcpn::NCPoly>> els = {{"1", qcpn::NCPoly(1)}, {"A", A}, {"B", B}, {"B*", Bs}};
      for (const auto& [na, a] : els) {
        for (const auto& [nb, b] : els) {
          double res = qcpn::modular_check(a, b, S.q0);
          rep.records.push_back(Record{"h(ab) = h(eta(b) a)", {{"a", na}, {"b", nb}}, num(res), "0", res, res < 1e-9, false});
        }
      }
    } else if (c_id->parsed()) {
      rep.command = "identities";
      rep.meta = {{"kmax", std::to_string(id_kmax)}, {"Nmax", std::to_string(id_Nmax)}};
      int gap_bad = 0, limit_bad = 0, symm_bad = 0, total = 0;
      for (int k = 0; k <= id_kmax; ++k) {
        for (int N = 0; N <= id_Nmax; ++N) {
          ++total;
          if (!qcpn::laplacian_gap_defect(k, N).is_zero()) ++gap_bad;
          qcpn::BigRat lim = qcpn::laplacian_eig(k, N).limit_q1();
          if (lim != qcpn::BigRat(2 * (k * k + k * N + 2 * k + N))) ++limit_bad;
          if (lim != qcpn::laplacian_eig(k, -N).limit_q1()) ++symm_bad;
        }
      }
      auto count_rec = [&](const std::string& name, int bad) {
        Record r = exact_record(name, {{"cases", std::to_string(total)}}, bad == 0);
        r.value = std::to_string(total - bad) + "/" + std::to_string(total);
        return r;
      };
      rep.records.push_back(count_rec("lambda_{k,N} - lambda_{k,-N} = (1 - q^-3)[2][N]", gap_bad));
      rep.records.push_back(count_rec("lambda_{k,N} at q = 1 equals 2(k^2 + kN + 2k + N)", limit_bad));
      rep.records.push_back(count_rec("lambda_{k,N} = lambda_{k,-N} at q = 1", symm_bad));
      for (int N = -3; N <= 3; ++N) {
        QScalar c = qcpn::monopole_curvature(N);
        bool ok = c.limit_q1() == qcpn::BigRat(N);
        Record r = exact_record("monopole curvature q^{N-1}[N] at q = 1 is N", {{"N", std::to_string(N)}}, ok);
        r.value = c.str();
        rep.records.push_back(r);
      }
      for (int d = 0; d <= 4; ++d) {
        QScalar c = qcpn::casimir_value(d);
        qcpn::BigRat want = qcpn::BigRat(d + 1, 2) * qcpn::BigRat(d + 1, 2);
        Record r = exact_record("Casimir [(d+1)/2]^2 at q = 1", {{"d", std::to_string(d)}}, c.limit_q1() == want);
        r.value = c.str();
        r.target = qcpn::to_string(want);
        rep.records.push_back(r);
      }
    } else if (c_chern->parsed()) {
      rep.command = "chern";
      if (ch_phi.empty()) rep.meta = {{"n", std::to_string(ch_n)}};
      auto parse_rat = [](const std::string& t) {
        auto slash = t.find('/');
        if (slash == std::string::npos) return qcpn::BigRat(qcpn::BigInt(t));
        return qcpn::BigRat(qcpn::BigInt(t.substr(0, slash)), qcpn::BigInt(t.substr(slash + 1)));
      };
      auto vec_str = [](const std::vector<qcpn::BigRat>& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + qcpn::to_string(v[i]);
        return s + ")";
      };
      if (!ch_phi.empty()) {
        qcpn::ChernVector phi{qcpn::ChernBasis::Phi, {}};
        std::stringstream ss(ch_phi);
        std::string part;
        while (std::getline(ss, part, ',')) phi.components.push_back(parse_rat(part));
        auto ch = qcpn::chern_from_phi(phi);
        auto back = qcpn::phi_from_chern(ch);
        Record r = exact_record("phi -> Ch -> phi round trip", {{"phi", vec_str(phi.components)}},
                                back.components == phi.components);
        r.value = vec_str(ch.components);
        rep.records.push_back(r);
      } else {
        auto table = qcpn::pairing_table(ch_n, ch_Nmax);
        for (int N = 0; N <= ch_Nmax; ++N) {
          qcpn::ChernVector phi{qcpn::ChernBasis::Phi, {}};
          for (const auto& v : table[N]) phi.components.emplace_back(v);
          auto ch = qcpn::chern_from_phi(phi);
          bool ok = qcpn::phi_from_chern(ch).components == phi.components;
          qcpn::BigRat fact = 1;
          for (int k = 0; k <= ch_n; ++k) {
            if (k > 0) fact *= k;
            qcpn::BigRat want = 1;
            for (int i = 0; i < k; ++i) want *= N;
            ok = ok && ch.components[k] == want / fact;
          }
          if (ch_n >= 2) {
            qcpn::BigRat phi2 = ch.components[2] - ch.components[1] / 2;
            ok = ok && denominator(phi2) == 1;
          }
          Record r = exact_record("Ch_k(L_-N) = N^k/k! from phi_j = C(N,j)", {{"N", std::to_string(N)}}, ok);
          r.value = vec_str(ch.components);
          std::vector<qcpn::BigRat> expect;
          qcpn::BigRat f = 1, pw = 1;
          for (int k = 0; k <= ch_n; ++k) {
            if (k > 0) {
              f *= k;
              pw *= N;
            }
            expect.push_back(pw / f);
          }
          r.target = vec_str(expect);
          rep.records.push_back(r);
        }
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitUnstable;
  }
  emit(rep, format);
  return rep.exit_code();
}
