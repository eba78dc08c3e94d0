#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ecs/alpha.hpp"
#include "ecs/cache.hpp"
#include "ecs/engines.hpp"
#include "ecs/errors.hpp"
#include "ecs/fhat.hpp"
#include "ecs/golden.hpp"
#include "ecs/jsonio.hpp"
#include "ecs/latexout.hpp"
#include "ecs/model.hpp"
#include "ecs/oracle.hpp"

namespace {

using namespace ecs;

struct Opts {
  int num_particles = 2;
  std::string n_text;
  std::string lambda_text;
  bool symbolic = false;
  int lq = 3;
  int sg = 8;
  std::string algorithm = "lagrange";
  std::string format;
  std::string cache_dir;
  long window = -1;
  long pos_cap = -1;
  std::string q_list = "0,0.02,0.04,0.08";
  int basis = 61;
  int grid = 0;
};

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t pos = text.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

long parse_long(const std::string& s) {
  if (s.empty()) throw UsageError("empty integer field");
  size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw UsageError("not an integer: " + s);
  }
  if (pos != s.size()) throw UsageError("not an integer: " + s);
  return v;
}

QuantumNumbers parse_modes(const std::string& text, int expect) {
  if (text.empty()) throw UsageError("missing quantum numbers (-n)");
  QuantumNumbers n;
  for (const std::string& part : split_commas(text)) n.push_back(parse_long(part));
  if ((int)n.size() != expect)
    throw UsageError("expected " + std::to_string(expect) +
                     " quantum numbers, got " + std::to_string(n.size()));
  for (size_t i = 1; i < n.size(); ++i)
    if (n[i - 1] < n[i])
      throw UsageError("quantum numbers must be weakly decreasing");
  return n;
}

Rational parse_lambda(const std::string& text) {
  if (text.empty()) throw UsageError("missing coupling (--lambda)");
  Rational v = Rational::parse(text);
  if (!(Rational(0) < v)) throw UsageError("lambda must be positive");
  return v;
}

// Exact rational from a plain decimal string like "0.02".
Rational parse_decimal(const std::string& text) {
  if (text.empty()) throw UsageError("empty number");
  std::string digits;
  long frac_digits = 0;
  size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') {
    neg = text[i] == '-';
    ++i;
  }
  bool seen_dot = false;
  bool seen_digit = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_dot) throw UsageError("not a number: " + text);
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits += c;
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else {
      throw UsageError("not a number: " + text);
    }
  }
  if (!seen_digit) throw UsageError("not a number: " + text);
  Rational num = Rational::parse((neg ? "-" : "") + digits);
  Rational den = Rational::pow(Rational(10), frac_digits);
  return num / den;
}

std::string scalar_text(const Rational& v) { return v.to_string(); }
std::string scalar_text(const PRatFunc& v) { return v.to_string(); }

template <class S>
std::string series_text(const BiSeries<S>& s) {
  if (s.is_zero()) return "  (zero)\n";
  std::string out;
  for (const auto& [key, value] : s.terms()) {
    out += "  q^" + std::to_string(2 * key.first) + " gamma^" +
           std::to_string(key.second) + ": " + scalar_text(value) + "\n";
  }
  return out;
}

template <class S>
Json eigenvalue_json(const Opts& o, const std::string& lambda_label,
                     const std::string& algorithm, const S& e0,
                     const BiSeries<S>& shift) {
  Json j;
  j["num_particles"] = o.num_particles;
  j["n"] = Json::parse("[" + o.n_text + "]");
  j["lambda"] = lambda_label;
  j["q2_order"] = o.lq;
  j["gamma_order"] = o.sg;
  j["algorithm"] = algorithm;
  j["e0"] = scalar_to_json(e0);
  j["shift"] = series_to_json(shift);
  return j;
}

template <class S>
std::string shift_diff_report(const std::vector<std::string>& names,
                              const std::vector<BiSeries<S>>& series) {
  std::string report = "algorithms disagree:";
  int lq = series[0].q2_order();
  int sg = series[0].gamma_order();
  for (int l = 0; l <= lq; ++l) {
    for (int s = 0; s <= sg; ++s) {
      bool same = true;
      for (size_t i = 1; i < series.size(); ++i)
        if (!(series[i].coeff(l, s) == series[0].coeff(l, s))) same = false;
      if (same) continue;
      report += "\n  q^" + std::to_string(2 * l) + " gamma^" +
                std::to_string(s) + ":";
      for (size_t i = 0; i < series.size(); ++i)
        report +=
            "\n    " + names[i] + ": " + scalar_text(series[i].coeff(l, s));
    }
  }
  return report;
}

template <class Model>
SelfEnergyTable<Model> table_for(const Model& model, const Opts& o,
                                 const std::string& lambda_label) {
  CacheKey key;
  key.scalar = scalar_traits<typename Model::Scalar>::kind;
  key.num_particles = o.num_particles;
  key.n = model.n;
  key.lambda = lambda_label;
  key.lq = o.lq;
  key.sg = o.sg;
  std::string dir = resolve_cache_dir(o.cache_dir);
  return self_energy_cached(model, o.lq, o.sg, std::max(0, o.lq - 1), dir,
                            key);
}

template <class Model>
int emit_eigenvalue(const Model& model, const Opts& o,
                    const std::string& lambda_label) {
  using S = typename Model::Scalar;
  std::vector<std::string> names;
  std::vector<S> e0s;
  std::vector<BiSeries<S>> shifts;

  bool want_lagrange = o.algorithm == "lagrange" || o.algorithm == "all";
  bool want_fixpoint = o.algorithm == "fixpoint" || o.algorithm == "all";
  bool want_q2 = o.algorithm == "q2" || o.algorithm == "all";
  if (!want_lagrange && !want_fixpoint && !want_q2)
    throw UsageError("unknown algorithm: " + o.algorithm +
                     " (expected lagrange, q2, fixpoint, or all)");
  if (o.algorithm == "q2" && o.num_particles != 2)
    throw UsageError("the q2 recursion handles two particles only");
  if (o.num_particles != 2) want_q2 = false;

  if (want_lagrange || want_fixpoint) {
    SelfEnergyTable<Model> table = table_for(model, o, lambda_label);
    if (want_lagrange) {
      auto r = eigenvalue_by_series_inversion(model, o.lq, o.sg, &table);
      names.push_back("lagrange");
      e0s.push_back(r.e0);
      shifts.push_back(r.shift);
    }
    if (want_fixpoint) {
      auto r = eigenvalue_by_fixed_point(model, o.lq, o.sg, 0, &table);
      names.push_back("fixpoint");
      e0s.push_back(r.e0);
      shifts.push_back(r.shift);
    }
  }
  if (want_q2) {
    auto r = eigenvalue_by_nome_recursion(model, o.lq, o.sg, o.window);
    names.push_back("q2");
    e0s.push_back(r.e0);
    shifts.push_back(r.shift);
  }

  for (size_t i = 1; i < shifts.size(); ++i)
    if (!(e0s[i] == e0s[0]) || !(shifts[i] == shifts[0]))
      throw MismatchError(shift_diff_report(names, shifts));

  const S& e0 = e0s[0];
  const BiSeries<S>& shift = shifts[0];
  std::string algorithm = o.algorithm == "all" ? "all" : names[0];

  if (o.format == "json" || o.format.empty()) {
    std::cout << dump_json(eigenvalue_json(o, lambda_label, algorithm, e0, shift));
  } else if (o.format == "text") {
    std::cout << "E0 = " << scalar_text(e0) << "\n"
              << "shift terms:\n"
              << series_text(shift);
  } else if (o.format == "latex") {
    if constexpr (std::is_same_v<S, PRatFunc>) {
      std::cout << latex_eigenvalue(e0, shift) << "\n";
    } else {
      throw UsageError("latex output requires symbolic mode");
    }
  } else {
    throw UsageError("unsupported format for eigenvalue: " + o.format);
  }
  return 0;
}

int cmd_eigenvalue(const Opts& o) {
  QuantumNumbers n = parse_modes(o.n_text, o.num_particles);
  if (o.symbolic) {
    if (o.num_particles != 2)
      throw UsageError("symbolic mode requires two particles");
    SymbolicModel2 model{n};
    return emit_eigenvalue(model, o, "P");
  }
  Rational lambda = parse_lambda(o.lambda_text);
  NumericModel model{ModelParams{o.num_particles, lambda}, n};
  return emit_eigenvalue(model, o, lambda.to_string());
}

template <class Model>
int emit_alpha(const Model& model, const Opts& o,
               const std::string& lambda_label) {
  using S = typename Model::Scalar;
  SelfEnergyTable<Model> table = table_for(model, o, lambda_label);
  auto eig = eigenvalue_by_series_inversion(model, o.lq, o.sg, &table);
  long window = o.window >= 0 ? o.window : o.lq + 2;
  auto tab = shift_coefficients(model, eig.shift, o.lq, o.sg, window);
  auto residual = recursion_residual(model, tab, eig.shift);

  std::vector<RootVector> nonzero;
  for (const auto& [mu, series] : residual.interior)
    if (!series.is_zero()) nonzero.push_back(mu);

  if (o.format == "json" || o.format.empty()) {
    Json j;
    j["num_particles"] = o.num_particles;
    j["n"] = Json::parse("[" + o.n_text + "]");
    j["lambda"] = lambda_label;
    j["q2_order"] = o.lq;
    j["gamma_order"] = o.sg;
    j["window"] = window;
    j["entries"] = alpha_entries_to_json(tab.entries);
    Json r;
    r["interior_points"] = residual.interior.size();
    r["boundary_points"] = residual.boundary.size();
    r["max_residual"] = nonzero.empty() ? "0" : "nonzero";
    r["nonzero_interior"] = Json::array();
    for (const auto& mu : nonzero) r["nonzero_interior"].push_back(mu);
    j["residual"] = std::move(r);
    std::cout << dump_json(j);
  } else if (o.format == "text") {
    for (const auto& [mu, series] : tab.entries) {
      std::string label = "mu=(";
      for (size_t i = 0; i < mu.size(); ++i)
        label += (i ? "," : "") + std::to_string(mu[i]);
      label += ")";
      std::cout << label << "\n" << series_text(series);
    }
    std::cout << "interior_points: " << residual.interior.size() << "\n"
              << "boundary_points: " << residual.boundary.size() << "\n"
              << "max_residual: " << (nonzero.empty() ? "0" : "nonzero")
              << "\n";
  } else {
    throw UsageError("unsupported format for alpha: " + o.format);
  }
  return 0;
}

int cmd_alpha(const Opts& o) {
  QuantumNumbers n = parse_modes(o.n_text, o.num_particles);
  if (o.symbolic) {
    if (o.num_particles != 2)
      throw UsageError("symbolic mode requires two particles");
    SymbolicModel2 model{n};
    return emit_alpha(model, o, "P");
  }
  Rational lambda = parse_lambda(o.lambda_text);
  NumericModel model{ModelParams{o.num_particles, lambda}, n};
  return emit_alpha(model, o, lambda.to_string());
}

int cmd_jack(const Opts& o) {
  QuantumNumbers n = parse_modes(o.n_text, o.num_particles);
  if (o.symbolic)
    throw UsageError("eigenfunction assembly needs a rational lambda");
  Rational lambda = parse_lambda(o.lambda_text);
  NumericModel model{ModelParams{o.num_particles, lambda}, n};
  long window =
      o.window >= 0 ? o.window : default_assembly_window(n, 0);
  auto tab = shift_coefficients_q0(model, o.sg, window);
  KernelOptions kopt;
  kopt.lq = 0;
  kopt.pos_cap = o.pos_cap;
  MonomialSeries phi =
      assemble_eigenfunction(n, lambda, tab.entries, 0, o.sg, kopt);
  auto parts = partition_coefficients(phi);

  if (o.format == "json" || o.format.empty()) {
    Json j;
    j["num_particles"] = o.num_particles;
    j["n"] = Json::parse("[" + o.n_text + "]");
    j["lambda"] = lambda.to_string();
    j["gamma_order"] = o.sg;
    Json arr = Json::array();
    for (const auto& [part, series] : parts) {
      Json e;
      e["partition"] = part;
      e["series"] = series_to_json(series);
      arr.push_back(std::move(e));
    }
    j["coefficients"] = std::move(arr);
    std::cout << dump_json(j);
  } else if (o.format == "text") {
    for (const auto& [part, series] : parts) {
      std::string label = "m[";
      for (size_t i = 0; i < part.size(); ++i)
        label += (i ? "," : "") + std::to_string(part[i]);
      label += "]";
      std::cout << label << "\n" << series_text(series);
    }
  } else {
    throw UsageError("unsupported format for jack: " + o.format);
  }
  return 0;
}

int cmd_fhat(const Opts& o) {
  QuantumNumbers n = parse_modes(o.n_text, o.num_particles);
  if (o.symbolic)
    throw UsageError("kernel expansion needs a rational lambda");
  Rational lambda = parse_lambda(o.lambda_text);
  KernelOptions kopt;
  kopt.lq = o.lq;
  kopt.pos_cap = o.pos_cap;
  MonomialSeries f = fhat_series(n, lambda, kopt);
  if (o.format == "json" || o.format.empty()) {
    std::cout << dump_json(monomial_series_to_json(f));
  } else if (o.format == "text") {
    for (const auto& [exps, series] : f.terms) {
      std::string label = "z^(";
      for (size_t i = 0; i < exps.size(); ++i)
        label += (i ? "," : "") + std::to_string(exps[i]);
      label += ")";
      std::cout << label << "\n" << series_text(series);
    }
  } else {
    throw UsageError("unsupported format for fhat: " + o.format);
  }
  return 0;
}

int cmd_verify(const Opts& o) {
  if (o.num_particles != 2)
    throw UsageError("verify compares against the two particle solver");
  QuantumNumbers n = parse_modes(o.n_text, o.num_particles);
  Rational lambda = parse_lambda(o.lambda_text);
  NumericModel model{ModelParams{2, lambda}, n};
  SelfEnergyTable<NumericModel> table =
      table_for(model, o, lambda.to_string());
  auto eig = eigenvalue_by_series_inversion(model, o.lq, o.sg, &table);

  long double lam = lambda.to_long_double();
  num::OracleOptions oopt;
  oopt.basis = o.basis;
  oopt.grid = o.grid > 0 ? o.grid : num::suggested_grid(lam);
  if (o.grid > 0 && lam <= 0.5L && o.grid < num::suggested_grid(lam))
    std::fprintf(stderr,
                 "warning: quadrature grid %d is coarse for lambda <= 1/2; "
                 "weight moments may lose digits (suggested: %d)\n",
                 o.grid, num::suggested_grid(lam));

  std::vector<VerifyRow> rows;
  for (const std::string& qs : split_commas(o.q_list)) {
    Rational q = parse_decimal(qs);
    if (q.sign() < 0 || !(q < Rational(1)))
      throw UsageError("q must lie in [0, 1): " + qs);
    Rational e_series =
        eigenvalue_value(eig, q * q, model.params.gamma());
    long double e_oracle =
        num::oracle_eigenvalue(lam, q.to_long_double(), n, oopt);
    VerifyRow row;
    row.q = qs;
    row.lambda = o.lambda_text;
    row.n = o.n_text;
    row.e_series = e_series.to_long_double();
    row.e_galerkin = e_oracle;
    rows.push_back(std::move(row));
  }

  std::string csv = verify_rows_to_csv(rows);
  if (o.format == "csv" || o.format.empty() || o.format == "text") {
    std::cout << csv;
  } else if (o.format == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json e;
      e["q"] = r.q;
      e["lambda"] = r.lambda;
      e["n"] = Json::parse("[" + r.n + "]");
      e["E_series"] = format_real(r.e_series);
      e["E_galerkin"] = format_real(r.e_galerkin);
      e["abs_err"] = format_real(std::fabs(r.e_series - r.e_galerkin));
      arr.push_back(std::move(e));
    }
    std::cout << dump_json(arr);
  } else {
    throw UsageError("unsupported format for verify: " + o.format);
  }
  return 0;
}

int cmd_selftest() {
  auto results = run_selftests();
  bool all_ok = true;
  for (const auto& [name, ok] : results) {
    std::cout << name << ": " << (ok ? "PASS" : "FAIL") << "\n";
    if (!ok) all_ok = false;
  }
  std::cout << (all_ok ? "all checks passed" : "CHECKS FAILED") << "\n";
  return all_ok ? 0 : 1;
}

void add_common(CLI::App* sub, Opts& o) {
  sub->add_option("-N,--num-particles", o.num_particles, "particle count");
  sub->add_option("-n,--modes", o.n_text,
                  "comma separated quantum numbers, weakly decreasing");
  sub->add_option("--lambda", o.lambda_text, "coupling as p/q");
  sub->add_flag("--symbolic", o.symbolic,
                "keep the spectral parameter symbolic (two particles)");
  sub->add_option("--Lq", o.lq, "q^2 truncation order");
  sub->add_option("--Sgamma", o.sg, "coupling truncation order");
  sub->add_option("--format", o.format, "json, text, latex, or csv");
  sub->add_option("--cache-dir", o.cache_dir,
                  "series table cache directory (or ECS_CACHE_DIR)");
  sub->add_option("--window", o.window, "coefficient table window override");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact eigenvalue and eigenfunction series for a quantum"
               " particle model on the circle, with numeric cross checks"};
  app.require_subcommand(1);

  Opts oe, oa, oj, of, ov;
  CLI::App* se = app.add_subcommand("eigenvalue", "eigenvalue series");
  add_common(se, oe);
  se->add_option("--algorithm", oe.algorithm, "lagrange, q2, fixpoint, all");
  CLI::App* sa = app.add_subcommand("alpha", "eigenfunction coefficients");
  add_common(sa, oa);
  CLI::App* sj =
      app.add_subcommand("jack", "assembled symmetric polynomial at q = 0");
  add_common(sj, oj);
  sj->add_option("--pos-cap", oj.pos_cap, "kernel expansion cap override");
  CLI::App* sf = app.add_subcommand("fhat", "single mode kernel expansion");
  add_common(sf, of);
  sf->add_option("--pos-cap", of.pos_cap, "kernel expansion cap override");
  CLI::App* sv = app.add_subcommand(
      "verify", "series eigenvalue against the independent numeric solver");
  add_common(sv, ov);
  ov.n_text = "1,0";
  ov.lambda_text = "5/2";
  ov.lq = 4;
  ov.sg = 12;
  ov.format = "csv";
  sv->add_option("--q", ov.q_list, "comma separated nome values");
  sv->add_option("--basis", ov.basis, "solver basis size");
  sv->add_option("--grid", ov.grid, "solver quadrature points");
  CLI::App* st = app.add_subcommand("selftest", "built in reference checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (se->parsed()) return cmd_eigenvalue(oe);
    if (sa->parsed()) return cmd_alpha(oa);
    if (sj->parsed()) return cmd_jack(oj);
    if (sf->parsed()) return cmd_fhat(of);
    if (sv->parsed()) return cmd_verify(ov);
    if (st->parsed()) return cmd_selftest();
  } catch (const ResonanceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const MismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
