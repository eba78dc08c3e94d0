#include "ecs/jsonio.hpp"

#include <cmath>
#include <cstdio>

namespace ecs {

Json rational_to_json(const Rational& v) { return v.to_string(); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw UsageError("rational value must be a string");
  return Rational::parse(j.get<std::string>());
}

Json ppoly_to_json(const PPoly& p) {
  Json arr = Json::array();
  for (int i = 0; i <= p.degree(); ++i) arr.push_back(rational_to_json(p.coeff((size_t)i)));
  if (arr.empty()) arr.push_back("0");
  return arr;
}

PPoly ppoly_from_json(const Json& j) {
  if (!j.is_array()) throw UsageError("polynomial value must be an array");
  std::vector<Rational> c;
  c.reserve(j.size());
  for (const auto& e : j) c.push_back(rational_from_json(e));
  return PPoly(std::move(c));
}

Json pratfunc_to_json(const PRatFunc& f) {
  Json j;
  j["num"] = ppoly_to_json(f.num());
  j["den"] = ppoly_to_json(f.den());
  return j;
}

PRatFunc pratfunc_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw UsageError("malformed rational function object");
  return PRatFunc(ppoly_from_json(j["num"]), ppoly_from_json(j["den"]));
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json monomial_series_to_json(const MonomialSeries& f) {
  Json j;
  j["n"] = f.num_vars;
  Json terms = Json::array();
  for (const auto& [exps, series] : f.terms) {
    Json t;
    t["exps"] = exps;
    t["series"] = series_to_json(series);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

std::string format_real(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.18Lg", v);
  return buf;
}

std::string verify_rows_to_csv(const std::vector<VerifyRow>& rows) {
  std::string out = "q,lambda,n,E_series,E_galerkin,abs_err,slope\n";
  long double prev_q = 0.0L;
  long double prev_err = 0.0L;
  bool have_prev = false;
  for (const auto& r : rows) {
    long double err = std::fabs(r.e_series - r.e_galerkin);
    long double qv = std::strtold(r.q.c_str(), nullptr);
    std::string slope;
    if (have_prev && err > 0.0L && prev_err > 0.0L && qv > 0.0L &&
        prev_q > 0.0L && qv != prev_q)
      slope = format_real(std::log(err / prev_err) / std::log(qv / prev_q));
    out += r.q;
    out += ',';
    out += r.lambda;
    out += ',';
    out += '"' + r.n + '"';
    out += ',';
    out += format_real(r.e_series);
    out += ',';
    out += format_real(r.e_galerkin);
    out += ',';
    out += format_real(err);
    out += ',';
    out += slope;
    out += '\n';
    if (qv > 0.0L && err > 0.0L) {
      prev_q = qv;
      prev_err = err;
      have_prev = true;
    }
  }
  return out;
}

}  // namespace ecs
