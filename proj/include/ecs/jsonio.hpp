#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "ecs/errors.hpp"
#include "ecs/fhat.hpp"
#include "ecs/prat.hpp"
#include "ecs/rational.hpp"
#include "ecs/series.hpp"

namespace ecs {

// Insertion-ordered JSON so emitted bytes are deterministic.
using Json = nlohmann::ordered_json;

Json rational_to_json(const Rational& v);
Rational rational_from_json(const Json& j);
Json ppoly_to_json(const PPoly& p);
PPoly ppoly_from_json(const Json& j);
Json pratfunc_to_json(const PRatFunc& f);
PRatFunc pratfunc_from_json(const Json& j);

// Canonical byte form: two space indent, trailing newline.
std::string dump_json(const Json& j);

inline Json scalar_to_json(const Rational& v) { return rational_to_json(v); }
inline Json scalar_to_json(const PRatFunc& v) { return pratfunc_to_json(v); }
inline void scalar_from_json(const Json& j, Rational& out) {
  out = rational_from_json(j);
}
inline void scalar_from_json(const Json& j, PRatFunc& out) {
  out = pratfunc_from_json(j);
}

template <class S>
Json series_to_json(const BiSeries<S>& s) {
  Json j;
  j["q2_order"] = s.q2_order();
  j["gamma_order"] = s.gamma_order();
  j["scalar"] = scalar_traits<S>::kind;
  Json terms = Json::array();
  for (const auto& [key, value] : s.terms()) {
    Json t;
    t["q2"] = key.first;
    t["gamma"] = key.second;
    t["value"] = scalar_to_json(value);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

template <class S>
BiSeries<S> series_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("q2_order") || !j.contains("gamma_order") ||
      !j.contains("scalar") || !j.contains("terms"))
    throw UsageError("malformed series object");
  if (j["scalar"].get<std::string>() != scalar_traits<S>::kind)
    throw UsageError("series scalar kind mismatch");
  BiSeries<S> s(j["q2_order"].get<int>(), j["gamma_order"].get<int>());
  for (const auto& t : j["terms"]) {
    S v;
    scalar_from_json(t.at("value"), v);
    s.add(t.at("q2").get<int>(), t.at("gamma").get<int>(), v);
  }
  return s;
}

template <class S>
Json alpha_entries_to_json(const std::map<std::vector<long>, BiSeries<S>>& entries) {
  Json arr = Json::array();
  for (const auto& [mu, series] : entries) {
    Json e;
    e["mu"] = mu;
    e["series"] = series_to_json(series);
    arr.push_back(std::move(e));
  }
  return arr;
}

Json monomial_series_to_json(const MonomialSeries& f);

struct VerifyRow {
  std::string q;
  std::string lambda;
  std::string n;
  long double e_series = 0.0L;
  long double e_galerkin = 0.0L;
};

// Columns: q, lambda, n, E_series, E_galerkin, abs_err, slope.  The slope
// entry compares consecutive rows of a q sweep and is empty on the first
// row and wherever either error vanishes.
std::string verify_rows_to_csv(const std::vector<VerifyRow>& rows);

std::string format_real(long double v);

}  // namespace ecs
