#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "ecs/alpha.hpp"
#include "ecs/engines.hpp"
#include "ecs/fhat.hpp"
#include "ecs/golden.hpp"
#include "ecs/jsonio.hpp"
#include "ecs/model.hpp"
#include "ecs/oracle.hpp"

namespace py = pybind11;

namespace {

using namespace ecs;

template <class Model>
EigenvalueSeries<typename Model::Scalar> run_engine(const Model& model, int lq,
                                                    int sg,
                                                    const std::string& algo) {
  if (algo == "lagrange") return eigenvalue_by_series_inversion(model, lq, sg);
  if (algo == "fixpoint") return eigenvalue_by_fixed_point(model, lq, sg);
  if (algo == "q2") {
    auto r = eigenvalue_by_nome_recursion(model, lq, sg);
    return {r.e0, r.shift};
  }
  throw UsageError("unknown algorithm: " + algo);
}

std::string eigenvalue_str(const std::vector<long>& n, const std::string& lam,
                           int lq, int sg, const std::string& algo,
                           bool symbolic) {
  Json j;
  if (symbolic) {
    if (n.size() != 2) throw UsageError("symbolic mode requires two particles");
    auto r = run_engine(SymbolicModel2{n}, lq, sg, algo);
    j["e0"] = scalar_to_json(r.e0);
    j["shift"] = series_to_json(r.shift);
  } else {
    ModelParams mp{static_cast<int>(n.size()), Rational::parse(lam)};
    auto r = run_engine(NumericModel{mp, n}, lq, sg, algo);
    j["e0"] = scalar_to_json(r.e0);
    j["shift"] = series_to_json(r.shift);
  }
  return dump_json(j);
}

std::string eigenvalue_at_str(const std::vector<long>& n,
                              const std::string& lam, int lq, int sg,
                              const std::string& q_text) {
  ModelParams mp{static_cast<int>(n.size()), Rational::parse(lam)};
  NumericModel model{mp, n};
  auto r = eigenvalue_by_series_inversion(model, lq, sg);
  Rational q = Rational::parse(q_text);
  return eigenvalue_value(r, q * q, mp.gamma()).to_string();
}

std::string alpha_str(const std::vector<long>& n, const std::string& lam,
                      int lq, int sg, long window, bool symbolic) {
  Json j;
  if (window < 0) window = lq + 2;
  auto fill = [&](auto&& model) {
    auto eig = eigenvalue_by_series_inversion(model, lq, sg);
    auto tab = shift_coefficients(model, eig.shift, lq, sg, window);
    auto residual = recursion_residual(model, tab, eig.shift);
    bool clean = true;
    for (const auto& [mu, series] : residual.interior)
      if (!series.is_zero()) clean = false;
    j["window"] = window;
    j["entries"] = alpha_entries_to_json(tab.entries);
    j["max_residual"] = clean ? "0" : "nonzero";
  };
  if (symbolic) {
    if (n.size() != 2) throw UsageError("symbolic mode requires two particles");
    fill(SymbolicModel2{n});
  } else {
    ModelParams mp{static_cast<int>(n.size()), Rational::parse(lam)};
    fill(NumericModel{mp, n});
  }
  return dump_json(j);
}

std::string jack_str(const std::vector<long>& n, const std::string& lam,
                     int sg, long window) {
  Rational lambda = Rational::parse(lam);
  ModelParams mp{static_cast<int>(n.size()), lambda};
  NumericModel model{mp, n};
  if (window < 0) window = default_assembly_window(n, 0);
  auto tab = shift_coefficients_q0(model, sg, window);
  MonomialSeries phi = assemble_eigenfunction(n, lambda, tab.entries, 0, sg);
  Json arr = Json::array();
  for (const auto& [part, series] : partition_coefficients(phi)) {
    Json e;
    e["partition"] = part;
    e["series"] = series_to_json(series);
    arr.push_back(std::move(e));
  }
  Json j;
  j["coefficients"] = std::move(arr);
  return dump_json(j);
}

std::string fhat_str(const std::vector<long>& n, const std::string& lam,
                     int lq, long pos_cap) {
  KernelOptions opt;
  opt.lq = lq;
  opt.pos_cap = pos_cap;
  return dump_json(monomial_series_to_json(
      fhat_series(n, Rational::parse(lam), opt)));
}

double oracle_eigenvalue_py(double lambda, double q,
                            const std::vector<long>& n, int basis, int grid) {
  num::OracleOptions opt;
  opt.basis = basis;
  opt.grid = grid > 0 ? grid : num::suggested_grid((num::Real)lambda);
  return (double)num::oracle_eigenvalue((num::Real)lambda, (num::Real)q, n,
                                        opt);
}

}  // namespace

PYBIND11_MODULE(_ecsolver, m) {
  m.doc() = "series eigenvalue engines and numeric cross checks";
  m.def("eigenvalue_json", &eigenvalue_str, py::arg("n"),
        py::arg("lam") = std::string(), py::arg("lq") = 3, py::arg("sg") = 8,
        py::arg("algorithm") = std::string("lagrange"),
        py::arg("symbolic") = false);
  m.def("eigenvalue_at", &eigenvalue_at_str, py::arg("n"), py::arg("lam"),
        py::arg("lq"), py::arg("sg"), py::arg("q"));
  m.def("alpha_json", &alpha_str, py::arg("n"),
        py::arg("lam") = std::string(), py::arg("lq") = 3, py::arg("sg") = 8,
        py::arg("window") = -1, py::arg("symbolic") = false);
  m.def("jack_json", &jack_str, py::arg("n"), py::arg("lam"),
        py::arg("sg") = 8, py::arg("window") = -1);
  m.def("fhat_json", &fhat_str, py::arg("n"), py::arg("lam"),
        py::arg("lq") = 0, py::arg("pos_cap") = -1);
  m.def("oracle_eigenvalue", &oracle_eigenvalue_py, py::arg("lam"),
        py::arg("q"), py::arg("n"), py::arg("basis") = 61,
        py::arg("grid") = 0);
  m.def("selftest", &run_selftests);
}
