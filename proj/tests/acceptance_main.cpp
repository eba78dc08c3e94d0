// Acceptance gate: one pass/fail line per criterion, exit 0 only if all
// nine hold.  Tolerances are pinned here, next to the checks that use
// them; everything not explicitly toleranced is exact arithmetic.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ecs/alpha.hpp"
#include "ecs/engines.hpp"
#include "ecs/errors.hpp"
#include "ecs/fhat.hpp"
#include "ecs/gk.hpp"
#include "ecs/golden.hpp"
#include "ecs/model.hpp"
#include "ecs/oracle.hpp"

using namespace ecs;

namespace {

int g_failures = 0;

void report(int idx, bool ok, const char* what) {
  std::printf("[%s] %d %s\n", ok ? "PASS" : "FAIL", idx, what);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

template <class F>
bool guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "  unexpected exception: %s\n", e.what());
    return false;
  }
}

PPoly psq_minus(long c) {
  return PPoly::variable() * PPoly::variable() - PPoly::constant(Rational(c));
}

PPoly ppow(const PPoly& base, int e) {
  PPoly r = PPoly::constant(Rational(1));
  for (int i = 0; i < e; ++i) r = r * base;
  return r;
}

// Random two particle configs shared between the cross-engine check and
// the structural vanishing check.
struct RandomConfig {
  ModelParams mp;
  QuantumNumbers n;
  EigenvalueSeries<Rational> eig;  // inversion engine, lq = 3, sg = 8
};

std::vector<RandomConfig> g_configs;

Rational rand_lambda(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> den(3, 11);
  long d = den(rng);
  std::uniform_int_distribution<long> num(1, 4 * d - 1);
  long p = num(rng);
  if (p % d == 0) ++p;  // integer couplings resonate at two particles
  return Rational(p, d);
}

// 1: the symbolic two particle shift through q^8, coupling^8 equals the
// hand frozen tables, and the two slices quoted independently below come
// out exactly.
bool check_frozen_tables() {
  SymbolicModel2 model{{1, 0}};
  auto rec = eigenvalue_by_nome_recursion(model, 4, 8);
  bool ok = rec.shift == golden_shift_series(4, 8);

  PRatFunc e1 = PRatFunc(1) / PRatFunc(psq_minus(1));
  ok = ok && rec.shift.coeff(1, 2) == e1;

  PPoly num = PPoly::constant(Rational(5)) * PPoly::variable() *
                  PPoly::variable() +
              PPoly::constant(Rational(7));
  PPoly den = PPoly::constant(Rational(4)) * psq_minus(4) *
              ppow(psq_minus(1), 3);
  ok = ok && rec.shift.coeff(2, 4) == PRatFunc(num, den);
  return ok;
}

// 2: the coupling^2 slice at order l in q^2 is (l/2) sum over divisors k
// of l of 1/(P-k) - 1/(P+k), checked exactly for l = 1..7.
bool check_divisor_rule() {
  SymbolicModel2 model{{1, 0}};
  auto rec = eigenvalue_by_nome_recursion(model, 7, 2);
  bool ok = true;
  for (long l = 1; l <= 7; ++l) {
    PRatFunc want;
    for (long k = 1; k <= l; ++k) {
      if (l % k) continue;
      PRatFunc lo(PPoly::variable() - PPoly::constant(Rational(k)));
      PRatFunc hi(PPoly::variable() + PPoly::constant(Rational(k)));
      want = want + PRatFunc(Rational(l, 2)) *
                        (PRatFunc(1) / lo - PRatFunc(1) / hi);
    }
    ok = ok && rec.shift.coeff(static_cast<int>(l), 2) == want;
  }
  return ok;
}

// 3: on ten randomized resonance free two particle configs (rational
// coupling in (0,4), mode spread at most 4, lq = 3, sg = 8) the
// inversion, fixed point and nome recursion engines agree exactly; on
// three randomized three particle configs inversion and fixed point
// agree exactly.
bool check_cross_engine() {
  std::mt19937_64 rng(8191);
  bool ok = true;
  int done = 0;
  for (int guard = 0; done < 10 && guard < 200; ++guard) {
    ModelParams mp;
    mp.num_particles = 2;
    mp.lambda = rand_lambda(rng);
    std::uniform_int_distribution<long> lo(-3, 3), gap(0, 4);
    long n2 = lo(rng);
    QuantumNumbers n{n2 + gap(rng), n2};
    if (!detect_resonance(mp, n, 10).empty()) continue;
    NumericModel model{mp, n};
    try {
      auto a = eigenvalue_by_series_inversion(model, 3, 8);
      auto b = eigenvalue_by_fixed_point(model, 3, 8);
      auto c = eigenvalue_by_nome_recursion(model, 3, 8);
      ok = ok && a.e0 == b.e0 && a.e0 == c.e0 && a.shift == b.shift &&
           a.shift == c.shift;
      g_configs.push_back({mp, n, std::move(a)});
      ++done;
    } catch (const ResonanceError&) {
    }
  }
  ok = ok && done >= 10;

  int done3 = 0;
  for (int guard = 0; done3 < 3 && guard < 100; ++guard) {
    ModelParams mp;
    mp.num_particles = 3;
    mp.lambda = rand_lambda(rng);
    std::uniform_int_distribution<long> lo(-2, 2), gap(0, 2);
    long n3 = lo(rng);
    long g2 = gap(rng), g1 = gap(rng);
    QuantumNumbers n{n3 + g1 + g2, n3 + g2, n3};
    if (!detect_resonance(mp, n, 10).empty()) continue;
    NumericModel model{mp, n};
    try {
      auto a = eigenvalue_by_series_inversion(model, 3, 8);
      auto b = eigenvalue_by_fixed_point(model, 3, 8);
      ok = ok && a.e0 == b.e0 && a.shift == b.shift;
      ++done3;
    } catch (const ResonanceError&) {
    }
  }
  return ok && done3 >= 3;
}

// 4: reversion terms from the closed multinomial formula equal the
// iterated abstract map through order 8 and the hand frozen printed
// lists through order 5.
bool check_reversion_terms() {
  bool ok = true;
  for (int ord = 1; ord <= 8; ++ord) {
    std::map<std::vector<unsigned>, Rational> got;
    for (const auto& t : inversion_terms(ord)) {
      ok = ok && got.emplace(t.k, t.coeff).second;
    }
    ok = ok && got == iterated_inversion_terms(ord);
    if (ord <= 5) ok = ok && got == golden_inversion_terms(ord);
  }
  return ok;
}

// Order n slice of the reversion built directly from the self energy
// table; used to show it carries no q power below n.
template <class Model>
bool reversion_orders_are_deep(const Model& model, int lq, int sg) {
  using S = typename Model::Scalar;
  auto table = build_self_energy(model, lq, sg, std::max(0, lq - 1));
  bool ok = true;
  for (int n = 1; n <= lq; ++n) {
    BiSeries<S> tn(lq, sg);
    for (const auto& term : inversion_terms(n)) {
      BiSeries<S> prod =
          BiSeries<S>::constant(lq, sg, scalar_traits<S>::one());
      for (size_t j = 0; j < term.k.size() && !prod.is_zero(); ++j)
        if (term.k[j] > 0)
          prod = prod * table.coeff[j].pow(term.k[j]);
      tn += prod.scaled(scalar_traits<S>::from_rational(term.coeff));
    }
    ok = ok && tn.min_q2_order() >= n;
  }
  return ok;
}

// 5: the coupling^0 and coupling^1 slices vanish identically, the whole
// shift vanishes at q^0, and the order n reversion slice is O(q^(2n)),
// on the symbolic model and on every random config from the cross-engine
// check.
bool check_structural_vanishing() {
  bool ok = true;
  SymbolicModel2 sym{{1, 0}};
  auto s = eigenvalue_by_series_inversion(sym, 4, 8);
  for (int l = 0; l <= 4; ++l)
    ok = ok && s.shift.coeff(l, 0).is_zero() && s.shift.coeff(l, 1).is_zero();
  for (int g = 0; g <= 8; ++g) ok = ok && s.shift.coeff(0, g).is_zero();
  ok = ok && reversion_orders_are_deep(sym, 4, 8);

  ok = ok && !g_configs.empty();
  for (const auto& rc : g_configs) {
    for (int l = 0; l <= 3; ++l)
      ok = ok && rc.eig.shift.coeff(l, 0).is_zero() &&
           rc.eig.shift.coeff(l, 1).is_zero();
    for (int g = 0; g <= 8; ++g) ok = ok && rc.eig.shift.coeff(0, g).is_zero();
    NumericModel model{rc.mp, rc.n};
    ok = ok && reversion_orders_are_deep(model, 3, 8);
  }
  return ok;
}

// 6: the defining recursion has exactly zero residual on every interior
// point of every table computed here, two particle symbolic and three
// particle numeric.
bool check_recursion_residual() {
  bool ok = true;
  int tables = 0;
  auto run = [&](const auto& model, const auto& shift, int lq, int sg,
                 long window) {
    auto tab = shift_coefficients(model, shift, lq, sg, window);
    auto res = recursion_residual(model, tab, shift);
    ++tables;
    ok = ok && !res.interior.empty();
    for (const auto& [mu, series] : res.interior) ok = ok && series.is_zero();
  };

  SymbolicModel2 sym{{1, 0}};
  run(sym, eigenvalue_by_series_inversion(sym, 3, 6).shift, 3, 6, 5);
  run(sym, eigenvalue_by_series_inversion(sym, 2, 5).shift, 2, 5, 4);

  ModelParams mp3;
  mp3.num_particles = 3;
  mp3.lambda = Rational(5, 7);
  QuantumNumbers n3{2, 1, 0};
  ok = ok && detect_resonance(mp3, n3, 10).empty();
  NumericModel m3{mp3, n3};
  run(m3, eigenvalue_by_fixed_point(m3, 2, 4).shift, 2, 4, 4);

  ModelParams mp3b;
  mp3b.num_particles = 3;
  mp3b.lambda = Rational(17, 7);
  QuantumNumbers n3b{2, 1, 0};
  ok = ok && detect_resonance(mp3b, n3b, 10).empty();
  NumericModel m3b{mp3b, n3b};
  run(m3b, eigenvalue_by_fixed_point(m3b, 2, 4).shift, 2, 4, 4);

  return ok && tables == 4;
}

// 7: series at lq = 4, sg = 12 for coupling 5/2, modes (1,0) against the
// Galerkin oracle with 61 basis functions: relative error at q = 0 below
// 1e-8; over q in {0.02, 0.04, 0.08} the least squares log-log slope is
// at least 8 (twice the q^2 truncation order) and every error stays
// below the magnitude of the first dropped term at q = 0.08.
bool check_oracle_agreement() {
  ModelParams mp;
  mp.num_particles = 2;
  mp.lambda = Rational(5, 2);
  NumericModel model{mp, {1, 0}};
  auto e4 = eigenvalue_by_series_inversion(model, 4, 12);
  auto e5 = eigenvalue_by_series_inversion(model, 5, 12);
  const Rational gamma = mp.gamma();

  long double lead = 0.0L;
  for (int s = 0; s <= 12; ++s) {
    Rational c = e5.shift.coeff(5, s);
    if (!c.is_zero()) lead += (c * Rational::pow(gamma, s)).to_long_double();
  }
  const long double bound = fabsl(lead) * powl(0.08L, 10.0L);

  num::OracleOptions opt;
  opt.basis = 61;
  opt.grid = num::suggested_grid(2.5L);

  long double g0 = num::oracle_eigenvalue(2.5L, 0.0L, {1, 0}, opt);
  long double s0 = eigenvalue_value(e4, Rational(0), gamma).to_long_double();
  bool ok = fabsl(s0 - g0) <= 1e-8L * fabsl(g0);

  const long double qv[3] = {0.02L, 0.04L, 0.08L};
  const Rational q2v[3] = {Rational(1, 2500), Rational(1, 625),
                           Rational(4, 625)};
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < 3; ++i) {
    long double want = num::oracle_eigenvalue(2.5L, qv[i], {1, 0}, opt);
    long double got = eigenvalue_value(e4, q2v[i], gamma).to_long_double();
    long double err = fabsl(got - want);
    ok = ok && err < bound;
    long double x = logl(qv[i]);
    long double y = logl(err > 0 ? err : 1e-30L);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  long double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  return ok && slope >= 8.0L;
}

// Degree block of the q = 0 relative operator on two variable monomial
// symmetric functions m_(a,b): diagonal a^2 + b^2 + lambda (a - b), off
// diagonal 2 lambda (a - b) toward every strictly dominated partition.
// Columns are images, rows are targets; the matrix is triangular in the
// dominance (first part descending) order of the basis.
std::vector<std::vector<long double>> degree_block(
    const std::vector<std::pair<long, long>>& basis, long double lam) {
  size_t m = basis.size();
  std::vector<std::vector<long double>> mat(
      m, std::vector<long double>(m, 0.0L));
  auto index = [&](long a, long b) {
    for (size_t i = 0; i < m; ++i)
      if (basis[i].first == a && basis[i].second == b)
        return static_cast<int>(i);
    return -1;
  };
  for (size_t p = 0; p < m; ++p) {
    auto [a, b] = basis[p];
    long d = a - b;
    mat[p][p] = static_cast<long double>(a * a + b * b) +
                lam * static_cast<long double>(d);
    for (long i = 1; 2 * i < d; ++i)
      mat[index(a - i, b + i)][p] += 2.0L * lam * static_cast<long double>(d);
    if (d > 0 && d % 2 == 0)
      mat[index(a - d / 2, b + d / 2)][p] +=
          2.0L * lam * static_cast<long double>(d);
  }
  return mat;
}

// Eigenvector of the triangular block for the eigenvalue at diagonal
// position t, normalized to 1 there; plain back substitution.
std::vector<long double> block_eigenvector(
    const std::vector<std::vector<long double>>& mat, size_t t) {
  size_t m = mat.size();
  std::vector<long double> v(m, 0.0L);
  v[t] = 1.0L;
  for (size_t r = t + 1; r < m; ++r) {
    long double s = 0.0L;
    for (size_t p = t; p < r; ++p) s += mat[r][p] * v[p];
    v[r] = s / (mat[t][t] - mat[r][r]);
  }
  return v;
}

// 8: q = 0 assembled eigenfunctions for modes (1,0), (2,0), (2,1) at
// couplings 1/2, 1, 2 match the eigenvector of the independently built
// degree block to 1e-8 relative after normalizing at the leading
// partition; at coupling 1 the (2,0) case is exactly the Schur vector
// (1,1).
bool check_polynomial_limit() {
  const long double kTol = 1e-8L;
  const std::vector<QuantumNumbers> modes = {{1, 0}, {2, 0}, {2, 1}};
  const std::vector<Rational> lams = {Rational(1, 2), Rational(1),
                                      Rational(2)};
  bool ok = true;
  for (const auto& n : modes) {
    for (const auto& lam : lams) {
      ModelParams mp;
      mp.num_particles = 2;
      mp.lambda = lam;
      NumericModel model{mp, n};
      auto tab = shift_coefficients_q0(model, 8,
                                       default_assembly_window(n, 0));
      auto phi = assemble_eigenfunction(n, lam, tab.entries, 0, 8);
      auto parts = partition_coefficients(phi);

      const Rational gam = mp.gamma();
      std::map<std::pair<long, long>, Rational> coeff;
      for (const auto& [part, series] : parts) {
        Rational val;
        for (const auto& [key, v] : series.terms())
          val += v * Rational::pow(gam, key.second);
        if (val.is_zero()) continue;
        if (part.size() != 2 || part[1] < 0 ||
            part[0] + part[1] != n[0] + n[1]) {
          ok = false;
          continue;
        }
        coeff[{part[0], part[1]}] = val;
      }

      long deg = n[0] + n[1];
      std::vector<std::pair<long, long>> basis;
      for (long a = deg; 2 * a >= deg; --a) basis.emplace_back(a, deg - a);
      size_t t = 0;
      while (t < basis.size() && basis[t] != std::make_pair(n[0], n[1])) ++t;
      if (t == basis.size()) return false;
      auto ref = block_eigenvector(degree_block(basis, lam.to_long_double()),
                                   t);

      auto itn = coeff.find(basis[t]);
      if (itn == coeff.end() || itn->second.is_zero()) {
        ok = false;
        continue;
      }
      long double scale = itn->second.to_long_double();
      long double worst = 0.0L;
      for (size_t i = 0; i < basis.size(); ++i) {
        auto it = coeff.find(basis[i]);
        long double got =
            it == coeff.end() ? 0.0L : it->second.to_long_double() / scale;
        worst = std::max(worst, fabsl(got - ref[i]));
      }
      ok = ok && worst <= kTol;

      if (lam == Rational(1) && n == QuantumNumbers{2, 0})
        ok = ok && coeff.count({2, 0}) && coeff.count({1, 1}) &&
             coeff[{2, 0}] == coeff[{1, 1}];
    }
  }
  return ok;
}

// 9: the randomized property suites and the command line suite all pass;
// each law in those suites runs at least 200 randomized cases.
bool check_property_suites(const char* argv0) {
  namespace fs = std::filesystem;
  fs::path dir = fs::path(argv0).parent_path();
  if (dir.empty()) dir = ".";
  bool ok = true;
  const char* suites[] = {"test_algebra", "test_model", "test_engines",
                          "test_alpha",   "test_fhat",  "test_oracle"};
  for (const char* s : suites) {
    std::string cmd = (dir / s).string() + " >/dev/null 2>&1";
    if (std::system(cmd.c_str()) != 0) {
      std::fprintf(stderr, "  property suite %s failed\n", s);
      ok = false;
    }
  }
  std::string cli = "ECS_BIN=" + (dir / "ecs").string() + " " +
                    (dir / "test_cli").string() + " >/dev/null 2>&1";
  if (std::system(cli.c_str()) != 0) {
    std::fprintf(stderr, "  property suite test_cli failed\n");
    ok = false;
  }
  return ok;
}

}  // namespace

int main(int, char** argv) {
  report(1, guarded(check_frozen_tables),
         "symbolic shift equals the frozen order 1..4 tables, quoted slices "
         "exact");
  report(2, guarded(check_divisor_rule),
         "coupling^2 slice obeys the divisor sum rule at orders 1..7");
  report(3, guarded(check_cross_engine),
         "engines agree exactly on randomized two and three particle "
         "configs");
  report(4, guarded(check_reversion_terms),
         "reversion terms match the iterated map (n <= 8) and the frozen "
         "lists (n <= 5)");
  report(5, guarded(check_structural_vanishing),
         "coupling^0, coupling^1 and q^0 slices vanish; order n slice is "
         "O(q^(2n))");
  report(6, guarded(check_recursion_residual),
         "defining recursion residual is exactly zero on all interior table "
         "points");
  report(7, guarded(check_oracle_agreement),
         "series matches the Galerkin oracle at q = 0 and scales at the "
         "truncation order");
  report(8, guarded(check_polynomial_limit),
         "q = 0 eigenfunctions match block diagonalization; coupling free "
         "case is Schur");
  report(9, guarded([&] { return check_property_suites(argv[0]); }),
         "property suites pass with at least 200 randomized cases per law");

  if (g_failures == 0) {
    std::printf("acceptance: all 9 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d of 9 criteria failed\n", g_failures);
  return 1;
}
