// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hofa/cocycle.hpp"
#include "hofa/cube.hpp"
#include "hofa/decompose.hpp"
#include "hofa/gowers.hpp"
#include "hofa/heisenberg.hpp"
#include "hofa/io.hpp"
#include "hofa/moments.hpp"
#include "hofa/parallel.hpp"
#include "hofa/polymap.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hofa;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure reasons; pass stays false once anything fails.
class Verdict {
 public:
  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass_ = false;
    if (++failures_ <= 3) reasons_ += (reasons_.empty() ? "" : "; ") + what;
  }
  Outcome finish(const std::string& summary) const {
    std::string d = summary;
    if (!pass_) d += " | " + std::to_string(failures_) + " failure(s): " + reasons_;
    return {pass_, d};
  }

 private:
  bool pass_ = true;
  std::size_t failures_ = 0;
  std::string reasons_;
};

double max_abs_diff(const GroupFunction& a, const GroupFunction& b) {
  double out = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) out = std::max(out, std::abs(a(x) - b(x)));
  return out;
}

std::vector<GroupFunction> random_slots(const FiniteAbelianGroup& g, std::size_t count, std::uint64_t seed) {
  std::vector<GroupFunction> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(testing::random_function(g, seed * 1000 + i));
  return out;
}

std::vector<FiniteAbelianGroup> small_groups(std::int64_t max_order) {
  std::vector<FiniteAbelianGroup> out;
  for (std::int64_t m = 2; m <= max_order; ++m) out.push_back(FiniteAbelianGroup::cyclic(m));
  for (auto f : std::vector<std::vector<std::int64_t>>{{2, 2}, {2, 4}, {2, 6}, {3, 3}, {2, 2, 2}, {4, 4}, {2, 2, 3}})
    if (FiniteAbelianGroup(f).order() <= static_cast<std::size_t>(max_order)) out.emplace_back(f);
  return out;
}

const std::vector<std::int64_t> kCyclicOrders{8, 16, 32, 64};

// --- 1 ----------------------------------------------------------------------
Outcome u2_identity() {
  Verdict v;
  double worst = 0.0;
  for (auto n : kCyclicOrders)
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto f = testing::random_function(FiniteAbelianGroup::cyclic(n), seed);
      double s = 0.0;
      for (const auto& c : oracle::dft(f)) s += std::pow(std::abs(c), 4);
      const double diff = std::abs(gowers_norm_exact(f, 2) - std::pow(s, 0.25));
      worst = std::max(worst, diff);
      v.require(diff <= 1e-9, "Z_" + std::to_string(n) + " seed " + std::to_string(seed));
    }
  return v.finish("400 functions, max |U_2 - (sum |c|^4)^(1/4)| = " + format_number(worst));
}

// --- 2 ----------------------------------------------------------------------
Outcome monotonicity() {
  Verdict v;
  std::size_t checked = 0;
  for (auto n : kCyclicOrders)
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto f = testing::random_function(FiniteAbelianGroup::cyclic(n), seed);
      const double u1 = gowers_norm_exact(f, 1), u2 = gowers_norm_exact(f, 2), u3 = gowers_norm_exact(f, 3);
      const std::string id = "Z_" + std::to_string(n) + " seed " + std::to_string(seed);
      v.require(u1 <= u2 + 1e-9 && u2 <= u3 + 1e-9, id + " monotonicity");
      v.require(u1 <= lp_norm(f, 1.0) + 1e-9, id + " U_1 vs L^1");
      v.require(u2 <= lp_norm(f, 2.0) + 1e-9, id + " U_2 vs L^2");
      v.require(u3 <= lp_norm(f, 4.0) + 1e-9, id + " U_3 vs L^4");
      const double ff = scalar_product(f, f).real();
      v.require(f.bound() <= 1.0 && sup_norm(f) <= 1.0, id + " not bounded by 1");
      v.require(ff >= u2 * u2 - 1e-9, id + " (f,f) vs U_2^2");
      v.require(ff >= std::pow(u3, 4) - 1e-9, id + " (f,f) vs U_3^4");
      ++checked;
    }
  return v.finish(std::to_string(checked) + " functions, U_1<=U_2<=U_3, U_k<=L^(2^(k-1)), (f,f)>=U_k^(2^(k-1))");
}

// --- 3 ----------------------------------------------------------------------
Outcome gcs() {
  Verdict v;
  const auto groups = small_groups(16);
  double min_gap = 1e300, max_eq = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto& g = groups[s % groups.size()];
    const unsigned k = 2 + static_cast<unsigned>(s % 2);
    const FunctionSystem sys(FunctionSystem::Kind::kAllSubsets, k, random_slots(g, std::size_t{1} << k, s));
    const double gap = gcs_gap(sys);
    min_gap = std::min(min_gap, gap);
    v.require(gap >= -1e-9, "system " + std::to_string(s));
    const auto diag = FunctionSystem::diagonal(FunctionSystem::Kind::kAllSubsets, k, testing::random_function(g, 7000 + s));
    const double eq = std::abs(gcs_gap(diag));
    max_eq = std::max(max_eq, eq);
    v.require(eq <= 1e-9, "diagonal system " + std::to_string(s));
  }
  return v.finish("100 systems, min gap " + format_number(min_gap) + ", max diagonal |gap| " + format_number(max_eq));
}

// --- 4 ----------------------------------------------------------------------
Outcome corner_bound() {
  Verdict v;
  const auto groups = small_groups(12);
  double min_gap = 1e300;
  std::size_t evaluations = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto& g = groups[s % groups.size()];
    const unsigned n = 2 + static_cast<unsigned>(s % 2);
    const FunctionSystem sys(FunctionSystem::Kind::kNonemptySubsets, n, random_slots(g, (std::size_t{1} << n) - 1, s));
    for (std::size_t x = 0; x < g.order(); ++x)
      for (unsigned j = 1; j <= n; ++j) {
        const double gap = cornineq_gap(sys, x, j);
        min_gap = std::min(min_gap, gap);
        ++evaluations;
        v.require(gap >= -1e-9, "system " + std::to_string(s) + " x " + std::to_string(x) + " j " + std::to_string(j));
      }
  }
  return v.finish("100 systems, " + std::to_string(evaluations) + " (x, j) pairs, min gap " + format_number(min_gap));
}

// --- 5 ----------------------------------------------------------------------
std::size_t degree_k_count_oracle(std::size_t order, unsigned k, unsigned n) {
  const auto alt = oracle::affine_cube_maps(k + 1, n);
  std::size_t count = 0;
  const FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(static_cast<std::int64_t>(order));
  oracle::for_tuples(order, std::size_t{1} << n, [&](const std::vector<std::size_t>& f) {
    for (const auto& img : alt) {
      std::size_t acc = 0;
      for (std::uint32_t w = 0; w < img.size(); ++w)
        acc = oracle::odd(w) ? g.subtract(acc, f[img[w]]) : g.add(acc, f[img[w]]);
      if (acc != 0) return;
    }
    ++count;
  });
  return count;
}

std::size_t znk_size_oracle(const FiniteAbelianGroup& g, unsigned n, unsigned k) {
  const unsigned d = n > k ? n - k : 0;
  const std::uint32_t full = (1u << n) - 1;
  std::size_t count = 0;
  oracle::for_tuples(g.order(), std::size_t{1} << n, [&](const std::vector<std::size_t>& m) {
    for (std::uint32_t free = 0; free <= full; ++free) {
      if (static_cast<unsigned>(__builtin_popcount(free)) != d) continue;
      for (std::uint32_t base = 0; base <= full; ++base) {
        if (base & free) continue;
        std::size_t acc = 0;
        for (std::uint32_t v = 0; v <= full; ++v)
          if ((v & ~free) == base) acc = g.add(acc, m[v]);
        if (acc != 0) return;
      }
    }
    ++count;
  });
  return count;
}

Outcome structure_counts() {
  Verdict v;
  std::size_t triples = 0;
  for (std::size_t order : {2u, 3u}) {
    const auto g = FiniteAbelianGroup::cyclic(static_cast<std::int64_t>(order));
    for (unsigned n = 1; n <= 3; ++n)
      for (unsigned k = 1; k <= 2; ++k) {
        const std::string id = "A=Z_" + std::to_string(order) + " n=" + std::to_string(n) + " k=" + std::to_string(k);
        std::size_t exponent = 0;
        for (unsigned i = 0; i <= std::min(n, k); ++i) exponent += static_cast<std::size_t>(binomial(n, i));
        const auto formula = static_cast<std::size_t>(std::llround(std::pow(order, exponent)));
        const auto brute = degree_k_count_oracle(order, k, n);
        v.require(brute == formula, id + " brute count " + std::to_string(brute) + " vs " + std::to_string(formula));
        v.require(enumerate_degree_k_cubes(g, k, n).size() == brute, id + " library enumeration");
        v.require(degree_k_cube_count(order, k, n) == brute, id + " library count");
        v.require(duality_check(g, n, k).agrees, id + " duality");
        ++triples;
      }
    for (unsigned n = 1; n <= 3; ++n)
      for (unsigned k = 0; k <= 2; ++k) {
        const auto rep = z_nk_span_check(g, n, k);
        const auto brute = znk_size_oracle(g, n, k);
        v.require(rep.span_equals_brute_force && rep.span_size == brute && rep.brute_force_size == brute,
                  "Z_{" + std::to_string(n) + "," + std::to_string(k) + "}(Z_" + std::to_string(order) + ") span");
      }
  }
  return v.finish(std::to_string(triples) + " (A, n, k) triples: counts, Z_{n,k} spans and duality");
}

// --- 6 ----------------------------------------------------------------------
bool witnessed(const AxiomReport& rep) {
  bool any = false;
  for (const auto& r : rep.results)
    if (!r.passed) {
      if (r.witness.empty()) return false;
      any = true;
    }
  return any;
}

Outcome nilspace_suite() {
  Verdict v;
  for (std::int64_t order = 2; order <= 5; ++order) {
    const auto g = FiniteAbelianGroup::cyclic(order);
    const auto space = Cubespace::linear(g, 3);
    const std::string id = "linear Z_" + std::to_string(order);
    v.require(check_nilspace_axioms(space, 3).all_passed(), id + " axioms");
    v.require(check_k_step(space, 1), id + " 1-step");
  }
  for (std::int64_t order : {2, 3})
    for (unsigned k = 1; k <= 2; ++k) {
      const auto g = FiniteAbelianGroup::cyclic(order);
      const auto space = Cubespace::degree_k(g, k, k + 1);
      const std::string id = "D_" + std::to_string(k) + "(Z_" + std::to_string(order) + ")";
      v.require(check_nilspace_axioms(space, k + 1).all_passed(), id + " axioms");
      v.require(check_k_step(space, k), id + " k-step");
    }
  const auto z3 = FiniteAbelianGroup::cyclic(3);
  const CounterRng rng(2024);
  std::size_t caught = 0;
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    auto space = Cubespace::linear(z3, 2);
    if (trial % 2 == 0) {
      const auto& twos = space.cubes(2);
      space.remove_cube(twos[rng.below(twos.size(), trial, 0)]);
    } else {
      Cube extra(4, 0);
      for (std::uint64_t draw = 0; space.contains(extra); ++draw)
        for (std::uint32_t w = 0; w < 4; ++w) extra[w] = rng.below(3, 1000 * trial + draw, w);
      space.add_cube(extra);
    }
    const bool ok = witnessed(check_nilspace_axioms(space, 2));
    caught += ok ? 1 : 0;
    v.require(ok, "mutation " + std::to_string(trial) + " not caught with a witness");
  }
  return v.finish("linear Z_2..Z_5 and D_1, D_2 over Z_2, Z_3 pass; " + std::to_string(caught) + "/20 mutations caught");
}

// --- 7 ----------------------------------------------------------------------
Outcome heisenberg() {
  Verdict v;
  for (auto [m, t] : std::vector<std::pair<std::int64_t, std::int64_t>>{{5, 2}, {7, 3}, {12, 7}, {50, 13}}) {
    const std::string id = "(" + std::to_string(m) + "," + std::to_string(t) + ")";
    const auto f = heis_sequence(m, t);
    for (std::int64_t k = 0; k < m; ++k) {
      const long double phase = static_cast<long double>((k * k * t) % (m * m)) / static_cast<long double>(m * m);
      v.require(std::abs(f(static_cast<std::size_t>(k)) - oracle::e(static_cast<double>(phase))) <= 1e-12,
                id + " value at k=" + std::to_string(k));
    }
    for (const auto& row : heis_comparison(m, t)) v.require(row.difference <= 1e-12, id + " comparison row");
    const auto gen = heis_generator(m, t);
    v.require(in_lattice(heis_pow(gen, m)), id + " M^m not integral");
    std::int64_t period = 0;
    for (std::int64_t k = 1; k <= m && period == 0; ++k)
      if (in_lattice(heis_pow(gen, k))) period = k;
    v.require(period == m, id + " period " + std::to_string(period));
  }

  // floor from the brute-force oracle on the small orders, then every order up to 64
  auto ts = [](std::int64_t m) { return std::vector<std::int64_t>{2, m / 3}; };
  double c0 = 1e300;
  for (std::int64_t m = 8; m <= 16; ++m)
    for (auto t : ts(m)) c0 = std::min(c0, oracle::uk(heis_sequence(m, t), 3));
  v.require(c0 > 0.0, "oracle floor is zero");
  double lowest = 1e300;
  std::string where;
  for (std::int64_t m = 8; m <= 64; ++m)
    for (auto t : ts(m)) {
      const double u3 = gowers_norm_exact(heis_sequence(m, t), 3);
      if (u3 < lowest) {
        lowest = u3;
        where = "m=" + std::to_string(m) + ",t=" + std::to_string(t);
      }
      v.require(u3 >= c0 - 1e-12, "U_3 " + format_number(u3) + " < c0 at m=" + std::to_string(m) + ",t=" + std::to_string(t));
    }
  return v.finish("pipeline, integrality and period exact; c0 = " + format_number(c0) + ", min U_3 over m in 8..64 = " +
                  format_number(lowest) + " at " + where);
}

// --- 8 ----------------------------------------------------------------------
Outcome cocycles() {
  Verdict v;
  const auto z3 = FiniteAbelianGroup::cyclic(3);
  const auto z5 = FiniteAbelianGroup::cyclic(5);
  const auto d1z3 = Cubespace::degree_k(z3, 1, 2);
  const auto linz5 = Cubespace::linear(z5, 2);
  std::size_t checked = 0;
  for (unsigned k = 1; k <= 2; ++k) {
    oracle::for_tuples(3, 3, [&](const std::vector<std::size_t>& f) {
      v.require(check_cocycle(coboundary(z3, f, d1z3, k)).passed(), "D_1(Z_3) additive coboundary");
      std::vector<cplx> phase(3);
      for (std::size_t x = 0; x < 3; ++x) phase[x] = oracle::e(static_cast<double>(f[x]) / 3.0);
      v.require(check_cocycle(coboundary(phase, d1z3, k)).passed(), "D_1(Z_3) multiplicative coboundary");
      checked += 2;
    });
    oracle::for_tuples(5, 5, [&](const std::vector<std::size_t>& f) {
      v.require(check_cocycle(coboundary(z5, f, linz5, k)).passed(), "linear Z_5 additive coboundary");
      ++checked;
    });
    for (std::uint64_t s = 0; s < 20; ++s) {
      std::vector<cplx> phase(5);
      const CounterRng rng(77);
      for (std::size_t x = 0; x < 5; ++x) phase[x] = oracle::e(rng.uniform(s, static_cast<std::uint32_t>(x)));
      v.require(check_cocycle(coboundary(phase, linz5, k)).passed(), "linear Z_5 multiplicative coboundary");
      ++checked;
    }
  }
  std::size_t perturbed = 0;
  for (const auto* space : {&d1z3, &linz5})
    for (unsigned k = 1; k <= 2; ++k)
      for (std::size_t i : {0u, 3u, 11u, 29u}) {
        const auto& target = space == &d1z3 ? z3 : z5;
        auto rho = zero_cocycle(target, *space, k);
        rho.values[i % rho.values.size()] = 1;
        const auto rep = check_cocycle(rho);
        v.require(!rep.passed() && !rep.witness.empty(), "additive perturbation not caught");
        std::vector<cplx> ones(space->points(), cplx(1.0));
        auto mult = coboundary(ones, *space, k);
        mult.values[i % mult.values.size()] *= oracle::e(0.1);
        const auto mrep = check_cocycle(mult);
        v.require(!mrep.passed() && !mrep.witness.empty(), "multiplicative perturbation not caught");
        perturbed += 2;
      }
  return v.finish(std::to_string(checked) + " coboundaries pass both laws; " + std::to_string(perturbed) +
                  " perturbations caught with witnesses");
}

// --- 9 ----------------------------------------------------------------------
std::string convergence_table(const ConvergenceReport& rep) {
  std::ostringstream os;
  for (const auto& r : rep.rows)
    os << r.m << ',' << r.spec_id << ',' << format_number(r.value.real()) << ',' << format_number(r.value.imag()) << ','
       << format_number(r.limit.real()) << ',' << format_number(r.limit.imag()) << ',' << format_number(r.gap) << '\n';
  return os.str();
}

ConvergenceReport example1_run() {
  const std::vector<std::int64_t> ms{2000};
  std::vector<MomentSpec> specs = MomentSpec::all_simple(2);
  ConvergenceOptions opts;
  opts.seed = 1;
  opts.limit_samples = 1'000'000;
  opts.finite_samples = 1'000'000;
  opts.cap = 1;  // sampled on both sides
  return convergence_report(example1_function, ms, specs, example1_limit(), opts);
}

std::string g_example1_table;

Outcome example1() {
  Verdict v;
  v.require(example1_multiplier(2000) == 1236, "a_2000");
  const auto rep = example1_run();
  g_example1_table = convergence_table(rep);
  double worst = 0.0;
  for (const auto& r : rep.rows) {
    worst = std::max(worst, r.gap);
    v.require(r.gap <= 0.05, r.spec_id + " gap " + format_number(r.gap));
  }
  v.require(rep.rows.size() == MomentSpec::all_simple(2).size(), "row count");
  return v.finish(std::to_string(rep.rows.size()) + " simple moments at m=2000, max gap " + format_number(worst));
}

// --- 10 ---------------------------------------------------------------------
GroupFunction synthetic(std::int64_t m, std::uint64_t seed) {
  const auto g = FiniteAbelianGroup::cyclic(m);
  const auto r = testing::random_function(g, seed);
  return GroupFunction::from_fn(g, [&](std::size_t x) {
    const double t = static_cast<double>(x) / static_cast<double>(m);
    return 0.3 * unit_phase(3.0 * t) + 0.2 * unit_phase(-5.0 * t) + 0.1 * unit_phase(11.0 * t) + 0.25 * r(x);
  });
}

Outcome decomposition() {
  Verdict v;
  std::size_t runs = 0, inverse_runs = 0;
  double min_ratio = 1e300;
  for (std::int64_t m : {64, 128, 256})
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto f = synthetic(m, seed);
      const std::string id = "m=" + std::to_string(m) + " seed " + std::to_string(seed);
      for (double eps : {0.5, 0.3, 0.2, 0.1}) {
        const auto res = u2_decompose(f, eps);
        const auto& d = res.diagnostics;
        const auto sum = res.f_s.combine(1.0, res.f_e, 1.0).combine(1.0, res.f_r, 1.0);
        v.require(max_abs_diff(sum, f) <= 1e-9, id + " additivity");
        v.require(d.remainder_u2 <= d.tolerance, id + " remainder above F(eps, m)");
        v.require(std::abs(gowers_norm_exact(res.f_r, 2) - d.remainder_u2) <= 1e-9, id + " reported remainder");
        v.require(std::abs(scalar_product(res.f_r, res.f_s.combine(1.0, res.f_e, 1.0))) <= 1e-9, id + " orthogonality");
        v.require(d.threshold > 0.0 &&
                      static_cast<double>(res.certificate.characters.size()) <= 1.0 / (d.threshold * d.threshold),
                  id + " character count above 1/delta^2");
        ++runs;
        if (u2_via_fourier(f) >= eps) {
          const auto cert = u2_inverse_certificate(f, eps);
          const double corr = std::abs(scalar_product(f, cert.character.as_function()));
          min_ratio = std::min(min_ratio, corr / (eps * eps));
          v.require(corr >= eps * eps, id + " inverse correlation below eps^2");
          ++inverse_runs;
        }
      }
    }
  return v.finish(std::to_string(runs) + " decompositions, " + std::to_string(inverse_runs) +
                  " inverse certificates, min |(f,chi)|/eps^2 = " + format_number(min_ratio));
}

// --- 11 ---------------------------------------------------------------------
void exponent_vectors(unsigned dim, unsigned max_total, std::vector<unsigned>& cur,
                      const std::function<void(const std::vector<unsigned>&)>& visit) {
  if (cur.size() == dim) {
    visit(cur);
    return;
  }
  unsigned used = 0;
  for (auto e : cur) used += e;
  for (unsigned e = 0; used + e <= max_total; ++e) {
    cur.push_back(e);
    exponent_vectors(dim, max_total, cur, visit);
    cur.pop_back();
  }
}

Outcome polynomial_maps() {
  Verdict v;
  std::size_t generators = 0;
  for (std::int64_t order : {2, 3, 4}) {
    const auto target = FiniteAbelianGroup::cyclic(order);
    const auto ops = abelian_target(target);
    for (unsigned dim = 1; dim <= 2; ++dim) {
      const auto box = dim == 1 ? TestBox::with_shifts(1, -3, 3, -2, 2) : TestBox::with_shifts(2, -2, 2, -1, 1);
      std::vector<unsigned> cur;
      exponent_vectors(dim, 3, cur, [&](const std::vector<unsigned>& exps) {
        const BinomialPolyMap phi(dim, target, {{1, exps}});
        const unsigned k = phi.degree();
        const PolyMap<std::size_t> f = [&phi](const IntVec& x) { return phi(x); };
        std::string id = "Z_" + std::to_string(order) + " exps";
        for (auto e : exps) id += " " + std::to_string(e);
        v.require(degree_check(f, k, box, ops), id + " fails at its degree");
        if (k > 0) v.require(!degree_check(f, k - 1, box, ops), id + " passes below its degree");
        ++generators;
      });
    }
  }
  const auto span = binomial_spanning_check(FiniteAbelianGroup::cyclic(2), 2, 2, 0, 3);
  v.require(span.equal, "spanning on [0,3]^2");
  for (auto [m, t] : std::vector<std::pair<std::int64_t, std::int64_t>>{{5, 2}, {7, 3}, {12, 7}, {50, 13}}) {
    const auto gen = heis_generator(m, t);
    const PolyMap<HeisenbergElement> powers = [gen](const IntVec& k) { return heis_pow(gen, k[0]); };
    v.require(v_polynomial_check(powers, TestBox::with_shifts(1, -4, 4, -3, 3)).passed(),
              "M^k for m=" + std::to_string(m));
  }
  return v.finish(std::to_string(generators) + " generators; spanning " + std::to_string(span.survivors) + " = " +
                  std::to_string(span.span_size) + " of " + std::to_string(span.maps_tested) + " maps; M^k V-polynomial");
}

// --- 12 ---------------------------------------------------------------------
std::string sampled_fingerprint() {
  std::ostringstream os;
  const auto f = testing::random_function(FiniteAbelianGroup::cyclic(64), 3);
  for (unsigned k = 1; k <= 3; ++k) {
    const auto s = gowers_norm_sampled(f, k, 200000, CounterRng(11));
    os << format_number(s.estimate) << ',' << format_number(s.standard_error) << '\n';
  }
  for (const auto& spec : MomentSpec::all_simple(2)) {
    const auto est = moment_sampled(f, spec, 100000, CounterRng(12));
    os << spec.label() << ',' << format_number(est.value.real()) << ',' << format_number(est.value.imag()) << ','
       << format_number(est.standard_error) << '\n';
  }
  const auto dist = sample_Dn(f, 2, 5000, CounterRng(13));
  for (const auto& row : dist.samples())
    for (const auto& z : row) os << format_number(z.real()) << ',' << format_number(z.imag()) << ';';
  os << '\n';
  const auto lim = moment_on_limit(example2_limit(), MomentSpec::triangle(), 200000, CounterRng(14));
  os << format_number(lim.value.real()) << ',' << format_number(lim.value.imag()) << '\n';
  return os.str();
}

Outcome determinism() {
  Verdict v;
  const std::size_t saved = worker_count();
  set_worker_count(0);
  const std::string base = sampled_fingerprint();
  v.require(sampled_fingerprint() == base, "rerun with the same seed differs");
  for (std::size_t workers : {1u, 2u, 8u}) {
    set_worker_count(workers);
    v.require(sampled_fingerprint() == base, "sampled kernels differ at " + std::to_string(workers) + " workers");
    if (!g_example1_table.empty())
      v.require(convergence_table(example1_run()) == g_example1_table,
                "torus example table differs at " + std::to_string(workers) + " workers");
  }
  set_worker_count(saved);
  return v.finish("sampled norms, moments, D_n, limit moments and the torus example table identical across reruns and 1/2/8 workers");
}

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0 means no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "U_2 Fourier identity", 10, u2_identity},
      {2, "monotonicity and L^p domination", 60, monotonicity},
      {3, "Gowers-Cauchy-Schwarz", 0, gcs},
      {4, "corner bound", 0, corner_bound},
      {5, "degree-k structure counts", 0, structure_counts},
      {6, "nilspace axiom suite", 120, nilspace_suite},
      {7, "Heisenberg reproduction", 0, heisenberg},
      {8, "cocycle laws", 0, cocycles},
      {9, "torus example convergence", 300, example1},
      {10, "U_2 decomposition and inverse certificate", 0, decomposition},
      {11, "polynomial map suite", 0, polynomial_maps},
      {12, "determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      out.pass = false;
      out.detail += " | runtime above " + format_number(c.time_limit_s) + " s";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << "criterion " << c.id << " [" << c.name << "]: " << (out.pass ? "PASS" : "FAIL") << " (" << timing
              << ") " << out.detail << std::endl;
    failed += out.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion/criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
