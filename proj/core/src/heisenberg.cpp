#include "hofa/heisenberg.hpp"

#include <cmath>
#include <numbers>

#include "hofa/error.hpp"

namespace hofa {

namespace mp = boost::multiprecision;

HeisenbergElement heis_identity() { return {0, 0, 0}; }

HeisenbergElement heis_mul(const HeisenbergElement& x, const HeisenbergElement& y) {
  return {x.a + y.a, x.b + y.b, x.c + y.c + x.a * y.b};
}

HeisenbergElement heis_inv(const HeisenbergElement& x) { return {-x.a, -x.b, x.a * x.b - x.c}; }

HeisenbergElement heis_pow(const HeisenbergElement& x, std::int64_t k) {
  HeisenbergElement base = k < 0 ? heis_inv(x) : x;
  auto e = static_cast<std::uint64_t>(k < 0 ? -(k + 1) + 1 : k);
  HeisenbergElement acc = heis_identity();
  while (e != 0) {
    if (e & 1) acc = heis_mul(acc, base);
    base = heis_mul(base, base);
    e >>= 1;
  }
  return acc;
}

namespace {
bool is_integer(const Rational& q) { return mp::denominator(q) == 1; }
}  // namespace

bool in_lattice(const HeisenbergElement& x) { return is_integer(x.a) && is_integer(x.b) && is_integer(x.c); }

Rational floor_of(const Rational& q) {
  const BigInt num = mp::numerator(q);
  const BigInt den = mp::denominator(q);  // positive
  BigInt quot = num / den;                // truncates toward zero
  if (num < 0 && quot * den != num) quot -= 1;
  return Rational(quot);
}

Rational frac_of(const Rational& q) { return q - floor_of(q); }

HeisenbergElement heis_generator(std::int64_t m, std::int64_t t) { return heis_power_closed_form(m, t, 1); }

HeisenbergElement heis_power_closed_form(std::int64_t m, std::int64_t t, std::int64_t k) {
  if (m <= 0) throw InvalidArgument("Heisenberg generator needs m > 0");
  const Rational mm(m);
  const Rational kk(k);
  return {Rational(2) * kk * t / mm, kk / mm, kk * kk * t / (mm * mm)};
}

Reduction reduce_to_fundamental_domain(const HeisenbergElement& g) {
  // g (p, q, r) = (a + p, b + q, c + r + a q)
  const Rational q = -floor_of(g.b);
  const Rational p = -floor_of(g.a);
  const Rational r = -floor_of(g.c + g.a * q);
  const HeisenbergElement gamma{p, q, r};
  return Reduction{NilmanifoldPoint{heis_mul(g, gamma)}, gamma};
}

cplx corner_observable(const NilmanifoldPoint& p) {
  // c lies in [0, 1); convert only now
  return unit_phase(p.representative.c.convert_to<double>());
}

namespace {
void check_sequence_range(std::int64_t m, std::int64_t t) {
  if (!(1 < t && t < m)) throw InvalidArgument("Heisenberg sequence needs 1 < t < m");
  if (static_cast<std::size_t>(m) > kMaxGroupOrder) throw InvalidArgument("Heisenberg sequence length above 2^20");
}
}  // namespace

GroupFunction heis_sequence(std::int64_t m, std::int64_t t) {
  check_sequence_range(m, t);
  const HeisenbergElement generator = heis_generator(m, t);
  std::vector<cplx> values(static_cast<std::size_t>(m));
  HeisenbergElement power = heis_identity();
  for (std::int64_t k = 0; k < m; ++k) {
    values[static_cast<std::size_t>(k)] = corner_observable(reduce_to_fundamental_domain(power).point);
    power = heis_mul(power, generator);
  }
  return GroupFunction(FiniteAbelianGroup::cyclic(m), std::move(values), 1.0);
}

GroupFunction heis_sequence_direct(std::int64_t m, std::int64_t t) {
  check_sequence_range(m, t);
  std::vector<cplx> values(static_cast<std::size_t>(m));
  const long double lambda_phase = static_cast<long double>(t) / (static_cast<long double>(m) * m);
  for (std::int64_t k = 0; k < m; ++k) {
    const long double phase = lambda_phase * static_cast<long double>(k) * static_cast<long double>(k);
    const long double angle = 2.0L * std::numbers::pi_v<long double> * phase;
    values[static_cast<std::size_t>(k)] = {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
  }
  return GroupFunction(FiniteAbelianGroup::cyclic(m), std::move(values), 1.0);
}

std::vector<HeisenbergRow> heis_comparison(std::int64_t m, std::int64_t t) {
  const auto pipeline = heis_sequence(m, t);
  const auto direct = heis_sequence_direct(m, t);
  std::vector<HeisenbergRow> rows;
  rows.reserve(static_cast<std::size_t>(m));
  for (std::int64_t k = 0; k < m; ++k) {
    const auto i = static_cast<std::size_t>(k);
    rows.push_back({k, pipeline(i), direct(i), std::abs(pipeline(i) - direct(i))});
  }
  return rows;
}

// ---------------------------------------------------------------------------

HeisenbergElement HeisenbergFiltration::project(const HeisenbergElement& x, unsigned level) {
  switch (level) {
    case 0:
    case 1: return heis_identity();
    case 2: return {x.a, x.b, 0};
    default: return x;
  }
}

TargetGroup<HeisenbergElement> HeisenbergFiltration::quotient(unsigned level) {
  return TargetGroup<HeisenbergElement>{
      [level](const HeisenbergElement& x, const HeisenbergElement& y) { return project(heis_mul(x, y), level); },
      [level](const HeisenbergElement& x) { return project(heis_inv(x), level); },
      [level](const HeisenbergElement& x) { return project(x, level) == heis_identity(); }};
}

bool HeisenbergFiltration::commutator_condition(const std::vector<HeisenbergElement>& generators) {
  auto commutator = [](const HeisenbergElement& x, const HeisenbergElement& y) {
    return heis_mul(heis_mul(heis_inv(x), heis_inv(y)), heis_mul(x, y));
  };
  auto in_level = [](const HeisenbergElement& x, unsigned level) {
    return level <= 1 || (level == 2 ? (x.a == 0 && x.b == 0) : x == heis_identity());
  };
  for (unsigned i = 0; i < kLength; ++i) {
    for (const auto& x : generators) {
      if (!in_level(x, i)) continue;
      for (const auto& y : generators)
        if (!in_level(commutator(x, y), i + 1)) return false;
    }
  }
  return true;
}

TargetGroup<HeisenbergElement> heisenberg_target() { return HeisenbergFiltration::quotient(3); }

bool VPolynomialReport::passed() const {
  for (bool b : level_passed)
    if (!b) return false;
  return true;
}

VPolynomialReport v_polynomial_check(const PolyMap<HeisenbergElement>& phi, const TestBox& box) {
  VPolynomialReport report;
  for (unsigned level = 0; level <= HeisenbergFiltration::kLength; ++level) {
    const PolyMap<HeisenbergElement> projected = [&phi, level](const IntVec& g) {
      return HeisenbergFiltration::project(phi(g), level);
    };
    report.level_passed[level] = degree_check(projected, level, box, HeisenbergFiltration::quotient(level));
  }
  return report;
}

}  // namespace hofa
