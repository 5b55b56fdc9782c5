#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hofa/group.hpp"
#include "hofa/polymap.hpp"

namespace hofa {

using Rational = boost::multiprecision::cpp_rational;

/// Upper unitriangular 3x3 matrix [[1, a, c], [0, 1, b], [0, 0, 1]] with
/// exact rational entries.
struct HeisenbergElement {
  Rational a;  // entry (1,2)
  Rational b;  // entry (2,3)
  Rational c;  // entry (1,3)

  bool operator==(const HeisenbergElement&) const = default;
};

HeisenbergElement heis_identity();
/// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
HeisenbergElement heis_mul(const HeisenbergElement& x, const HeisenbergElement& y);
/// (a,b,c)^{-1} = (-a, -b, ab - c).
HeisenbergElement heis_inv(const HeisenbergElement& x);
/// x^k by repeated squaring; negative k allowed.
HeisenbergElement heis_pow(const HeisenbergElement& x, std::int64_t k);
/// All three entries are integers, i.e. x lies in the lattice Gamma.
bool in_lattice(const HeisenbergElement& x);

Rational floor_of(const Rational& q);
Rational frac_of(const Rational& q);

/// M = (2t/m, 1/m, t/m^2).
HeisenbergElement heis_generator(std::int64_t m, std::int64_t t);
/// M^k = (2kt/m, k/m, k^2 t/m^2).
HeisenbergElement heis_power_closed_form(std::int64_t m, std::int64_t t, std::int64_t k);

/// Coset g Gamma, stored through its representative with entries in [0, 1).
struct NilmanifoldPoint {
  HeisenbergElement representative;

  bool operator==(const NilmanifoldPoint&) const = default;
};

struct Reduction {
  NilmanifoldPoint point;
  HeisenbergElement gamma;  // g * gamma = point.representative, gamma in Gamma
};

/// Right-multiplies g by the unique lattice element landing in [0,1)^3.
Reduction reduce_to_fundamental_domain(const HeisenbergElement& g);

/// g(A) = e(A_{1,3}) on the fundamental domain.
cplx corner_observable(const NilmanifoldPoint& p);

/// k -> g(M^k Gamma) on Z_m, via exact reduction. Requires 1 < t < m.
GroupFunction heis_sequence(std::int64_t m, std::int64_t t);
/// k -> lambda^{k^2}, lambda = e(t/m^2), in floating point.
GroupFunction heis_sequence_direct(std::int64_t m, std::int64_t t);

struct HeisenbergRow {
  std::int64_t k = 0;
  cplx pipeline;
  cplx direct;
  double difference = 0.0;
};
std::vector<HeisenbergRow> heis_comparison(std::int64_t m, std::int64_t t);

// --- filtration and V-polynomials -------------------------------------------

/// F_0 = F_1 = H, F_2 = center, F_3 = {1}.
struct HeisenbergFiltration {
  static constexpr unsigned kLength = 3;

  /// Representative of x modulo F_level.
  static HeisenbergElement project(const HeisenbergElement& x, unsigned level);
  /// Group operations of H / F_level on projected representatives.
  static TargetGroup<HeisenbergElement> quotient(unsigned level);
  /// [F_i, F] subset F_{i+1} on the supplied generators.
  static bool commutator_condition(const std::vector<HeisenbergElement>& generators);
};

TargetGroup<HeisenbergElement> heisenberg_target();

struct VPolynomialReport {
  std::array<bool, HeisenbergFiltration::kLength + 1> level_passed{};  // phi mod F_i has degree <= i
  bool passed() const;
};

/// Checks phi: Z -> H is a V-polynomial: phi mod F_i is a Leibman polynomial
/// of degree i for each level, on the box of base points and shifts.
VPolynomialReport v_polynomial_check(const PolyMap<HeisenbergElement>& phi, const TestBox& box);

}  // namespace hofa
