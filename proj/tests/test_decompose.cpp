#include <doctest.h>

#include <cmath>

#include "hofa/decompose.hpp"
#include "hofa/gowers.hpp"
#include "support.hpp"

using namespace hofa;

namespace {

// 0.3 e(3x/m) + 0.2 e(-5x/m) + small flat noise, scaled into the unit disk.
GroupFunction synthetic(std::int64_t m, std::uint64_t seed, double noise = 0.25) {
  const auto g = FiniteAbelianGroup::cyclic(m);
  const auto r = testing::random_function(g, seed);
  return GroupFunction::from_fn(g, [&](std::size_t x) {
    const double t = static_cast<double>(x) / static_cast<double>(m);
    return 0.3 * unit_phase(3.0 * t) + 0.2 * unit_phase(-5.0 * t) + noise * r(x);
  });
}

double max_diff(const GroupFunction& a, const GroupFunction& b) {
  double out = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) out = std::max(out, std::abs(a(x) - b(x)));
  return out;
}

}  // namespace

TEST_CASE("balance of single characters") {
  const std::vector<std::pair<std::int64_t, double>> expected{{8, 1.0}, {16, 0.5}, {32, 0.5}, {64, 0.25}};
  for (auto [m, b] : expected) {
    const auto g = FiniteAbelianGroup::cyclic(m);
    const auto rep = balance_report({Character(g, 1)}, 6);
    CHECK(rep.b == b);
    for (std::size_t n = 0; n + 1 < rep.discrepancy.size(); ++n) CHECK(rep.discrepancy[n] == 0);
  }
  const auto z8 = FiniteAbelianGroup::cyclic(8);
  const auto rep = balance_report({Character(z8, 1)}, 6);
  CHECK(rep.discrepancy.back() == 1);

  // frequency 2 on Z_8 has order 4, caught already on points
  CHECK(balance_report({Character(z8, 2)}).discrepancy.front() == 1);
  CHECK(balance_report({Character(z8, 2)}).b == 1.0);

  const auto empty = balance_report({}, 4);
  CHECK(empty.n_checked == 4);
  CHECK(empty.b == 0.25);
  CHECK_THROWS_AS(balance_report({Character(z8, 1), Character(FiniteAbelianGroup::cyclic(9), 1)}), InvalidArgument);
}

TEST_CASE("decomposition of a structured function plus noise") {
  for (std::int64_t m : {64, 256}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto f = synthetic(m, seed);
      for (double eps : {0.5, 0.2, 0.1}) {
        const auto res = u2_decompose(f, eps);
        const auto& d = res.diagnostics;
        const auto sum = res.f_s.combine(1.0, res.f_e, 1.0).combine(1.0, res.f_r, 1.0);
        CHECK(max_diff(sum, f) <= 1e-9);
        CHECK(d.remainder_u2 <= d.tolerance + 1e-12);
        CHECK(d.tolerance == doctest::Approx(eps / (static_cast<double>(res.certificate.characters.size()) + 1.0)));
        CHECK(std::abs(d.norm_shift) <= d.tolerance + 1e-12);
        CHECK(std::abs(d.remainder_overlap) <= 1e-9);
        CHECK(d.error_l1 == 0.0);
        CHECK(std::abs(d.remainder_u2 - gowers_norm_exact(res.f_r, 2)) < 1e-9);
        const double delta = d.threshold;
        REQUIRE(delta > 0.0);
        CHECK(static_cast<double>(res.certificate.characters.size()) <= 1.0 / (delta * delta) + 1e-9);
        CHECK(max_diff(evaluate_certificate(res.certificate, f.group()), res.f_s) <= 1e-9);
        CHECK(res.certificate.complexity >= static_cast<std::int64_t>(res.certificate.characters.size()));
        CHECK(res.certificate.balance > 0.0);
        CHECK(res.certificate.balance <= 1.0);
      }
    }
  }
}

TEST_CASE("decomposition keeps the planted characters") {
  const auto f = synthetic(128, 7, 0.05);
  const auto res = u2_decompose(f, 0.3);
  bool has3 = false, has_minus5 = false;
  for (const auto& chi : res.certificate.characters) {
    has3 = has3 || chi.freq_index() == 3;
    has_minus5 = has_minus5 || chi.freq_index() == 123;
  }
  CHECK(has3);
  CHECK(has_minus5);
}

TEST_CASE("decomposition with a custom schedule and argument checks") {
  const auto f = synthetic(64, 1);
  const auto res = u2_decompose(f, 0.4, [](double eps, std::size_t) { return eps / 2.0; });
  CHECK(res.diagnostics.tolerance == doctest::Approx(0.2));
  CHECK(res.diagnostics.remainder_u2 <= 0.2);
  CHECK_THROWS_AS(u2_decompose(f, 0.0), InvalidArgument);
  CHECK_THROWS_AS(u2_decompose(f, -1.0), InvalidArgument);
  CHECK_THROWS_AS(u2_decompose(GroupFunction::constant(f.group(), 2.0), 0.1), InvalidArgument);
}

TEST_CASE("inverse certificate") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = synthetic(64, seed);
    const double norm = u2_via_fourier(f);
    for (double eps : {0.1, 0.2, 0.3}) {
      if (norm < eps) continue;
      const auto cert = u2_inverse_certificate(f, eps);
      CHECK(std::abs(cert.correlation) >= eps * eps);
      CHECK(std::abs(cert.correlation - scalar_product(f, cert.character.as_function())) < 1e-9);
      CHECK(cert.u2_norm == doctest::Approx(norm));
    }
  }
  const auto flat = testing::delta_at_zero(FiniteAbelianGroup::cyclic(64));
  try {
    u2_inverse_certificate(flat, 0.5);
    FAIL("expected a precondition failure");
  } catch (const PreconditionFailed& e) {
    CHECK(e.measured() == doctest::Approx(std::pow(64.0, -0.75)));
  }
  // ties resolve to the smallest index
  const auto two = GroupFunction::from_fn(FiniteAbelianGroup::cyclic(8), [](std::size_t x) {
    return 0.5 * unit_phase(2.0 * x / 8.0) + 0.5 * unit_phase(5.0 * x / 8.0);
  });
  CHECK(u2_inverse_certificate(two, 0.1).character.freq_index() == 2);
}
