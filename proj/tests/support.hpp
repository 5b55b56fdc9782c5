#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "hofa/group.hpp"
#include "hofa/random.hpp"

namespace testing {

// Values uniform in the closed unit disk, a pure function of the seed.
inline hofa::GroupFunction random_function(const hofa::FiniteAbelianGroup& g, std::uint64_t seed) {
  const hofa::CounterRng rng(seed);
  std::vector<hofa::cplx> v(g.order());
  for (std::size_t x = 0; x < v.size(); ++x) {
    const double r = std::sqrt(rng.uniform(x, 0));
    v[x] = std::polar(r, 2.0 * std::numbers::pi * rng.uniform(x, 1));
  }
  return hofa::GroupFunction(g, std::move(v), 1.0);
}

inline hofa::GroupFunction random_real_function(const hofa::FiniteAbelianGroup& g, std::uint64_t seed) {
  const hofa::CounterRng rng(seed);
  std::vector<hofa::cplx> v(g.order());
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = 2.0 * rng.uniform(x, 0) - 1.0;
  return hofa::GroupFunction(g, std::move(v), 1.0);
}

inline hofa::GroupFunction delta_at_zero(const hofa::FiniteAbelianGroup& g) {
  const std::size_t zero = 0;
  return hofa::GroupFunction::indicator(g, std::span<const std::size_t>(&zero, 1));
}

// k -> e(k^2 / p) on Z_p.
inline hofa::GroupFunction quadratic_phase(std::int64_t p) {
  const auto g = hofa::FiniteAbelianGroup::cyclic(p);
  return hofa::GroupFunction::from_fn(g, [p](std::size_t k) {
    const auto kk = static_cast<std::int64_t>(k);
    return hofa::unit_phase(static_cast<double>(kk * kk % p) / static_cast<double>(p));
  });
}

}  // namespace testing
