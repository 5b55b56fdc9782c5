#pragma once

// Brute-force reference implementations. Everything here is computed straight
// from the defining formulas, without reusing the library's fast paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "hofa/group.hpp"
#include "hofa/random.hpp"

namespace oracle {

using hofa::cplx;

inline cplx e(double x) { return std::polar(1.0, 2.0 * std::numbers::pi * x); }

// chi_c(x) = e(sum_i c_i x_i / m_i), from the coordinate tuples directly.
inline cplx character(const hofa::FiniteAbelianGroup& g, std::size_t freq, std::size_t x) {
  const auto c = g.element(freq).coords;
  const auto y = g.element(x).coords;
  double phase = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    phase += static_cast<double>((c[i] * y[i]) % g.cyclic_factors()[i]) / static_cast<double>(g.cyclic_factors()[i]);
  return e(phase);
}

inline std::vector<cplx> dft(const hofa::GroupFunction& f) {
  const auto& g = f.group();
  const std::size_t n = g.order();
  std::vector<cplx> out(n);
  for (std::size_t c = 0; c < n; ++c) {
    cplx acc = 0.0;
    for (std::size_t x = 0; x < n; ++x) acc += f(x) * std::conj(character(g, c, x));
    out[c] = acc / static_cast<double>(n);
  }
  return out;
}

// sum_i v_i over the subset mask (bit i-1 <-> i) applied to the shifts.
inline std::size_t subset_sum(const hofa::FiniteAbelianGroup& g, std::size_t x, const std::vector<std::size_t>& t,
                              std::uint32_t mask) {
  std::size_t p = x;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (mask >> i & 1) p = g.add(p, t[i]);
  return p;
}

inline bool odd(std::uint32_t mask) { return (__builtin_popcount(mask) & 1) != 0; }

// Calls body(t) for every tuple t in A^k.
template <class Body>
void for_tuples(std::size_t order, unsigned k, Body&& body) {
  std::vector<std::size_t> t(k, 0);
  while (true) {
    body(t);
    unsigned i = 0;
    while (i < k && ++t[i] == order) t[i++] = 0;
    if (i == k) return;
  }
}

// (F) = E_{x,t} prod_S f_S^{eps(S)}(x + sum_{i in S} t_i), slots indexed by mask.
inline cplx inner_product(const std::vector<hofa::GroupFunction>& slots, unsigned k) {
  const auto& g = slots.front().group();
  const std::size_t n = g.order();
  cplx acc = 0.0;
  for_tuples(n, k + 1, [&](const std::vector<std::size_t>& xt) {
    const std::vector<std::size_t> t(xt.begin() + 1, xt.end());
    cplx prod = 1.0;
    for (std::uint32_t s = 0; s < (1u << k); ++s) {
      const cplx v = slots[s](subset_sum(g, xt[0], t, s));
      prod *= odd(s) ? std::conj(v) : v;
    }
    acc += prod;
  });
  return acc / std::pow(static_cast<double>(n), k + 1);
}

inline double uk_power(const hofa::GroupFunction& f, unsigned k) {
  return inner_product(std::vector<hofa::GroupFunction>(std::size_t{1} << k, f), k).real();
}

inline double uk(const hofa::GroupFunction& f, unsigned k) {
  return std::pow(std::max(0.0, uk_power(f, k)), 1.0 / static_cast<double>(1u << k));
}

// K_n(F)(x), slots indexed by mask 1 .. 2^n - 1 (slot 0 unused).
inline cplx corner(const std::vector<hofa::GroupFunction>& slots, unsigned n, std::size_t x) {
  const auto& g = slots[1].group();
  const std::size_t order = g.order();
  cplx acc = 0.0;
  for_tuples(order, n, [&](const std::vector<std::size_t>& t) {
    cplx prod = 1.0;
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
      const cplx v = slots[s](subset_sum(g, x, t, s));
      prod *= odd(s) ? std::conj(v) : v;
    }
    acc += prod;
  });
  return acc / std::pow(static_cast<double>(order), n);
}

// Every map {0,1}^n -> {0,1}^m (as the list of image vertices) that extends to
// an affine map Z^n -> Z^m. A coordinate function g extends iff
// g(v) = g(0) + sum_i v_i (g(e_i) - g(0)) for all v. Vertex bits follow the
// library: coordinate i of an n-vertex is bit n - i.
inline std::vector<std::vector<std::uint32_t>> affine_cube_maps(unsigned n, unsigned m) {
  const std::uint32_t src = 1u << n, dst = 1u << m;
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> image(src, 0);
  while (true) {
    bool ok = true;
    for (unsigned j = 1; j <= m && ok; ++j) {
      auto coord = [&](std::uint32_t v) { return static_cast<int>(image[v] >> (m - j) & 1u); };
      for (std::uint32_t v = 0; v < src && ok; ++v) {
        int value = coord(0);
        for (unsigned i = 1; i <= n; ++i)
          if (v >> (n - i) & 1u) value += coord(1u << (n - i)) - coord(0);
        ok = value == coord(v);
      }
    }
    if (ok) out.push_back(image);
    std::uint32_t i = 0;
    while (i < src && ++image[i] == dst) image[i++] = 0;
    if (i == src) break;
  }
  return out;
}

// tr(M^3) / n^3 for the symmetric matrix M_{x,y} = f(x + y).
inline cplx triangle_density(const hofa::GroupFunction& f) {
  const auto& g = f.group();
  const std::size_t n = g.order();
  std::vector<cplx> m(n * n), m2(n * n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) m[x * n + y] = f(g.add(x, y));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) m2[i * n + j] += m[i * n + k] * m[k * n + j];
  cplx trace = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) trace += m2[i * n + k] * m[k * n + i];
  return trace / std::pow(static_cast<double>(n), 3);
}

// |{(x_1..x_k) : sum in S}| / |A|^k by counting.
inline double cayley_count(const hofa::FiniteAbelianGroup& g, const std::vector<std::size_t>& support, unsigned k) {
  std::vector<bool> in(g.order(), false);
  for (auto s : support) in[s] = true;
  std::size_t hits = 0, total = 0;
  for_tuples(g.order(), k, [&](const std::vector<std::size_t>& x) {
    std::size_t s = 0;
    for (auto xi : x) s = g.add(s, xi);
    hits += in[s] ? 1 : 0;
    ++total;
  });
  return static_cast<double>(hits) / static_cast<double>(total);
}

// Generic simple-moment evaluation by nested loops over A^n.
inline cplx moment(const hofa::GroupFunction& f, unsigned n, const std::vector<std::pair<std::uint32_t, bool>>& edges) {
  const auto& g = f.group();
  cplx acc = 0.0;
  for_tuples(g.order(), n, [&](const std::vector<std::size_t>& x) {
    cplx prod = 1.0;
    for (const auto& [mask, conj] : edges) {
      const cplx v = f(subset_sum(g, 0, x, mask));
      prod *= conj ? std::conj(v) : v;
    }
    acc += prod;
  });
  return acc / std::pow(static_cast<double>(g.order()), n);
}

}  // namespace oracle
