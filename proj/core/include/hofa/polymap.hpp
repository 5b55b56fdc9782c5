#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hofa/group.hpp"

namespace hofa {

using BigInt = boost::multiprecision::cpp_int;
using IntVec = std::vector<std::int64_t>;

/// C(x, n) = x (x-1) ... (x-n+1) / n!, valid for negative x.
BigInt binomial(std::int64_t x, unsigned n);

struct BinomialTerm {
  std::size_t coefficient = 0;      // element index of the target group
  std::vector<unsigned> exponents;  // (n_1, ..., n_d)
};

/// x -> sum_terms a * prod_i C(x_i, n_i) from Z^d into a finite abelian group.
class BinomialPolyMap {
 public:
  BinomialPolyMap(unsigned dim, FiniteAbelianGroup target, std::vector<BinomialTerm> terms);

  unsigned dim() const { return dim_; }
  const FiniteAbelianGroup& target() const { return target_; }
  const std::vector<BinomialTerm>& terms() const { return terms_; }
  unsigned degree() const;

  std::size_t operator()(const IntVec& x) const;

 private:
  unsigned dim_;
  FiniteAbelianGroup target_;
  std::vector<BinomialTerm> terms_;
};

std::size_t eval_binomial_poly(const BinomialPolyMap& phi, const IntVec& x);

/// Group structure on a map's target: product, inverse, identity test.
template <class T>
struct TargetGroup {
  std::function<T(const T&, const T&)> mul;
  std::function<T(const T&)> inv;
  std::function<bool(const T&)> is_identity;
};

template <class T>
using PolyMap = std::function<T(const IntVec&)>;

TargetGroup<std::size_t> abelian_target(const FiniteAbelianGroup& group);

inline IntVec shifted(const IntVec& g, const IntVec& h) {
  IntVec out(g);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += h[i];
  return out;
}

/// D_h phi(g) = phi(g)^{-1} phi(g h) on the domain Z^d.
template <class T>
PolyMap<T> leibman_derivative(PolyMap<T> phi, IntVec h, TargetGroup<T> ops) {
  return [phi = std::move(phi), h = std::move(h), ops = std::move(ops)](const IntVec& g) {
    return ops.mul(ops.inv(phi(g)), phi(shifted(g, h)));
  };
}

/// Finite falsification surface for degree tests: base points g and shift
/// candidates h, every (k+1)-tuple of shifts is tried at every base point.
struct TestBox {
  std::vector<IntVec> base_points;
  std::vector<IntVec> shifts;

  /// Both sets equal to the integer box [lo, hi]^dim.
  static TestBox uniform(unsigned dim, std::int64_t lo, std::int64_t hi);
  /// Base points in [lo, hi]^dim, shifts in [shift_lo, shift_hi]^dim.
  static TestBox with_shifts(unsigned dim, std::int64_t lo, std::int64_t hi, std::int64_t shift_lo,
                             std::int64_t shift_hi);
};

std::vector<IntVec> integer_box(unsigned dim, std::int64_t lo, std::int64_t hi);

/// True iff D_{h_1} ... D_{h_{k+1}} phi is the identity at every base point
/// of the box for every tuple of shifts.
template <class T>
bool degree_check(const PolyMap<T>& phi, unsigned k, const TestBox& box, const TargetGroup<T>& ops) {
  const std::size_t depth = k + 1;
  const std::size_t s = box.shifts.size();
  if (s == 0) return true;
  std::vector<std::size_t> pick(depth, 0);
  // value(level, g) = (D_{h_level} ... D_{h_depth} phi)(g)
  std::function<T(std::size_t, const IntVec&)> value = [&](std::size_t level, const IntVec& g) -> T {
    if (level == depth) return phi(g);
    const T here = value(level + 1, g);
    const T there = value(level + 1, shifted(g, box.shifts[pick[level]]));
    return ops.mul(ops.inv(here), there);
  };
  while (true) {
    for (const auto& g : box.base_points)
      if (!ops.is_identity(value(0, g))) return false;
    std::size_t i = 0;
    while (i < depth && ++pick[i] == s) pick[i++] = 0;
    if (i == depth) break;
  }
  return true;
}

struct SpanningReport {
  std::size_t maps_tested = 0;
  std::size_t survivors = 0;   // maps on the box passing every local difference test
  std::size_t span_size = 0;   // distinct restrictions of binomial combinations of degree <= k
  bool equal = false;
};

/// Brute force over every map [lo, hi]^dim -> target: the maps whose (k+1)-fold
/// differences along unit directions vanish wherever the whole difference cube
/// lies in the box, against the restrictions of sum a_n prod_i C(x_i, n_i) with
/// sum n_i <= k.
SpanningReport binomial_spanning_check(const FiniteAbelianGroup& target, unsigned dim, unsigned k, std::int64_t lo,
                                       std::int64_t hi, std::size_t cap = std::size_t{1} << 22);

}  // namespace hofa
