#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hofa/random.hpp"

namespace hofa {

using cplx = std::complex<double>;

/// Default absolute tolerance for floating comparisons.
inline constexpr double kTolerance = 1e-9;
/// Largest group order accepted at construction.
inline constexpr std::size_t kMaxGroupOrder = std::size_t{1} << 20;

/// e(x) = exp(2 pi i x).
cplx unit_phase(double x);

struct GroupElement {
  std::vector<std::int64_t> coords;

  auto operator<=>(const GroupElement&) const = default;
};

/// Z_{m_1} x ... x Z_{m_r}, every m_i >= 2. Elements are numbered in
/// lexicographic order of their coordinate tuples (first factor most
/// significant); most routines work with these indices directly.
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<std::int64_t> cyclic_factors);

  static FiniteAbelianGroup cyclic(std::int64_t m) { return FiniteAbelianGroup({m}); }

  const std::vector<std::int64_t>& cyclic_factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  std::size_t order() const { return order_; }
  /// Least common multiple of the factors; every character takes values in
  /// the exponent_lcm()-th roots of unity.
  std::int64_t exponent_lcm() const { return lcm_; }

  GroupElement element(std::size_t index) const;
  /// Reduces coordinates mod m_i before indexing.
  std::size_t index(const GroupElement& element) const;
  std::int64_t coordinate(std::size_t index, std::size_t axis) const {
    return static_cast<std::int64_t>(index / strides_[axis]) % factors_[axis];
  }
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }

  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t negate(std::size_t a) const;
  std::size_t subtract(std::size_t a, std::size_t b) const { return add(a, negate(b)); }
  std::size_t multiply(std::size_t a, std::int64_t k) const;
  static constexpr std::size_t zero() { return 0; }

  /// table[x] = x + t.
  std::vector<std::size_t> translation(std::size_t t) const;

  bool operator==(const FiniteAbelianGroup& other) const { return factors_ == other.factors_; }

 private:
  std::vector<std::int64_t> factors_;
  std::vector<std::size_t> strides_;
  std::size_t order_ = 1;
  std::int64_t lcm_ = 1;
};

std::vector<GroupElement> enumerate_elements(const FiniteAbelianGroup& group);

/// Uniform element index; draw i uses lane 0 of sample i.
std::size_t random_element(const FiniteAbelianGroup& group, const CounterRng& rng,
                           std::uint64_t sample, std::uint64_t lane = 0);

/// Dense complex function on a finite abelian group together with a declared
/// bound r >= max |f|.
class GroupFunction {
 public:
  GroupFunction(FiniteAbelianGroup group, std::vector<cplx> values, double bound);

  /// Bound set to the largest magnitude.
  static GroupFunction from_values(FiniteAbelianGroup group, std::vector<cplx> values);
  static GroupFunction from_fn(const FiniteAbelianGroup& group,
                               const std::function<cplx(std::size_t)>& fn);
  static GroupFunction constant(const FiniteAbelianGroup& group, cplx value);
  static GroupFunction zero(const FiniteAbelianGroup& group) { return constant(group, 0.0); }
  static GroupFunction indicator(const FiniteAbelianGroup& group,
                                 std::span<const std::size_t> support);

  const FiniteAbelianGroup& group() const { return group_; }
  std::span<const cplx> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double bound() const { return bound_; }
  cplx operator()(std::size_t x) const { return values_[x]; }

  GroupFunction conj() const;
  /// a * this + b * other.
  GroupFunction combine(cplx a, const GroupFunction& other, cplx b) const;
  GroupFunction scaled(cplx a) const;
  GroupFunction translated(std::size_t t) const;

 private:
  FiniteAbelianGroup group_;
  std::vector<cplx> values_;
  double bound_;
};

/// chi(x) = e(sum_i c_i x_i / m_i).
class Character {
 public:
  Character(FiniteAbelianGroup group, GroupElement freq);
  Character(FiniteAbelianGroup group, std::size_t freq_index);

  const FiniteAbelianGroup& group() const { return group_; }
  const GroupElement& freq() const { return freq_; }
  std::size_t freq_index() const { return freq_index_; }
  bool trivial() const { return freq_index_ == 0; }

  /// Phase numerator of chi(x) in units of 1 / exponent_lcm().
  std::int64_t phase_numerator(std::size_t x) const;
  /// Phase of chi(x) in [0, 1).
  double phase(std::size_t x) const;
  cplx operator()(std::size_t x) const;
  GroupFunction as_function() const;

 private:
  FiniteAbelianGroup group_;
  GroupElement freq_;
  std::size_t freq_index_;
  std::vector<std::int64_t> weights_;
};

/// Fourier coefficients lambda_chi = (f, chi), indexed by character frequency
/// index (characters are numbered like group elements).
struct Spectrum {
  FiniteAbelianGroup group;
  std::vector<cplx> coefficients;

  Character character(std::size_t i) const { return Character(group, i); }
};

/// E_x f(x) conj(g(x)).
cplx scalar_product(const GroupFunction& f, const GroupFunction& g);

/// (E |f|^p)^(1/p), p > 0.
double lp_norm(const GroupFunction& f, double p);
double sup_norm(const GroupFunction& f);

/// Direct O(|A|^2) transform.
Spectrum fourier_transform(const GroupFunction& f);
/// Axis-by-axis transform, O(|A| sum m_i). Agrees with fourier_transform.
Spectrum fourier_transform_fast(const GroupFunction& f);
/// f(x) = sum_chi lambda_chi chi(x).
GroupFunction inverse_fourier(const Spectrum& spectrum);

}  // namespace hofa
