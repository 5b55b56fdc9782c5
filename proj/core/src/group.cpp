#include "hofa/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "hofa/error.hpp"
#include "hofa/parallel.hpp"

namespace hofa {

cplx unit_phase(double x) {
  const double frac = x - std::floor(x);
  const double angle = 2.0 * std::numbers::pi * frac;
  return {std::cos(angle), std::sin(angle)};
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> cyclic_factors)
    : factors_(std::move(cyclic_factors)) {
  if (factors_.empty()) throw InvalidArgument("group needs at least one cyclic factor");
  for (auto m : factors_) {
    if (m < 2) throw InvalidArgument("cyclic factor " + std::to_string(m) + " is below 2");
    if (static_cast<std::size_t>(m) > kMaxGroupOrder || order_ * static_cast<std::size_t>(m) > kMaxGroupOrder)
      throw InvalidArgument("group order exceeds 2^20");
    order_ *= static_cast<std::size_t>(m);
    lcm_ = std::lcm(lcm_, m);
  }
  strides_.assign(factors_.size(), 1);
  for (std::size_t i = factors_.size(); i-- > 1;)
    strides_[i - 1] = strides_[i] * static_cast<std::size_t>(factors_[i]);
}

GroupElement FiniteAbelianGroup::element(std::size_t index) const {
  GroupElement e;
  e.coords.resize(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) e.coords[i] = coordinate(index, i);
  return e;
}

std::size_t FiniteAbelianGroup::index(const GroupElement& element) const {
  if (element.coords.size() != factors_.size())
    throw InvalidArgument("element rank does not match group rank");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::int64_t c = element.coords[i] % factors_[i];
    if (c < 0) c += factors_[i];
    idx += static_cast<std::size_t>(c) * strides_[i];
  }
  return idx;
}

std::size_t FiniteAbelianGroup::add(std::size_t a, std::size_t b) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::int64_t c = coordinate(a, i) + coordinate(b, i);
    if (c >= factors_[i]) c -= factors_[i];
    idx += static_cast<std::size_t>(c) * strides_[i];
  }
  return idx;
}

std::size_t FiniteAbelianGroup::negate(std::size_t a) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::int64_t c = coordinate(a, i);
    idx += static_cast<std::size_t>(c == 0 ? 0 : factors_[i] - c) * strides_[i];
  }
  return idx;
}

std::size_t FiniteAbelianGroup::multiply(std::size_t a, std::int64_t k) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto m = static_cast<int128>(factors_[i]);
    int128 c = (static_cast<int128>(coordinate(a, i)) * k) % m;
    if (c < 0) c += m;
    idx += static_cast<std::size_t>(c) * strides_[i];
  }
  return idx;
}

std::vector<std::size_t> FiniteAbelianGroup::translation(std::size_t t) const {
  std::vector<std::size_t> table(order_);
  for (std::size_t x = 0; x < order_; ++x) table[x] = add(x, t);
  return table;
}

std::vector<GroupElement> enumerate_elements(const FiniteAbelianGroup& group) {
  std::vector<GroupElement> out;
  out.reserve(group.order());
  for (std::size_t i = 0; i < group.order(); ++i) out.push_back(group.element(i));
  return out;
}

std::size_t random_element(const FiniteAbelianGroup& group, const CounterRng& rng,
                           std::uint64_t sample, std::uint64_t lane) {
  return static_cast<std::size_t>(rng.below(group.order(), sample, lane));
}

// ---------------------------------------------------------------------------

GroupFunction::GroupFunction(FiniteAbelianGroup group, std::vector<cplx> values, double bound)
    : group_(std::move(group)), values_(std::move(values)), bound_(bound) {
  if (values_.size() != group_.order())
    throw InvalidArgument("function has " + std::to_string(values_.size()) +
                          " values but the group has order " + std::to_string(group_.order()));
  if (!(bound_ >= 0.0)) throw InvalidArgument("function bound must be nonnegative");
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidArgument("function value is not finite");
    if (std::abs(v) > bound_ * (1.0 + 1e-12) + 1e-12)
      throw InvalidArgument("declared bound does not dominate |f|");
  }
}

GroupFunction GroupFunction::from_values(FiniteAbelianGroup group, std::vector<cplx> values) {
  double bound = 0.0;
  for (const auto& v : values) bound = std::max(bound, std::abs(v));
  return GroupFunction(std::move(group), std::move(values), bound);
}

GroupFunction GroupFunction::from_fn(const FiniteAbelianGroup& group,
                                     const std::function<cplx(std::size_t)>& fn) {
  std::vector<cplx> values(group.order());
  for (std::size_t x = 0; x < values.size(); ++x) values[x] = fn(x);
  return from_values(group, std::move(values));
}

GroupFunction GroupFunction::constant(const FiniteAbelianGroup& group, cplx value) {
  return GroupFunction(group, std::vector<cplx>(group.order(), value), std::abs(value));
}

GroupFunction GroupFunction::indicator(const FiniteAbelianGroup& group,
                                       std::span<const std::size_t> support) {
  std::vector<cplx> values(group.order(), 0.0);
  for (auto x : support) {
    if (x >= group.order()) throw InvalidArgument("indicator support outside the group");
    values[x] = 1.0;
  }
  return GroupFunction(group, std::move(values), 1.0);
}

GroupFunction GroupFunction::conj() const {
  std::vector<cplx> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](cplx v) { return std::conj(v); });
  return GroupFunction(group_, std::move(out), bound_);
}

GroupFunction GroupFunction::combine(cplx a, const GroupFunction& other, cplx b) const {
  if (!(group_ == other.group_)) throw InvalidArgument("functions live on different groups");
  std::vector<cplx> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * values_[i] + b * other.values_[i];
  return GroupFunction(group_, std::move(out), std::abs(a) * bound_ + std::abs(b) * other.bound_);
}

GroupFunction GroupFunction::scaled(cplx a) const {
  std::vector<cplx> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * values_[i];
  return GroupFunction(group_, std::move(out), std::abs(a) * bound_);
}

GroupFunction GroupFunction::translated(std::size_t t) const {
  std::vector<cplx> out(values_.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = values_[group_.add(x, t)];
  return GroupFunction(group_, std::move(out), bound_);
}

// ---------------------------------------------------------------------------

Character::Character(FiniteAbelianGroup group, GroupElement freq)
    : group_(std::move(group)), freq_(std::move(freq)) {
  freq_index_ = group_.index(freq_);
  freq_ = group_.element(freq_index_);
  weights_.resize(group_.rank());
  for (std::size_t i = 0; i < group_.rank(); ++i)
    weights_[i] = freq_.coords[i] * (group_.exponent_lcm() / group_.cyclic_factors()[i]);
}

Character::Character(FiniteAbelianGroup group, std::size_t freq_index)
    : Character(group, group.element(freq_index)) {}

std::int64_t Character::phase_numerator(std::size_t x) const {
  const auto lcm = static_cast<int128>(group_.exponent_lcm());
  int128 acc = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    acc += static_cast<int128>(weights_[i]) * group_.coordinate(x, i);
  return static_cast<std::int64_t>(acc % lcm);
}

double Character::phase(std::size_t x) const {
  return static_cast<double>(phase_numerator(x)) / static_cast<double>(group_.exponent_lcm());
}

cplx Character::operator()(std::size_t x) const { return unit_phase(phase(x)); }

GroupFunction Character::as_function() const {
  std::vector<cplx> values(group_.order());
  for (std::size_t x = 0; x < values.size(); ++x) values[x] = (*this)(x);
  return GroupFunction(group_, std::move(values), 1.0);
}

// ---------------------------------------------------------------------------

cplx scalar_product(const GroupFunction& f, const GroupFunction& g) {
  if (!(f.group() == g.group())) throw InvalidArgument("scalar product of functions on different groups");
  const auto n = f.size();
  const cplx sum = tree_sum<cplx>(n, [&](std::size_t x) { return f(x) * std::conj(g(x)); });
  return sum / static_cast<double>(n);
}

double lp_norm(const GroupFunction& f, double p) {
  if (!(p > 0.0)) throw InvalidArgument("L^p norm needs p > 0");
  const double sum = tree_sum<double>(f.size(), [&](std::size_t x) { return std::pow(std::abs(f(x)), p); });
  return std::pow(sum / static_cast<double>(f.size()), 1.0 / p);
}

double sup_norm(const GroupFunction& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

namespace {

std::vector<cplx> root_table(std::int64_t n, double sign) {
  std::vector<cplx> roots(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k)
    roots[static_cast<std::size_t>(k)] = unit_phase(sign * static_cast<double>(k) / static_cast<double>(n));
  return roots;
}

std::size_t smallest_prime_factor(std::size_t n) {
  for (std::size_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

// Mixed-radix decimation in time. W_n^j is roots[j * root_stride].
void mixed_radix(const cplx* in, std::size_t in_stride, cplx* out, std::size_t n, const std::vector<cplx>& roots,
                 std::size_t root_stride) {
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  const std::size_t p = smallest_prime_factor(n);
  if (p == n) {
    for (std::size_t k = 0; k < n; ++k) {
      cplx acc = 0.0;
      for (std::size_t x = 0; x < n; ++x) acc += in[x * in_stride] * roots[(k * x % n) * root_stride];
      out[k] = acc;
    }
    return;
  }
  const std::size_t q = n / p;
  for (std::size_t r = 0; r < p; ++r) mixed_radix(in + r * in_stride, in_stride * p, out + r * q, q, roots, root_stride * p);
  const std::vector<cplx> sub(out, out + n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (std::size_t r = 0; r < p; ++r) acc += roots[(r * k % n) * root_stride] * sub[r * q + k % q];
    out[k] = acc;
  }
}

}  // namespace

Spectrum fourier_transform(const GroupFunction& f) {
  const auto& group = f.group();
  const std::size_t n = group.order();
  const auto roots = root_table(group.exponent_lcm(), -1.0);
  std::vector<cplx> coeffs(n);
  parallel_fill(coeffs, [&](std::size_t c) {
    const Character chi(group, c);
    cplx acc = 0.0;
    for (std::size_t x = 0; x < n; ++x) acc += f(x) * roots[static_cast<std::size_t>(chi.phase_numerator(x))];
    return acc / static_cast<double>(n);
  });
  return Spectrum{group, std::move(coeffs)};
}

Spectrum fourier_transform_fast(const GroupFunction& f) {
  const auto& group = f.group();
  std::vector<cplx> data(f.values().begin(), f.values().end());
  std::vector<cplx> line;
  for (std::size_t axis = 0; axis < group.rank(); ++axis) {
    const auto m = static_cast<std::size_t>(group.cyclic_factors()[axis]);
    const std::size_t stride = group.stride(axis);
    const auto roots = root_table(static_cast<std::int64_t>(m), -1.0);
    line.resize(m);
    for (std::size_t base = 0; base < data.size(); ++base) {
      if (group.coordinate(base, axis) != 0) continue;
      mixed_radix(data.data() + base, stride, line.data(), m, roots, 1);
      for (std::size_t c = 0; c < m; ++c) data[base + c * stride] = line[c];
    }
  }
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
  return Spectrum{group, std::move(data)};
}

GroupFunction inverse_fourier(const Spectrum& spectrum) {
  const auto& group = spectrum.group;
  const std::size_t n = group.order();
  const auto roots = root_table(group.exponent_lcm(), 1.0);
  std::vector<Character> chars;
  chars.reserve(n);
  for (std::size_t c = 0; c < n; ++c) chars.emplace_back(group, c);
  std::vector<cplx> values(n);
  parallel_fill(values, [&](std::size_t x) {
    cplx acc = 0.0;
    for (std::size_t c = 0; c < n; ++c)
      acc += spectrum.coefficients[c] * roots[static_cast<std::size_t>(chars[c].phase_numerator(x))];
    return acc;
  });
  return GroupFunction::from_values(group, std::move(values));
}

}  // namespace hofa
