#include "hofa/gowers.hpp"

#include <cmath>
#include <string>

#include "hofa/error.hpp"
#include "hofa/parallel.hpp"

namespace hofa {

namespace {

constexpr unsigned kMaxSystemDimension = 12;

std::size_t checked_power(std::size_t base, unsigned exp) {
  std::size_t out = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (out > (std::size_t{1} << 40) / base) throw CapExceeded("enumeration size exceeds 2^40");
    out *= base;
  }
  return out;
}

// Decodes a mixed-radix tuple index into shifts t_1..t_count of the group.
void decode_shifts(std::size_t code, std::size_t order, unsigned count, std::vector<std::size_t>& out) {
  out.resize(count);
  for (unsigned i = 0; i < count; ++i) {
    out[i] = code % order;
    code /= order;
  }
}

// offsets[T] = sum_{i in T} t_i for every T subset of [shifts.size()].
void subset_offsets(const FiniteAbelianGroup& group, const std::vector<std::size_t>& shifts,
                    std::vector<std::size_t>& offsets) {
  const std::size_t count = std::size_t{1} << shifts.size();
  offsets.assign(count, 0);
  for (std::size_t mask = 1; mask < count; ++mask) {
    const unsigned low = static_cast<unsigned>(__builtin_ctzll(mask));
    offsets[mask] = group.add(offsets[mask & (mask - 1)], shifts[low]);
  }
}

double norm_power_rec(const FiniteAbelianGroup& group, const std::vector<cplx>& g, unsigned k) {
  const std::size_t n = g.size();
  if (k == 1) {
    cplx mean = 0.0;
    for (const auto& v : g) mean += v;
    mean /= static_cast<double>(n);
    return std::norm(mean);
  }
  std::vector<cplx> d(n);
  double acc = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t x = 0; x < n; ++x) d[x] = g[x] * std::conj(g[group.add(x, t)]);
    acc += norm_power_rec(group, d, k - 1);
  }
  return acc / static_cast<double>(n);
}

}  // namespace

// ---------------------------------------------------------------------------

FunctionSystem::FunctionSystem(Kind kind, unsigned k, std::vector<GroupFunction> entries)
    : kind_(kind), k_(k) {
  if (k > kMaxSystemDimension) throw InvalidArgument("function system dimension too large");
  const std::size_t full = std::size_t{1} << k;
  if (kind == Kind::kAllSubsets) {
    if (entries.size() != full)
      throw InvalidArgument("system over subsets of [" + std::to_string(k) + "] needs " +
                            std::to_string(full) + " functions");
    slots_ = std::move(entries);
  } else {
    if (k == 0) throw InvalidArgument("K_n system needs n >= 1");
    if (entries.size() == full) {
      slots_.assign(std::make_move_iterator(entries.begin() + 1), std::make_move_iterator(entries.end()));
    } else if (entries.size() == full - 1) {
      slots_ = std::move(entries);
    } else {
      throw InvalidArgument("system over K_" + std::to_string(k) + " needs " + std::to_string(full - 1) +
                            " functions");
    }
  }
  for (const auto& s : slots_)
    if (!(s.group() == slots_.front().group())) throw InvalidArgument("system functions live on different groups");
}

FunctionSystem FunctionSystem::diagonal(Kind kind, unsigned k, const GroupFunction& f) {
  const std::size_t count = (std::size_t{1} << k) - (kind == Kind::kNonemptySubsets ? 1 : 0);
  return FunctionSystem(kind, k, std::vector<GroupFunction>(count, f));
}

std::size_t FunctionSystem::position(std::uint32_t mask) const {
  if (mask >= (std::uint32_t{1} << k_) || (kind_ == Kind::kNonemptySubsets && mask == 0))
    throw InvalidArgument("subset outside the system's index set");
  return kind_ == Kind::kAllSubsets ? mask : mask - 1;
}

const GroupFunction& FunctionSystem::slot(std::uint32_t mask) const { return slots_[position(mask)]; }

void FunctionSystem::set_slot(std::uint32_t mask, GroupFunction f) {
  if (!(f.group() == group())) throw InvalidArgument("replacement slot lives on a different group");
  slots_[position(mask)] = std::move(f);
}

// ---------------------------------------------------------------------------

GroupFunction delta(const GroupFunction& f, std::size_t t) {
  if (t >= f.group().order()) throw InvalidArgument("shift outside the group");
  std::vector<cplx> out(f.size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = f(x) * std::conj(f(f.group().add(x, t)));
  return GroupFunction(f.group(), std::move(out), f.bound() * f.bound());
}

double gowers_norm_power(const GroupFunction& f, unsigned k) {
  if (k == 0) throw InvalidArgument("Gowers norm needs k >= 1");
  const auto& group = f.group();
  const std::vector<cplx> values(f.values().begin(), f.values().end());
  if (k == 1) return norm_power_rec(group, values, 1);
  const std::size_t n = f.size();
  const double sum = tree_sum<double>(n, [&](std::size_t t) {
    std::vector<cplx> d(n);
    for (std::size_t x = 0; x < n; ++x) d[x] = values[x] * std::conj(values[group.add(x, t)]);
    return norm_power_rec(group, d, k - 1);
  });
  return sum / static_cast<double>(n);
}

double gowers_norm_exact(const GroupFunction& f, unsigned k) {
  const double power = gowers_norm_power(f, k);
  if (k == 1) return std::sqrt(power);
  return std::pow(power > 0.0 ? power : 0.0, 1.0 / static_cast<double>(std::size_t{1} << k));
}

double u2_via_fourier(const GroupFunction& f) {
  const auto spectrum = fourier_transform_fast(f);
  double acc = 0.0;
  for (const auto& c : spectrum.coefficients) acc += std::norm(c) * std::norm(c);
  return std::pow(acc, 0.25);
}

SampledNorm gowers_norm_sampled(const GroupFunction& f, unsigned k, std::uint64_t num_samples,
                                const CounterRng& rng) {
  if (k == 0) throw InvalidArgument("Gowers norm needs k >= 1");
  if (k > kMaxSystemDimension) throw InvalidArgument("sampled Gowers norm dimension too large");
  if (num_samples == 0) throw InvalidArgument("sampled estimator needs at least one sample");
  const auto& group = f.group();
  const std::size_t corners = std::size_t{1} << k;

  auto sample_value = [&](std::uint64_t j) {
    std::vector<std::size_t> points(corners);
    points[0] = random_element(group, rng, j, 0);
    for (std::size_t mask = 1; mask < corners; ++mask) {
      const unsigned low = static_cast<unsigned>(__builtin_ctzll(mask));
      const std::size_t prev = mask & (mask - 1);
      // t_{low+1} lives on lane low+1; recomputing it is cheaper than caching
      points[mask] = group.add(points[prev], random_element(group, rng, j, low + 1));
    }
    cplx prod = 1.0;
    for (std::size_t mask = 0; mask < corners; ++mask)
      prod *= apply_conjugation(f(points[mask]), conjugated(static_cast<std::uint32_t>(mask)));
    return prod.real();
  };

  struct Moments {
    double s1 = 0.0, s2 = 0.0;
    Moments& operator+=(const Moments& o) { s1 += o.s1; s2 += o.s2; return *this; }
    Moments operator+(const Moments& o) const { Moments r = *this; r += o; return r; }
  };
  const Moments m = tree_sum<Moments>(num_samples, [&](std::size_t j) {
    const double v = sample_value(j);
    return Moments{v, v * v};
  });
  const double n = static_cast<double>(num_samples);
  SampledNorm out;
  out.power_mean = m.s1 / n;
  double var = num_samples > 1 ? (m.s2 - n * out.power_mean * out.power_mean) / (n - 1.0) : 0.0;
  if (var < 0.0) var = 0.0;
  out.power_standard_error = std::sqrt(var / n);
  const double inv_root = 1.0 / static_cast<double>(corners);
  if (out.power_mean > 0.0) {
    out.estimate = std::pow(out.power_mean, inv_root);
    out.standard_error = inv_root * out.estimate / out.power_mean * out.power_standard_error;
  } else {
    out.estimate = 0.0;
    out.standard_error = std::pow(out.power_standard_error, inv_root);
  }
  return out;
}

// ---------------------------------------------------------------------------

cplx gowers_inner_product(const FunctionSystem& system) {
  if (system.kind() != FunctionSystem::Kind::kAllSubsets)
    throw InvalidArgument("Gowers inner product needs a system over all subsets of [k]");
  const unsigned k = system.dimension();
  const auto& group = system.group();
  const std::size_t n = group.order();
  if (k == 0) {
    cplx mean = 0.0;
    for (std::size_t x = 0; x < n; ++x) mean += system.slot(0)(x);
    return mean / static_cast<double>(n);
  }
  // Split on whether k is in S: the x and t_k averages factor.
  const std::uint32_t top = std::uint32_t{1} << (k - 1);
  const std::size_t outer = checked_power(n, k - 1);
  const cplx sum = tree_sum<cplx>(outer, [&](std::size_t code) {
    std::vector<std::size_t> shifts, offsets;
    decode_shifts(code, n, k - 1, shifts);
    subset_offsets(group, shifts, offsets);
    cplx lower = 0.0, upper = 0.0;
    for (std::size_t x = 0; x < n; ++x) {
      cplx a = 1.0, b = 1.0;
      for (std::uint32_t mask = 0; mask < top; ++mask) {
        const std::size_t p = group.add(x, offsets[mask]);
        a *= apply_conjugation(system.slot(mask)(p), conjugated(mask));
        b *= apply_conjugation(system.slot(mask | top)(p), conjugated(mask | top));
      }
      lower += a;
      upper += b;
    }
    return lower * upper;
  });
  const double nn = static_cast<double>(n);
  return sum / (static_cast<double>(outer) * nn * nn);
}

double gowers_norm_power_via_inner_product(const GroupFunction& f, unsigned k, double tol) {
  const cplx value =
      gowers_inner_product(FunctionSystem::diagonal(FunctionSystem::Kind::kAllSubsets, k, f));
  if (std::abs(value.imag()) > tol)
    throw NumericalError("diagonal Gowers inner product has imaginary residue " + std::to_string(value.imag()));
  return value.real();
}

double gcs_gap(const FunctionSystem& system) {
  if (system.kind() != FunctionSystem::Kind::kAllSubsets)
    throw InvalidArgument("Gowers-Cauchy-Schwarz needs a system over all subsets of [k]");
  const unsigned k = system.dimension();
  if (k == 0) throw InvalidArgument("Gowers-Cauchy-Schwarz needs k >= 1");
  double rhs = 1.0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask)
    rhs *= gowers_norm_exact(system.slot(mask), k);
  return rhs - std::abs(gowers_inner_product(system));
}

// ---------------------------------------------------------------------------

namespace {

struct CornerTables {
  std::size_t outer = 1;       // |A|^{n-1}
  std::vector<cplx> upper;     // B(t') = E_y prod_T f_{T+n}^{eps}(y + off[T])
};

CornerTables corner_tables(const FunctionSystem& system) {
  if (system.kind() != FunctionSystem::Kind::kNonemptySubsets)
    throw InvalidArgument("corner convolution needs a system over K_n");
  const unsigned n_dim = system.dimension();
  const auto& group = system.group();
  const std::size_t n = group.order();
  CornerTables tables;
  tables.outer = checked_power(n, n_dim - 1);
  tables.upper.resize(tables.outer);
  const std::uint32_t top = std::uint32_t{1} << (n_dim - 1);
  parallel_fill(tables.upper, [&](std::size_t code) {
    std::vector<std::size_t> shifts, offsets;
    decode_shifts(code, n, n_dim - 1, shifts);
    subset_offsets(group, shifts, offsets);
    cplx acc = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      cplx b = 1.0;
      for (std::uint32_t mask = 0; mask < top; ++mask)
        b *= apply_conjugation(system.slot(mask | top)(group.add(y, offsets[mask])), conjugated(mask | top));
      acc += b;
    }
    return acc / static_cast<double>(n);
  });
  return tables;
}

cplx corner_at(const FunctionSystem& system, const CornerTables& tables, std::size_t x) {
  const unsigned n_dim = system.dimension();
  const auto& group = system.group();
  const std::size_t n = group.order();
  const std::uint32_t top = std::uint32_t{1} << (n_dim - 1);
  const cplx sum = tree_sum<cplx>(tables.outer, [&](std::size_t code) {
    std::vector<std::size_t> shifts, offsets;
    decode_shifts(code, n, n_dim - 1, shifts);
    subset_offsets(group, shifts, offsets);
    cplx a = 1.0;
    for (std::uint32_t mask = 1; mask < top; ++mask)
      a *= apply_conjugation(system.slot(mask)(group.add(x, offsets[mask])), conjugated(mask));
    return a * tables.upper[code];
  });
  return sum / static_cast<double>(tables.outer);
}

}  // namespace

cplx corner_convolution(const FunctionSystem& system, std::size_t x) {
  if (x >= system.group().order()) throw InvalidArgument("evaluation point outside the group");
  const auto tables = corner_tables(system);
  return corner_at(system, tables, x);
}

GroupFunction corner_convolution_function(const FunctionSystem& system) {
  const auto tables = corner_tables(system);
  std::vector<cplx> values(system.group().order());
  for (std::size_t x = 0; x < values.size(); ++x) values[x] = corner_at(system, tables, x);
  return GroupFunction::from_values(system.group(), std::move(values));
}

double cornineq_gap(const FunctionSystem& system, std::size_t x, unsigned j) {
  if (system.kind() != FunctionSystem::Kind::kNonemptySubsets)
    throw InvalidArgument("corner inequality needs a system over K_n");
  const unsigned n_dim = system.dimension();
  if (j < 1 || j > n_dim) throw InvalidArgument("corner inequality index j outside [1, n]");
  const double p = static_cast<double>(std::size_t{1} << (n_dim - 1));
  const std::uint32_t jbit = std::uint32_t{1} << (j - 1);
  double rhs = 1.0;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n_dim); ++mask) {
    const auto& f = system.slot(mask);
    rhs *= (mask & jbit) ? gowers_norm_exact(f, n_dim) : lp_norm(f, p);
  }
  return rhs - std::abs(corner_convolution(system, x));
}

}  // namespace hofa
