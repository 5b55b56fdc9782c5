#include "hofa/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hofa/error.hpp"
#include "hofa/cube.hpp"
#include "hofa/heisenberg.hpp"
#include "hofa/parallel.hpp"

namespace hofa {

namespace {

// Running sums for a mean and its standard error.
struct MeanAcc {
  cplx sum;
  double sum_sq = 0.0;

  MeanAcc& operator+=(const MeanAcc& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    return *this;
  }
  friend MeanAcc operator+(MeanAcc a, const MeanAcc& b) { return a += b; }
};

MeanAcc observe(cplx z) { return MeanAcc{z, std::norm(z)}; }

MomentEstimate finish(const MeanAcc& acc, std::uint64_t n) {
  const double nn = static_cast<double>(n);
  const cplx mean = acc.sum / nn;
  double se = 0.0;
  if (n > 1) {
    const double var = std::max(0.0, (acc.sum_sq / nn - std::norm(mean)) * nn / (nn - 1.0));
    se = std::sqrt(var / nn);
  }
  return {mean, se};
}

cplx raise(cplx z, unsigned p, bool conj) {
  if (conj) z = std::conj(z);
  cplx out = 1.0;
  for (unsigned i = 0; i < p; ++i) out *= z;
  return out;
}

std::vector<unsigned> members(std::uint32_t mask) {
  std::vector<unsigned> out;
  for (unsigned i = 0; i < 32; ++i)
    if (mask & (std::uint32_t{1} << i)) out.push_back(i);
  return out;
}

double wrap(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

}  // namespace

// ---------------------------------------------------------------------------

MomentSpec::MomentSpec(unsigned n, std::vector<MomentTerm> terms) : n_(n), terms_(std::move(terms)) {
  if (n == 0 || n > 16) throw InvalidArgument("moment spec needs 1 <= n <= 16 variables");
  std::sort(terms_.begin(), terms_.end(), [](const auto& a, const auto& b) { return a.subset < b.subset; });
  bool positive = false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (t.subset == 0 || t.subset >= (std::uint32_t{1} << n))
      throw InvalidArgument("moment term subset must be a nonempty subset of [n]");
    if (i > 0 && terms_[i - 1].subset == t.subset) throw InvalidArgument("moment term subset repeated");
    positive = positive || t.power >= 1;
  }
  if (!positive) throw InvalidArgument("moment spec needs a term with positive power");
}

bool MomentSpec::simple() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.power <= 1; });
}

unsigned MomentSpec::degree() const {
  unsigned largest = 0;
  for (const auto& t : terms_)
    if (t.power >= 1) largest = std::max(largest, static_cast<unsigned>(__builtin_popcount(t.subset)));
  return largest - 1;
}

std::string MomentSpec::label() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (t.power == 0) continue;
    if (!first) os << '.';
    first = false;
    for (unsigned i : members(t.subset)) os << (i + 1);
    if (t.power > 1) os << '^' << t.power;
    if (t.conjugate) os << '*';
  }
  return os.str();
}

MomentSpec MomentSpec::relabelled(const std::vector<unsigned>& perm) const {
  if (perm.size() != n_) throw InvalidArgument("relabelling must be a permutation of [n]");
  std::vector<bool> seen(n_, false);
  for (unsigned p : perm) {
    if (p < 1 || p > n_ || seen[p - 1]) throw InvalidArgument("relabelling must be a permutation of [n]");
    seen[p - 1] = true;
  }
  std::vector<MomentTerm> out;
  for (const auto& t : terms_) {
    std::uint32_t mask = 0;
    for (unsigned i : members(t.subset)) mask |= std::uint32_t{1} << (perm[i] - 1);
    out.push_back({mask, t.power, t.conjugate});
  }
  return MomentSpec(n_, std::move(out));
}

MomentSpec MomentSpec::full_edge(unsigned k) {
  if (k == 0 || k > 16) throw InvalidArgument("full edge needs 1 <= k <= 16");
  return MomentSpec(k, {{(std::uint32_t{1} << k) - 1, 1, false}});
}

MomentSpec MomentSpec::triangle() { return MomentSpec(3, {{0b011, 1, false}, {0b101, 1, false}, {0b110, 1, false}}); }

MomentSpec MomentSpec::cube(unsigned n) {
  std::vector<MomentTerm> terms;
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) terms.push_back({s, 1, (__builtin_popcount(s) & 1) != 0});
  return MomentSpec(n, std::move(terms));
}

std::vector<MomentSpec> MomentSpec::all_simple(unsigned n) {
  const std::uint32_t edges = (std::uint32_t{1} << n) - 1;
  std::size_t total = 1;
  for (std::uint32_t i = 0; i < edges; ++i) total *= 3;
  std::vector<MomentSpec> out;
  for (std::size_t code = 1; code < total; ++code) {
    std::vector<MomentTerm> terms;
    std::size_t c = code;
    for (std::uint32_t s = 1; s <= edges; ++s, c /= 3) {
      if (c % 3 == 1) terms.push_back({s, 1, false});
      if (c % 3 == 2) terms.push_back({s, 1, true});
    }
    out.emplace_back(n, std::move(terms));
  }
  return out;
}

// ---------------------------------------------------------------------------

cplx moment_exact(const GroupFunction& f, const MomentSpec& spec, std::size_t cap) {
  const auto& g = f.group();
  const std::size_t order = g.order();
  std::size_t count = 1;
  for (unsigned i = 0; i < spec.n(); ++i) {
    if (count > cap / order) throw CapExceeded("exact moment needs |A|^n <= cap; use the sampled path");
    count *= order;
  }
  if (count > cap) throw CapExceeded("exact moment needs |A|^n <= cap; use the sampled path");
  const unsigned n = spec.n();
  const auto& terms = spec.terms();
  const cplx sum = tree_sum<cplx>(count, [&](std::size_t idx) {
    std::array<std::size_t, 16> x{};
    for (unsigned i = 0; i < n; ++i) {
      x[i] = idx % order;
      idx /= order;
    }
    cplx prod = 1.0;
    for (const auto& t : terms) {
      std::size_t point = 0;
      for (unsigned i = 0; i < n; ++i)
        if (t.subset & (std::uint32_t{1} << i)) point = g.add(point, x[i]);
      prod *= raise(f(point), t.power, t.conjugate);
    }
    return prod;
  });
  return sum / static_cast<double>(count);
}

MomentEstimate moment_sampled(const GroupFunction& f, const MomentSpec& spec, std::uint64_t num_samples,
                              const CounterRng& rng) {
  if (num_samples == 0) throw InvalidArgument("sampled moment needs at least one sample");
  const auto& g = f.group();
  const unsigned n = spec.n();
  const auto& terms = spec.terms();
  const MeanAcc acc = tree_sum<MeanAcc>(num_samples, [&](std::size_t s) {
    std::array<std::size_t, 16> x{};
    for (unsigned i = 0; i < n; ++i) x[i] = random_element(g, rng, s, i);
    cplx prod = 1.0;
    for (const auto& t : terms) {
      std::size_t point = 0;
      for (unsigned i = 0; i < n; ++i)
        if (t.subset & (std::uint32_t{1} << i)) point = g.add(point, x[i]);
      prod *= raise(f(point), t.power, t.conjugate);
    }
    return observe(prod);
  });
  return finish(acc, num_samples);
}

// ---------------------------------------------------------------------------

std::vector<std::uint32_t> dn_subsets(unsigned n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) out.push_back(s);
  std::sort(out.begin(), out.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb) return pa < pb;
    return members(a) < members(b);
  });
  return out;
}

EmpiricalDistribution::EmpiricalDistribution(unsigned n, double bound, std::vector<std::vector<cplx>> samples)
    : n_(n), bound_(bound), subsets_(dn_subsets(n)), samples_(std::move(samples)) {
  for (const auto& s : samples_)
    if (s.size() != subsets_.size()) throw InvalidArgument("sample dimension differs from 2^n - 1");
}

std::size_t EmpiricalDistribution::coordinate_of(std::uint32_t subset) const {
  const auto it = std::find(subsets_.begin(), subsets_.end(), subset);
  if (it == subsets_.end()) throw InvalidArgument("subset is not a coordinate of this distribution");
  return static_cast<std::size_t>(it - subsets_.begin());
}

MomentEstimate EmpiricalDistribution::mixed_moment(const Monomial& m) const {
  if (samples_.empty()) throw InvalidArgument("empty distribution");
  const MeanAcc acc = tree_sum<MeanAcc>(samples_.size(), [&](std::size_t i) {
    cplx prod = 1.0;
    for (unsigned c : m.plain) prod *= samples_[i][c];
    for (unsigned c : m.conjugate) prod *= std::conj(samples_[i][c]);
    return observe(prod);
  });
  return finish(acc, samples_.size());
}

MomentEstimate EmpiricalDistribution::moment(const MomentSpec& spec) const {
  if (spec.n() > n_) throw InvalidArgument("spec uses more variables than the distribution");
  Monomial m;
  for (const auto& t : spec.terms()) {
    const auto c = static_cast<unsigned>(coordinate_of(t.subset));
    for (unsigned p = 0; p < t.power; ++p) (t.conjugate ? m.conjugate : m.plain).push_back(c);
  }
  return mixed_moment(m);
}

std::vector<Monomial> EmpiricalDistribution::monomials(unsigned order) const {
  // letters 0..d-1 are plain coordinates, d..2d-1 conjugated ones
  const auto d = static_cast<unsigned>(dimension());
  std::vector<Monomial> out;
  std::vector<unsigned> word;
  std::function<void(unsigned)> extend = [&](unsigned start) {
    if (!word.empty()) {
      Monomial m;
      for (unsigned l : word) (l < d ? m.plain : m.conjugate).push_back(l % d);
      out.push_back(std::move(m));
    }
    if (word.size() == order) return;
    for (unsigned l = start; l < 2 * d; ++l) {
      word.push_back(l);
      extend(l);
      word.pop_back();
    }
  };
  extend(0);
  return out;
}

std::vector<MomentEstimate> EmpiricalDistribution::summary(unsigned order) const {
  std::vector<MomentEstimate> out;
  for (const auto& m : monomials(order)) out.push_back(mixed_moment(m));
  return out;
}

TwoSampleReport compare_distributions(const EmpiricalDistribution& a, const EmpiricalDistribution& b,
                                      unsigned order) {
  if (a.n() != b.n()) throw InvalidArgument("distributions have different dimensions");
  TwoSampleReport report;
  for (const auto& m : a.monomials(order)) {
    const auto ea = a.mixed_moment(m);
    const auto eb = b.mixed_moment(m);
    const double diff = std::abs(ea.value - eb.value);
    const double se = std::hypot(ea.standard_error, eb.standard_error);
    report.max_abs_difference = std::max(report.max_abs_difference, diff);
    const double z = se > 0.0 ? diff / se : (diff > kTolerance ? std::numeric_limits<double>::infinity() : 0.0);
    report.max_z_score = std::max(report.max_z_score, z);
    ++report.monomials;
  }
  return report;
}

EmpiricalDistribution sample_Dn(const GroupFunction& f, unsigned n, std::uint64_t num_samples, const CounterRng& rng) {
  if (n == 0 || n > 16) throw InvalidArgument("D_n needs 1 <= n <= 16");
  const auto& g = f.group();
  const auto subsets = dn_subsets(n);
  std::vector<std::vector<cplx>> samples(num_samples);
  parallel_fill(samples, [&](std::size_t s) {
    std::array<std::size_t, 16> x{};
    for (unsigned i = 0; i < n; ++i) x[i] = random_element(g, rng, s, i);
    std::vector<cplx> row;
    row.reserve(subsets.size());
    for (auto mask : subsets) {
      std::size_t point = 0;
      for (unsigned i = 0; i < n; ++i)
        if (mask & (std::uint32_t{1} << i)) point = g.add(point, x[i]);
      row.push_back(f(point));
    }
    return row;
  });
  return EmpiricalDistribution(n, f.bound(), std::move(samples));
}

EmpiricalDistribution sample_Dn_rooted(const GroupFunction& f, unsigned n, std::uint64_t num_samples,
                                       const CounterRng& rng) {
  if (n == 0 || n > 16) throw InvalidArgument("D_n needs 1 <= n <= 16");
  const auto& g = f.group();
  const auto subsets = dn_subsets(n);
  std::vector<std::vector<cplx>> samples(num_samples);
  parallel_fill(samples, [&](std::size_t s) {
    const Cube c = linear_cube_sample(g, n, rng, s);
    std::vector<cplx> row;
    row.reserve(subsets.size());
    for (auto mask : subsets) {
      std::uint32_t vertex = 0;
      for (unsigned i = 0; i < n; ++i)
        if (mask & (std::uint32_t{1} << i)) vertex |= vertex_bit(n, i + 1);
      row.push_back(f(g.subtract(c[vertex], c[0])));
    }
    return row;
  });
  return EmpiricalDistribution(n, f.bound(), std::move(samples));
}

double cayley_hypergraph_density(const FiniteAbelianGroup& group, std::span<const std::size_t> support, unsigned k) {
  return moment_exact(GroupFunction::indicator(group, support), MomentSpec::full_edge(k)).real();
}

// ---------------------------------------------------------------------------

HeisPointD heis_mul_d(const HeisPointD& x, const HeisPointD& y) {
  return {x.a + y.a, x.b + y.b, x.c + y.c + x.a * y.b};
}

HeisPointD heis_reduce_d(const HeisPointD& x) {
  const double q = -std::floor(x.b);
  const double p = -std::floor(x.a);
  const double c = x.c + x.a * q;
  return {wrap(x.a + p), wrap(x.b + q), wrap(c)};
}

LimitObject LimitObject::torus(unsigned dim, TorusFn g, double bound) {
  if (dim == 0) throw InvalidArgument("torus limit needs dimension >= 1");
  LimitObject obj;
  obj.kind_ = Kind::kTorus;
  obj.dim_ = dim;
  obj.bound_ = bound;
  obj.torus_fn_ = std::move(g);
  return obj;
}

LimitObject LimitObject::heisenberg(HeisFn g, double bound) {
  LimitObject obj;
  obj.kind_ = Kind::kHeisenberg;
  obj.dim_ = 3;
  obj.bound_ = bound;
  obj.heis_fn_ = std::move(g);
  return obj;
}

MomentEstimate moment_on_limit(const LimitObject& obj, const MomentSpec& spec, std::uint64_t num_samples,
                               const CounterRng& rng) {
  if (num_samples == 0) throw InvalidArgument("limit moment needs at least one sample");
  const unsigned n = spec.n();
  const auto& terms = spec.terms();
  if (obj.kind() == LimitObject::Kind::kTorus) {
    const unsigned d = obj.torus_dim();
    const MeanAcc acc = tree_sum<MeanAcc>(num_samples, [&](std::size_t s) {
      std::vector<double> x(static_cast<std::size_t>(n) * d);
      for (std::size_t l = 0; l < x.size(); ++l) x[l] = rng.uniform(s, l);
      std::vector<double> point(d);
      cplx prod = 1.0;
      for (const auto& t : terms) {
        std::fill(point.begin(), point.end(), 0.0);
        for (unsigned i = 0; i < n; ++i)
          if (t.subset & (std::uint32_t{1} << i))
            for (unsigned j = 0; j < d; ++j) point[j] += x[i * d + j];
        for (auto& p : point) p = wrap(p);
        prod *= raise(obj.eval_torus(point), t.power, t.conjugate);
      }
      return observe(prod);
    });
    return finish(acc, num_samples);
  }

  if (!spec.simple()) throw InvalidArgument("the Heisenberg limit accepts simple moments only");
  const std::uint64_t central_lane = 3ULL * n;
  const MeanAcc acc = tree_sum<MeanAcc>(num_samples, [&](std::size_t s) {
    std::array<HeisPointD, 16> gen{};
    for (unsigned i = 0; i < n; ++i) gen[i] = {rng.uniform(s, 3 * i), rng.uniform(s, 3 * i + 1), rng.uniform(s, 3 * i + 2)};
    cplx prod = 1.0;
    for (const auto& t : terms) {
      if (t.power == 0) continue;
      HeisPointD v;
      for (unsigned i = 0; i < n; ++i)
        if (t.subset & (std::uint32_t{1} << i)) v = heis_mul_d(v, gen[i]);
      // central factors of the codimension-2 faces through this vertex
      std::uint64_t pair = 0;
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j, ++pair)
          if ((t.subset >> i & 1) && (t.subset >> j & 1)) v.c += rng.uniform(s, central_lane + pair);
      prod *= raise(obj.eval_heisenberg(heis_reduce_d(v)), 1, t.conjugate);
    }
    return observe(prod);
  });
  return finish(acc, num_samples);
}

// ---------------------------------------------------------------------------

double ConvergenceReport::max_gap_at(std::int64_t m) const {
  double out = 0.0;
  for (const auto& r : rows)
    if (r.m == m) out = std::max(out, r.gap);
  return out;
}

ConvergenceReport convergence_report(const SequenceGenerator& sequence, std::span<const std::int64_t> ms,
                                     std::span<const MomentSpec> specs, const LimitObject& limit,
                                     const ConvergenceOptions& options) {
  ConvergenceReport report;
  std::vector<cplx> limits;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const CounterRng rng(CounterRng::mix(options.seed ^ (0xA5A5ULL + i)));
    limits.push_back(moment_on_limit(limit, specs[i], options.limit_samples, rng).value);
  }
  for (const auto m : ms) {
    const GroupFunction f = sequence(m);
    for (std::size_t i = 0; i < specs.size(); ++i) {
      cplx value;
      try {
        value = moment_exact(f, specs[i], options.cap);
      } catch (const CapExceeded&) {
        const CounterRng rng(CounterRng::mix(options.seed ^ (0x5A5AULL + i) ^ (static_cast<std::uint64_t>(m) << 20)));
        value = moment_sampled(f, specs[i], options.finite_samples, rng).value;
      }
      report.rows.push_back({m, specs[i].label(), value, limits[i], std::abs(value - limits[i])});
    }
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double count = 0;
    for (std::size_t r = i; r < report.rows.size(); r += specs.size()) {
      const auto x = static_cast<double>(report.rows[r].m);
      const double y = report.rows[r].gap;
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      count += 1;
    }
    const double denom = count * sxx - sx * sx;
    report.slopes.push_back(count >= 2 && denom > 0 ? (count * sxy - sx * sy) / denom : 0.0);
  }
  return report;
}

std::int64_t example1_multiplier(std::int64_t m) {
  if (m < 2) throw InvalidArgument("the torus example needs m >= 2");
  const long double phi = (1.0L + std::sqrt(5.0L)) / 2.0L;
  return std::llround(phi * static_cast<long double>(m)) % m;
}

GroupFunction example1_function(std::int64_t m) {
  const std::int64_t a = example1_multiplier(m);
  const auto group = FiniteAbelianGroup::cyclic(m);
  std::vector<cplx> values(static_cast<std::size_t>(m));
  for (std::int64_t k = 0; k < m; ++k)
    values[static_cast<std::size_t>(k)] =
        unit_phase(static_cast<double>(k) / m) + unit_phase(static_cast<double>((a * k) % m) / m);
  return GroupFunction(group, std::move(values), 2.0);
}

LimitObject example1_limit() {
  return LimitObject::torus(
      2, [](std::span<const double> x) { return unit_phase(x[0]) + unit_phase(x[1]); }, 2.0);
}

std::int64_t example2_parameter(std::int64_t m, double alpha) {
  return static_cast<std::int64_t>(std::floor(alpha * static_cast<double>(m)));
}

GroupFunction example2_function(std::int64_t m, double alpha) { return heis_sequence(m, example2_parameter(m, alpha)); }

LimitObject example2_limit() {
  return LimitObject::heisenberg([](const HeisPointD& p) { return unit_phase(p.c); }, 1.0);
}

}  // namespace hofa
