#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hofa/group.hpp"
#include "hofa/random.hpp"

namespace hofa {

/// Default enumeration cap |A|^n of the exact moment path.
inline constexpr std::size_t kMomentCap = 10'000'000;

/// One hyperedge: the subset S of [n] (bit i-1 <-> i), its power and whether
/// the factor is conjugated.
struct MomentTerm {
  std::uint32_t subset = 0;
  unsigned power = 1;
  bool conjugate = false;

  bool operator==(const MomentTerm&) const = default;
};

/// E_{x_1..x_n} prod_S f(sum_{i in S} x_i)^{p_S}, conjugated as flagged.
class MomentSpec {
 public:
  MomentSpec(unsigned n, std::vector<MomentTerm> terms);

  unsigned n() const { return n_; }
  const std::vector<MomentTerm>& terms() const { return terms_; }
  /// All powers are at most 1.
  bool simple() const;
  /// Largest edge size with a positive power, minus one.
  unsigned degree() const;
  /// Short label such as "1.2.12*" (digits of S, '^p' for powers, '*' when conjugated).
  std::string label() const;
  /// Variables relabelled by i -> perm[i-1] (perm is a permutation of 1..n).
  MomentSpec relabelled(const std::vector<unsigned>& perm) const;

  /// Single edge [k].
  static MomentSpec full_edge(unsigned k);
  /// Edges {1,2}, {1,3}, {2,3}.
  static MomentSpec triangle();
  /// Every nonempty S of [n], conjugated iff |S| is odd.
  static MomentSpec cube(unsigned n);
  /// Every simple spec on exactly n variables: each nonempty S absent, plain
  /// or conjugated, excluding the empty spec.
  static std::vector<MomentSpec> all_simple(unsigned n);

 private:
  unsigned n_;
  std::vector<MomentTerm> terms_;  // sorted by subset
};

struct MomentEstimate {
  cplx value;
  double standard_error = 0.0;
};

/// Exact n-fold average. Throws CapExceeded when |A|^n > cap.
cplx moment_exact(const GroupFunction& f, const MomentSpec& spec, std::size_t cap = kMomentCap);
/// Monte Carlo average over N uniform tuples; sample i uses lanes 0..n-1.
MomentEstimate moment_sampled(const GroupFunction& f, const MomentSpec& spec, std::uint64_t num_samples,
                              const CounterRng& rng);

/// Nonempty subsets of [n] in coordinate order: by size, then lexicographic
/// on the sorted element lists.
std::vector<std::uint32_t> dn_subsets(unsigned n);

/// Mixed moment prod_c z_c^{a_c} conj(z_c)^{b_c} over the coordinates.
struct Monomial {
  std::vector<unsigned> plain;
  std::vector<unsigned> conjugate;
};

struct TwoSampleReport {
  double max_abs_difference = 0.0;
  double max_z_score = 0.0;  // difference over pooled standard error
  std::size_t monomials = 0;
};

class EmpiricalDistribution {
 public:
  EmpiricalDistribution(unsigned n, double bound, std::vector<std::vector<cplx>> samples);

  unsigned n() const { return n_; }
  std::size_t dimension() const { return subsets_.size(); }
  const std::vector<std::uint32_t>& subsets() const { return subsets_; }
  const std::vector<std::vector<cplx>>& samples() const { return samples_; }
  double bound() const { return bound_; }

  /// Position of the subset mask among the coordinates.
  std::size_t coordinate_of(std::uint32_t subset) const;
  MomentEstimate mixed_moment(const Monomial& m) const;
  /// Empirical value of a spec on at most n variables.
  MomentEstimate moment(const MomentSpec& spec) const;
  /// Every monomial of total degree 1..order.
  std::vector<Monomial> monomials(unsigned order) const;
  std::vector<MomentEstimate> summary(unsigned order) const;

 private:
  unsigned n_;
  double bound_;
  std::vector<std::uint32_t> subsets_;
  std::vector<std::vector<cplx>> samples_;
};

/// Comparison of two empirical distributions on the mixed moments up to order.
TwoSampleReport compare_distributions(const EmpiricalDistribution& a, const EmpiricalDistribution& b,
                                      unsigned order);

/// (f(sum_{i in S} x_i))_S for N uniform tuples (x_1, ..., x_n).
EmpiricalDistribution sample_Dn(const GroupFunction& f, unsigned n, std::uint64_t num_samples, const CounterRng& rng);
/// Same distribution read off random linear cubes, translated so vertex 0 is 0.
EmpiricalDistribution sample_Dn_rooted(const GroupFunction& f, unsigned n, std::uint64_t num_samples,
                                       const CounterRng& rng);

/// Edge density of H_k(S) = {(x_1..x_k) : x_1 + ... + x_k in S}.
double cayley_hypergraph_density(const FiniteAbelianGroup& group, std::span<const std::size_t> support, unsigned k);

// --- limit objects ----------------------------------------------------------

/// Heisenberg element in floating point, used by the limit sampler.
struct HeisPointD {
  double a = 0.0, b = 0.0, c = 0.0;
};
HeisPointD heis_mul_d(const HeisPointD& x, const HeisPointD& y);
/// Representative of x Gamma with entries in [0, 1).
HeisPointD heis_reduce_d(const HeisPointD& x);

class LimitObject {
 public:
  enum class Kind { kTorus, kHeisenberg };
  using TorusFn = std::function<cplx(std::span<const double>)>;
  using HeisFn = std::function<cplx(const HeisPointD&)>;

  static LimitObject torus(unsigned dim, TorusFn g, double bound);
  /// g is evaluated on reduced representatives.
  static LimitObject heisenberg(HeisFn g, double bound);

  Kind kind() const { return kind_; }
  unsigned torus_dim() const { return dim_; }
  double bound() const { return bound_; }
  cplx eval_torus(std::span<const double> x) const { return torus_fn_(x); }
  cplx eval_heisenberg(const HeisPointD& p) const { return heis_fn_(p); }

 private:
  Kind kind_ = Kind::kTorus;
  unsigned dim_ = 0;
  double bound_ = 1.0;
  TorusFn torus_fn_;
  HeisFn heis_fn_;
};

/// Torus: x_i uniform in [0,1)^d, vertex S at sum_{i in S} x_i. Heisenberg:
/// random rooted cubes, vertex S at prod_{i in S} g_i prod_{i<j in S} z_ij
/// with g_i Haar on H/Gamma coordinates and z_ij Haar on the center. The
/// Heisenberg kind accepts simple specs only.
MomentEstimate moment_on_limit(const LimitObject& obj, const MomentSpec& spec, std::uint64_t num_samples,
                               const CounterRng& rng);

// --- convergence harness ----------------------------------------------------

struct ConvergenceRow {
  std::int64_t m = 0;
  std::string spec_id;
  cplx value;
  cplx limit;
  double gap = 0.0;
};

struct ConvergenceOptions {
  std::uint64_t seed = 1;
  std::uint64_t limit_samples = 1'000'000;
  std::uint64_t finite_samples = 1'000'000;  // used when the exact path exceeds the cap
  std::size_t cap = kMomentCap;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  /// Least squares slope of gap against m, per spec in input order.
  std::vector<double> slopes;
  double max_gap_at(std::int64_t m) const;
};

using SequenceGenerator = std::function<GroupFunction(std::int64_t)>;

ConvergenceReport convergence_report(const SequenceGenerator& sequence, std::span<const std::int64_t> ms,
                                     std::span<const MomentSpec> specs, const LimitObject& limit,
                                     const ConvergenceOptions& options = {});

/// round(phi * m) with phi the golden ratio.
std::int64_t example1_multiplier(std::int64_t m);
/// k -> e(k/m) + e(a_m k / m) on Z_m.
GroupFunction example1_function(std::int64_t m);
/// (x, y) -> e(x) + e(y) on the 2-torus.
LimitObject example1_limit();

inline constexpr double kExample2Alpha = 1.4142135623730951 - 1.0;
/// floor(alpha * m).
std::int64_t example2_parameter(std::int64_t m, double alpha = kExample2Alpha);
/// k -> e(k^2 t / m^2) on Z_m with t = floor(alpha m), through the nilmanifold.
GroupFunction example2_function(std::int64_t m, double alpha = kExample2Alpha);
/// g = e(c) on the Heisenberg nilmanifold.
LimitObject example2_limit();

}  // namespace hofa
