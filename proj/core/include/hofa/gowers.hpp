#pragma once

#include <cstdint>
#include <vector>

#include "hofa/group.hpp"

namespace hofa {

/// Conjugation rule of Gowers-type products: a slot indexed by a subset S is
/// conjugated iff |S| is odd. Subsets of [k] are bit masks, bit i-1 <-> i.
inline bool conjugated(std::uint32_t subset_mask) { return (__builtin_popcount(subset_mask) & 1) != 0; }
inline cplx apply_conjugation(cplx z, bool conj) { return conj ? std::conj(z) : z; }

/// A family of functions on one group indexed by subsets of [k].
/// kAllSubsets: every S in 2^[k] (Gowers inner products).
/// kNonemptySubsets: every S in K_k = 2^[k] \ {empty} (corner convolutions).
class FunctionSystem {
 public:
  enum class Kind { kAllSubsets, kNonemptySubsets };

  /// entries[mask] for every mask in [0, 2^k); for kNonemptySubsets the entry
  /// at mask 0 is ignored and may be omitted (pass 2^k - 1 entries for masks 1..).
  FunctionSystem(Kind kind, unsigned k, std::vector<GroupFunction> entries);

  static FunctionSystem diagonal(Kind kind, unsigned k, const GroupFunction& f);

  Kind kind() const { return kind_; }
  unsigned dimension() const { return k_; }
  const FiniteAbelianGroup& group() const { return slots_.front().group(); }
  const GroupFunction& slot(std::uint32_t mask) const;
  void set_slot(std::uint32_t mask, GroupFunction f);

 private:
  std::size_t position(std::uint32_t mask) const;

  Kind kind_;
  unsigned k_;
  std::vector<GroupFunction> slots_;  // indexed by mask (kAllSubsets) or mask - 1
};

/// Delta_t f(x) = f(x) conj(f(x + t)).
GroupFunction delta(const GroupFunction& f, std::size_t t);

/// ||f||_{U_k}^{2^k}, by the recursion E_t ||Delta_t f||_{U_{k-1}}^{2^{k-1}}
/// down to ||g||_{U_1}^2 = |E g|^2. Cost O(k |A|^k).
double gowers_norm_power(const GroupFunction& f, unsigned k);
/// ||f||_{U_k}, k >= 1.
double gowers_norm_exact(const GroupFunction& f, unsigned k);

/// (sum_chi |lambda_chi|^4)^(1/4).
double u2_via_fourier(const GroupFunction& f);

struct SampledNorm {
  double estimate = 0.0;              // 2^k-th root of max(mean, 0)
  double standard_error = 0.0;        // delta-method error of the root
  double power_mean = 0.0;            // unbiased estimate of ||f||_{U_k}^{2^k}
  double power_standard_error = 0.0;
};

/// Monte Carlo U_k: averages Re prod_S f^{eps(S)}(x + sum_{i in S} t_i) over
/// num_samples cubes. Sample j draws x, t_1..t_k from lanes 0..k of counter j.
SampledNorm gowers_norm_sampled(const GroupFunction& f, unsigned k, std::uint64_t num_samples,
                                const CounterRng& rng);

/// (F) = E_{x,t} prod_{S subset [k]} f_S^{eps(S)}(x + sum_{i in S} t_i).
cplx gowers_inner_product(const FunctionSystem& system);

/// ||f||_{U_k}^{2^k} read off the diagonal inner product; throws
/// NumericalError if the imaginary residue exceeds tol.
double gowers_norm_power_via_inner_product(const GroupFunction& f, unsigned k,
                                           double tol = kTolerance);

/// prod_S ||f_S||_{U_k} - |(F)|; nonnegative up to rounding.
double gcs_gap(const FunctionSystem& system);

/// K_n(F)(x) = E_{t_1..t_n} prod_{S in K_n} f_S^{eps(S)}(x + sum_{i in S} t_i).
cplx corner_convolution(const FunctionSystem& system, std::size_t x);
/// K_n(F) as a function of x.
GroupFunction corner_convolution_function(const FunctionSystem& system);

/// prod_{j not in S} ||f_S||_{2^{n-1}} * prod_{j in S} ||f_S||_{U_n} - |K_n(F)(x)|,
/// with j in [1, n].
double cornineq_gap(const FunctionSystem& system, std::size_t x, unsigned j);

}  // namespace hofa
