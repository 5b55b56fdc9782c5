#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hofa/cube.hpp"

namespace hofa {

/// Degree k-1 cocycle with values in a finite abelian group, stored as one
/// value per cube of an explicit C^k list.
struct AdditiveCocycle {
  FiniteAbelianGroup target;
  unsigned k = 0;
  std::vector<Cube> cubes;
  std::vector<std::size_t> values;  // values[i] is rho(cubes[i]) as a target element index
};

/// Same with values on the complex unit circle (multiplicative notation).
struct MultiplicativeCocycle {
  unsigned k = 0;
  std::vector<Cube> cubes;
  std::vector<cplx> values;
};

struct CocycleReport {
  bool sign_law = true;           // rho(c o sigma) = s(sigma) rho(c)
  bool concatenation_law = true;  // rho(f3) = rho(f1) + rho(f2)
  std::string witness;            // first failure, empty on success
  std::size_t automorphism_checks = 0;
  std::size_t concatenation_checks = 0;

  bool passed() const { return sign_law && concatenation_law; }
};

AdditiveCocycle zero_cocycle(const FiniteAbelianGroup& target, const Cubespace& space, unsigned k);

/// (f)^diamond(c) = sum_v (-1)^{h(v)} f(c(v)), f given per point as a target element index.
AdditiveCocycle coboundary(const FiniteAbelianGroup& target, const std::vector<std::size_t>& f,
                           const Cubespace& space, unsigned k);
/// (f)^diamond(c) = prod_v f(c(v))^{eps(v)} with eps(v) conjugation for odd h(v);
/// |f| = 1 pointwise.
MultiplicativeCocycle coboundary(const std::vector<cplx>& f, const Cubespace& space, unsigned k,
                                 double tol = kTolerance);

AdditiveCocycle add(const AdditiveCocycle& a, const AdditiveCocycle& b);

CocycleReport check_cocycle(const AdditiveCocycle& rho);
CocycleReport check_cocycle(const MultiplicativeCocycle& rho, double tol = kTolerance);

}  // namespace hofa
