#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hofa/group.hpp"

namespace hofa {

// Vertices of {0,1}^n are numbered lexicographically: v_1 is the most
// significant bit, v_n the least. A cube c: {0,1}^n -> N is the vector of
// point indices c[vertex].

using Cube = std::vector<std::size_t>;

struct CubeHash {
  std::size_t operator()(const Cube& c) const noexcept;
};
using CubeSet = std::unordered_set<Cube, CubeHash>;

inline std::uint32_t vertex_bit(unsigned n, unsigned i) { return std::uint32_t{1} << (n - i); }
inline bool vertex_coord(std::uint32_t v, unsigned n, unsigned i) { return (v & vertex_bit(n, i)) != 0; }
/// h(v) = sum_i v_i.
inline unsigned vertex_height(std::uint32_t v) { return static_cast<unsigned>(__builtin_popcount(v)); }

/// One output coordinate of a cube morphism.
struct MorphismSymbol {
  enum class Kind { kZero, kOne, kVar, kNegVar };
  Kind kind = Kind::kZero;
  unsigned var = 0;  // 1-based source coordinate for kVar / kNegVar

  bool operator==(const MorphismSymbol&) const = default;
};

/// Affine map {0,1}^n -> {0,1}^m given coordinate-wise by 0, 1, v_i or 1 - v_i.
class CubeMorphism {
 public:
  CubeMorphism(unsigned source_dim, std::vector<MorphismSymbol> coords);

  static CubeMorphism identity(unsigned n);

  unsigned source_dim() const { return source_dim_; }
  unsigned target_dim() const { return static_cast<unsigned>(coords_.size()); }
  const std::vector<MorphismSymbol>& coords() const { return coords_; }

  std::uint32_t apply(std::uint32_t vertex) const;
  /// (this o inner): first inner, then this.
  CubeMorphism after(const CubeMorphism& inner) const;
  bool is_bijective() const;
  std::string to_string() const;

  bool operator==(const CubeMorphism&) const = default;

 private:
  unsigned source_dim_;
  std::vector<MorphismSymbol> coords_;
};

/// All (2n+2)^m symbolic morphisms {0,1}^n -> {0,1}^m (2^m when n = 0).
std::vector<CubeMorphism> enumerate_cube_morphisms(unsigned n, unsigned m,
                                                   std::size_t cap = std::size_t{1} << 24);
/// The 2^k k! bijective morphisms of {0,1}^k.
std::vector<CubeMorphism> cube_automorphisms(unsigned k);

/// c o psi for c: {0,1}^m -> N and psi: {0,1}^n -> {0,1}^m.
Cube apply_morphism(const CubeMorphism& psi, const Cube& c);

/// s(sigma) = (-1)^{number of ones in sigma(0^k)}; sigma must be bijective.
int automorphism_sign(const CubeMorphism& sigma);

// --- abelian cube structures ----------------------------------------------

/// c(v) = x + sum_i v_i t_i.
Cube linear_cube(const FiniteAbelianGroup& group, std::size_t x, const std::vector<std::size_t>& t);
bool linear_cube_membership(const FiniteAbelianGroup& group, unsigned n, const Cube& f);
Cube linear_cube_sample(const FiniteAbelianGroup& group, unsigned n, const CounterRng& rng,
                        std::uint64_t sample);

/// Membership in C^n(D_k(A)): every alternating sum over a morphism
/// {0,1}^{k+1} -> {0,1}^n vanishes.
bool degree_k_membership(const FiniteAbelianGroup& group, unsigned k, unsigned n, const Cube& f);

/// C^n of the linear structure, parametrised by (x, t_1..t_n).
std::vector<Cube> enumerate_linear_cubes(const FiniteAbelianGroup& group, unsigned n);
/// C^n(D_k(A)) as the maps v -> sum_{|T| <= k} a_T prod_{i in T} v_i.
std::vector<Cube> enumerate_degree_k_cubes(const FiniteAbelianGroup& group, unsigned k, unsigned n);
/// |A|^{sum_{i <= min(n,k)} C(n,i)}.
std::size_t degree_k_cube_count(std::size_t group_order, unsigned k, unsigned n);

// --- faces and the groups Z_{n,k} -----------------------------------------

/// A face of {0,1}^n: coordinates in free_mask vary, the others equal base.
struct Face {
  std::uint32_t free_mask = 0;
  std::uint32_t base = 0;

  unsigned dim() const { return vertex_height(free_mask); }
  bool contains(std::uint32_t v) const { return (v & ~free_mask) == base; }
  std::vector<std::uint32_t> vertices() const;
};

/// All faces of {0,1}^n of dimension d (d clamped at 0).
std::vector<Face> enumerate_faces(unsigned n, int d);

struct ZnkReport {
  unsigned n = 0, k = 0;
  std::size_t brute_force_size = 0;  // |Z_{n,k}(A)| by face-sum testing
  std::size_t span_size = 0;         // |<g_{F,a}>|
  bool span_equals_brute_force = false;
  std::size_t star_size = 0;         // |Z*_{n,k}(A)| by face-sum testing on K_n
  std::size_t image_size = 0;        // |image of the forgetting map|
  bool forgetting_surjective = false;
};

bool in_znk(const FiniteAbelianGroup& group, unsigned n, unsigned k, const Cube& m);
/// Brute-force Z_{n,k}(A) over all |A|^{2^n} maps.
std::vector<Cube> znk_elements(const FiniteAbelianGroup& group, unsigned n, unsigned k);
/// g_{F,a}(v) = a (-1)^{h(v)} on F, 0 elsewhere; F a (k+1)-dimensional face.
Cube znk_generator(const FiniteAbelianGroup& group, unsigned n, const Face& face, std::size_t a);
ZnkReport z_nk_span_check(const FiniteAbelianGroup& group, unsigned n, unsigned k,
                          std::size_t cap = std::size_t{1} << 22);

/// sum_v <m(v), f(v)> under the standard pairing of A-hat = A with A; zero
/// iff the pairing character is trivial.
bool pairing_vanishes(const FiniteAbelianGroup& group, const Cube& m, const Cube& f);

struct DualityReport {
  std::size_t maps_tested = 0;
  std::size_t members = 0;
  bool agrees = false;
  std::optional<Cube> witness;
};
/// f in C^n(D_k(A)) iff f is annihilated by Z_{n,k}(A-hat), over all maps f.
DualityReport duality_check(const FiniteAbelianGroup& group, unsigned n, unsigned k);

// --- cubespaces and the nilspace axioms -----------------------------------

/// Finite set {0..points-1} with explicit cube lists C^0..C^{max_dim}.
/// C^0 is always the full point set.
class Cubespace {
 public:
  Cubespace(std::size_t points, std::vector<std::vector<Cube>> cubes_by_dim);

  static Cubespace linear(const FiniteAbelianGroup& group, unsigned max_dim);
  static Cubespace degree_k(const FiniteAbelianGroup& group, unsigned k, unsigned max_dim);

  std::size_t points() const { return points_; }
  unsigned max_dim() const { return static_cast<unsigned>(lists_.size() - 1); }
  const std::vector<Cube>& cubes(unsigned n) const { return lists_.at(n); }
  bool contains(const Cube& c) const;

  /// Mutations for checker tests; return false if nothing changed.
  bool remove_cube(const Cube& c);
  bool add_cube(const Cube& c);

 private:
  std::size_t points_;
  std::vector<std::vector<Cube>> lists_;
  std::vector<CubeSet> sets_;
};

struct AxiomResult {
  std::string axiom;
  bool passed = true;
  std::string witness;  // lexicographically first failure
};

struct AxiomReport {
  std::vector<AxiomResult> results;  // composition, ergodicity, gluing
  bool all_passed() const;
};

/// Composition over all morphisms between dimensions <= n_max, ergodicity,
/// and gluing (corners whose faces through 0^n are cubes extend) for
/// n = 1..n_max. Needs cube lists up to n_max.
AxiomReport check_nilspace_axioms(const Cubespace& space, unsigned n_max);

struct CornerStats {
  std::size_t corners = 0;          // corners whose faces through 0^n are cubes
  std::size_t min_completions = 0;
  std::size_t max_completions = 0;
  std::optional<Cube> first_unextendable;
  std::optional<Cube> first_ambiguous;
};
/// Completion counts of every admissible corner at dimension n >= 1.
CornerStats corner_completions(const Cubespace& space, unsigned n);

/// True iff every admissible (k+1)-dimensional corner has exactly one completion.
bool check_k_step(const Cubespace& space, unsigned k);

// --- three-cubes ------------------------------------------------------------

/// A point of T_n = {-1,0,1}^n.
using ThreeCubePoint = std::vector<int>;

/// Phi_v(w)_j = (1 - 2 v_j)(1 - w_j), for vertex w of {0,1}^n.
ThreeCubePoint three_cube_map(unsigned n, std::uint32_t v, std::uint32_t w);
/// omega(v) = Phi_v(0^n).
ThreeCubePoint omega(unsigned n, std::uint32_t v);
/// Base-3 lexicographic index of a T_n point (digit = coordinate + 1).
std::size_t three_cube_index(const ThreeCubePoint& p);

struct ThreeCubeReport {
  std::size_t maps_tested = 0;
  std::size_t homomorphisms = 0;  // maps whose every Phi_v-restriction is a linear cube
  bool omega_closed = true;       // t o omega is a linear cube for all of them
  bool phi_injective = true;
};
/// Brute force over all maps T_n -> A (n <= 2 at desk scale).
ThreeCubeReport three_cube_check(const FiniteAbelianGroup& group, unsigned n,
                                 std::size_t cap = std::size_t{1} << 22);

/// f3(v,0) = f1(v,0), f3(v,1) = f2(v,1); requires f1(v,1) = f2(v,0).
Cube concatenate(const Cube& f1, const Cube& f2);
bool adjacent(const Cube& f1, const Cube& f2);

}  // namespace hofa
