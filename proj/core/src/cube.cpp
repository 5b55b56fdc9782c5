#include "hofa/cube.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hofa/error.hpp"

namespace hofa {

std::size_t CubeHash::operator()(const Cube& c) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ c.size();
  for (auto p : c) h = CounterRng::mix(h ^ static_cast<std::uint64_t>(p));
  return static_cast<std::size_t>(h);
}

namespace {

std::string cube_to_string(const Cube& c) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ')';
  return os.str();
}

std::size_t checked_count(std::size_t base, std::size_t exp, std::size_t cap, const char* what) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) throw CapExceeded(std::string(what) + " exceeds the enumeration cap");
    out *= base;
  }
  return out;
}

// All maps {0,1}^n -> A, decoded from a counter (vertex 0 least significant digit).
Cube decode_map(std::size_t code, std::size_t order, std::size_t vertices) {
  Cube c(vertices);
  for (std::size_t v = 0; v < vertices; ++v) {
    c[v] = code % order;
    code /= order;
  }
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------

CubeMorphism::CubeMorphism(unsigned source_dim, std::vector<MorphismSymbol> coords)
    : source_dim_(source_dim), coords_(std::move(coords)) {
  if (source_dim_ > 16 || coords_.size() > 16) throw InvalidArgument("cube morphism dimension above 16");
  for (const auto& s : coords_) {
    if ((s.kind == MorphismSymbol::Kind::kVar || s.kind == MorphismSymbol::Kind::kNegVar) &&
        (s.var < 1 || s.var > source_dim_))
      throw InvalidArgument("cube morphism refers to a missing source coordinate");
  }
}

CubeMorphism CubeMorphism::identity(unsigned n) {
  std::vector<MorphismSymbol> coords(n);
  for (unsigned i = 0; i < n; ++i) coords[i] = {MorphismSymbol::Kind::kVar, i + 1};
  return CubeMorphism(n, std::move(coords));
}

std::uint32_t CubeMorphism::apply(std::uint32_t vertex) const {
  const unsigned m = target_dim();
  std::uint32_t out = 0;
  for (unsigned j = 0; j < m; ++j) {
    const auto& s = coords_[j];
    bool bit = false;
    switch (s.kind) {
      case MorphismSymbol::Kind::kZero: bit = false; break;
      case MorphismSymbol::Kind::kOne: bit = true; break;
      case MorphismSymbol::Kind::kVar: bit = vertex_coord(vertex, source_dim_, s.var); break;
      case MorphismSymbol::Kind::kNegVar: bit = !vertex_coord(vertex, source_dim_, s.var); break;
    }
    if (bit) out |= vertex_bit(m, j + 1);
  }
  return out;
}

CubeMorphism CubeMorphism::after(const CubeMorphism& inner) const {
  if (inner.target_dim() != source_dim_) throw InvalidArgument("cube morphism dimensions do not compose");
  std::vector<MorphismSymbol> coords(coords_.size());
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    const auto& s = coords_[j];
    if (s.kind == MorphismSymbol::Kind::kZero || s.kind == MorphismSymbol::Kind::kOne) {
      coords[j] = s;
      continue;
    }
    MorphismSymbol t = inner.coords_[s.var - 1];
    if (s.kind == MorphismSymbol::Kind::kNegVar) {
      switch (t.kind) {
        case MorphismSymbol::Kind::kZero: t.kind = MorphismSymbol::Kind::kOne; break;
        case MorphismSymbol::Kind::kOne: t.kind = MorphismSymbol::Kind::kZero; break;
        case MorphismSymbol::Kind::kVar: t.kind = MorphismSymbol::Kind::kNegVar; break;
        case MorphismSymbol::Kind::kNegVar: t.kind = MorphismSymbol::Kind::kVar; break;
      }
    }
    coords[j] = t;
  }
  return CubeMorphism(inner.source_dim_, std::move(coords));
}

bool CubeMorphism::is_bijective() const {
  if (target_dim() != source_dim_) return false;
  std::vector<bool> seen(source_dim_ + 1, false);
  for (const auto& s : coords_) {
    if (s.kind == MorphismSymbol::Kind::kZero || s.kind == MorphismSymbol::Kind::kOne) return false;
    if (seen[s.var]) return false;
    seen[s.var] = true;
  }
  return true;
}

std::string CubeMorphism::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t j = 0; j < coords_.size(); ++j) {
    if (j) os << ',';
    const auto& s = coords_[j];
    switch (s.kind) {
      case MorphismSymbol::Kind::kZero: os << '0'; break;
      case MorphismSymbol::Kind::kOne: os << '1'; break;
      case MorphismSymbol::Kind::kVar: os << 'v' << s.var; break;
      case MorphismSymbol::Kind::kNegVar: os << "1-v" << s.var; break;
    }
  }
  os << ']';
  return os.str();
}

std::vector<CubeMorphism> enumerate_cube_morphisms(unsigned n, unsigned m, std::size_t cap) {
  std::vector<MorphismSymbol> symbols{{MorphismSymbol::Kind::kZero, 0}, {MorphismSymbol::Kind::kOne, 0}};
  for (unsigned i = 1; i <= n; ++i) {
    symbols.push_back({MorphismSymbol::Kind::kVar, i});
    symbols.push_back({MorphismSymbol::Kind::kNegVar, i});
  }
  const std::size_t total = checked_count(symbols.size(), m, cap, "cube morphism count");
  std::vector<CubeMorphism> out;
  out.reserve(total);
  std::vector<MorphismSymbol> coords(m);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (unsigned j = m; j-- > 0;) {
      coords[j] = symbols[rest % symbols.size()];
      rest /= symbols.size();
    }
    out.emplace_back(n, coords);
  }
  return out;
}

std::vector<CubeMorphism> cube_automorphisms(unsigned k) {
  std::vector<unsigned> perm(k);
  std::iota(perm.begin(), perm.end(), 1u);
  std::vector<CubeMorphism> out;
  do {
    for (std::uint32_t flips = 0; flips < (std::uint32_t{1} << k); ++flips) {
      std::vector<MorphismSymbol> coords(k);
      for (unsigned j = 0; j < k; ++j)
        coords[j] = {(flips >> j) & 1 ? MorphismSymbol::Kind::kNegVar : MorphismSymbol::Kind::kVar, perm[j]};
      out.emplace_back(k, std::move(coords));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Cube apply_morphism(const CubeMorphism& psi, const Cube& c) {
  if (c.size() != (std::size_t{1} << psi.target_dim()))
    throw InvalidArgument("cube dimension does not match the morphism target");
  Cube out(std::size_t{1} << psi.source_dim());
  for (std::uint32_t v = 0; v < out.size(); ++v) out[v] = c[psi.apply(v)];
  return out;
}

int automorphism_sign(const CubeMorphism& sigma) {
  if (!sigma.is_bijective()) throw InvalidArgument("automorphism sign needs a bijective cube morphism");
  return (vertex_height(sigma.apply(0)) & 1) ? -1 : 1;
}

// ---------------------------------------------------------------------------

Cube linear_cube(const FiniteAbelianGroup& group, std::size_t x, const std::vector<std::size_t>& t) {
  const auto n = static_cast<unsigned>(t.size());
  Cube c(std::size_t{1} << n);
  for (std::uint32_t v = 0; v < c.size(); ++v) {
    std::size_t p = x;
    for (unsigned i = 1; i <= n; ++i)
      if (vertex_coord(v, n, i)) p = group.add(p, t[i - 1]);
    c[v] = p;
  }
  return c;
}

bool linear_cube_membership(const FiniteAbelianGroup& group, unsigned n, const Cube& f) {
  if (f.size() != (std::size_t{1} << n)) throw InvalidArgument("map size does not match the cube dimension");
  std::vector<std::size_t> t(n);
  for (unsigned i = 1; i <= n; ++i) t[i - 1] = group.subtract(f[vertex_bit(n, i)], f[0]);
  return linear_cube(group, f[0], t) == f;
}

Cube linear_cube_sample(const FiniteAbelianGroup& group, unsigned n, const CounterRng& rng,
                        std::uint64_t sample) {
  std::vector<std::size_t> t(n);
  for (unsigned i = 0; i < n; ++i) t[i] = random_element(group, rng, sample, i + 1);
  return linear_cube(group, random_element(group, rng, sample, 0), t);
}

bool degree_k_membership(const FiniteAbelianGroup& group, unsigned k, unsigned n, const Cube& f) {
  if (f.size() != (std::size_t{1} << n)) throw InvalidArgument("map size does not match the cube dimension");
  const std::uint32_t corners = std::uint32_t{1} << (k + 1);
  for (const auto& phi : enumerate_cube_morphisms(k + 1, n)) {
    std::size_t acc = 0;
    for (std::uint32_t v = 0; v < corners; ++v) {
      const std::size_t value = f[phi.apply(v)];
      acc = (vertex_height(v) & 1) ? group.subtract(acc, value) : group.add(acc, value);
    }
    if (acc != 0) return false;
  }
  return true;
}

std::vector<Cube> enumerate_linear_cubes(const FiniteAbelianGroup& group, unsigned n) {
  return enumerate_degree_k_cubes(group, 1, n);
}

std::size_t degree_k_cube_count(std::size_t group_order, unsigned k, unsigned n) {
  std::size_t exponent = 0, binom = 1;
  for (unsigned i = 0; i <= std::min(n, k); ++i) {
    exponent += binom;
    binom = binom * (n - i) / (i + 1);
  }
  return checked_count(group_order, exponent, std::size_t{1} << 40, "cube count");
}

std::vector<Cube> enumerate_degree_k_cubes(const FiniteAbelianGroup& group, unsigned k, unsigned n) {
  // Monomials prod_{i in T} v_i with |T| <= k, T encoded as a vertex mask.
  std::vector<std::uint32_t> monomials;
  for (std::uint32_t t = 0; t < (std::uint32_t{1} << n); ++t)
    if (vertex_height(t) <= k) monomials.push_back(t);
  const std::size_t order = group.order();
  const std::size_t total = checked_count(order, monomials.size(), std::size_t{1} << 24, "degree-k cube list");
  std::vector<Cube> out;
  out.reserve(total);
  std::vector<std::size_t> coeffs(monomials.size());
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (std::size_t j = monomials.size(); j-- > 0;) {
      coeffs[j] = rest % order;
      rest /= order;
    }
    Cube c(std::size_t{1} << n, 0);
    for (std::uint32_t v = 0; v < c.size(); ++v)
      for (std::size_t j = 0; j < monomials.size(); ++j)
        if ((v & monomials[j]) == monomials[j]) c[v] = group.add(c[v], coeffs[j]);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::uint32_t> Face::vertices() const {
  std::vector<std::uint32_t> out;
  // enumerate submasks of free_mask in increasing order
  std::uint32_t sub = 0;
  do {
    out.push_back(base | sub);
    sub = (sub - free_mask) & free_mask;
  } while (sub != 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Face> enumerate_faces(unsigned n, int d) {
  if (d < 0) d = 0;
  std::vector<Face> out;
  if (static_cast<unsigned>(d) > n) return out;
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t free = 0; free <= full; ++free) {
    if (vertex_height(free) != static_cast<unsigned>(d)) continue;
    const std::uint32_t fixed = full & ~free;
    std::uint32_t base = 0;
    do {
      out.push_back({free, base});
      base = (base - fixed) & fixed;
    } while (base != 0);
  }
  return out;
}

bool in_znk(const FiniteAbelianGroup& group, unsigned n, unsigned k, const Cube& m) {
  if (m.size() != (std::size_t{1} << n)) throw InvalidArgument("map size does not match the cube dimension");
  for (const auto& face : enumerate_faces(n, static_cast<int>(n) - static_cast<int>(k))) {
    std::size_t acc = 0;
    for (auto v : face.vertices()) acc = group.add(acc, m[v]);
    if (acc != 0) return false;
  }
  return true;
}

std::vector<Cube> znk_elements(const FiniteAbelianGroup& group, unsigned n, unsigned k) {
  const std::size_t vertices = std::size_t{1} << n;
  const std::size_t total = checked_count(group.order(), vertices, std::size_t{1} << 22, "Z_{n,k} brute force");
  std::vector<Cube> out;
  for (std::size_t code = 0; code < total; ++code) {
    Cube m = decode_map(code, group.order(), vertices);
    if (in_znk(group, n, k, m)) out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Cube znk_generator(const FiniteAbelianGroup& group, unsigned n, const Face& face, std::size_t a) {
  Cube g(std::size_t{1} << n, 0);
  const std::size_t minus_a = group.negate(a);
  for (auto v : face.vertices()) g[v] = (vertex_height(v) & 1) ? minus_a : a;
  return g;
}

ZnkReport z_nk_span_check(const FiniteAbelianGroup& group, unsigned n, unsigned k, std::size_t cap) {
  ZnkReport report;
  report.n = n;
  report.k = k;
  const std::size_t vertices = std::size_t{1} << n;
  checked_count(group.order(), vertices, cap, "Z_{n,k} brute force");

  const auto brute = znk_elements(group, n, k);
  report.brute_force_size = brute.size();

  std::vector<Cube> generators;
  for (const auto& face : enumerate_faces(n, static_cast<int>(k) + 1)) {
    if (face.dim() != k + 1) continue;
    for (std::size_t a = 1; a < group.order(); ++a) generators.push_back(znk_generator(group, n, face, a));
  }
  CubeSet span{Cube(vertices, 0)};
  std::vector<Cube> frontier{Cube(vertices, 0)};
  while (!frontier.empty()) {
    Cube cur = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& g : generators) {
      Cube next(vertices);
      for (std::size_t v = 0; v < vertices; ++v) next[v] = group.add(cur[v], g[v]);
      if (span.insert(next).second) frontier.push_back(std::move(next));
    }
  }
  report.span_size = span.size();
  report.span_equals_brute_force =
      span.size() == brute.size() &&
      std::all_of(brute.begin(), brute.end(), [&](const Cube& m) { return span.count(m) != 0; });

  // Z*_{n,k}: maps on K_n (vertex 0 dropped), face sums over faces avoiding 0^n.
  const int face_dim = std::max(0, static_cast<int>(n) - static_cast<int>(k));
  std::vector<Face> star_faces;
  for (const auto& f : enumerate_faces(n, face_dim))
    if (!f.contains(0)) star_faces.push_back(f);
  const std::size_t star_total = checked_count(group.order(), vertices - 1, cap, "Z*_{n,k} brute force");
  CubeSet star;
  for (std::size_t code = 0; code < star_total; ++code) {
    Cube m = decode_map(code, group.order(), vertices - 1);
    bool ok = true;
    for (const auto& f : star_faces) {
      std::size_t acc = 0;
      for (auto v : f.vertices()) acc = group.add(acc, m[v - 1]);
      if (acc != 0) {
        ok = false;
        break;
      }
    }
    if (ok) star.insert(std::move(m));
  }
  CubeSet image;
  for (const auto& m : brute) image.insert(Cube(m.begin() + 1, m.end()));
  report.star_size = star.size();
  report.image_size = image.size();
  report.forgetting_surjective =
      image.size() == star.size() &&
      std::all_of(star.begin(), star.end(), [&](const Cube& m) { return image.count(m) != 0; });
  return report;
}

bool pairing_vanishes(const FiniteAbelianGroup& group, const Cube& m, const Cube& f) {
  if (m.size() != f.size()) throw InvalidArgument("pairing needs maps on the same cube");
  const std::int64_t lcm = group.exponent_lcm();
  int128 acc = 0;
  for (std::size_t v = 0; v < m.size(); ++v) {
    for (std::size_t i = 0; i < group.rank(); ++i) {
      const std::int64_t w = lcm / group.cyclic_factors()[i];
      acc += static_cast<int128>(group.coordinate(m[v], i)) * group.coordinate(f[v], i) * w;
    }
  }
  return acc % lcm == 0;
}

DualityReport duality_check(const FiniteAbelianGroup& group, unsigned n, unsigned k) {
  DualityReport report;
  const auto annihilators = znk_elements(group, n, k);
  const std::size_t vertices = std::size_t{1} << n;
  const std::size_t total = checked_count(group.order(), vertices, std::size_t{1} << 22, "duality brute force");
  report.agrees = true;
  for (std::size_t code = 0; code < total; ++code) {
    const Cube f = decode_map(code, group.order(), vertices);
    const bool member = degree_k_membership(group, k, n, f);
    const bool annihilated = std::all_of(annihilators.begin(), annihilators.end(),
                                         [&](const Cube& m) { return pairing_vanishes(group, m, f); });
    ++report.maps_tested;
    if (member) ++report.members;
    if (member != annihilated && report.agrees) {
      report.agrees = false;
      report.witness = f;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

Cubespace::Cubespace(std::size_t points, std::vector<std::vector<Cube>> cubes_by_dim) : points_(points) {
  if (points_ == 0) throw InvalidArgument("cubespace needs at least one point");
  if (cubes_by_dim.empty()) cubes_by_dim.emplace_back();
  if (cubes_by_dim.size() > 6) throw InvalidArgument("cubespace dimension cap is 5");
  cubes_by_dim[0].clear();
  for (std::size_t p = 0; p < points_; ++p) cubes_by_dim[0].push_back(Cube{p});
  lists_.resize(cubes_by_dim.size());
  sets_.resize(cubes_by_dim.size());
  for (std::size_t n = 0; n < cubes_by_dim.size(); ++n) {
    for (auto& c : cubes_by_dim[n]) {
      if (c.size() != (std::size_t{1} << n))
        throw InvalidArgument("cube of dimension " + std::to_string(n) + " has " + std::to_string(c.size()) +
                              " vertices");
      for (auto p : c)
        if (p >= points_) throw InvalidArgument("cube vertex refers to a missing point");
      if (sets_[n].insert(c).second) lists_[n].push_back(std::move(c));
    }
    std::sort(lists_[n].begin(), lists_[n].end());
  }
}

Cubespace Cubespace::linear(const FiniteAbelianGroup& group, unsigned max_dim) {
  return degree_k(group, 1, max_dim);
}

Cubespace Cubespace::degree_k(const FiniteAbelianGroup& group, unsigned k, unsigned max_dim) {
  std::vector<std::vector<Cube>> lists(max_dim + 1);
  for (unsigned n = 1; n <= max_dim; ++n) lists[n] = enumerate_degree_k_cubes(group, k, n);
  return Cubespace(group.order(), std::move(lists));
}

bool Cubespace::contains(const Cube& c) const {
  const std::size_t size = c.size();
  if (size == 0 || (size & (size - 1)) != 0) return false;
  const auto n = static_cast<std::size_t>(__builtin_ctzll(size));
  if (n >= sets_.size()) throw InvalidArgument("cube dimension above the cubespace cap");
  return sets_[n].count(c) != 0;
}

bool Cubespace::remove_cube(const Cube& c) {
  const auto n = static_cast<std::size_t>(__builtin_ctzll(c.size()));
  if (n == 0 || n >= sets_.size() || sets_[n].erase(c) == 0) return false;
  lists_[n].erase(std::find(lists_[n].begin(), lists_[n].end(), c));
  return true;
}

bool Cubespace::add_cube(const Cube& c) {
  const auto n = static_cast<std::size_t>(__builtin_ctzll(c.size()));
  if (n == 0 || n >= sets_.size()) return false;
  for (auto p : c)
    if (p >= points_) throw InvalidArgument("cube vertex refers to a missing point");
  if (!sets_[n].insert(c).second) return false;
  lists_[n].insert(std::lower_bound(lists_[n].begin(), lists_[n].end(), c), c);
  return true;
}

bool AxiomReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.passed; });
}

CornerStats corner_completions(const Cubespace& space, unsigned n) {
  if (n == 0 || n > space.max_dim()) throw InvalidArgument("corner dimension outside the cube lists");
  const std::size_t vertices = std::size_t{1} << n;
  const std::size_t top = vertices - 1;

  std::unordered_map<Cube, std::size_t, CubeHash> completions;
  for (const auto& c : space.cubes(n)) ++completions[Cube(c.begin(), c.end() - 1)];

  // face_vertices[i][w]: vertex of {0,1}^n for vertex w of the face {v_{i+1} = 0}
  std::vector<std::vector<std::uint32_t>> face_vertices(n);
  for (unsigned i = 1; i <= n; ++i) {
    for (std::uint32_t w = 0; w < (std::uint32_t{1} << (n - 1)); ++w) {
      const std::uint32_t high = (w >> (n - i)) << (n - i + 1);
      const std::uint32_t low = w & ((std::uint32_t{1} << (n - i)) - 1);
      face_vertices[i - 1].push_back(high | low);
    }
  }

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  Cube corner(top, kUnset);
  CornerStats stats;
  stats.min_completions = static_cast<std::size_t>(-1);
  const auto& faces = space.cubes(n - 1);

  std::function<void(unsigned)> extend = [&](unsigned i) {
    if (i == n) {
      ++stats.corners;
      const auto it = completions.find(corner);
      const std::size_t count = it == completions.end() ? 0 : it->second;
      stats.min_completions = std::min(stats.min_completions, count);
      stats.max_completions = std::max(stats.max_completions, count);
      if (count == 0 && (!stats.first_unextendable || corner < *stats.first_unextendable))
        stats.first_unextendable = corner;
      if (count > 1 && (!stats.first_ambiguous || corner < *stats.first_ambiguous))
        stats.first_ambiguous = corner;
      return;
    }
    const auto& fv = face_vertices[i];
    std::vector<std::uint32_t> assigned;
    for (const auto& c : faces) {
      bool ok = true;
      for (std::size_t w = 0; w < fv.size(); ++w) {
        const std::size_t cur = corner[fv[w]];
        if (cur != kUnset && cur != c[w]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      assigned.clear();
      for (std::size_t w = 0; w < fv.size(); ++w) {
        if (corner[fv[w]] == kUnset) {
          corner[fv[w]] = c[w];
          assigned.push_back(fv[w]);
        }
      }
      extend(i + 1);
      for (auto v : assigned) corner[v] = kUnset;
    }
  };
  extend(0);
  if (stats.corners == 0) stats.min_completions = 0;
  return stats;
}

AxiomReport check_nilspace_axioms(const Cubespace& space, unsigned n_max) {
  if (n_max > space.max_dim()) throw InvalidArgument("axiom check needs cube lists up to n_max");
  AxiomReport report;

  AxiomResult composition{"composition", true, {}};
  for (unsigned m = 0; m <= n_max && composition.passed; ++m) {
    for (unsigned n = 0; n <= n_max && composition.passed; ++n) {
      const auto morphisms = enumerate_cube_morphisms(n, m);
      for (const auto& c : space.cubes(m)) {
        for (const auto& psi : morphisms) {
          const Cube image = apply_morphism(psi, c);
          if (!space.contains(image)) {
            composition.passed = false;
            composition.witness = "cube " + cube_to_string(c) + " in C^" + std::to_string(m) + " composed with " +
                                  psi.to_string() + " gives " + cube_to_string(image) + " not in C^" +
                                  std::to_string(n);
            break;
          }
        }
        if (!composition.passed) break;
      }
    }
  }
  report.results.push_back(composition);

  AxiomResult ergodicity{"ergodicity", true, {}};
  if (space.max_dim() >= 1) {
    for (std::size_t a = 0; a < space.points() && ergodicity.passed; ++a) {
      for (std::size_t b = 0; b < space.points(); ++b) {
        if (!space.contains(Cube{a, b})) {
          ergodicity.passed = false;
          ergodicity.witness = "pair " + cube_to_string(Cube{a, b}) + " is not a 1-cube";
          break;
        }
      }
    }
  }
  report.results.push_back(ergodicity);

  AxiomResult gluing{"gluing", true, {}};
  for (unsigned n = 1; n <= n_max && gluing.passed; ++n) {
    const auto stats = corner_completions(space, n);
    if (stats.first_unextendable) {
      gluing.passed = false;
      gluing.witness = "corner " + cube_to_string(*stats.first_unextendable) + " of dimension " +
                       std::to_string(n) + " has no completion";
    }
  }
  report.results.push_back(gluing);
  return report;
}

bool check_k_step(const Cubespace& space, unsigned k) {
  const auto stats = corner_completions(space, k + 1);
  return stats.corners > 0 && stats.min_completions == 1 && stats.max_completions == 1;
}

// ---------------------------------------------------------------------------

ThreeCubePoint three_cube_map(unsigned n, std::uint32_t v, std::uint32_t w) {
  ThreeCubePoint p(n);
  for (unsigned j = 1; j <= n; ++j)
    p[j - 1] = (1 - 2 * static_cast<int>(vertex_coord(v, n, j))) * (1 - static_cast<int>(vertex_coord(w, n, j)));
  return p;
}

ThreeCubePoint omega(unsigned n, std::uint32_t v) { return three_cube_map(n, v, 0); }

std::size_t three_cube_index(const ThreeCubePoint& p) {
  std::size_t idx = 0;
  for (int c : p) idx = idx * 3 + static_cast<std::size_t>(c + 1);
  return idx;
}

ThreeCubeReport three_cube_check(const FiniteAbelianGroup& group, unsigned n, std::size_t cap) {
  ThreeCubeReport report;
  const std::size_t cube_vertices = std::size_t{1} << n;
  std::size_t tpoints = 1;
  for (unsigned i = 0; i < n; ++i) tpoints *= 3;

  std::vector<std::vector<std::size_t>> phi(cube_vertices, std::vector<std::size_t>(cube_vertices));
  for (std::uint32_t v = 0; v < cube_vertices; ++v) {
    std::unordered_set<std::size_t> image;
    for (std::uint32_t w = 0; w < cube_vertices; ++w) {
      phi[v][w] = three_cube_index(three_cube_map(n, v, w));
      image.insert(phi[v][w]);
    }
    if (image.size() != cube_vertices) report.phi_injective = false;
  }
  std::vector<std::size_t> omega_idx(cube_vertices);
  for (std::uint32_t v = 0; v < cube_vertices; ++v) omega_idx[v] = three_cube_index(omega(n, v));

  const std::size_t total = checked_count(group.order(), tpoints, cap, "three-cube brute force");
  Cube restricted(cube_vertices);
  for (std::size_t code = 0; code < total; ++code) {
    const Cube t = decode_map(code, group.order(), tpoints);
    ++report.maps_tested;
    bool hom = true;
    for (std::uint32_t v = 0; v < cube_vertices && hom; ++v) {
      for (std::uint32_t w = 0; w < cube_vertices; ++w) restricted[w] = t[phi[v][w]];
      hom = linear_cube_membership(group, n, restricted);
    }
    if (!hom) continue;
    ++report.homomorphisms;
    for (std::uint32_t v = 0; v < cube_vertices; ++v) restricted[v] = t[omega_idx[v]];
    if (!linear_cube_membership(group, n, restricted)) report.omega_closed = false;
  }
  return report;
}

bool adjacent(const Cube& f1, const Cube& f2) {
  if (f1.size() != f2.size() || f1.size() < 2) return false;
  for (std::size_t v = 0; v < f1.size(); v += 2)
    if (f1[v + 1] != f2[v]) return false;
  return true;
}

Cube concatenate(const Cube& f1, const Cube& f2) {
  if (!adjacent(f1, f2)) throw InvalidArgument("concatenation needs f1(v,1) = f2(v,0) for every v");
  Cube f3(f1.size());
  for (std::size_t v = 0; v < f1.size(); v += 2) {
    f3[v] = f1[v];
    f3[v + 1] = f2[v + 1];
  }
  return f3;
}

}  // namespace hofa
