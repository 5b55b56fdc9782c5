#include "hofa/cocycle.hpp"

#include <cmath>
#include <sstream>
#include <unordered_map>

#include "hofa/error.hpp"

namespace hofa {

namespace {

std::string show(const Cube& c) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ')';
  return os.str();
}

using CubeIndex = std::unordered_map<Cube, std::size_t, CubeHash>;

CubeIndex index_cubes(const std::vector<Cube>& cubes) {
  CubeIndex idx;
  for (std::size_t i = 0; i < cubes.size(); ++i) idx.emplace(cubes[i], i);
  return idx;
}

// Adjacent pairs are found through the face (v,0) of f2, which must equal the
// face (v,1) of f1.
std::unordered_map<Cube, std::vector<std::size_t>, CubeHash> index_lower_faces(const std::vector<Cube>& cubes) {
  std::unordered_map<Cube, std::vector<std::size_t>, CubeHash> lower;
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    Cube face;
    for (std::size_t v = 0; v < cubes[i].size(); v += 2) face.push_back(cubes[i][v]);
    lower[face].push_back(i);
  }
  return lower;
}

Cube upper_face(const Cube& c) {
  Cube face;
  for (std::size_t v = 1; v < c.size(); v += 2) face.push_back(c[v]);
  return face;
}

// Shared driver: Value is a target element index or a unit complex number.
template <class Value, class Signed, class Sum, class Equal>
CocycleReport check_laws(unsigned k, const std::vector<Cube>& cubes, const std::vector<Value>& values,
                         Signed apply_sign, Sum sum, Equal equal) {
  if (cubes.size() != values.size()) throw InvalidArgument("cocycle needs one value per cube");
  CocycleReport report;
  const auto idx = index_cubes(cubes);

  const auto autos = cube_automorphisms(k);
  for (std::size_t i = 0; i < cubes.size() && report.sign_law; ++i) {
    for (const auto& sigma : autos) {
      ++report.automorphism_checks;
      const Cube image = apply_morphism(sigma, cubes[i]);
      const auto it = idx.find(image);
      if (it == idx.end()) {
        report.sign_law = false;
        report.witness = "cube " + show(cubes[i]) + " composed with " + sigma.to_string() + " is not in C^" +
                         std::to_string(k);
        break;
      }
      const int s = automorphism_sign(sigma);
      if (!equal(values[it->second], apply_sign(values[i], s))) {
        report.sign_law = false;
        report.witness = "sign law fails for cube " + show(cubes[i]) + " and automorphism " + sigma.to_string();
        break;
      }
    }
  }
  if (!report.passed()) return report;

  if (k == 0) return report;
  const auto lower = index_lower_faces(cubes);
  for (std::size_t i = 0; i < cubes.size() && report.concatenation_law; ++i) {
    const auto it = lower.find(upper_face(cubes[i]));
    if (it == lower.end()) continue;
    for (auto j : it->second) {
      ++report.concatenation_checks;
      const Cube joined = concatenate(cubes[i], cubes[j]);
      const auto jt = idx.find(joined);
      if (jt == idx.end()) {
        report.concatenation_law = false;
        report.witness = "concatenation of " + show(cubes[i]) + " and " + show(cubes[j]) + " is not a cube";
        break;
      }
      if (!equal(values[jt->second], sum(values[i], values[j]))) {
        report.concatenation_law = false;
        report.witness = "concatenation law fails for " + show(cubes[i]) + " and " + show(cubes[j]);
        break;
      }
    }
  }
  return report;
}

}  // namespace

AdditiveCocycle zero_cocycle(const FiniteAbelianGroup& target, const Cubespace& space, unsigned k) {
  const auto& cubes = space.cubes(k);
  return AdditiveCocycle{target, k, cubes, std::vector<std::size_t>(cubes.size(), 0)};
}

AdditiveCocycle coboundary(const FiniteAbelianGroup& target, const std::vector<std::size_t>& f,
                           const Cubespace& space, unsigned k) {
  if (f.size() != space.points()) throw InvalidArgument("point function size does not match the cubespace");
  AdditiveCocycle rho{target, k, space.cubes(k), {}};
  rho.values.reserve(rho.cubes.size());
  for (const auto& c : rho.cubes) {
    std::size_t acc = 0;
    for (std::uint32_t v = 0; v < c.size(); ++v)
      acc = (vertex_height(v) & 1) ? target.subtract(acc, f[c[v]]) : target.add(acc, f[c[v]]);
    rho.values.push_back(acc);
  }
  return rho;
}

MultiplicativeCocycle coboundary(const std::vector<cplx>& f, const Cubespace& space, unsigned k, double tol) {
  if (f.size() != space.points()) throw InvalidArgument("point function size does not match the cubespace");
  for (const auto& z : f)
    if (std::abs(std::abs(z) - 1.0) > tol) throw InvalidArgument("multiplicative coboundary needs |f| = 1");
  MultiplicativeCocycle rho{k, space.cubes(k), {}};
  rho.values.reserve(rho.cubes.size());
  for (const auto& c : rho.cubes) {
    cplx acc = 1.0;
    for (std::uint32_t v = 0; v < c.size(); ++v) acc *= (vertex_height(v) & 1) ? std::conj(f[c[v]]) : f[c[v]];
    rho.values.push_back(acc);
  }
  return rho;
}

AdditiveCocycle add(const AdditiveCocycle& a, const AdditiveCocycle& b) {
  if (!(a.target == b.target) || a.k != b.k || a.cubes != b.cubes)
    throw InvalidArgument("cocycles live on different cube lists or targets");
  AdditiveCocycle out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = a.target.add(a.values[i], b.values[i]);
  return out;
}

CocycleReport check_cocycle(const AdditiveCocycle& rho) {
  const auto& g = rho.target;
  return check_laws<std::size_t>(
      rho.k, rho.cubes, rho.values,
      [&](std::size_t v, int s) { return s < 0 ? g.negate(v) : v; },
      [&](std::size_t a, std::size_t b) { return g.add(a, b); },
      [](std::size_t a, std::size_t b) { return a == b; });
}

CocycleReport check_cocycle(const MultiplicativeCocycle& rho, double tol) {
  return check_laws<cplx>(
      rho.k, rho.cubes, rho.values, [](cplx v, int s) { return s < 0 ? std::conj(v) : v; },
      [](cplx a, cplx b) { return a * b; }, [tol](cplx a, cplx b) { return std::abs(a - b) <= tol; });
}

}  // namespace hofa
