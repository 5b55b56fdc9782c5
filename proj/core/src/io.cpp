#include "hofa/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hofa/error.hpp"

namespace hofa {

std::string format_number(double x) {
  if (x == 0.0) return "0";  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", kOutputDigits, x);
  return buf;
}

double round_output(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

namespace {

Json complex_pair(cplx z) { return Json::array({round_output(z.real()), round_output(z.imag())}); }

cplx complex_from(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InvalidArgument("complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InvalidArgument(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

}  // namespace

Json group_to_json(const FiniteAbelianGroup& group) { return Json{{"cyclic_factors", group.cyclic_factors()}}; }

FiniteAbelianGroup group_from_json(const Json& j) {
  const Json& f = field(j, "cyclic_factors");
  if (!f.is_array() || f.empty()) throw InvalidArgument("cyclic_factors must be a nonempty array");
  std::vector<std::int64_t> factors;
  for (const auto& m : f) {
    if (!m.is_number_integer()) throw InvalidArgument("cyclic factor must be an integer");
    factors.push_back(m.get<std::int64_t>());
  }
  return FiniteAbelianGroup(std::move(factors));
}

Json function_to_json(const GroupFunction& f) {
  Json values = Json::array();
  for (const auto& v : f.values()) values.push_back(complex_pair(v));
  return Json{{"group", group_to_json(f.group())}, {"values", std::move(values)}};
}

GroupFunction function_from_json(const Json& j) {
  FiniteAbelianGroup group = group_from_json(field(j, "group"));
  const Json& vals = field(j, "values");
  if (!vals.is_array()) throw InvalidArgument("values must be an array");
  std::vector<cplx> values;
  values.reserve(vals.size());
  for (const auto& v : vals) values.push_back(complex_from(v));
  return GroupFunction::from_values(std::move(group), std::move(values));
}

Json cubespace_to_json(const Cubespace& space) {
  Json cubes = Json::object();
  for (unsigned n = 1; n <= space.max_dim(); ++n) cubes[std::to_string(n)] = space.cubes(n);
  return Json{{"points", space.points()}, {"cubes", std::move(cubes)}};
}

Cubespace cubespace_from_json(const Json& j) {
  const Json& pts = field(j, "points");
  if (!pts.is_number_integer() || pts.get<std::int64_t>() <= 0) throw InvalidArgument("points must be a positive integer");
  const auto points = pts.get<std::size_t>();
  const Json& cubes = field(j, "cubes");
  if (!cubes.is_object()) throw InvalidArgument("cubes must be an object keyed by dimension");
  std::vector<std::vector<Cube>> lists(1);
  for (const auto& [key, list] : cubes.items()) {
    std::size_t pos = 0;
    unsigned n = 0;
    try {
      n = static_cast<unsigned>(std::stoul(key, &pos));
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != key.size() || n == 0 || n > 8) throw InvalidArgument("cube dimension key must be an integer in 1..8");
    if (!list.is_array()) throw InvalidArgument("cube list must be an array");
    if (lists.size() <= n) lists.resize(n + 1);
    for (const auto& c : list) {
      if (!c.is_array() || c.size() != (std::size_t{1} << n))
        throw InvalidArgument("cube of dimension " + key + " needs 2^" + key + " vertices");
      Cube cube;
      for (const auto& v : c) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::size_t>() >= points)
          throw InvalidArgument("cube vertex is not a point index");
        cube.push_back(v.get<std::size_t>());
      }
      lists[n].push_back(std::move(cube));
    }
  }
  return Cubespace(points, std::move(lists));
}

Json moment_spec_to_json(const MomentSpec& spec) {
  Json terms = Json::array();
  for (const auto& t : spec.terms()) {
    Json subset = Json::array();
    for (unsigned i = 0; i < spec.n(); ++i)
      if (t.subset >> i & 1) subset.push_back(i + 1);
    terms.push_back(Json{{"subset", subset}, {"power", t.power}, {"conjugate", t.conjugate}});
  }
  return Json{{"n", spec.n()}, {"terms", std::move(terms)}};
}

MomentSpec moment_spec_from_json(const Json& j) {
  const Json& nj = field(j, "n");
  if (!nj.is_number_integer() || nj.get<std::int64_t>() < 1 || nj.get<std::int64_t>() > 16)
    throw InvalidArgument("n must be an integer in 1..16");
  const auto n = nj.get<unsigned>();
  const Json& tj = field(j, "terms");
  if (!tj.is_array()) throw InvalidArgument("terms must be an array");
  std::vector<MomentTerm> terms;
  for (const auto& t : tj) {
    MomentTerm term;
    const Json& s = field(t, "subset");
    if (!s.is_array()) throw InvalidArgument("subset must be an array of variable numbers");
    for (const auto& i : s) {
      if (!i.is_number_integer() || i.get<std::int64_t>() < 1 || i.get<std::int64_t>() > n)
        throw InvalidArgument("subset element outside [n]");
      term.subset |= std::uint32_t{1} << (i.get<unsigned>() - 1);
    }
    if (t.contains("power")) {
      if (!t["power"].is_number_integer() || t["power"].get<std::int64_t>() < 0)
        throw InvalidArgument("power must be a nonnegative integer");
      term.power = t["power"].get<unsigned>();
    }
    if (t.contains("conjugate")) {
      if (!t["conjugate"].is_boolean()) throw InvalidArgument("conjugate must be a boolean");
      term.conjugate = t["conjugate"].get<bool>();
    }
    terms.push_back(term);
  }
  return MomentSpec(n, std::move(terms));
}

std::vector<MomentSpec> moment_specs_from_json(const Json& j) {
  std::vector<MomentSpec> out;
  if (j.is_array()) {
    for (const auto& s : j) out.push_back(moment_spec_from_json(s));
  } else {
    out.push_back(moment_spec_from_json(j));
  }
  return out;
}

Json certificate_to_json(const NilspacePolynomialCertificate& cert) {
  Json chars = Json::array();
  for (const auto& c : cert.characters) chars.push_back(c.freq().coords);
  Json coeffs = Json::array();
  for (const auto& c : cert.g_coeffs) coeffs.push_back(complex_pair(c));
  return Json{{"characters", std::move(chars)},
              {"g_coeffs", std::move(coeffs)},
              {"complexity", cert.complexity},
              {"balance", round_output(cert.balance)}};
}

NilspacePolynomialCertificate certificate_from_json(const Json& j, const FiniteAbelianGroup& group) {
  NilspacePolynomialCertificate cert;
  for (const auto& c : field(j, "characters")) {
    GroupElement freq;
    for (const auto& x : c) freq.coords.push_back(x.get<std::int64_t>());
    if (freq.coords.size() != group.rank()) throw InvalidArgument("character frequency has the wrong rank");
    cert.characters.emplace_back(group, freq);
  }
  for (const auto& c : field(j, "g_coeffs")) cert.g_coeffs.push_back(complex_from(c));
  cert.complexity = field(j, "complexity").get<std::int64_t>();
  cert.balance = field(j, "balance").get<double>();
  if (cert.characters.size() != cert.g_coeffs.size()) throw InvalidArgument("certificate needs one coefficient per character");
  return cert;
}

Json diagnostics_to_json(const DecompositionDiagnostics& d) {
  return Json{{"error_l1", round_output(d.error_l1)},
              {"remainder_u2", round_output(d.remainder_u2)},
              {"remainder_overlap", complex_pair(d.remainder_overlap)},
              {"norm_shift", round_output(d.norm_shift)},
              {"tolerance", round_output(d.tolerance)},
              {"threshold", round_output(d.threshold)},
              {"structured_sup_bound", round_output(d.structured_sup_bound)}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidArgument("malformed JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
}

}  // namespace hofa
