#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hofa/cocycle.hpp"
#include "hofa/cube.hpp"
#include "hofa/decompose.hpp"
#include "hofa/error.hpp"
#include "hofa/gowers.hpp"
#include "hofa/heisenberg.hpp"
#include "hofa/io.hpp"
#include "hofa/moments.hpp"
#include "hofa/parallel.hpp"

namespace {

using namespace hofa;

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kInputError = 2;

struct Common {
  std::uint64_t seed = 1;
  std::uint64_t samples = 100000;
  double tol = 1e-9;
  std::string out;
  bool exact = false;
  bool sampled = false;
  std::size_t workers = 0;
};

std::string num(double x) { return format_number(x); }

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(c.out, text);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void add_common(CLI::App* cmd, Common& c, bool sampling) {
  cmd->add_option("--out", c.out, "Write the report to this path instead of stdout");
  cmd->add_option("--tol", c.tol, "Tolerance of property checks")->capture_default_str();
  if (sampling) {
    cmd->add_option("--seed", c.seed, "Seed of the counter-based generator")->capture_default_str();
    cmd->add_option("--samples", c.samples, "Monte Carlo sample count")->capture_default_str();
    auto* ex = cmd->add_flag("--exact", c.exact, "Exact evaluation (default)");
    auto* sa = cmd->add_flag("--sampled", c.sampled, "Monte Carlo evaluation");
    ex->excludes(sa);
  }
}

// --- commands ----------------------------------------------------------------

int cmd_norm(const Common& c, const std::string& path, unsigned k) {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  const auto f = function_from_json(read_json_file(path));
  std::ostringstream os;
  os << "k,u_k,standard_error,lp_exponent,lp_norm,bound_holds\n";
  bool ok = true;
  for (unsigned j = 1; j <= k; ++j) {
    double value = 0.0, se = 0.0;
    if (c.sampled) {
      const auto s = gowers_norm_sampled(f, j, c.samples, CounterRng(c.seed));
      value = s.estimate;
      se = s.standard_error;
    } else {
      value = gowers_norm_exact(f, j);
    }
    const double p = j == 1 ? 1.0 : std::ldexp(1.0, static_cast<int>(j) - 1);
    const double lp = lp_norm(f, p);
    // U_1 is |E f|, dominated by the L^1 norm
    const bool holds = value - 4.0 * se <= lp + c.tol;
    if (!holds) {
      ok = false;
      std::cerr << "bound violated: U_" << j << " = " << num(value) << " > L^" << num(p) << " = " << num(lp) << "\n";
    }
    os << j << ',' << num(value) << ',' << num(se) << ',' << num(p) << ',' << num(lp) << ',' << (holds ? "true" : "false")
       << "\n";
  }
  emit(c, os.str());
  return ok ? kOk : kPropertyFailure;
}

int cmd_fourier(const Common& c, const std::string& path) {
  const auto f = function_from_json(read_json_file(path));
  const auto spec = fourier_transform_fast(f);
  std::ostringstream os;
  os << "index,frequency,re,im,abs\n";
  for (std::size_t i = 0; i < spec.coefficients.size(); ++i) {
    const auto freq = f.group().element(i).coords;
    std::string fs;
    for (std::size_t j = 0; j < freq.size(); ++j) fs += (j ? " " : "") + std::to_string(freq[j]);
    const cplx z = spec.coefficients[i];
    os << i << ',' << fs << ',' << num(z.real()) << ',' << num(z.imag()) << ',' << num(std::abs(z)) << "\n";
  }
  emit(c, os.str());
  return kOk;
}

int cmd_moments(const Common& c, const std::string& fpath, const std::string& spath) {
  const auto f = function_from_json(read_json_file(fpath));
  const auto specs = moment_specs_from_json(read_json_file(spath));
  std::ostringstream os;
  os << "spec_id,re,im,standard_error\n";
  for (const auto& s : specs) {
    MomentEstimate est;
    bool sample = c.sampled;
    if (!sample) {
      try {
        est.value = moment_exact(f, s);
      } catch (const CapExceeded&) {
        std::cerr << "warning: " << s.label() << " is too large for the exact path; sampling " << c.samples << " points\n";
        sample = true;
      }
    }
    if (sample) est = moment_sampled(f, s, c.samples, CounterRng(c.seed));
    os << s.label() << ',' << num(est.value.real()) << ',' << num(est.value.imag()) << ',' << num(est.standard_error)
       << "\n";
  }
  emit(c, os.str());
  return kOk;
}

int cmd_dn_sample(const Common& c, const std::string& path, unsigned n, bool rooted) {
  if (n < 1 || n > 16) throw InvalidArgument("n must be in 1..16");
  const auto f = function_from_json(read_json_file(path));
  const auto dist = rooted ? sample_Dn_rooted(f, n, c.samples, CounterRng(c.seed))
                           : sample_Dn(f, n, c.samples, CounterRng(c.seed));
  std::ostringstream os;
  os << "sample";
  for (auto s : dist.subsets()) {
    std::string label;
    for (unsigned i = 0; i < n; ++i)
      if (s >> i & 1) label += std::to_string(i + 1) + (n > 9 ? "_" : "");
    os << ",re_" << label << ",im_" << label;
  }
  os << "\n";
  for (std::size_t i = 0; i < dist.samples().size(); ++i) {
    os << i;
    for (const auto& z : dist.samples()[i]) os << ',' << num(z.real()) << ',' << num(z.imag());
    os << "\n";
  }
  emit(c, os.str());
  return kOk;
}

int cmd_cayley(const Common& c, const std::string& path, unsigned k) {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  const auto j = read_json_file(path);
  const auto group = group_from_json(j.at("group"));
  std::vector<std::size_t> support;
  for (const auto& s : j.at("support")) {
    const auto x = s.get<std::int64_t>();
    if (x < 0 || static_cast<std::size_t>(x) >= group.order()) throw InvalidArgument("support element outside the group");
    support.push_back(static_cast<std::size_t>(x));
  }
  std::ostringstream os;
  os << "k,density\n" << k << ',' << num(cayley_hypergraph_density(group, support, k)) << "\n";
  emit(c, os.str());
  return kOk;
}

int cmd_converge(const Common& c, int example, const std::vector<std::int64_t>& ms, const std::string& spath,
                 std::uint64_t limit_samples) {
  if (example != 1 && example != 2) throw InvalidArgument("example must be 1 or 2");
  std::vector<MomentSpec> specs;
  if (!spath.empty()) {
    specs = moment_specs_from_json(read_json_file(spath));
  } else {
    specs = MomentSpec::all_simple(2);
  }
  for (auto m : ms)
    if (m < 3) throw InvalidArgument("every m must be at least 3");
  ConvergenceOptions opts;
  opts.seed = c.seed;
  opts.limit_samples = limit_samples;
  opts.finite_samples = c.samples;
  const SequenceGenerator gen = example == 1 ? SequenceGenerator(example1_function)
                                             : SequenceGenerator([](std::int64_t m) { return example2_function(m); });
  const auto limit = example == 1 ? example1_limit() : example2_limit();
  std::ostringstream os;
  os << "m,spec_id,re,im,limit_re,limit_im,gap\n";
  if (!ms.empty()) {
    const auto rep = convergence_report(gen, ms, specs, limit, opts);
    for (const auto& r : rep.rows)
      os << r.m << ',' << r.spec_id << ',' << num(r.value.real()) << ',' << num(r.value.imag()) << ','
         << num(r.limit.real()) << ',' << num(r.limit.imag()) << ',' << num(r.gap) << "\n";
  }
  emit(c, os.str());
  return kOk;
}

int cmd_decompose(const Common& c, const std::string& path, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  const auto f = function_from_json(read_json_file(path));
  const auto res = u2_decompose(f, eps);
  const Json out{{"f_s", function_to_json(res.f_s)},
                 {"f_e", function_to_json(res.f_e)},
                 {"f_r", function_to_json(res.f_r)},
                 {"certificate", certificate_to_json(res.certificate)},
                 {"diagnostics", diagnostics_to_json(res.diagnostics)}};
  emit(c, dump(out));
  if (res.diagnostics.remainder_u2 > res.diagnostics.tolerance + c.tol) {
    std::cerr << "remainder U_2 norm " << num(res.diagnostics.remainder_u2) << " exceeds F(eps, m) = "
              << num(res.diagnostics.tolerance) << "\n";
    return kPropertyFailure;
  }
  return kOk;
}

int cmd_inverse(const Common& c, const std::string& path, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  const auto f = function_from_json(read_json_file(path));
  const auto cert = u2_inverse_certificate(f, eps);
  const double corr = std::abs(cert.correlation);
  const Json out{{"character", cert.character.freq().coords},
                 {"correlation", Json::array({round_output(cert.correlation.real()), round_output(cert.correlation.imag())})},
                 {"abs_correlation", round_output(corr)},
                 {"u2_norm", round_output(cert.u2_norm)},
                 {"eps_squared", round_output(eps * eps)}};
  emit(c, dump(out));
  if (corr + c.tol < eps * eps) {
    std::cerr << "correlation " << num(corr) << " is below eps^2 = " << num(eps * eps) << "\n";
    return kPropertyFailure;
  }
  return kOk;
}

int cmd_check_nilspace(const Common& c, const std::string& path, std::optional<unsigned> k, std::optional<unsigned> n_max) {
  const auto space = cubespace_from_json(read_json_file(path));
  const unsigned top = n_max.value_or(std::min(space.max_dim(), 3u));
  if (top > space.max_dim()) throw InvalidArgument("n-max exceeds the dimensions present in the file");
  const auto rep = check_nilspace_axioms(space, top);
  std::ostringstream os;
  os << "check,passed,witness\n";
  bool ok = rep.all_passed();
  for (const auto& r : rep.results) os << r.axiom << ',' << (r.passed ? "true" : "false") << ",\"" << r.witness << "\"\n";
  if (k) {
    if (*k + 1 > space.max_dim()) throw InvalidArgument("k-step check needs cubes of dimension k+1");
    const auto stats = corner_completions(space, *k + 1);
    const bool unique = check_k_step(space, *k);
    std::string witness;
    if (stats.first_ambiguous) witness = "corner with " + std::to_string(stats.max_completions) + " completions";
    if (stats.first_unextendable) witness = "corner without completion";
    os << *k << "-step," << (unique ? "true" : "false") << ",\"" << witness << "\"\n";
    ok = ok && unique;
  }
  emit(c, os.str());
  if (!ok) {
    for (const auto& r : rep.results)
      if (!r.passed) std::cerr << r.axiom << ": " << r.witness << "\n";
    return kPropertyFailure;
  }
  return kOk;
}

int cmd_check_cocycle(const Common& c, const std::string& path) {
  const auto j = read_json_file(path);
  if (!j.contains("k") || !j.at("k").is_number_integer() || j.at("k").get<std::int64_t>() < 0)
    throw InvalidArgument("cocycle file needs a nonnegative integer k");
  const auto k = j.at("k").get<unsigned>();
  CocycleReport rep;
  if (j.contains("f")) {
    // coboundary of a point function over a cubespace
    const auto space = cubespace_from_json(j.at("cubespace"));
    if (k > space.max_dim()) throw InvalidArgument("cubespace lacks cubes of dimension k");
    if (j.contains("target")) {
      const auto target = group_from_json(j.at("target"));
      std::vector<std::size_t> f;
      for (const auto& v : j.at("f")) f.push_back(target.index(target.element(v.get<std::size_t>() % target.order())));
      rep = check_cocycle(coboundary(target, f, space, k));
    } else {
      std::vector<cplx> f;
      for (const auto& v : j.at("f")) f.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
      rep = check_cocycle(coboundary(f, space, k, c.tol), c.tol);
    }
  } else {
    std::vector<Cube> cubes;
    for (const auto& cube : j.at("cubes")) cubes.push_back(cube.get<Cube>());
    for (const auto& cube : cubes)
      if (cube.size() != (std::size_t{1} << k)) throw InvalidArgument("cube size does not match k");
    if (j.contains("target")) {
      AdditiveCocycle rho{group_from_json(j.at("target")), k, cubes, {}};
      for (const auto& v : j.at("values")) {
        const auto x = v.get<std::int64_t>();
        if (x < 0 || static_cast<std::size_t>(x) >= rho.target.order()) throw InvalidArgument("value outside the target");
        rho.values.push_back(static_cast<std::size_t>(x));
      }
      rep = check_cocycle(rho);
    } else {
      MultiplicativeCocycle rho{k, cubes, {}};
      for (const auto& v : j.at("values")) rho.values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
      rep = check_cocycle(rho, c.tol);
    }
  }
  std::ostringstream os;
  os << "law,passed,checks\n"
     << "sign," << (rep.sign_law ? "true" : "false") << ',' << rep.automorphism_checks << "\n"
     << "concatenation," << (rep.concatenation_law ? "true" : "false") << ',' << rep.concatenation_checks << "\n";
  emit(c, os.str());
  if (!rep.passed()) {
    std::cerr << rep.witness << "\n";
    return kPropertyFailure;
  }
  return kOk;
}

int cmd_heisenberg(const Common& c, std::int64_t m, std::int64_t t, const std::string& out_dir) {
  const auto rows = heis_comparison(m, t);
  const auto f = heis_sequence(m, t);
  std::ostringstream csv;
  csv << "k,pipeline_re,pipeline_im,direct_re,direct_im,difference\n";
  double worst = 0.0;
  for (const auto& r : rows) {
    worst = std::max(worst, r.difference);
    csv << r.k << ',' << num(r.pipeline.real()) << ',' << num(r.pipeline.imag()) << ',' << num(r.direct.real()) << ','
        << num(r.direct.imag()) << ',' << num(r.difference) << "\n";
  }
  const bool exact_u3 = !c.sampled && m <= 256;
  const double u3 = exact_u3 ? gowers_norm_exact(f, 3) : gowers_norm_sampled(f, 3, c.samples, CounterRng(c.seed)).estimate;
  std::ostringstream summary;
  summary << "m,t,u3,u3_method,max_difference\n"
          << m << ',' << t << ',' << num(u3) << ',' << (exact_u3 ? "exact" : "sampled") << ',' << num(worst) << "\n";
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_text_file((std::filesystem::path(out_dir) / "function.json").string(), dump(function_to_json(f)));
    write_text_file((std::filesystem::path(out_dir) / "comparison.csv").string(), csv.str());
    emit(c, summary.str());
  } else {
    emit(c, csv.str() + summary.str());
  }
  if (worst > 1e-12) {
    std::cerr << "pipeline and direct formula differ by " << num(worst) << "\n";
    return kPropertyFailure;
  }
  return kOk;
}

int cmd_morphisms(const Common& c, unsigned n, unsigned m) {
  const auto ms = enumerate_cube_morphisms(n, m);
  std::ostringstream os;
  os << "morphism,image\n";
  for (const auto& psi : ms) {
    os << '"' << psi.to_string() << "\",";
    for (std::uint32_t v = 0; v < (std::uint32_t{1} << n); ++v) os << (v ? " " : "") << psi.apply(v);
    os << "\n";
  }
  emit(c, os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hofa: higher-order Fourier analysis on finite abelian groups"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--workers", c.workers, "Worker threads (0 = hardware concurrency)")->capture_default_str();

  std::string fpath, spath, out_dir;
  unsigned k = 2, n = 2, m_dim = 2;
  std::optional<unsigned> opt_k, opt_nmax;
  double eps = 0.1;
  int example = 1;
  std::vector<std::int64_t> ms;
  std::int64_t m = 0, t = 0;
  std::uint64_t limit_samples = 1'000'000;
  bool rooted = false;

  auto* norm = app.add_subcommand("norm", "Gowers norms U_1..U_k with the L^p domination check");
  norm->add_option("function", fpath, "Function JSON")->required();
  norm->add_option("-k", k, "Largest order")->capture_default_str();
  add_common(norm, c, true);

  auto* fourier = app.add_subcommand("fourier", "Fourier coefficients as CSV");
  fourier->add_option("function", fpath, "Function JSON")->required();
  add_common(fourier, c, false);

  auto* moments = app.add_subcommand("moments", "Moments of a function for a list of specs");
  moments->add_option("function", fpath, "Function JSON")->required();
  moments->add_option("specs", spath, "Moment spec JSON (object or array)")->required();
  add_common(moments, c, true);

  auto* dn = app.add_subcommand("dn-sample", "Samples of D_n(f) as CSV");
  dn->add_option("function", fpath, "Function JSON")->required();
  dn->add_option("-n", n, "Number of variables")->capture_default_str();
  dn->add_flag("--rooted", rooted, "Sample through random linear cubes");
  add_common(dn, c, true);

  auto* cayley = app.add_subcommand("cayley", "Edge density of the Cayley hypergraph H_k(S)");
  cayley->add_option("file", fpath, "JSON {\"group\":{...},\"support\":[...]}")->required();
  cayley->add_option("-k", k, "Edge size")->capture_default_str();
  add_common(cayley, c, false);

  auto* converge = app.add_subcommand("converge", "Moment convergence table for the torus (1) or Heisenberg (2) example");
  converge->add_option("--example", example, "1 (torus limit) or 2 (Heisenberg limit)")->capture_default_str();
  converge->add_option("--m", ms, "Comma separated group orders")->delimiter(',');
  converge->add_option("--specs", spath, "Moment spec JSON; default all simple specs on 2 variables");
  converge->add_option("--limit-samples", limit_samples, "Samples on the limit object")->capture_default_str();
  add_common(converge, c, true);

  auto* decompose = app.add_subcommand("decompose", "U_2 regularity decomposition");
  decompose->add_option("function", fpath, "Function JSON")->required();
  decompose->add_option("--eps", eps, "Accuracy parameter")->capture_default_str();
  add_common(decompose, c, false);

  auto* inverse = app.add_subcommand("inverse", "U_2 inverse certificate");
  inverse->add_option("function", fpath, "Function JSON")->required();
  inverse->add_option("--eps", eps, "Lower bound on the U_2 norm")->capture_default_str();
  add_common(inverse, c, false);

  auto* nil = app.add_subcommand("check-nilspace", "Nilspace axioms and k-step uniqueness of a cubespace");
  nil->add_option("cubespace", fpath, "Cubespace JSON")->required();
  nil->add_option("-k", opt_k, "Also check unique completion in dimension k+1");
  nil->add_option("--n-max", opt_nmax, "Largest dimension checked");
  add_common(nil, c, false);

  auto* cocycle = app.add_subcommand("check-cocycle", "Sign and concatenation laws of a cocycle");
  cocycle->add_option("file", fpath, "Cocycle JSON")->required();
  add_common(cocycle, c, false);

  auto* heis = app.add_subcommand("heisenberg", "Nilmanifold pipeline for k -> e(k^2 t / m^2)");
  heis->add_option("-m", m, "Group order")->required();
  heis->add_option("-t", t, "Parameter with 1 < t < m")->required();
  heis->add_option("--out-dir", out_dir, "Directory for function.json and comparison.csv");
  add_common(heis, c, true);

  auto* morph = app.add_subcommand("morphisms", "Enumerate cube morphisms {0,1}^n -> {0,1}^m");
  morph->add_option("-n", n, "Source dimension")->capture_default_str();
  morph->add_option("-m", m_dim, "Target dimension")->capture_default_str();
  add_common(morph, c, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    set_worker_count(c.workers);
    if (*norm) return cmd_norm(c, fpath, k);
    if (*fourier) return cmd_fourier(c, fpath);
    if (*moments) return cmd_moments(c, fpath, spath);
    if (*dn) return cmd_dn_sample(c, fpath, n, rooted);
    if (*cayley) return cmd_cayley(c, fpath, k);
    if (*converge) return cmd_converge(c, example, ms, spath, limit_samples);
    if (*decompose) return cmd_decompose(c, fpath, eps);
    if (*inverse) return cmd_inverse(c, fpath, eps);
    if (*nil) return cmd_check_nilspace(c, fpath, opt_k, opt_nmax);
    if (*cocycle) return cmd_check_cocycle(c, fpath);
    if (*heis) return cmd_heisenberg(c, m, t, out_dir);
    if (*morph) return cmd_morphisms(c, n, m_dim);
  } catch (const PreconditionFailed& e) {
    std::cerr << "precondition failed: " << e.what() << " (measured " << num(e.measured()) << ")\n";
    return kInputError;
  } catch (const InvalidArgument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const CapExceeded& e) {
    std::cerr << "input too large: " << e.what() << "\n";
    return kInputError;
  } catch (const Json::exception& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
