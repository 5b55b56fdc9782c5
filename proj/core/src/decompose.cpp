#include "hofa/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "hofa/gowers.hpp"

namespace hofa {

ToleranceSchedule default_schedule() {
  return [](double eps, std::size_t m) { return eps / static_cast<double>(m + 1); };
}

// ---------------------------------------------------------------------------
// Balance.
//
// For frequencies xi_{v,j} the test character of the cube torus integrates
// against the uniform cube measure to 1 if every V_j = sum_v xi_{v,j} (1, v)
// vanishes and to 0 otherwise. Against the pushforward of linear cubes it
// factors over the n + 1 free group variables and equals 1 iff every row
// (V_{1,i}, ..., V_{d,i}) lies in the relation lattice of the characters.
// So the discrepancy at n is 1 iff some nonzero V with rows in the lattice is
// reachable from the frequency box, and 0 otherwise.

namespace {

constexpr std::int64_t kXi = kBalanceFrequencyCap;
constexpr std::size_t kRowBoxCap = 4'000'000;
constexpr std::size_t kLeafCap = 2'000'000;
constexpr std::size_t kStateCap = 4'000'000;

struct WorkCapReached {};

struct VecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::uint64_t h = 0x243F6A8885A308D3ULL;
    for (auto x : v) h = CounterRng::mix(h ^ static_cast<std::uint64_t>(x));
    return static_cast<std::size_t>(h);
  }
};

// Is V = sum_v xi_v (1, v) for some integer xi in [-kXi, kXi]^{2^n}?
class ColumnSolver {
 public:
  explicit ColumnSolver(unsigned n) : n_(n), vertices_(std::size_t{1} << n) {
    remaining_.assign(vertices_ + 1, std::vector<std::int64_t>(n + 1, 0));
    for (std::size_t p = vertices_; p-- > 0;) {
      remaining_[p] = remaining_[p + 1];
      remaining_[p][0] += 1;
      for (unsigned i = 0; i < n; ++i)
        if (p >> i & 1) remaining_[p][i + 1] += 1;
    }
  }

  bool feasible(const std::vector<std::int64_t>& target) {
    if (auto it = known_.find(target); it != known_.end()) return it->second;
    failed_.clear();
    std::vector<std::int64_t> residual = target;
    const bool ok = search(0, residual);
    known_.emplace(target, ok);
    auto neg = target;
    for (auto& x : neg) x = -x;
    known_.emplace(std::move(neg), ok);
    return ok;
  }

  bool plausible(const std::vector<std::int64_t>& residual, std::size_t p) const {
    const auto& rem = remaining_[p];
    if (std::abs(residual[0]) > kXi * rem[0]) return false;
    for (unsigned i = 1; i <= n_; ++i) {
      if (std::abs(residual[i]) > kXi * rem[i]) return false;
      if (std::abs(residual[0] - residual[i]) > kXi * (rem[0] - rem[i])) return false;
    }
    return true;
  }

 private:
  bool search(std::size_t p, std::vector<std::int64_t>& residual) {
    if (p == vertices_) {
      return std::all_of(residual.begin(), residual.end(), [](auto x) { return x == 0; });
    }
    if (!plausible(residual, p)) return false;
    std::vector<std::int64_t> key = residual;
    key.push_back(static_cast<std::int64_t>(p));
    if (failed_.count(key)) return false;
    // try values near the average still owed by the remaining vertices first
    const double want = static_cast<double>(residual[0]) / static_cast<double>(remaining_[p][0]);
    std::int64_t order[2 * kXi + 1];
    for (std::int64_t i = 0; i <= 2 * kXi; ++i) order[i] = i - kXi;
    std::sort(order, order + 2 * kXi + 1, [want](auto a, auto b) {
      const double da = std::abs(static_cast<double>(a) - want), db = std::abs(static_cast<double>(b) - want);
      return da != db ? da < db : a < b;
    });
    for (auto xi : order) {
      residual[0] -= xi;
      for (unsigned i = 0; i < n_; ++i)
        if (p >> i & 1) residual[i + 1] -= xi;
      const bool ok = search(p + 1, residual);
      residual[0] += xi;
      for (unsigned i = 0; i < n_; ++i)
        if (p >> i & 1) residual[i + 1] += xi;
      if (ok) return true;
    }
    if (failed_.size() >= kStateCap) throw WorkCapReached{};
    failed_.insert(std::move(key));
    return false;
  }

  unsigned n_;
  std::size_t vertices_;
  std::vector<std::vector<std::int64_t>> remaining_;
  std::unordered_set<std::vector<std::int64_t>, VecHash> failed_;
  std::unordered_map<std::vector<std::int64_t>, bool, VecHash> known_;
};

bool in_relation_lattice(const std::vector<Character>& phi, const std::vector<std::int64_t>& row) {
  if (phi.empty()) return true;
  const auto& g = phi.front().group();
  std::size_t acc = 0;
  for (std::size_t j = 0; j < phi.size(); ++j) acc = g.add(acc, g.multiply(phi[j].freq_index(), row[j]));
  return acc == 0;
}

// Lattice rows r with |r_j| <= bound.
std::vector<std::vector<std::int64_t>> lattice_rows(const std::vector<Character>& phi, std::int64_t bound) {
  const std::size_t d = phi.size();
  double box = 1.0;
  for (std::size_t j = 0; j < d; ++j) box *= static_cast<double>(2 * bound + 1);
  if (box > static_cast<double>(kRowBoxCap)) throw WorkCapReached{};
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> row(d, -bound);
  while (true) {
    if (in_relation_lattice(phi, row)) out.push_back(row);
    std::size_t j = 0;
    while (j < d && row[j] == bound) row[j++] = -bound;
    if (j == d) break;
    ++row[j];
  }
  return out;
}

int discrepancy_at(const std::vector<Character>& phi, unsigned n) {
  const std::size_t d = phi.size();
  if (d == 0) return 0;
  const std::int64_t vertices = std::int64_t{1} << n;
  std::vector<std::vector<std::vector<std::int64_t>>> rows(n + 1);
  rows[0] = lattice_rows(phi, kXi * vertices);
  for (unsigned i = 1; i <= n; ++i) rows[i] = lattice_rows(phi, kXi * vertices / 2);

  ColumnSolver solver(n);
  std::vector<std::vector<std::int64_t>> columns(d, std::vector<std::int64_t>(n + 1, 0));
  std::size_t leaves = 0;
  const std::int64_t half = kXi * vertices / 2;

  std::function<bool(unsigned)> descend = [&](unsigned i) -> bool {
    if (i == n + 1) {
      if (++leaves > kLeafCap) throw WorkCapReached{};
      bool nonzero = false;
      for (const auto& col : columns)
        for (auto x : col) nonzero = nonzero || x != 0;
      if (!nonzero) return false;
      for (const auto& col : columns)
        if (!solver.feasible(col)) return false;
      return true;
    }
    for (const auto& r : rows[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < d && ok; ++j) {
        columns[j][i] = r[j];
        if (i >= 1 && std::abs(columns[j][0] - r[j]) > half) ok = false;
      }
      if (ok && descend(i + 1)) return true;
    }
    return false;
  };
  return descend(0) ? 1 : 0;
}

}  // namespace

BalanceReport balance_report(const std::vector<Character>& phi, unsigned n_max) {
  for (std::size_t j = 1; j < phi.size(); ++j)
    if (!(phi[j].group() == phi[0].group())) throw InvalidArgument("balance characters live on different groups");
  BalanceReport report;
  std::optional<unsigned> first_failure;
  for (unsigned n = 0; n <= n_max; ++n) {
    int disc = 0;
    try {
      disc = discrepancy_at(phi, n);
    } catch (const WorkCapReached&) {
      break;  // work cap: report what was verified
    }
    report.discrepancy.push_back(disc);
    report.n_checked = n;
    if (disc != 0) {
      first_failure = n;
      break;
    }
  }
  if (report.discrepancy.empty()) {
    report.b = 1.0;
    return report;
  }
  unsigned j = 0;
  if (first_failure) {
    if (*first_failure == 0) {
      report.b = 1.0;
      return report;
    }
    while ((std::uint64_t{1} << (j + 1)) < *first_failure) ++j;
  } else {
    while ((std::uint64_t{1} << (j + 1)) <= report.n_checked) ++j;
  }
  report.b = std::ldexp(1.0, -static_cast<int>(j));
  return report;
}

// ---------------------------------------------------------------------------

GroupFunction evaluate_certificate(const NilspacePolynomialCertificate& cert, const FiniteAbelianGroup& group) {
  if (cert.characters.size() != cert.g_coeffs.size()) throw InvalidArgument("certificate needs one coefficient per character");
  std::vector<cplx> values(group.order(), 0.0);
  double bound = 0.0;
  for (std::size_t j = 0; j < cert.characters.size(); ++j) {
    const auto& chi = cert.characters[j];
    if (!(chi.group() == group)) throw InvalidArgument("certificate character lives on another group");
    bound += std::abs(cert.g_coeffs[j]);
    for (std::size_t x = 0; x < values.size(); ++x) values[x] += cert.g_coeffs[j] * unit_phase(chi.phase(x));
  }
  return GroupFunction(group, std::move(values), bound);
}

namespace {
void require_unit_bound(const GroupFunction& f) {
  if (sup_norm(f) > 1.0 + kTolerance) throw InvalidArgument("function must satisfy |f| <= 1");
}
}  // namespace

DecompositionResult u2_decompose(const GroupFunction& f, double eps, const ToleranceSchedule& schedule,
                                 unsigned balance_n_max) {
  if (!(eps > 0.0)) throw InvalidArgument("decomposition needs eps > 0");
  require_unit_bound(f);
  const Spectrum spectrum = fourier_transform_fast(f);
  const auto& lambda = spectrum.coefficients;

  double delta = 0.0;
  double tolerance = schedule(eps, lambda.size());
  bool found = false;
  for (int j = 0; j <= 64 && !found; ++j) {
    const double d = std::ldexp(1.0, -j);
    std::size_t m = 0;
    double rest4 = 0.0;
    for (const auto& c : lambda) {
      if (std::abs(c) >= d) {
        ++m;
      } else {
        rest4 += std::norm(c) * std::norm(c);
      }
    }
    const double tol = schedule(eps, m);
    if (std::pow(rest4, 0.25) <= tol) {
      delta = d;
      tolerance = tol;
      found = true;
    }
  }
  if (!found) {
    delta = 0.0;
    tolerance = schedule(eps, lambda.size());
  }

  NilspacePolynomialCertificate cert;
  std::vector<cplx> kept(lambda.size(), 0.0);
  double dropped = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (std::abs(lambda[i]) >= delta) {
      kept[i] = lambda[i];
      cert.characters.push_back(spectrum.character(i));
      cert.g_coeffs.push_back(lambda[i]);
    } else {
      dropped += std::abs(lambda[i]);
    }
  }
  double coeff_norm = 0.0;
  for (const auto& c : cert.g_coeffs) coeff_norm += std::abs(c);
  cert.complexity = std::max<std::int64_t>(static_cast<std::int64_t>(cert.characters.size()),
                                           static_cast<std::int64_t>(std::ceil(2.0 * std::numbers::pi * coeff_norm)));
  cert.balance = balance_report(cert.characters, balance_n_max).b;

  GroupFunction f_s = inverse_fourier(Spectrum{f.group(), std::move(kept)});
  GroupFunction f_e = GroupFunction::zero(f.group());
  GroupFunction f_r = f.combine(1.0, f_s, -1.0);

  DecompositionDiagnostics diag;
  diag.error_l1 = lp_norm(f_e, 1.0);
  diag.remainder_u2 = u2_via_fourier(f_r);
  diag.remainder_overlap = scalar_product(f_r, f_s.combine(1.0, f_e, 1.0));
  diag.norm_shift = u2_via_fourier(f_s.combine(1.0, f_e, 1.0)) - u2_via_fourier(f);
  diag.tolerance = tolerance;
  diag.threshold = delta;
  diag.structured_sup_bound = sup_norm(f) + dropped;

  return DecompositionResult{std::move(f_s), std::move(f_e), std::move(f_r), std::move(cert), diag};
}

InverseCertificate u2_inverse_certificate(const GroupFunction& f, double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("inverse certificate needs eps > 0");
  require_unit_bound(f);
  const Spectrum spectrum = fourier_transform_fast(f);
  double acc = 0.0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < spectrum.coefficients.size(); ++i) {
    const double a = std::abs(spectrum.coefficients[i]);
    acc += a * a * a * a;
    if (a > std::abs(spectrum.coefficients[best])) best = i;
  }
  const double norm = std::pow(acc, 0.25);
  if (norm < eps) {
    throw PreconditionFailed("||f||_U2 = " + std::to_string(norm) + " is below eps = " + std::to_string(eps), norm);
  }
  return InverseCertificate{spectrum.character(best), spectrum.coefficients[best], norm};
}

}  // namespace hofa
