#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hofa/error.hpp"
#include "hofa/group.hpp"

namespace hofa {

/// F(eps, m): the U_2 tolerance allowed for a structured part of complexity m.
using ToleranceSchedule = std::function<double(double eps, std::size_t m)>;

/// F(eps, m) = eps / (m + 1).
ToleranceSchedule default_schedule();

/// Balance of phi: A -> T^d, x -> (phase chi_1(x), ..., phase chi_d(x)).
/// discrepancy[n] is the sup, over characters of the cube torus with every
/// frequency in [-4, 4], of the gap between the pushforward of uniform linear
/// n-cubes and the uniform n-cube measure; these gaps are exactly 0 or 1.
struct BalanceReport {
  std::vector<int> discrepancy;  // indexed by n = 0 .. n_checked
  unsigned n_checked = 0;        // may stop early on the first failing n or the work cap
  double b = 1.0;                // smallest grid value 2^-j with zero discrepancy for n <= 2^j
};

inline constexpr unsigned kBalanceFrequencyCap = 4;

BalanceReport balance_report(const std::vector<Character>& phi, unsigned n_max = 6);

/// Structured part as g o phi: g(theta) = sum_j c_j e(theta_j) on T^d.
struct NilspacePolynomialCertificate {
  std::vector<Character> characters;
  std::vector<cplx> g_coeffs;
  std::int64_t complexity = 0;  // max(d, ceil(2 pi sum |c_j|)), the Lipschitz bound of g
  double balance = 1.0;
};

/// g(phi(x)) for every x.
GroupFunction evaluate_certificate(const NilspacePolynomialCertificate& cert, const FiniteAbelianGroup& group);

struct DecompositionDiagnostics {
  double error_l1 = 0.0;            // ||f_e||_1
  double remainder_u2 = 0.0;        // ||f_r||_{U_2}
  cplx remainder_overlap;           // (f_r, f_s + f_e)
  double norm_shift = 0.0;          // ||f_s + f_e||_{U_2} - ||f||_{U_2}
  double tolerance = 0.0;           // F(eps, m)
  double threshold = 0.0;           // delta
  double structured_sup_bound = 0.0;  // ||f||_inf + sum of the dropped |lambda|
};

struct DecompositionResult {
  GroupFunction f_s;
  GroupFunction f_e;
  GroupFunction f_r;
  NilspacePolynomialCertificate certificate;
  DecompositionDiagnostics diagnostics;
};

/// f = f_s + f_e + f_r with f_s the Fourier projection onto |lambda| >= delta,
/// delta = 2^-j for the smallest j giving ||f_r||_{U_2} <= F(eps, m).
DecompositionResult u2_decompose(const GroupFunction& f, double eps, const ToleranceSchedule& schedule = default_schedule(),
                                 unsigned balance_n_max = 6);

struct InverseCertificate {
  Character character;
  cplx correlation;   // (f, chi)
  double u2_norm = 0.0;
};

/// Thrown when ||f||_{U_2} < eps; carries the measured norm.
class PreconditionFailed : public InvalidArgument {
 public:
  PreconditionFailed(const std::string& what, double measured) : InvalidArgument(what), measured_(measured) {}
  double measured() const { return measured_; }

 private:
  double measured_;
};

/// Character of largest |(f, chi)|, smallest index on ties.
InverseCertificate u2_inverse_certificate(const GroupFunction& f, double eps);

}  // namespace hofa
