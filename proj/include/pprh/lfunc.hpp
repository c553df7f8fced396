#pragma once

// Completed L-functions of eigenforms, evaluated through the two-sided
// approximate functional equation
//   Lambda(s) = sum_m c(m) [ Ginc_n(s, m/A) + sign * Ginc_n(k - s, m/A) ],
// with A = C / (2 pi)^n and Ginc_n the incomplete Mellin kernel.

#include "pprh/formdata.hpp"
#include "pprh/kernels.hpp"
#include "pprh/numeric.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace pprh::lfunc {

class LFunctionSpec {
 public:
  /// Real coefficients only; a nonzero imaginary part is an InvariantViolation.
  /// Norms in (complete_through, inf) are treated as unknown: with allow_gaps
  /// they contribute to the truncation bound, otherwise they are an error.
  static LFunctionSpec from_eigenform(const formdata::EigenformData& data, bool allow_gaps = false);

  LFunctionSpec(int degree, Real conductor_scale, int weight, int sign,
                std::map<long long, Real> coefficients, long long complete_through,
                std::map<long long, Real> gap_bounds = {}, bool allow_gaps = false);

  int degree() const { return degree_; }
  int weight() const { return weight_; }
  int sign() const { return sign_; }
  const Real& conductor_scale() const { return conductor_scale_; }
  /// A = C / (2 pi)^n.
  Real scale() const;
  long long complete_through() const { return complete_through_; }
  bool allow_gaps() const { return allow_gaps_; }

  /// True when c(m) is known up to its gap bound (zero if absent).
  bool known(long long norm) const;
  Real coefficient(long long norm) const;
  /// Bound on |true c(m) - coefficient(m)|: the listed gap bound, the
  /// Ramanujan-type majorant for norms past complete_through, else 0.
  Real gap_bound(long long norm) const;
  const std::map<long long, Real>& gap_bounds() const { return *gaps_; }

  /// d_{2n}(m) m^((k-1)/2), the majorant for |c(m)|.
  Real coefficient_majorant(long long norm) const;

  /// Same data with the sign replaced; used for data-integrity checks.
  LFunctionSpec with_sign(int sign) const;

 private:
  int degree_;
  Real conductor_scale_;
  int weight_;
  int sign_;
  std::shared_ptr<const std::map<long long, Real>> coefficients_;
  std::shared_ptr<const std::map<long long, Real>> gaps_;
  long long complete_through_;
  bool allow_gaps_;
};

struct LambdaValue {
  Real s;
  Real value;
  Real truncation_bound;  // omitted tail plus gap-listed norms
  long long terms_used = 0;
};

/// Number of multiplicative compositions of m into `parts` ordered factors.
long long divisor_function(long long m, int parts);

LambdaValue lambda_value(const LFunctionSpec& spec, const Real& s, const Precision& prec);

/// Lambda at several points sharing one pass over the coefficients.
std::vector<LambdaValue> lambda_values(const LFunctionSpec& spec, const std::vector<Real>& points,
                                       const Precision& prec);
std::vector<LambdaValue> lambda_values(const LFunctionSpec& spec, const std::vector<Real>& points,
                                       const Precision& prec, kernels::Execution exec);

/// Norm count after which the kernels G_n(m / A) ~ exp(-n (m / A)^(1/n)) have
/// fallen below prec.tol against the majorant growth; a starting point for
/// extending coefficient data, not a guarantee.
long long suggested_max_norm(int degree, const Real& scale, int weight, const Precision& prec);

/// Lambda(j) for j = 1..k-1.
std::vector<LambdaValue> critical_values(const LFunctionSpec& spec, const Precision& prec);

/// Lambda(s) / (C^s (2 pi)^(-ns) Gamma(s)^n).
Real l_value(const LFunctionSpec& spec, const Real& s, const Precision& prec);

/// sum_{m <= limit} c(m) m^-s over the stored coefficients.
Real dirichlet_partial_sum(const LFunctionSpec& spec, const Real& s, long long limit);

struct FunctionalEquationReport {
  Real max_residual;         // relative
  Real worst_point;
  std::vector<Real> residuals;
  Real truncation_bound;
  bool passed = false;
};

/// Lambda_{t0}(s) = sum_m c(m) [t0^s Ginc(s, m t0/A) + sign t0^(s-k) Ginc(k-s, m/(A t0))]
/// is independent of t0 exactly when the functional equation holds, so the
/// residual |Lambda_{t0}(s) - Lambda_1(s)| tests the data, not the algebra.
FunctionalEquationReport check_functional_equation(const LFunctionSpec& spec,
                                                   const std::vector<Real>& points,
                                                   const Precision& prec,
                                                   const Real& tolerance = Real("1e-10"),
                                                   const Real& t0 = Real("1.1"));

/// Pairwise sign-symmetry Lambda(j) = sign Lambda(k - j) of a fixture.
FunctionalEquationReport check_functional_equation(const formdata::LambdaFixture& fixture);

struct GrowthReport {
  bool passed = true;
  std::vector<std::string> violations;
};

/// Monotone growth of Lambda(k/2) <= Lambda(k/2 + 1) <= ... <= Lambda(k-1);
/// for sign -1 also Lambda(k/2) = 0 and j Lambda(k/2 + 1) <= Lambda(k/2 + j).
GrowthReport check_lambda_growth(const std::map<int, Real>& values, int weight, int sign,
                                 const Real& tolerance);
GrowthReport check_lambda_growth(const formdata::LambdaFixture& fixture);

struct RatioBoundReport {
  Real ratio;       // L(centre + a) / L(centre + b)
  Real bound;       // (zeta(1 + a) / zeta(1 + b))^(2n)
  Real slack;       // bound - ratio
  bool holds = false;
};

/// L((k+1)/2 + a) / L((k+1)/2 + b) <= zeta(1+a)^(2n) / zeta(1+b)^(2n), 0 < a < b.
RatioBoundReport check_ratio_bound(const LFunctionSpec& spec, const Real& a, const Real& b,
                                   const Precision& prec);

}  // namespace pprh::lfunc
