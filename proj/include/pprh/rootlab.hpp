#pragma once

// Roots of period polynomials and the unit-circle certificates: direct
// root-finding, the Rouche margin of Q, the analytic bound T_n(m), the
// small-weight criteria, and root-angle equidistribution.

#include "pprh/periodpoly.hpp"

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pprh::rootlab {

inline constexpr double kDefaultCircleTolerance = 1e-8;

struct RootReport {
  std::vector<Complex> roots;
  std::vector<double> moduli_dev;   // ||root| - 1|
  std::vector<double> angles;       // sorted, in [0, 2 pi)
  std::vector<bool> on_circle;
  bool all_on_circle = false;
  double discrepancy = 0;           // star discrepancy of angles / 2 pi
  std::vector<double> residuals;    // |p(root)|
  double tol_circle = kDefaultCircleTolerance;
  std::string method;               // "aberth" or "companion"
  int iterations = 0;
};

/// Root finding for arbitrary coefficient vectors (coeffs[m] multiplies X^m).
RootReport find_roots(const std::vector<Complex>& coeffs, const Precision& prec,
                      double tol_circle = kDefaultCircleTolerance);
RootReport find_roots(const periodpoly::PeriodPolynomial& poly, const Precision& prec,
                      double tol_circle = kDefaultCircleTolerance);

/// Double-precision roots only; used by scans that evaluate many polynomials.
std::vector<std::complex<double>> find_roots_double(const std::vector<std::complex<double>>& coeffs);

/// max_i ||root_i| - 1| <= tol for double-precision roots.
bool roots_on_circle(const std::vector<std::complex<double>>& coeffs, double tol);

struct CircleVerdict {
  bool on_circle = false;
  double margin = 0;  // tol - max deviation
};

CircleVerdict circle_verdict(const RootReport& report, double tol_circle);

/// Star discrepancy of the normalized root angles.
double angle_discrepancy(const RootReport& report);
double star_discrepancy(std::vector<double> unit_points);

struct RoucheMargin {
  double max_value = 0;  // max over |X| = 1 of |Q(X) - X^h|
  double argmax = 0;     // angle in [0, 2 pi)
  bool certifies = false;
};

RoucheMargin rouche_margin(const periodpoly::PeriodPolynomial& q, int samples = 1024);

struct BoundTerm {
  int j = 0;
  Real value;
};

struct BoundReport {
  int n = 0;
  int m = 0;
  Real discriminant_used;  // Minkowski lower bound when none was supplied
  bool minkowski_default = true;
  Real first_term;
  std::vector<BoundTerm> per_term;
  Real value;
  bool verdict = false;    // value < 1
};

/// T_n(m); with a discriminant the factor (2 pi)^n (n!)^2 / n^(2n) is replaced
/// by (2 pi)^n / D.
BoundReport analytic_bound(int n, int m, std::optional<Real> discriminant = std::nullopt,
                           const Precision& prec = Precision::tables());

Real minkowski_discriminant_bound(int n);

struct ThresholdRow {
  long long discriminant = 0;
  int min_m = 0;
};

std::vector<ThresholdRow> bound_threshold_table(int n, const std::vector<long long>& discriminants,
                                                const Precision& prec = Precision::tables(),
                                                int max_m = 200);

struct MonotonicityReport {
  bool holds = true;
  std::vector<std::string> violations;
  int cells = 0;
};

MonotonicityReport check_bound_monotonicity(std::pair<int, int> n_range, std::pair<int, int> m_range,
                                            const Precision& prec = Precision::tables());

struct CertificateCondition {
  std::string name;
  bool passed = false;
  Real lhs;
  Real rhs;
};

struct SmallWeightCertificate {
  int weight = 0;
  int sign = 1;
  std::vector<CertificateCondition> conditions;
  std::vector<std::string> flags;  // negative central values and the like
  bool passed = false;
  int expected_roots = 0;          // 2 h roots on [0, 2 pi) when every condition holds
  int observed_roots = 0;          // sign changes of P(X) + sign P(1/X) on |X| = 1
};

SmallWeightCertificate small_weight_certificate(const periodpoly::LambdaMap& lambda, int weight,
                                                int sign, const Real& tolerance = Real("1e-12"));

std::string to_json(const RootReport& report);
std::string to_json(const BoundReport& report);

/// Unit circle with one marker per root; deterministic output.
std::string roots_svg(const RootReport& report, const std::string& title);

}  // namespace pprh::rootlab
