#include "pprh/errors.hpp"
#include "pprh/kernels.hpp"
#include "pprh/rootlab.hpp"
#include "pprh/specfun.hpp"

#include <sstream>

namespace pprh::rootlab {

namespace {

Real factorial(int n) {
  Real out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace

Real minkowski_discriminant_bound(int n) {
  if (n < 1) throw DomainError("degree must be positive");
  const Real ratio = pow(Real(n), n) / factorial(n);
  return ratio * ratio;
}

BoundReport analytic_bound(int n, int m, std::optional<Real> discriminant, const Precision& prec) {
  if (n < 2) throw DomainError("the analytic bound needs degree n >= 2");
  if (m < 1) throw DomainError("the analytic bound needs m >= 1");
  if (discriminant && !(*discriminant > 0)) throw DomainError("discriminant must be positive");

  BoundReport report;
  report.n = n;
  report.m = m;
  report.minkowski_default = !discriminant.has_value();
  report.discriminant_used = discriminant ? *discriminant : minkowski_discriminant_bound(n);
  const Real two_pi_n = pow(two_pi(), n);
  const Real base = discriminant ? Real(two_pi_n / *discriminant)
                                 : Real(two_pi_n * pow(factorial(n), 2) / pow(Real(n), 2 * n));

  const auto lg = [&](int x) { return specfun::log_gamma(Real(x), prec); };
  const Real lg_top = lg(2 * m + 1);
  report.first_term = exp((n - 2) * lg(m + 1) - (n - 1) * lg_top) * pow(base, m) *
                      pow(Real(11) / 5, n) / 2;
  const Real zeta_top = specfun::zeta(Real(m) + Real("0.5"), prec);
  report.value = report.first_term;
  for (int j = 1; j <= m - 1; ++j) {
    const Real gamma_part = exp(-lg(j + 1) + (n - 1) * (lg(2 * m + 1 - j) - lg_top));
    const Real zeta_part = pow(specfun::zeta(Real(m - j) + Real("0.5"), prec) / zeta_top, 2 * n);
    const Real term = gamma_part * pow(base, j) * zeta_part;
    report.per_term.push_back({j, term});
    report.value += term;
  }
  report.verdict = report.value < 1;
  return report;
}

std::vector<ThresholdRow> bound_threshold_table(int n, const std::vector<long long>& discriminants,
                                                const Precision& prec, int max_m) {
  for (long long d : discriminants)
    if (d <= 0) throw DomainError("discriminants must be positive");
  const auto mins = kernels::map_indices(
      discriminants.size(),
      [&](std::size_t i) {
        for (int m = 1; m <= max_m; ++m)
          if (analytic_bound(n, m, Real(discriminants[i]), prec).verdict) return Real(m);
        return Real(0);
      },
      kernels::default_execution());
  std::vector<ThresholdRow> rows;
  for (std::size_t i = 0; i < discriminants.size(); ++i)
    rows.push_back({discriminants[i], mins[i].convert_to<int>()});
  return rows;
}

MonotonicityReport check_bound_monotonicity(std::pair<int, int> n_range, std::pair<int, int> m_range,
                                            const Precision& prec) {
  const auto [n0, n1] = n_range;
  const auto [m0, m1] = m_range;
  if (n0 < 2 || n1 > 6 || n0 > n1) throw DomainError("n range must lie in [2, 6]");
  if (m0 < 1 || m1 > 20 || m0 > m1) throw DomainError("m range must lie in [1, 20]");
  const int rows = n1 - n0 + 1;
  const int cols = m1 - m0 + 1;
  const auto values = kernels::map_indices(
      static_cast<std::size_t>(rows * cols),
      [&](std::size_t i) {
        const int n = n0 + static_cast<int>(i) / cols;
        const int m = m0 + static_cast<int>(i) % cols;
        return analytic_bound(n, m, std::nullopt, prec).value;
      },
      kernels::default_execution());
  const auto at = [&](int n, int m) { return values[static_cast<std::size_t>((n - n0) * cols + (m - m0))]; };

  MonotonicityReport report;
  report.cells = rows * cols;
  for (int n = n0; n <= n1; ++n) {
    for (int m = m0; m <= m1; ++m) {
      if (n + 1 <= n1 && at(n + 1, m) > at(n, m)) {
        std::ostringstream msg;
        msg << "T_" << n + 1 << "(" << m << ") > T_" << n << "(" << m << ")";
        report.violations.push_back(msg.str());
      }
      if (m + 1 <= m1 && at(n, m + 1) > at(n, m)) {
        std::ostringstream msg;
        msg << "T_" << n << "(" << m + 1 << ") > T_" << n << "(" << m << ")";
        report.violations.push_back(msg.str());
      }
    }
  }
  report.holds = report.violations.empty();
  return report;
}

}  // namespace pprh::rootlab
