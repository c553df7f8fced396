#include "pprh/perturb.hpp"

#include "pprh/errors.hpp"
#include "pprh/rootlab.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

namespace pprh::perturb {

namespace {

std::vector<std::complex<double>> combine(const periodpoly::ParityParts& parts, double t) {
  std::vector<std::complex<double>> out;
  out.reserve(parts.even.coeffs.size());
  for (std::size_t m = 0; m < parts.even.coeffs.size(); ++m)
    out.push_back(to_double(parts.even.coeffs[m]) + t * to_double(parts.odd.coeffs[m]));
  return out;
}

// Multiprecision version of the predicate, used while bisecting where roots
// pair up on the circle and double precision is least reliable.
bool precise_on_circle(const periodpoly::ParityParts& parts, double t, double verdict_tol,
                       const Precision& prec) {
  std::vector<Complex> coeffs;
  const Complex scale{Real(t)};
  for (std::size_t m = 0; m < parts.even.coeffs.size(); ++m)
    coeffs.push_back(parts.even.coeffs[m] + scale * parts.odd.coeffs[m]);
  while (coeffs.size() > 1 && coeffs.back() == Complex(0)) coeffs.pop_back();
  return rootlab::find_roots(coeffs, prec, verdict_tol).all_on_circle;
}

// Shrinks [inside, outside] to width tol; returns the end where the predicate holds.
double bisect(double inside, double outside, double tol, const std::function<bool(double)>& holds) {
  while (std::abs(outside - inside) > tol) {
    const double mid = (inside + outside) / 2;
    if (holds(mid)) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return inside;
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

bool roots_on_circle_at(const periodpoly::ParityParts& parts, double t, double verdict_tol) {
  auto coeffs = combine(parts, t);
  while (coeffs.size() > 1 && coeffs.back() == std::complex<double>(0)) coeffs.pop_back();
  return rootlab::roots_on_circle(coeffs, verdict_tol);
}

PerturbationResult parity_threshold_interval(const periodpoly::PeriodPolynomial& r, const Precision& prec,
                                             const ScanOptions& options, kernels::Execution exec) {
  if (r.kind != periodpoly::Kind::R) throw DomainError("perturbation scan needs an r polynomial");
  if (!(options.resolution > 0) || options.resolution > 1)
    throw DomainError("scan resolution must lie in (0, 1]");
  if (!(options.bisection_tol > 0) || !(options.verdict_tol > 0))
    throw DomainError("tolerances must be positive");

  const auto parts = periodpoly::split_parity(r);
  const auto holds = [&](double t) { return precise_on_circle(parts, t, options.verdict_tol, prec); };
  if (!holds(1.0)) throw DegenerateAtOne("roots leave the unit circle at t = 1");

  PerturbationResult out;
  out.resolution = options.resolution;
  out.bisection_tol = options.bisection_tol;
  out.verdict_tol = options.verdict_tol;

  const auto steps = static_cast<std::size_t>(std::llround(2.0 / options.resolution));
  const auto grid_t = [&](std::size_t i) { return i == steps ? 2.0 : static_cast<double>(i) * 2.0 / steps; };
  auto on = kernels::map_predicate(
      steps + 1, [&](std::size_t i) { return roots_on_circle_at(parts, grid_t(i), options.verdict_tol); },
      exec);

  // t = 1 is already known to pass at full precision.
  const auto last = static_cast<std::ptrdiff_t>(steps);
  std::ptrdiff_t below = -1;
  std::ptrdiff_t above = last + 1;
  for (std::ptrdiff_t i = 0; i <= last; ++i) {
    const double t = grid_t(static_cast<std::size_t>(i));
    if (std::abs(t - 1.0) < 1e-12) on[static_cast<std::size_t>(i)] = 1;
    if (t < 1.0 - 1e-12) below = i;
    if (t > 1.0 + 1e-12 && above > last) above = i;
  }

  for (std::size_t i = 0; i + 1 < on.size(); ++i)
    if (on[i] != on[i + 1]) out.flip_points.push_back((grid_t(i) + grid_t(i + 1)) / 2);
  if (out.flip_points.size() > 2) {
    std::ostringstream msg;
    msg << "predicate changes " << out.flip_points.size() << " times; flip points:";
    for (double t : out.flip_points) msg << ' ' << fixed(t);
    throw NonMonotoneBoundary(msg.str());
  }

  double inner = 1.0;
  std::ptrdiff_t i = below;
  while (i >= 0 && on[static_cast<std::size_t>(i)]) inner = grid_t(static_cast<std::size_t>(i--));
  if (i < 0) {
    out.t_low = 0;
    out.low_saturated = true;
  } else {
    out.t_low = bisect(inner, grid_t(static_cast<std::size_t>(i)), options.bisection_tol, holds);
  }

  inner = 1.0;
  i = above;
  while (i <= last && on[static_cast<std::size_t>(i)]) inner = grid_t(static_cast<std::size_t>(i++));
  if (i > last) {
    out.t_high = 2;
    out.high_saturated = true;
  } else {
    out.t_high = bisect(inner, grid_t(static_cast<std::size_t>(i)), options.bisection_tol, holds);
  }
  return out;
}

PerturbationResult parity_threshold_interval(const periodpoly::PeriodPolynomial& r, const Precision& prec,
                                             const ScanOptions& options) {
  return parity_threshold_interval(r, prec, options, kernels::default_execution());
}

std::string to_csv(const std::vector<CsvRow>& rows) {
  std::ostringstream csv;
  csv << "weight,label,t_low,t_high\n";
  for (const auto& row : rows) {
    std::string label = row.label;
    if (label.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : label) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      label = quoted + "\"";
    }
    csv << row.weight << ',' << label << ',' << fixed(row.result.t_low) << ',' << fixed(row.result.t_high)
        << '\n';
  }
  return csv.str();
}

}  // namespace pprh::perturb
