#pragma once

// Stability of unit-circle roots under r = r_even + t r_odd, t in [0, 2].

#include "pprh/kernels.hpp"
#include "pprh/periodpoly.hpp"

#include <string>
#include <vector>

namespace pprh::perturb {

struct ScanOptions {
  double resolution = 1e-3;     // coarse grid spacing over [0, 2]
  double bisection_tol = 1e-6;
  double verdict_tol = 1e-6;    // on-circle tolerance of the predicate
};

struct PerturbationResult {
  double t_low = 0;
  double t_high = 0;
  double scan_low = 0;
  double scan_high = 2;
  double resolution = 0;
  double bisection_tol = 0;
  double verdict_tol = 0;
  bool low_saturated = false;   // t_low pinned at the scan edge, not a threshold
  bool high_saturated = false;
  std::vector<double> flip_points;  // coarse-grid midpoints where the predicate changes
};

/// All roots of r_even + t r_odd within verdict_tol of the unit circle.
bool roots_on_circle_at(const periodpoly::ParityParts& parts, double t, double verdict_tol);

/// Maximal interval around t = 1 on which the predicate holds. Throws
/// DegenerateAtOne when it fails at t = 1 and NonMonotoneBoundary when it
/// changes value more than twice across the coarse scan.
PerturbationResult parity_threshold_interval(const periodpoly::PeriodPolynomial& r, const Precision& prec,
                                             const ScanOptions& options = {});
PerturbationResult parity_threshold_interval(const periodpoly::PeriodPolynomial& r, const Precision& prec,
                                             const ScanOptions& options, kernels::Execution exec);

struct CsvRow {
  int weight = 0;
  std::string label;
  PerturbationResult result;
};

/// weight,label,t_low,t_high
std::string to_csv(const std::vector<CsvRow>& rows);

}  // namespace pprh::perturb
