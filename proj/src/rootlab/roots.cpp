#include "pprh/errors.hpp"
#include "pprh/rootlab.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pprh::rootlab {

namespace {

using cd = std::complex<double>;

constexpr int kIterationCap = 200;
constexpr int kPolishCap = 80;

template <typename C>
std::pair<C, C> horner_with_derivative(const std::vector<C>& a, const C& z) {
  C p = a.back();
  C dp = C(0);
  for (std::size_t i = a.size() - 1; i-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[i];
  }
  return {p, dp};
}

struct Iteration {
  std::vector<cd> roots;
  bool converged = false;
  int iterations = 0;
};

Iteration aberth_double(const std::vector<cd>& a) {
  const int d = static_cast<int>(a.size()) - 1;
  Iteration out;
  const double ratio = std::abs(a.front() / a.back());
  const double radius = 0.9 * (ratio > 0 ? std::pow(ratio, 1.0 / d) : 1.0);
  out.roots.resize(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const double angle = 2 * std::numbers::pi * j / d + 0.4;
    const double wobble = 1.0 + 0.01 * ((j % 3) - 1);
    out.roots[static_cast<std::size_t>(j)] = std::polar(radius * wobble, angle);
  }
  auto& z = out.roots;
  for (int it = 1; it <= kIterationCap; ++it) {
    double worst = 0;
    for (std::size_t j = 0; j < z.size(); ++j) {
      const auto [p, dp] = horner_with_derivative(a, z[j]);
      if (p == cd(0)) continue;
      cd repulsion = 0;
      for (std::size_t l = 0; l < z.size(); ++l)
        if (l != j) repulsion += 1.0 / (z[j] - z[l]);
      cd step;
      if (dp == cd(0)) {
        step = cd(1e-3, 1e-3) * std::max(1.0, std::abs(z[j]));
      } else {
        const cd newton = p / dp;
        step = newton / (1.0 - newton * repulsion);
      }
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return out;
      z[j] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[j])));
    }
    out.iterations = it;
    if (worst < 1e-14) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

std::vector<cd> companion_roots(const std::vector<cd>& a) {
  const int d = static_cast<int>(a.size()) - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -a[static_cast<std::size_t>(i)] / a.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NonConvergence("companion eigenvalue solver failed");
  std::vector<cd> out(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
  return out;
}

// Aberth sweeps at full storage precision starting from double estimates.
int polish(const std::vector<Complex>& a, std::vector<Complex>& z, const Precision& prec) {
  const Real threshold = pow(Real(10), -(prec.digits - 5));
  for (int it = 1; it <= kPolishCap; ++it) {
    Real worst = 0;
    for (std::size_t j = 0; j < z.size(); ++j) {
      const auto [p, dp] = horner_with_derivative(a, z[j]);
      if (p == Complex(0) || dp == Complex(0)) continue;
      Complex repulsion(0);
      for (std::size_t l = 0; l < z.size(); ++l)
        if (l != j && z[l] != z[j]) repulsion += Complex(1) / (z[j] - z[l]);
      const Complex newton = p / dp;
      const Complex step = newton / (Complex(1) - newton * repulsion);
      z[j] -= step;
      worst = std::max(worst, Real(abs(step) / std::max(Real(1), Real(abs(z[j])))));
    }
    if (worst < threshold) return it;
  }
  return kPolishCap;
}

bool residuals_ok(const std::vector<Complex>& a, const std::vector<Complex>& z, const Precision& prec,
                  std::vector<double>& residuals) {
  const Real allowance = pow(Real(10), -Real(prec.digits) / 2);
  residuals.clear();
  bool ok = true;
  for (const Complex& root : z) {
    const Real r = abs(root);
    const Real grow = std::max(Real(1), r);
    Real scale = 0;
    Real power = 1;
    for (const Complex& c : a) {
      scale += abs(c) * power;
      power *= grow;
    }
    const Real value = abs(horner_with_derivative(a, root).first);
    residuals.push_back(static_cast<double>(value));
    if (value > allowance * scale) ok = false;
  }
  return ok;
}

}  // namespace

std::vector<cd> find_roots_double(const std::vector<cd>& coeffs) {
  std::vector<cd> a = coeffs;
  while (a.size() > 1 && a.back() == cd(0)) a.pop_back();
  if (a.size() < 2) throw DegenerateLeading("polynomial has no roots");
  std::vector<cd> zeros;
  std::size_t low = 0;
  while (a[low] == cd(0)) ++low;
  zeros.assign(low, cd(0));
  a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(low));
  if (a.size() < 2) return zeros;
  double scale = 0;
  for (const cd& c : a) scale = std::max(scale, std::abs(c));
  for (cd& c : a) c /= scale;
  Iteration it = aberth_double(a);
  std::vector<cd> roots = it.converged ? std::move(it.roots) : companion_roots(a);
  roots.insert(roots.end(), zeros.begin(), zeros.end());
  return roots;
}

bool roots_on_circle(const std::vector<cd>& coeffs, double tol) {
  for (const cd& z : find_roots_double(coeffs))
    if (std::abs(std::abs(z) - 1.0) > tol) return false;
  return true;
}

RootReport find_roots(const std::vector<Complex>& coeffs, const Precision& prec, double tol_circle) {
  if (coeffs.size() < 2) throw DegenerateLeading("polynomial degree must be at least 1");
  Real largest = 0;
  for (const Complex& c : coeffs) largest = std::max(largest, Real(abs(c)));
  if (!(abs(coeffs.back()) > prec.tol * largest))
    throw DegenerateLeading("leading coefficient vanishes within tolerance");

  std::vector<Complex> a = coeffs;
  for (Complex& c : a) c /= largest;
  std::vector<cd> ad;
  for (const Complex& c : a) ad.push_back(to_double(c));

  RootReport report;
  report.tol_circle = tol_circle;
  Iteration first = aberth_double(ad);
  report.method = first.converged ? "aberth" : "companion";
  std::vector<cd> start = first.converged ? first.roots : companion_roots(ad);

  std::vector<Complex> z;
  for (const cd& r : start) z.push_back(from_double(r));
  report.iterations = first.iterations + polish(a, z, prec);
  bool ok = residuals_ok(a, z, prec, report.residuals);
  if (!ok && first.converged) {
    report.method = "companion";
    z.clear();
    for (const cd& r : companion_roots(ad)) z.push_back(from_double(r));
    report.iterations += polish(a, z, prec);
    ok = residuals_ok(a, z, prec, report.residuals);
  }
  if (!ok) throw NonConvergence("roots do not meet the residual bound");
  // Residuals are reported against the caller's scaling.
  for (double& r : report.residuals) r *= static_cast<double>(largest);

  report.roots = std::move(z);
  report.all_on_circle = true;
  for (const Complex& root : report.roots) {
    const double dev = static_cast<double>(abs(Real(abs(root)) - 1));
    report.moduli_dev.push_back(dev);
    const bool on = dev <= tol_circle;
    report.on_circle.push_back(on);
    report.all_on_circle = report.all_on_circle && on;
    double angle = std::atan2(static_cast<double>(root.imag()), static_cast<double>(root.real()));
    if (angle < 0) angle += 2 * std::numbers::pi;
    if (angle >= 2 * std::numbers::pi) angle = 0;
    report.angles.push_back(angle);
  }
  std::sort(report.angles.begin(), report.angles.end());
  report.discrepancy = angle_discrepancy(report);
  return report;
}

RootReport find_roots(const periodpoly::PeriodPolynomial& poly, const Precision& prec, double tol_circle) {
  return find_roots(poly.coeffs, prec, tol_circle);
}

CircleVerdict circle_verdict(const RootReport& report, double tol_circle) {
  double worst = 0;
  for (double d : report.moduli_dev) worst = std::max(worst, d);
  return {worst <= tol_circle, tol_circle - worst};
}

double star_discrepancy(std::vector<double> u) {
  if (u.empty()) throw DomainError("discrepancy needs at least one point");
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double worst = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double upper = static_cast<double>(i + 1) / n;
    const double lower = static_cast<double>(i) / n;
    worst = std::max({worst, std::abs(upper - u[i]), std::abs(u[i] - lower)});
  }
  return worst;
}

double angle_discrepancy(const RootReport& report) {
  std::vector<double> u;
  u.reserve(report.angles.size());
  for (double a : report.angles) u.push_back(a / (2 * std::numbers::pi));
  return star_discrepancy(std::move(u));
}

RoucheMargin rouche_margin(const periodpoly::PeriodPolynomial& q, int samples) {
  if (q.kind != periodpoly::Kind::Q) throw DomainError("Rouche margin applies to Q polynomials");
  if (samples < 8) throw DomainError("need at least 8 samples");
  const auto a = q.coeffs_double();
  const int h = q.degree();
  const auto f = [&](double theta) {
    const cd x = std::polar(1.0, theta);
    return std::abs(horner_with_derivative(a, x).first - std::pow(x, h));
  };
  const double step = 2 * std::numbers::pi / samples;
  std::vector<double> grid(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) grid[static_cast<std::size_t>(j)] = f(j * step);

  RoucheMargin out;
  out.max_value = -1;
  const double golden = (std::sqrt(5.0) - 1) / 2;
  for (int j = 0; j < samples; ++j) {
    const double here = grid[static_cast<std::size_t>(j)];
    const double prev = grid[static_cast<std::size_t>((j + samples - 1) % samples)];
    const double next = grid[static_cast<std::size_t>((j + 1) % samples)];
    if (here < prev || here < next) continue;
    double lo = (j - 1) * step, hi = (j + 1) * step;
    double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > 1e-10) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + golden * (hi - lo);
        f2 = f(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - golden * (hi - lo);
        f1 = f(x1);
      }
    }
    double best_theta = j * step;
    double best = here;
    const double mid = (lo + hi) / 2;
    const double value = f(mid);
    if (value > best) {
      best = value;
      best_theta = mid;
    }
    if (best > out.max_value) {
      out.max_value = best;
      out.argmax = best_theta;
    }
  }
  out.argmax = std::fmod(out.argmax + 2 * std::numbers::pi, 2 * std::numbers::pi);
  out.certifies = out.max_value < 1;
  return out;
}

}  // namespace pprh::rootlab
