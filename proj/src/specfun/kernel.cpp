#include "pprh/errors.hpp"
#include "pprh/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace pprh::specfun {

namespace {

constexpr int kMaxPanels = 20000;

int panel_nodes(const KernelSpec& spec, const Precision& prec) {
  if (spec.quadrature_nodes > 0) return spec.quadrature_nodes;
  return static_cast<int>(std::ceil(0.8 * (prec.digits + 5))) + 4;
}

Real relative_eps(const Precision& prec) { return prec.tol / 100; }

void check_degree(int n, const KernelSpec& spec) {
  if (n < 1) throw DomainError("kernel degree must be >= 1");
  if (spec.n != 0 && spec.n != n) throw DomainError("KernelSpec degree does not match the call");
  if (spec.contour_offset && !(*spec.contour_offset > 0)) {
    throw DomainError("contour offset must be positive");
  }
}

bool is_positive_integer(const Real& s) { return s >= 1 && s == floor(s); }

// (1/pi) int_0^inf Re[Gamma(c+it)^n x^-(c+it) / (c+it-s_j)] dt for every order
// s_j (or without the denominator when `orders` is empty). The line must sit to
// the right of every pole; `gap` is the distance to the nearest one.
std::vector<Real> contour_integral(int n, const Real& x, const Real& c, const Real& gap,
                                   std::span<const Real> orders, const KernelSpec& spec,
                                   const Precision& prec) {
  const auto& rule = gauss_legendre(panel_nodes(spec, prec));
  const Real log_x = log(x);
  const Real eps = relative_eps(prec);
  const std::size_t outputs = orders.empty() ? 1 : orders.size();
  std::vector<Real> sums(outputs, Real(0));

  auto integrand = [&](const Real& t, std::vector<Real>& out) -> Real {
    const Complex w(c, t);
    const Complex base = exp(Complex(Real(n)) * log_gamma(w, prec) - w * Complex(log_x));
    Real magnitude = 0;
    if (orders.empty()) {
      out[0] = base.real();
      magnitude = abs(base);
    } else {
      for (std::size_t j = 0; j < outputs; ++j) {
        const Complex v = base / (w - Complex(orders[j]));
        out[j] = v.real();
        magnitude = std::max(magnitude, Real(abs(v)));
      }
    }
    return magnitude;
  };

  std::vector<Real> values(outputs);
  Real t_a = 0;
  for (int panel = 0; panel < kMaxPanels; ++panel) {
    const Real h = std::min(Real(1), std::max(gap, t_a));
    const Real mid = t_a + h / 2;
    Real edge_magnitude = 0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const Real t = mid + h / 2 * rule.nodes[q];
      edge_magnitude = integrand(t, values);
      for (std::size_t j = 0; j < outputs; ++j) sums[j] += rule.weights[q] * h / 2 * values[j];
    }
    t_a += h;
    if (spec.truncation_height > 0 && t_a > spec.truncation_height) {
      throw QuadratureNonConvergence("Mellin-Barnes contour exceeded its truncation height");
    }
    if (t_a < 1) continue;
    // |Gamma(c+it)| decays with logarithmic rate about atan(t/c); the factor
    // two absorbs the remaining slack in that estimate.
    const Real rate = n * atan(t_a / c);
    const Real tail = 2 * edge_magnitude / rate;
    bool done = true;
    for (const Real& s : sums) {
      if (tail >= eps * abs(s)) done = false;
    }
    if (done) {
      for (Real& s : sums) s /= pi();
      return sums;
    }
  }
  throw QuadratureNonConvergence("Mellin-Barnes contour integral did not converge");
}

// Saddle point of Gamma(w)^n x^-w on the positive axis, roughly: n / log(1/x)
// for small x (where the pole at 0 dominates) and x^(1/n) for large x.
Real saddle_abscissa(int n, const Real& x) {
  if (x >= 1) return std::max(Real(1), pow(x, Real(1) / n));
  return std::min(Real(1), n / -log(x));
}

std::vector<Real> incomplete_by_contour(int n, std::span<const Real> orders, const Real& x,
                                        const KernelSpec& spec, const Precision& prec) {
  Real top = orders.front();
  for (const Real& s : orders) top = std::max(top, s);
  // Stay right of the pole at w = top, but close enough that x^-c stays tame.
  const Real margin = x < 1 ? std::min(Real(0.5), 1 / -log(x)) : Real(0.5);
  Real c = spec.contour_offset ? *spec.contour_offset : saddle_abscissa(n, x);
  c = std::max(c, top + margin);
  const Real gap = std::min(c, c - top);
  return contour_integral(n, x, c, gap, orders, spec, prec);
}

// Gauss-Legendre on [a, a+h] of f(u) = G_2(x e^u) e^{s u}.
Real real_line_panel(const Real& s, const Real& x, const Real& a, const Real& h,
                     const GaussLegendreRule& rule, const Precision& prec) {
  Real sum = 0;
  const Real mid = a + h / 2;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const Real u = mid + h / 2 * rule.nodes[q];
    sum += rule.weights[q] * 2 * bessel_k0(2 * sqrt(x * exp(u)), prec) * exp(s * u);
  }
  return sum * h / 2;
}

Real real_line_integrand(const Real& s, const Real& x, const Real& u, const Precision& prec) {
  return 2 * bessel_k0(2 * sqrt(x * exp(u)), prec) * exp(s * u);
}

// int_0^inf G_2(x e^u) e^{s u} du with panel halving as the error check.
Real incomplete_degree_two_real_line(const Real& s, const Real& x, const KernelSpec& spec,
                                     const Precision& prec) {
  const auto& rule = gauss_legendre(panel_nodes(spec, prec));
  const Real eps = relative_eps(prec);
  const Real scale = std::max({Real(1), abs(s), sqrt(x)});
  Real h = std::min(Real(1), 2 / sqrt(scale));
  Real total = 0;
  Real u = 0;
  Real previous_edge = real_line_integrand(s, x, u, prec);
  for (int panel = 0; panel < kMaxPanels; ++panel) {
    const Real whole = real_line_panel(s, x, u, h, rule, prec);
    const Real left = real_line_panel(s, x, u, h / 2, rule, prec);
    const Real right = real_line_panel(s, x, u + h / 2, h / 2, rule, prec);
    const Real refined = left + right;
    const Real reference = std::max(abs(total), abs(refined));
    if (abs(whole - refined) > eps * reference) {
      h /= 2;
      if (h < Real("1e-10")) {
        throw QuadratureNonConvergence("incomplete kernel panel could not be resolved");
      }
      continue;
    }
    total += refined;
    u += h;
    const Real edge = real_line_integrand(s, x, u, prec);
    if (edge < previous_edge && abs(refined) < eps * abs(total) && edge < eps * abs(total)) {
      return total;
    }
    previous_edge = edge;
    h = std::min(h * Real(1.5), Real(2));
  }
  throw QuadratureNonConvergence("incomplete kernel integral did not converge");
}

// Gamma(s, x) by Legendre's continued fraction times e^x x^-s, valid for x > 0.
Real scaled_gamma_continued_fraction(const Real& s, const Real& x, const Precision& prec) {
  const Real tiny = pow(Real(10), -(kStorageDigits + 20));
  const Real eps = relative_eps(prec);
  Real b = x + 1 - s;
  Real c = 1 / tiny;
  Real d = 1 / b;
  Real h = d;
  for (int i = 1; i < 100000; ++i) {
    const Real an = -i * (i - s);
    b += 2;
    d = an * d + b;
    if (abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (abs(c) < tiny) c = tiny;
    d = 1 / d;
    const Real del = d * c;
    h *= del;
    if (abs(del - 1) < eps) return h;
  }
  throw QuadratureNonConvergence("incomplete gamma continued fraction did not converge");
}

}  // namespace

Real upper_incomplete_gamma(const Real& s, const Real& x, const Precision& prec) {
  if (!(x > 0)) throw DomainError("upper incomplete gamma requires x > 0");
  if (x > s + 1 || s <= 0) {
    return exp(-x + s * log(x)) * scaled_gamma_continued_fraction(s, x, prec);
  }
  // Series for the lower function: gamma(s, x) = e^-x x^s sum x^j / (s (s+1) ... (s+j)).
  const Real eps = relative_eps(prec);
  Real term = 1 / s;
  Real sum = term;
  for (int j = 1; j < 100000; ++j) {
    term *= x / (s + j);
    sum += term;
    if (abs(term) < eps * abs(sum)) {
      return exp(log_gamma(s, prec)) - exp(-x + s * log(x)) * sum;
    }
  }
  throw QuadratureNonConvergence("incomplete gamma series did not converge");
}

bool has_integer_order_recursion(int n) { return n == 1 || n == 2; }

std::vector<Real> kernel_g_incomplete_integer_orders(int n, int max_order, const Real& x,
                                                     const Precision& prec) {
  if (!has_integer_order_recursion(n)) {
    throw DomainError("integer-order recursion exists only for degrees 1 and 2");
  }
  if (max_order < 1) throw DomainError("max_order must be >= 1");
  if (!(x > 0)) throw DomainError("kernel argument must be positive");
  std::vector<Real> out(max_order);
  if (n == 1) {
    // Gamma(1, x) = e^-x, Gamma(s+1, x) = s Gamma(s, x) + x^s e^-x.
    const Real e = exp(-x);
    Real upper = e;
    Real x_pow = 1;
    Real inv_x_pow = 1 / x;
    for (int s = 1; s <= max_order; ++s) {
      out[s - 1] = upper * inv_x_pow;
      x_pow *= x;
      inv_x_pow /= x;
      upper = s * upper + x_pow * e;
    }
    return out;
  }
  // J_p(a) = int_a^inf K0(v) v^p dv over odd p, a = 2 sqrt(x):
  //   J_1 = a K1(a),  J_p = a^p K1 + (p-1) a^(p-1) K0 + (p-1)^2 J_(p-2),
  // and int_1^inf G_2(x t) t^(s-1) dt = 4^(1-s) x^-s J_(2s-1)(a).
  const Real a = 2 * sqrt(x);
  const auto [k0, k1] = bessel_k01(a, prec);
  Real j_value = a * k1;
  Real a_pow = a;  // a^p for the current odd p
  const Real a2 = a * a;
  Real scale = 1 / x;  // 4^(1-s) x^-s
  const Real quarter_over_x = 1 / (4 * x);
  for (int s = 1; s <= max_order; ++s) {
    out[s - 1] = scale * j_value;
    const int p = 2 * s + 1;
    a_pow *= a2;
    j_value = a_pow * k1 + Real(p - 1) * (a_pow / a) * k0 + Real(p - 1) * (p - 1) * j_value;
    scale *= quarter_over_x;
  }
  return out;
}

Real kernel_g(int n, const Real& x, const KernelSpec& spec, const Precision& prec) {
  check_degree(n, spec);
  if (!(x > 0)) throw DomainError("kernel argument must be positive");
  if (n == 1) return exp(-x);
  if (n == 2) return 2 * bessel_k0(2 * sqrt(x), prec);
  // Saddle-point abscissa keeps the integrand on the scale of the result.
  const Real c = spec.contour_offset ? *spec.contour_offset : saddle_abscissa(n, x);
  return contour_integral(n, x, c, c, {}, spec, prec).front();
}

Real kernel_g(int n, const Real& x, const Precision& prec) { return kernel_g(n, x, KernelSpec{}, prec); }

Real kernel_g_incomplete_contour(int n, const Real& s, const Real& x, const KernelSpec& spec,
                                 const Precision& prec) {
  check_degree(n, spec);
  if (!(x > 0)) throw DomainError("kernel argument must be positive");
  const Real orders[] = {s};
  return incomplete_by_contour(n, orders, x, spec, prec).front();
}

Real kernel_g_incomplete(int n, const Real& s, const Real& x, const KernelSpec& spec,
                         const Precision& prec) {
  check_degree(n, spec);
  if (!(x > 0)) throw DomainError("kernel argument must be positive");
  if (has_integer_order_recursion(n) && is_positive_integer(s) && s <= 400) {
    const int order = static_cast<int>(s.convert_to<long>());
    return kernel_g_incomplete_integer_orders(n, order, x, prec).back();
  }
  if (n == 1) return pow(x, -s) * upper_incomplete_gamma(s, x, prec);
  if (n == 2) return incomplete_degree_two_real_line(s, x, spec, prec);
  return kernel_g_incomplete_contour(n, s, x, spec, prec);
}

Real kernel_g_incomplete(int n, const Real& s, const Real& x, const Precision& prec) {
  return kernel_g_incomplete(n, s, x, KernelSpec{}, prec);
}

std::vector<Real> kernel_g_incomplete_many(int n, std::span<const Real> orders, const Real& x,
                                           const KernelSpec& spec, const Precision& prec) {
  check_degree(n, spec);
  if (!(x > 0)) throw DomainError("kernel argument must be positive");
  if (orders.empty()) return {};
  const bool all_integer =
      std::all_of(orders.begin(), orders.end(), [](const Real& s) { return is_positive_integer(s) && s <= 400; });
  if (has_integer_order_recursion(n) && all_integer) {
    int top = 1;
    for (const Real& s : orders) top = std::max(top, static_cast<int>(s.convert_to<long>()));
    const auto table = kernel_g_incomplete_integer_orders(n, top, x, prec);
    std::vector<Real> out;
    out.reserve(orders.size());
    for (const Real& s : orders) out.push_back(table[static_cast<std::size_t>(s.convert_to<long>()) - 1]);
    return out;
  }
  if (n >= 3) return incomplete_by_contour(n, orders, x, spec, prec);
  std::vector<Real> out;
  out.reserve(orders.size());
  for (const Real& s : orders) out.push_back(kernel_g_incomplete(n, s, x, spec, prec));
  return out;
}

}  // namespace pprh::specfun
