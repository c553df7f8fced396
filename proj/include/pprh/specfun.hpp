#pragma once

// Controlled-precision special functions: real zeta, log-gamma, the modified
// Bessel functions K0/K1, and the inverse-Mellin kernel G_n of Gamma(s)^n
// together with its incomplete integrals over [1, inf).

#include "pprh/numeric.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pprh::specfun {

/// Quadrature knobs for the Mellin-Barnes and incomplete-kernel integrals.
/// Zero fields mean "derive from the precision".
struct KernelSpec {
  int n = 0;                  // 0 = take the degree from the call
  std::optional<Real> contour_offset;  // abscissa c of the Mellin-Barnes line; unset = saddle
  Real truncation_height = 0; // cap on the contour height T; 0 = no cap
  int quadrature_nodes = 0;   // Gauss-Legendre nodes per panel; 0 = from digits
};

/// B_{2r} as exact rationals converted to Real, r = 0..count-1.
std::span<const Real> bernoulli_even(int count);

Real zeta(const Real& s, const Precision& prec);

/// log Gamma(s) for s > 0.
Real log_gamma(const Real& s, const Precision& prec);

/// log Gamma(z) for Re z > 0, up to an additive multiple of 2*pi*i.
Complex log_gamma(const Complex& z, const Precision& prec);

/// (K0(x), K1(x)) for x > 0.
std::pair<Real, Real> bessel_k01(const Real& x, const Precision& prec);
Real bessel_k0(const Real& x, const Precision& prec);

/// G_n(x), the inverse Mellin transform of Gamma(s)^n.
Real kernel_g(int n, const Real& x, const KernelSpec& spec, const Precision& prec);
Real kernel_g(int n, const Real& x, const Precision& prec);

/// int_1^inf G_n(x t) t^(s-1) dt by adaptive Gauss-Legendre panels.
Real kernel_g_incomplete(int n, const Real& s, const Real& x, const KernelSpec& spec,
                         const Precision& prec);
Real kernel_g_incomplete(int n, const Real& s, const Real& x, const Precision& prec);

/// The same integral as a single Mellin-Barnes contour,
///   (1/2 pi i) int_(c) Gamma(w)^n x^-w / (w - s) dw,   c > s.
Real kernel_g_incomplete_contour(int n, const Real& s, const Real& x, const KernelSpec& spec,
                                 const Precision& prec);

/// Upper incomplete gamma function Gamma(s, x) for x > 0.
Real upper_incomplete_gamma(const Real& s, const Real& x, const Precision& prec);

/// Same integral for several orders sharing one set of kernel evaluations.
std::vector<Real> kernel_g_incomplete_many(int n, std::span<const Real> orders, const Real& x,
                                           const KernelSpec& spec, const Precision& prec);

/// Closed-form recursions for integer orders 1..max_order (n = 1, 2 only):
/// entry j-1 holds int_1^inf G_n(x t) t^(j-1) dt.
std::vector<Real> kernel_g_incomplete_integer_orders(int n, int max_order, const Real& x,
                                                     const Precision& prec);

bool has_integer_order_recursion(int n);

/// Gauss-Legendre nodes and weights on [-1, 1], cached per node count.
struct GaussLegendreRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};
const GaussLegendreRule& gauss_legendre(int nodes);

}  // namespace pprh::specfun
