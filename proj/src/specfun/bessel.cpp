#include "pprh/errors.hpp"
#include "pprh/specfun.hpp"

namespace pprh::specfun {

namespace {

// Full storage precision; every regime iterates to this regardless of the
// requested tolerance, since K0 feeds products that are later cancelled.
const Real& storage_eps() {
  static const Real eps = pow(Real(10), -(kStorageDigits - 2));
  return eps;
}

// Ascending series, accurate for x <= 2 (cancellation costs < 2 digits).
std::pair<Real, Real> k01_series(const Real& x) {
  const Real half_x = x / 2;
  const Real y = half_x * half_x;
  const Real log_term = log(half_x) + euler_gamma();

  Real i0 = 0, i1 = 0, k0_sum = 0, k1_sum = 0;
  Real term0 = 1;  // y^k / (k!)^2
  Real term1 = 1;  // y^k / (k! (k+1)!)
  Real harmonic = 0;  // H_k
  for (int k = 0; k < 400; ++k) {
    if (k > 0) {
      term0 *= y / (Real(k) * k);
      term1 *= y / (Real(k) * (k + 1));
      harmonic += Real(1) / k;
    }
    i0 += term0;
    i1 += term1;
    k0_sum += harmonic * term0;
    // psi(k+1) + psi(k+2) = 2 H_k + 1/(k+1) - 2 gamma
    k1_sum += (2 * harmonic + Real(1) / (k + 1) - 2 * euler_gamma()) * term1;
    if (term0 < storage_eps() * i0 && k > 2) break;
  }
  i1 *= half_x;
  const Real k0 = -log_term * i0 + k0_sum;
  const Real k1 = 1 / x + log(half_x) * i1 - half_x / 2 * k1_sum;
  return {k0, k1};
}

// Steed's continued fraction (Temme's CF2) for order 0, valid for x >= 2.
std::pair<Real, Real> k01_continued_fraction(const Real& x) {
  const Real a1 = Real(0.25);
  Real b = 2 * (1 + x);
  Real d = 1 / b;
  Real h = d, delh = d;
  Real q1 = 0, q2 = 1;
  Real q = a1, c = a1;
  Real a = -a1;
  Real s = 1 + q * delh;
  for (int i = 2; i < 20000; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / i;
    const Real qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2;
    d = 1 / (b + a * d);
    delh = (b * d - 1) * delh;
    h += delh;
    const Real dels = q * delh;
    s += dels;
    if (abs(dels) < storage_eps() * abs(s)) {
      h = a1 * h;
      const Real k0 = sqrt(pi() / (2 * x)) * exp(-x) / s;
      const Real k1 = k0 * (x + Real(0.5) - h) / x;
      return {k0, k1};
    }
  }
  throw QuadratureNonConvergence("Bessel K continued fraction did not converge");
}

// Hankel asymptotic expansion; used once its smallest term is below storage
// precision, roughly exp(-2x) < eps.
std::pair<Real, Real> k01_asymptotic(const Real& x) {
  const Real eight_x = 8 * x;
  Real t0 = 1, t1 = 1, s0 = 1, s1 = 1;
  for (int k = 1; k < 400; ++k) {
    const Real odd_sq = Real(2 * k - 1) * (2 * k - 1);
    const Real n0 = -odd_sq;           // 4*0^2 - (2k-1)^2
    const Real n1 = 4 - odd_sq;        // 4*1^2 - (2k-1)^2
    const Real next0 = t0 * n0 / (k * eight_x);
    const Real next1 = t1 * n1 / (k * eight_x);
    if (abs(next0) > abs(t0) && k > 1) break;
    t0 = next0;
    t1 = next1;
    s0 += t0;
    s1 += t1;
    if (abs(t0) < storage_eps() && abs(t1) < storage_eps()) break;
  }
  const Real pre = sqrt(pi() / (2 * x)) * exp(-x);
  return {pre * s0, pre * s1};
}

const Real& asymptotic_threshold() {
  static const Real t = Real(kStorageDigits) * log(Real(10)) / 2 + 6;
  return t;
}

}  // namespace

std::pair<Real, Real> bessel_k01(const Real& x, const Precision&) {
  if (!(x > 0)) throw DomainError("Bessel K requires x > 0");
  if (x <= 2) return k01_series(x);
  if (x >= asymptotic_threshold()) return k01_asymptotic(x);
  return k01_continued_fraction(x);
}

Real bessel_k0(const Real& x, const Precision& prec) { return bessel_k01(x, prec).first; }

}  // namespace pprh::specfun
