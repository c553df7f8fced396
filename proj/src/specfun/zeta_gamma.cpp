#include "pprh/errors.hpp"
#include "pprh/specfun.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace pprh::specfun {

namespace {

constexpr int kBernoulliTableSize = 90;  // B_0, B_2, ..., B_178

// Stirling's series is used once |z| reaches this radius; its smallest term is
// about exp(-2 pi |z|), so the radius grows with the requested digits.
Real stirling_radius(const Precision& prec) { return Real(0.37 * (prec.digits + 5) + 1); }

std::vector<Real> compute_bernoulli_even() {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  const int top = 2 * (kBernoulliTableSize - 1);
  std::vector<cpp_rational> b(top + 1);
  b[0] = 1;
  // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
  for (int m = 1; m <= top; ++m) {
    if (m > 1 && m % 2 == 1) continue;  // odd Bernoulli numbers beyond B_1 vanish
    cpp_rational acc = 0;
    cpp_int binom = 1;  // C(m+1, j)
    for (int j = 0; j < m; ++j) {
      if (j == 0 || j == 1 || j % 2 == 0) acc += cpp_rational(binom) * b[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    b[m] = -acc / cpp_rational(m + 1);
  }
  std::vector<Real> out;
  out.reserve(kBernoulliTableSize);
  for (int r = 0; r < kBernoulliTableSize; ++r) {
    const cpp_rational& q = b[2 * r];
    out.push_back(Real(numerator(q).str()) / Real(denominator(q).str()));
  }
  return out;
}

Real stirling_tail(const Real& z, const Real& tiny) {
  // sum_{r>=1} B_{2r} / (2r (2r-1) z^(2r-1))
  const auto bern = bernoulli_even(kBernoulliTableSize);
  const Real inv = 1 / z;
  const Real inv2 = inv * inv;
  Real zpow = inv;
  Real sum = 0;
  for (int r = 1; r < kBernoulliTableSize; ++r) {
    const Real term = bern[r] / (2 * r * (2 * r - 1)) * zpow;
    sum += term;
    if (abs(term) < tiny) break;
    zpow *= inv2;
  }
  return sum;
}

Complex stirling_tail(const Complex& z, const Real& tiny) {
  const auto bern = bernoulli_even(kBernoulliTableSize);
  const Complex inv = Complex(1) / z;
  const Complex inv2 = inv * inv;
  Complex zpow = inv;
  Complex sum = 0;
  for (int r = 1; r < kBernoulliTableSize; ++r) {
    const Complex term = zpow * (bern[r] / (2 * r * (2 * r - 1)));
    sum += term;
    if (abs(term) < tiny) break;
    zpow *= inv2;
  }
  return sum;
}

}  // namespace

std::span<const Real> bernoulli_even(int count) {
  static const std::vector<Real> table = compute_bernoulli_even();
  if (count < 0 || count > kBernoulliTableSize) {
    throw DomainError("Bernoulli table holds " + std::to_string(kBernoulliTableSize) + " entries");
  }
  return std::span<const Real>(table.data(), static_cast<std::size_t>(count));
}

Real zeta(const Real& s, const Precision& prec) {
  if (s == 1) throw PoleAtOne("zeta has a pole at s = 1");

  // Euler-Maclaurin with cut N:
  //   zeta(s) = sum_{j<N} j^-s + N^(1-s)/(s-1) + N^-s/2
  //           + sum_r B_2r/(2r)! s(s+1)...(s+2r-2) N^(-s-2r+1)
  const Real abs_s = abs(s);
  const int cut = 10 + prec.digits + static_cast<int>(ceil(abs_s).convert_to<double>());
  const Real big_n = cut;

  Real sum = 0;
  for (int j = cut - 1; j >= 1; --j) sum += pow(Real(j), -s);
  const Real n_pow = pow(big_n, -s);
  sum += big_n * n_pow / (s - 1);
  sum += n_pow / 2;

  const auto bern = bernoulli_even(kBernoulliTableSize);
  const Real tiny = prec.tol * Real("1e-3");
  Real rising = s;           // s (s+1) ... (s+2r-2)
  Real factorial = 2;        // (2r)!
  Real n_term = n_pow / big_n;  // N^(-s-2r+1) at r = 1
  const Real inv_n2 = 1 / (big_n * big_n);
  for (int r = 1; r < kBernoulliTableSize; ++r) {
    const Real term = bern[r] / factorial * rising * n_term;
    sum += term;
    if (abs(term) < tiny * abs(sum)) return sum;
    rising *= (s + 2 * r - 1) * (s + 2 * r);
    factorial *= (2 * r + 1) * (2 * r + 2);
    n_term *= inv_n2;
  }
  throw QuadratureNonConvergence("Euler-Maclaurin series for zeta did not converge");
}

Real log_gamma(const Real& s, const Precision& prec) {
  if (!(s > 0)) throw DomainError("log_gamma requires s > 0");
  Real z = s;
  Real shift_product = 1;
  const Real radius = stirling_radius(prec);
  while (z < radius) {
    shift_product *= z;
    z += 1;
  }
  const Real tiny = prec.tol * Real("1e-6");
  Real value = (z - Real(0.5)) * log(z) - z + log(two_pi()) / 2 + stirling_tail(z, tiny);
  return value - log(shift_product);
}

Complex log_gamma(const Complex& z, const Precision& prec) {
  if (!(z.real() > 0)) throw DomainError("complex log_gamma requires Re z > 0");
  Complex w = z;
  Complex shift_product = 1;
  const Real radius = stirling_radius(prec);
  while (abs(w) < radius) {
    shift_product *= w;
    w += Complex(1);
  }
  const Real tiny = prec.tol * Real("1e-6");
  const Complex half = Complex(Real(0.5));
  Complex value = (w - half) * log(w) - w + Complex(log(two_pi()) / 2) + stirling_tail(w, tiny);
  return value - log(shift_product);
}

}  // namespace pprh::specfun
