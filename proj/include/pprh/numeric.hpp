#pragma once

#include <boost/multiprecision/complex_adaptor.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <string>

namespace pprh {

namespace mp = boost::multiprecision;

// 50 significant decimal digits of working storage; Precision::digits is
// capped below this so that guard digits remain for cancellation.
inline constexpr int kStorageDigits = 50;
inline constexpr int kMaxDigits = 45;
inline constexpr int kMinDigits = 15;

using Real = mp::number<mp::mpfr_float_backend<kStorageDigits>, mp::et_off>;
using Complex = mp::number<mp::complex_adaptor<mp::mpfr_float_backend<kStorageDigits>>, mp::et_off>;

/// Working precision for an evaluation: decimal digits and the absolute
/// target tolerance derived from them.
struct Precision {
  int digits = 40;
  Real tol;

  Precision();
  explicit Precision(int digits);
  Precision(int digits, Real tol);

  static Precision evaluator() { return Precision(40); }
  static Precision tables() { return Precision(20); }
};

const Real& pi();
const Real& two_pi();
const Real& euler_gamma();

Real real_from_string(const std::string& text);
std::string to_string(const Real& x, int digits = kStorageDigits);
std::string to_string(const Real& x, const Precision& prec);

inline Complex make_complex(const Real& re, const Real& im = Real(0)) { return Complex(re, im); }
inline std::complex<double> to_double(const Complex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}
inline Complex from_double(std::complex<double> z) { return Complex(Real(z.real()), Real(z.imag())); }

/// i^e for integer e, exact.
Complex i_power(long long e);

}  // namespace pprh
