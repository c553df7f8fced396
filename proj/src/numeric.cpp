#include "pprh/numeric.hpp"

#include "pprh/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <sstream>

namespace pprh {

namespace {

Real default_tol(int digits) { return pow(Real(10), -(digits - 5)); }

void check_digits(int digits) {
  if (digits < kMinDigits || digits > kMaxDigits) {
    throw DomainError("precision digits must lie in [" + std::to_string(kMinDigits) + ", " +
                      std::to_string(kMaxDigits) + "], got " + std::to_string(digits));
  }
}

}  // namespace

Precision::Precision() : Precision(40) {}

Precision::Precision(int d) : digits(d), tol(0) {
  check_digits(d);
  tol = default_tol(d);
}

Precision::Precision(int d, Real t) : digits(d), tol(std::move(t)) {
  check_digits(d);
  if (!(tol > 0)) throw DomainError("precision tolerance must be positive");
}

const Real& pi() {
  static const Real value = boost::math::constants::pi<Real>();
  return value;
}

const Real& two_pi() {
  static const Real value = 2 * pi();
  return value;
}

const Real& euler_gamma() {
  static const Real value = boost::math::constants::euler<Real>();
  return value;
}

Real real_from_string(const std::string& text) {
  try {
    return Real(text);
  } catch (const std::exception&) {
    throw MalformedDocument("not a decimal number: '" + text + "'");
  }
}

std::string to_string(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

std::string to_string(const Real& x, const Precision& prec) { return to_string(x, prec.digits); }

Complex i_power(long long e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return Complex(Real(1), Real(0));
    case 1: return Complex(Real(0), Real(1));
    case 2: return Complex(Real(-1), Real(0));
    default: return Complex(Real(0), Real(-1));
  }
}

}  // namespace pprh
