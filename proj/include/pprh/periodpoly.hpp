#pragma once

// Period polynomials built from critical values Lambda(1..k-1):
//   r(X) = sum_m (-1)^m i^(n(k-m-1)) C(k-2, m) Lambda(k-m-1) X^m,
// and the half-degree pair P, Q = P / Lambda(k-1).

#include "pprh/formdata.hpp"
#include "pprh/lfunc.hpp"
#include "pprh/numeric.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pprh::periodpoly {

enum class Kind { R, P, Q };
enum class Source { Evaluator, Fixture };

std::string to_string(Kind kind);
std::string to_string(Source source);

/// Critical values keyed by the integer point s.
using LambdaMap = std::map<int, Complex>;

LambdaMap lambda_map(const formdata::LambdaFixture& fixture);
LambdaMap lambda_map(const std::vector<lfunc::LambdaValue>& values);

struct PeriodPolynomial {
  std::vector<Complex> coeffs;  // coeffs[m] multiplies X^m
  int weight = 0;
  int degree_n = 1;
  Kind kind = Kind::R;
  Source source = Source::Fixture;
  Real tolerance = 0;           // relative accuracy of the Lambda values used

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Complex operator()(const Complex& x) const;
  std::vector<std::complex<double>> coeffs_double() const;
};

PeriodPolynomial build_r(const LambdaMap& lambda, int weight, int degree_n,
                         Source source = Source::Fixture, const Real& tolerance = Real(0));

struct PairPQ {
  PeriodPolynomial p;
  PeriodPolynomial q;
};

/// Throws ZeroTopLambda when |Lambda(k-1)| is below `zero_tolerance` times
/// the largest supplied value.
PairPQ build_pq(const LambdaMap& lambda, int weight, int degree_n, Source source = Source::Fixture,
                const Real& tolerance = Real(0), const Real& zero_tolerance = Real("1e-30"));

/// max |LHS - RHS| / max |LHS| over `samples` equally spaced points of the
/// unit circle, for
///   r(i^(n+2) X) = i^(n(k-1)) sign Lambda(k-1) X^h [Q(X) + sign Q(1/X)],  h = (k-2)/2.
Real check_rq_identity(const PeriodPolynomial& r, const PeriodPolynomial& q, int sign,
                       int samples = 64);

struct ParityParts {
  PeriodPolynomial even;
  PeriodPolynomial odd;
};

ParityParts split_parity(const PeriodPolynomial& r);

/// JSON: {"kind", "weight", "degree_n", "source", "tolerance", "coefficients": [{m, re, im}]}.
std::string serialize(const PeriodPolynomial& poly);
PeriodPolynomial parse_polynomial(const std::string& document);

}  // namespace pprh::periodpoly
