#include "pprh/errors.hpp"
#include "pprh/formdata.hpp"
#include "pprh/periodpoly.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <random>
#include <string>

using namespace pprh;
using namespace pprh::periodpoly;

namespace {

formdata::LambdaFixture fixture(const std::string& name) {
  return formdata::parse_lambda_fixture(formdata::read_file(std::string(PPRH_DATA_DIR) + "/" + name));
}

PeriodPolynomial from_fixture(const std::string& name) {
  const auto f = fixture(name);
  return build_r(lambda_map(f), f.weight, f.degree, Source::Fixture, f.tolerance);
}

LambdaMap constant_lambda(int weight, double value) {
  LambdaMap out;
  for (int s = 1; s <= weight - 1; ++s) out[s] = Complex(Real(value));
  return out;
}

void expect_coeff(const Complex& c, double re, double im, double tol) {
  EXPECT_NEAR(static_cast<double>(c.real()), re, tol);
  EXPECT_NEAR(static_cast<double>(c.imag()), im, tol);
}

}  // namespace

TEST(BuildR, QuadraticFixtureMatchesPrintedCoefficients) {
  const auto r = from_fixture("qsqrt5_k8_lambda.json");
  ASSERT_EQ(r.degree(), 6);
  const double printed[] = {-0.273825, -0.371966, -0.329503, -0.297572, -0.329503, -0.371966, -0.273825};
  for (int m = 0; m <= 6; ++m) expect_coeff(r.coeffs[m], printed[m], 0.0, 5e-6);
}

TEST(BuildR, CubicFixtureCarriesPhases) {
  const auto r = from_fixture("cubic49_k6_lambda.json");
  ASSERT_EQ(r.degree(), 4);
  expect_coeff(r.coeffs[0], 0, -4.12785, 1e-5);
  expect_coeff(r.coeffs[1], -1.29074, 0, 1e-5);
  expect_coeff(r.coeffs[2], 0, 0.547495, 1e-5);
  expect_coeff(r.coeffs[3], 1.29074, 0, 1e-5);
  expect_coeff(r.coeffs[4], 0, -4.12785, 1e-5);
}

TEST(BuildR, UnitValuesByHand) {
  const auto r = build_r(constant_lambda(4, 1), 4, 2);
  expect_coeff(r.coeffs[0], -1, 0, 0);
  expect_coeff(r.coeffs[1], -2, 0, 0);
  expect_coeff(r.coeffs[2], -1, 0, 0);
}

TEST(BuildR, MissingValueIsReported) {
  LambdaMap lambda = constant_lambda(8, 1);
  lambda.erase(3);
  EXPECT_THROW(build_r(lambda, 8, 2), MissingLambda);
}

TEST(BuildR, LargeWeightBinomialsAreExact) {
  const auto r = build_r(constant_lambda(100, 1), 100, 2);
  // C(98, 49) = 25477612258980856902730428600
  EXPECT_EQ(r.coeffs[49].real(), -Real("25477612258980856902730428600"));
}

TEST(BuildR, SymmetryAndReality) {
  for (const char* name : {"qsqrt5_k8_lambda.json", "qsqrt33_k8_lambda.json", "cubic49_k6_lambda.json"}) {
    const auto r = from_fixture(name);
    const int d = r.degree();
    Real scale = 0;
    for (const auto& c : r.coeffs) scale = std::max(scale, Real(abs(c)));
    for (int m = 0; m <= d; ++m) {
      EXPECT_LT(abs(abs(r.coeffs[m]) - abs(r.coeffs[d - m])), Real("1e-4") * scale) << name << " " << m;
      if (r.degree_n % 2 == 0) EXPECT_EQ(r.coeffs[m].imag(), 0) << name;
    }
  }
}

TEST(BuildPQ, SmallWeightShapes) {
  LambdaMap lambda{{1, Complex(Real(7))}, {2, Complex(Real(2))}, {3, Complex(Real(5))}};
  const auto k4 = build_pq(lambda, 4, 1);
  ASSERT_EQ(k4.p.coeffs.size(), 2u);
  EXPECT_EQ(k4.p.coeffs[0].real(), 2);
  EXPECT_EQ(k4.p.coeffs[1].real(), 5);
  EXPECT_EQ(k4.q.coeffs[0].real(), Real(2) / 5);

  LambdaMap six{{3, Complex(Real(2))}, {4, Complex(Real(3))}, {5, Complex(Real(5))}};
  const auto k6 = build_pq(six, 6, 2);
  EXPECT_EQ(k6.p.coeffs[0].real(), 6);
  EXPECT_EQ(k6.p.coeffs[1].real(), 12);
  EXPECT_EQ(k6.p.coeffs[2].real(), 5);
}

TEST(BuildPQ, UnitValues) {
  const auto pq = build_pq(constant_lambda(6, 1), 6, 2);
  for (int j = 0; j < 3; ++j) EXPECT_EQ(pq.p.coeffs[j], pq.q.coeffs[j]);
  EXPECT_EQ(pq.q.coeffs[0].real(), 3);
  EXPECT_EQ(pq.q.coeffs[1].real(), 4);
  EXPECT_EQ(pq.q.coeffs[2].real(), 1);
}

TEST(BuildPQ, VanishingTopValueIsDegenerate) {
  LambdaMap lambda = constant_lambda(6, 1);
  lambda[5] = Complex(Real(0));
  EXPECT_THROW(build_pq(lambda, 6, 2), ZeroTopLambda);
}

TEST(RQIdentity, HoldsOnFixtures) {
  const auto f5 = fixture("qsqrt5_k8_lambda.json");
  const auto r5 = build_r(lambda_map(f5), 8, 2);
  const auto q5 = build_pq(lambda_map(f5), 8, 2).q;
  EXPECT_LT(check_rq_identity(r5, q5, f5.sign, 64), Real("1e-9"));

  const auto fc = fixture("cubic49_k6_lambda.json");
  const auto rc = build_r(lambda_map(fc), 6, 3);
  const auto qc = build_pq(lambda_map(fc), 6, 3).q;
  EXPECT_LT(check_rq_identity(rc, qc, fc.sign, 64), Real("1e-4"));
}

TEST(RQIdentity, SmallestCaseIsExact) {
  const auto lambda = constant_lambda(4, 1);
  const auto r = build_r(lambda, 4, 2);
  const auto q = build_pq(lambda, 4, 2).q;
  EXPECT_LT(check_rq_identity(r, q, 1, 16), Real("1e-14"));
}

TEST(RQIdentity, OddSignAndOddDegree) {
  // Lambda(j) = sign Lambda(k - j) is all the identity needs.
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unit(0.1, 2.0);
  for (int n : {1, 2, 3, 4}) {
    for (int sign : {1, -1}) {
      const int k = 10;
      LambdaMap lambda;
      for (int s = k / 2; s <= k - 1; ++s) lambda[s] = Complex(Real(unit(rng)));
      if (sign == -1) lambda[k / 2] = Complex(0);
      for (int s = 1; s < k / 2; ++s) lambda[s] = Complex(Real(sign)) * lambda[k - s];
      const auto r = build_r(lambda, k, n);
      const auto q = build_pq(lambda, k, n).q;
      EXPECT_LT(check_rq_identity(r, q, sign, 32), Real("1e-40")) << n << " " << sign;
    }
  }
}

TEST(RQIdentity, ResidualTracksPerturbation) {
  const auto f = fixture("qsqrt5_k8_lambda.json");
  LambdaMap lambda = lambda_map(f);
  lambda[2] = lambda[2] * Complex(Real("1.000001"));
  const Real residual =
      check_rq_identity(build_r(lambda, 8, 2), build_pq(lambda, 8, 2).q, f.sign, 64);
  EXPECT_GT(residual, Real("1e-8"));
  EXPECT_LT(residual, Real("1e-5"));
}

TEST(SplitParity, PartsReassemble) {
  const auto r = from_fixture("qsqrt5_k8_lambda.json");
  const auto parts = split_parity(r);
  for (int m = 0; m <= r.degree(); ++m) {
    EXPECT_EQ(parts.even.coeffs[m] + parts.odd.coeffs[m], r.coeffs[m]);
    EXPECT_EQ(m % 2 == 0 ? parts.odd.coeffs[m] : parts.even.coeffs[m], Complex(0));
  }
  const Complex x(Real("0.3"), Real("0.7"));
  EXPECT_LT(abs(parts.even(-x) - parts.even(x)), Real("1e-40"));
  EXPECT_LT(abs(parts.odd(-x) + parts.odd(x)), Real("1e-40"));
}

TEST(SplitParity, MatchesPrintedDecomposition) {
  // The odd part is proportional to X^5 + (4/5) X^3 + X and the even part
  // to X^6 + (361/300)(X^4 + X^2) + 1.
  const auto parts = split_parity(from_fixture("qsqrt5_k8_lambda.json"));
  EXPECT_NEAR(static_cast<double>(parts.odd.coeffs[3].real() / parts.odd.coeffs[1].real()), 0.8, 1e-5);
  EXPECT_NEAR(static_cast<double>(parts.even.coeffs[2].real() / parts.even.coeffs[0].real()),
              361.0 / 300.0, 1e-5);
}

TEST(SplitParity, ZeroPolynomial) {
  PeriodPolynomial zero;
  zero.coeffs.assign(5, Complex(0));
  const auto parts = split_parity(zero);
  for (const auto& c : parts.even.coeffs) EXPECT_EQ(c, Complex(0));
  for (const auto& c : parts.odd.coeffs) EXPECT_EQ(c, Complex(0));
}

TEST(PolynomialDocument, RoundTrip) {
  const auto r = from_fixture("cubic49_k6_lambda.json");
  const auto back = parse_polynomial(serialize(r));
  EXPECT_EQ(back.kind, r.kind);
  EXPECT_EQ(back.weight, r.weight);
  EXPECT_EQ(back.degree_n, r.degree_n);
  EXPECT_EQ(back.tolerance, r.tolerance);
  ASSERT_EQ(back.coeffs.size(), r.coeffs.size());
  for (std::size_t m = 0; m < r.coeffs.size(); ++m) EXPECT_EQ(back.coeffs[m], r.coeffs[m]);
  EXPECT_EQ(serialize(back), serialize(r));
}

TEST(PolynomialDocument, RejectsBadInput) {
  EXPECT_THROW(parse_polynomial("{"), MalformedDocument);
  EXPECT_THROW(parse_polynomial(R"({"kind":"z","weight":4,"degree_n":1,"coefficients":[]})"),
               MalformedDocument);
  EXPECT_THROW(parse_polynomial(R"({"kind":"r","weight":4,"degree_n":1,"coefficients":[]})"),
               MalformedDocument);
}
