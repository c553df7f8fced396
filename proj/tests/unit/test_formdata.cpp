#include "pprh/errors.hpp"
#include "pprh/formdata.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace pprh;
using namespace pprh::formdata;
using boost::multiprecision::cpp_int;

namespace {

std::string data_file(const std::string& name) { return read_file(std::string(PPRH_DATA_DIR) + "/" + name); }

EigenformData table1() { return parse_eigenform(data_file("qsqrt5_k22_table1.json"), DocumentFormat::Json); }

Real exact(const cpp_int& x) { return Real(x.str()); }

// tau(1..count) by multiplying out q prod (1 - q^j)^24 one factor at a time.
std::vector<cpp_int> tau_by_direct_product(int count) {
  std::vector<cpp_int> series(count, 0);  // coefficients of q^0..q^(count-1) of the product
  series[0] = 1;
  for (int j = 1; j < count; ++j) {
    for (int rep = 0; rep < 24; ++rep) {
      for (int i = count - 1; i >= j; --i) series[i] -= series[i - j];
    }
  }
  return series;  // tau(m) = series[m - 1]
}

}  // namespace

TEST(ParseEigenform, TableOneCoefficients) {
  const auto data = table1();
  EXPECT_EQ(data.weight, 22);
  EXPECT_EQ(data.field.degree, 2);
  EXPECT_EQ(data.coefficient(4).real(), Real(-4111360));
  EXPECT_EQ(data.coefficient(11).real(), Real("-94724929188"));
  EXPECT_EQ(data.effective_conductor_scale(), Real(5));
}

TEST(ParseEigenform, MinimalNormalizationOnlyDocument) {
  const auto data = parse_eigenform(
      R"({"degree":1,"discriminant":1,"weight":4,"sign":1,"coefficients":[{"norm":1,"value":"1"}]})",
      DocumentFormat::Json);
  EXPECT_EQ(data.coefficients.size(), 1u);
  EXPECT_EQ(data.effective_conductor_scale(), Real(1));
}

TEST(ParseEigenform, TableTwoFirstEmbedding) {
  const auto data = parse_eigenform(data_file("cubic49_k8_table2.json"), DocumentFormat::Json);
  // alpha: larger root of x^2 + (3/392) x - 1/21952 by the quadratic formula
  const Real b = Real(3) / 392, c = Real(-1) / 21952;
  const Real alpha = (-b + sqrt(b * b - 4 * c)) / 2;
  EXPECT_LT(abs(data.coefficient(7).real() - 21952 * alpha), Real("1e-35"));
  EXPECT_LT(abs(data.coefficient(8).real() - (-43904 * alpha - 152)), Real("1e-35"));
  EXPECT_EQ(data.prime_data.size(), 3u);
}

TEST(ParseEigenform, RejectsBadDocuments) {
  const auto doc = [](const std::string& body) { return parse_eigenform(body, DocumentFormat::Json); };
  EXPECT_THROW(doc("{not json"), MalformedDocument);
  EXPECT_THROW(doc(R"({"degree":1,"discriminant":1,"weight":4,"sign":1})"), MalformedDocument);
  EXPECT_THROW(doc(R"({"degree":1,"discriminant":1,"weight":4,"sign":1,"coefficients":[{"norm":1,"value":"x1"}]})"),
               MalformedDocument);
  EXPECT_THROW(doc(R"({"degree":1,"discriminant":1,"weight":5,"sign":1,"coefficients":[{"norm":1,"value":1}]})"),
               UnsupportedWeight);
  EXPECT_THROW(doc(R"({"degree":1,"discriminant":1,"weight":2,"sign":1,"coefficients":[{"norm":1,"value":1}]})"),
               UnsupportedWeight);
  EXPECT_THROW(doc(R"({"degree":1,"discriminant":1,"weight":4,"sign":1,"coefficients":[{"norm":2,"value":1}]})"),
               InvariantViolation);
  EXPECT_THROW(doc(R"({"degree":1,"discriminant":1,"weight":4,"sign":1,"coefficients":[{"norm":0,"value":0},{"norm":1,"value":1}]})"),
               InvariantViolation);
  EXPECT_THROW(doc(R"({"degree":2,"discriminant":3,"weight":4,"sign":1,"coefficients":[{"norm":1,"value":1}]})"),
               InvariantViolation);
  EXPECT_THROW(doc(R"({"degree":1,"discriminant":5,"weight":4,"sign":1,"coefficients":[{"norm":1,"value":1}]})"),
               InvariantViolation);
  EXPECT_THROW(doc(R"({"degree":1,"discriminant":1,"weight":4,"sign":0,"coefficients":[{"norm":1,"value":1}]})"),
               InvariantViolation);
}

TEST(ParseEigenform, TableFormat) {
  const std::string text =
      "# weight 4 toy\n"
      "label toy form\n"
      "degree 1\ndiscriminant 1\nweight 4\nsign -1\n"
      "coefficient 1 1\ncoefficient 2 0.5 -0.25\ncoefficient 2 0.5\n";
  const auto data = parse_eigenform(text, DocumentFormat::Table);
  EXPECT_EQ(data.field.label, "toy form");
  EXPECT_EQ(data.sign, -1);
  EXPECT_EQ(data.coefficient(2), Complex(Real(1), Real(-0.25)));
  EXPECT_THROW(parse_eigenform("degree 1\nweight 4\n", DocumentFormat::Table), MalformedDocument);
  EXPECT_THROW(parse_eigenform("bogus 1\n", DocumentFormat::Table), MalformedDocument);
}

TEST(ParseEigenform, AggregatesRepeatedNorms) {
  const auto data = parse_eigenform(
      R"({"degree":2,"discriminant":5,"weight":4,"sign":1,"coefficients":[{"norm":1,"value":1},{"norm":11,"value":"3"},{"norm":11,"value":"4.5"}]})",
      DocumentFormat::Json);
  EXPECT_EQ(data.coefficient(11).real(), Real(7.5));
}

TEST(SerializeEigenform, RoundTripIsIdentity) {
  auto data = extend_hecke(table1(), {60, true});
  data.conductor_scale = Real("5.000000000000000000000000000000000000000001");
  data.coefficients[3] = Complex(Real("0.1"), Real("-2.5e-30"));
  data.splitting.push_back({7, {2}});
  for (auto format : {DocumentFormat::Json, DocumentFormat::Table}) {
    const std::string text = serialize(data, format);
    const auto back = parse_eigenform(text, format);
    EXPECT_EQ(back.coefficients, data.coefficients);
    EXPECT_EQ(back.prime_data, data.prime_data);
    EXPECT_EQ(back.gap_bounds, data.gap_bounds);
    EXPECT_EQ(back.missing_primes, data.missing_primes);
    EXPECT_EQ(back.splitting, data.splitting);
    EXPECT_EQ(back.complete_through, data.complete_through);
    EXPECT_EQ(back.conductor_scale, data.conductor_scale);
    EXPECT_EQ(serialize(back, format), text);
  }
}

TEST(Splitting, QuadraticAndCubicRules) {
  const auto q5 = table1();
  EXPECT_EQ(*residue_degrees(q5, 2), std::vector<int>({2}));
  EXPECT_EQ(*residue_degrees(q5, 5), std::vector<int>({1}));
  EXPECT_EQ(*residue_degrees(q5, 11), std::vector<int>({1, 1}));
  EXPECT_EQ(*residue_degrees(q5, 19), std::vector<int>({1, 1}));
  EXPECT_EQ(*residue_degrees(q5, 7), std::vector<int>({2}));
  const auto cubic = parse_eigenform(data_file("cubic49_k8_table2.json"), DocumentFormat::Json);
  EXPECT_EQ(*residue_degrees(cubic, 7), std::vector<int>({1}));
  EXPECT_EQ(*residue_degrees(cubic, 13), std::vector<int>({1, 1, 1}));
  EXPECT_EQ(*residue_degrees(cubic, 2), std::vector<int>({3}));
  EXPECT_EQ(kronecker_symbol(33, 2), 1);
  EXPECT_EQ(kronecker_symbol(8, 2), 0);
  EXPECT_EQ(kronecker_symbol(5, 3), -1);
}

TEST(ExtendHecke, TableOneSixteenFromPrimePowerRecursion) {
  const auto ext = extend_hecke(table1(), {40, true});
  const cpp_int c4 = -4111360;
  const cpp_int want = c4 * c4 - boost::multiprecision::pow(cpp_int(4), 21);
  EXPECT_EQ(want, cpp_int("12505234538496"));
  EXPECT_EQ(ext.coefficient(16).real(), exact(want));
}

TEST(ExtendHecke, TableOneCoprimeProduct) {
  const auto ext = extend_hecke(table1(), {40, true});
  EXPECT_EQ(ext.coefficient(20).real(), exact(cpp_int(-4111360) * cpp_int(21640950)));
  EXPECT_EQ(ext.coefficient(36).real(), exact(cpp_int(-4111360) * cpp_int("-4319930070")));
  EXPECT_FALSE(ext.gap_bounds.count(20));
}

TEST(ExtendHecke, TableOneGapsAreRecordedNotZeroed) {
  const auto ext = extend_hecke(table1(), {48, true});
  // second norm-11 prime and both norm-19 and norm-29, -31 primes are unknown
  ASSERT_TRUE(ext.gap_bounds.count(11));
  const Real ram = 2 * pow(Real(11), Real(21) / 2);
  EXPECT_LT(abs(ext.gap_bounds.at(11) - ram) / ram, Real("1e-40"));
  EXPECT_EQ(ext.coefficient(11).real(), Real("-94724929188"));
  const Real nineteen = 4 * pow(Real(19), Real(21) / 2);
  EXPECT_LT(abs(ext.gap_bounds.at(19) - nineteen) / nineteen, Real("1e-40"));
  EXPECT_EQ(ext.coefficient(19), Complex(0));
  // 7 is inert: norm 49 beyond the range, so norm 7 is simply not attainable
  EXPECT_FALSE(ext.coefficients.count(7));
  EXPECT_FALSE(ext.gap_bounds.count(7));
  EXPECT_TRUE(std::find(ext.missing_primes.begin(), ext.missing_primes.end(), PrimeKey{11, 1}) !=
              ext.missing_primes.end());
  // c(44) = c(4) c(11) with the norm-11 gap scaled by |c(4)|
  EXPECT_LT(abs(ext.gap_bounds.at(44) - 4111360 * ram) / ram, Real("1e-30"));
}

TEST(ExtendHecke, MissingPrimeWithoutAllowGaps) {
  EXPECT_THROW(extend_hecke(table1(), {40, false}), MissingPrime);
  EXPECT_NO_THROW(extend_hecke(table1(), {10, false}));
}

TEST(ExtendHecke, AmbiguousSplitClass) {
  const auto data = parse_eigenform(
      R"({"degree":2,"discriminant":5,"weight":4,"sign":1,"coefficients":[{"norm":1,"value":1},{"norm":11,"value":"3"}]})",
      DocumentFormat::Json);
  EXPECT_THROW(extend_hecke(data, {11, true}), AmbiguousSplitClass);
}

TEST(ExtendHecke, ZeroPrimeCoefficientsFollowPureRecursion) {
  const auto data = parse_eigenform(
      R"({"degree":1,"discriminant":1,"weight":6,"sign":1,"coefficients":[{"norm":1,"value":1}],
          "primes":[{"norm":2,"value":0},{"norm":3,"value":0},{"norm":5,"value":0},{"norm":7,"value":0}]})",
      DocumentFormat::Json);
  const auto ext = extend_hecke(data, {10, false});
  EXPECT_EQ(ext.coefficient(4).real(), Real(-32));   // -2^5
  EXPECT_EQ(ext.coefficient(9).real(), Real(-243));  // -3^5
  EXPECT_EQ(ext.coefficient(8).real(), Real(0));
  EXPECT_EQ(ext.coefficient(6).real(), Real(0));
}

TEST(ExtendHecke, InconsistentListedCompositeIsRejected) {
  const auto data = parse_eigenform(
      R"({"degree":1,"discriminant":1,"weight":4,"sign":1,
          "coefficients":[{"norm":1,"value":1},{"norm":2,"value":3},{"norm":3,"value":1},{"norm":4,"value":100}]})",
      DocumentFormat::Json);
  EXPECT_THROW(extend_hecke(data, {4, false}), InvariantViolation);
}

TEST(ExtendHecke, CubicTableTwoPrimesAndInertTwo) {
  const auto data = parse_eigenform(data_file("cubic49_k8_table2.json"), DocumentFormat::Json);
  const auto ext = extend_hecke(data, {13, true});
  // norm 8 is the inert prime above 2; 2 and 4 are not attainable
  EXPECT_FALSE(ext.coefficients.count(2));
  EXPECT_FALSE(ext.coefficients.count(4));
  EXPECT_LT(abs(ext.coefficient(8) - data.coefficient(8)), Real("1e-35"));
  EXPECT_LT(abs(ext.coefficient(13) - data.coefficient(13)), Real("1e-35"));
  EXPECT_TRUE(ext.gap_bounds.empty());
}

// Property: on synthetic degree-1 data the extension is multiplicative on
// coprime norms and satisfies the prime-power recursion.
TEST(ExtendHecke, SyntheticMultiplicativity) {
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<int> pick(-50, 50);
  for (int trial = 0; trial < 5; ++trial) {
    EigenformData data;
    data.field = FieldData{"Q", 1, 1, {}};
    data.weight = 4;
    data.coefficients[1] = Complex(1);
    for (long long p : primes_up_to(60)) data.prime_data[{p, 0}] = Complex(Real(pick(rng)));
    const auto ext = extend_hecke(data, {60, false});
    for (long long a = 1; a <= 60; ++a) {
      for (long long b = 1; a * b <= 60; ++b) {
        if (std::gcd(a, b) != 1) continue;
        EXPECT_EQ(ext.coefficient(a * b), ext.coefficient(a) * ext.coefficient(b)) << a << " " << b;
      }
    }
    for (long long p : {2LL, 3LL}) {
      for (long long q = p; q * p * p <= 60; q *= p) {
        const Complex lhs = ext.coefficient(q * p * p);
        const Complex rhs = ext.coefficient(p) * ext.coefficient(q * p) - Complex(Real(p * p * p)) * ext.coefficient(q);
        EXPECT_EQ(lhs, rhs);
      }
    }
  }
}

// Property: a split prime with two ideals aggregates as the ideal sum.
TEST(ExtendHecke, SplitPrimeIdealSums) {
  const auto data = parse_eigenform(
      R"({"degree":2,"discriminant":5,"weight":4,"sign":1,"coefficients":[{"norm":1,"value":1}],
          "primes":[{"norm":4,"index":0,"value":"-3"},{"norm":5,"index":0,"value":"2"},
                    {"norm":9,"index":0,"value":"7"},
                    {"norm":11,"index":0,"value":"5"},{"norm":11,"index":1,"value":"-8"}]})",
      DocumentFormat::Json);
  const auto ext = extend_hecke(data, {121, true});
  EXPECT_EQ(ext.coefficient(11).real(), Real(-3));
  // norm 121: P^2 + PP' + P'^2 with a(P^2) = a(P)^2 - 11^3
  const Real a = 5, b = -8, n3 = 1331;
  EXPECT_EQ(ext.coefficient(121).real(), (a * a - n3) + a * b + (b * b - n3));
  EXPECT_EQ(ext.coefficient(44).real(), Real(-3) * Real(-3));
}

TEST(TauSeries, LeadingCoefficients) {
  EXPECT_EQ(tau_series(1).coefficient(1).real(), Real(1));
  const auto two = tau_series(2);
  EXPECT_EQ(two.coefficient(2).real(), Real(-24));
  const auto six = tau_series(6);
  EXPECT_EQ(six.coefficient(6).real(), six.coefficient(2).real() * six.coefficient(3).real());
  EXPECT_THROW(tau_series(0), DomainError);
}

TEST(TauSeries, MatchesDirectProductExpansion) {
  const int count = 120;
  const auto oracle = tau_by_direct_product(count);
  const auto data = tau_series(count);
  for (int m = 1; m <= count; ++m) EXPECT_EQ(data.coefficient(m).real(), exact(oracle[m - 1])) << m;
  EXPECT_EQ(oracle[9], cpp_int(-115920));  // tau(10)
}

TEST(TauSeries, RamanujanBoundAndHeckeConsistency) {
  const auto data = tau_series(1000);
  for (long long p : primes_up_to(1000)) {
    EXPECT_LE(abs(data.coefficient(p).real()), 2 * pow(Real(p), Real(11) / 2)) << p;
  }
  const auto ext = extend_hecke(data, {1000, false});
  EXPECT_EQ(ext.coefficient(997), data.coefficient(997));
  EXPECT_EQ(ext.coefficient(960), data.coefficient(960));
}

TEST(LambdaFixtureDoc, ParsesAndChecksSymmetry) {
  const auto fixture = parse_lambda_fixture(data_file("qsqrt5_k8_lambda.json"));
  EXPECT_EQ(fixture.weight, 8);
  EXPECT_EQ(fixture.values.size(), 7u);
  EXPECT_EQ(fixture.values.at(2), fixture.values.at(6));
  EXPECT_TRUE(fixture.warnings().empty());
  EXPECT_THROW(parse_lambda_fixture(R"({"weight":4,"degree":1,"sign":1,"lambda":[{"s":1,"re":"1"},{"s":3,"re":"2"}]})"),
               InvariantViolation);
  EXPECT_NO_THROW(parse_lambda_fixture(R"({"weight":4,"degree":1,"sign":-1,"lambda":[{"s":1,"re":"1"},{"s":3,"re":"-1"}]})"));
  const auto negative =
      parse_lambda_fixture(R"({"weight":4,"degree":1,"sign":-1,"lambda":[{"s":1,"re":"1"},{"s":2,"re":"0"},{"s":3,"re":"-1"}]})");
  EXPECT_EQ(negative.warnings().size(), 1u);
}

TEST(LambdaFixtureDoc, RoundTrip) {
  const auto fixture = parse_lambda_fixture(data_file("cubic49_k6_lambda.json"));
  const auto back = parse_lambda_fixture(serialize(fixture));
  EXPECT_EQ(back.values, fixture.values);
  EXPECT_EQ(back.tolerance, fixture.tolerance);
}
