#include "pprh/errors.hpp"
#include "pprh/formdata.hpp"
#include "pprh/periodpoly.hpp"
#include "pprh/rootlab.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

using namespace pprh;
using namespace pprh::rootlab;
using periodpoly::LambdaMap;
using Oracle = boost::multiprecision::cpp_bin_float_50;
using cd = std::complex<double>;

namespace {

formdata::LambdaFixture fixture(const std::string& name) {
  return formdata::parse_lambda_fixture(formdata::read_file(std::string(PPRH_DATA_DIR) + "/" + name));
}

std::vector<Complex> real_coeffs(std::initializer_list<double> values) {
  std::vector<Complex> out;
  for (double v : values) out.emplace_back(Real(v));
  return out;
}

std::vector<Complex> multiply(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out(a.size() + b.size() - 1, Complex(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// T_n(m) from Boost special functions, as an independent oracle.
Oracle bound_oracle(int n, int m, std::optional<double> disc) {
  using boost::math::tgamma;
  using boost::math::zeta;
  const Oracle two_pi = 2 * boost::math::constants::pi<Oracle>();
  const Oracle nf = boost::math::factorial<Oracle>(static_cast<unsigned>(n));
  const Oracle base = disc ? Oracle(pow(two_pi, n) / Oracle(*disc))
                           : Oracle(pow(two_pi, n) * nf * nf / pow(Oracle(n), 2 * n));
  Oracle total = Oracle(0.5) * pow(tgamma(Oracle(m + 1)), n - 2) / pow(tgamma(Oracle(2 * m + 1)), n - 1) *
                 pow(base, m) * pow(Oracle(11) / 5, n);
  for (int j = 1; j <= m - 1; ++j) {
    total += pow(base, j) / tgamma(Oracle(j + 1)) *
             pow(tgamma(Oracle(2 * m + 1 - j)) / tgamma(Oracle(2 * m + 1)), n - 1) *
             pow(zeta(Oracle(m - j) + Oracle(0.5)) / zeta(Oracle(m) + Oracle(0.5)), 2 * n);
  }
  return total;
}

double to_d(const Real& x) { return static_cast<double>(x); }

LambdaMap symmetric_lambda(int k, int sign, std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.05, 3.0);
  LambdaMap lambda;
  for (int s = k / 2; s <= k - 1; ++s) lambda[s] = Complex(Real(unit(rng)));
  if (sign == -1) lambda[k / 2] = Complex(0);
  for (int s = 1; s < k / 2; ++s) lambda[s] = Complex(Real(sign)) * lambda[k - s];
  return lambda;
}

}  // namespace

TEST(FindRoots, QuadraticClosedForm) {
  const auto report = find_roots(real_coeffs({1, 0, 1}), Precision(40));
  ASSERT_EQ(report.roots.size(), 2u);
  for (const auto& z : report.roots) {
    EXPECT_LT(abs(z.real()), Real("1e-40"));
    EXPECT_LT(abs(abs(z.imag()) - 1), Real("1e-40"));
  }
  for (double d : report.moduli_dev) EXPECT_LT(d, 1e-40);
  EXPECT_NEAR(report.angles[0], std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(report.angles[1], 3 * std::numbers::pi / 2, 1e-15);
  // Angles 1/4 and 3/4 of a turn are the optimal two-point configuration.
  EXPECT_DOUBLE_EQ(report.discrepancy, 0.25);
  EXPECT_TRUE(circle_verdict(report, 0.0).on_circle);
}

TEST(FindRoots, QuadraticFixtureRootsOnCircle) {
  const auto f = fixture("qsqrt5_k8_lambda.json");
  const auto r = periodpoly::build_r(periodpoly::lambda_map(f), 8, 2);
  const auto report = find_roots(r, Precision(40));
  ASSERT_EQ(report.roots.size(), 6u);
  for (double d : report.moduli_dev) EXPECT_LT(d, 1e-6);
  EXPECT_TRUE(report.all_on_circle);
}

TEST(FindRoots, PlantedOffCircleRootIsDetected) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  std::vector<Complex> p = real_coeffs({1.0, -(1.1 + 1 / 1.1), 1.0});  // (X - 1.1)(X - 1/1.1)
  for (int i = 0; i < 3; ++i) {
    const double a = angle(rng);  // conjugate pair on the circle
    p = multiply(p, real_coeffs({1.0, -2 * std::cos(a), 1.0}));
  }
  const auto report = find_roots(p, Precision(40));
  EXPECT_EQ(report.roots.size(), 8u);
  EXPECT_FALSE(report.all_on_circle);
  EXPECT_FALSE(circle_verdict(report, 1e-8).on_circle);
  int off = 0;
  for (bool on : report.on_circle) off += on ? 0 : 1;
  EXPECT_EQ(off, 2);
}

TEST(FindRoots, ResidualInvariant) {
  std::mt19937 rng(3);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Complex> p;
    for (int i = 0; i <= 15; ++i) p.emplace_back(Real(gauss(rng)), Real(gauss(rng)));
    const Precision prec(40);
    const auto report = find_roots(p, prec);
    for (std::size_t i = 0; i < report.roots.size(); ++i) {
      Real scale = 0;
      const Real grow = std::max(Real(1), Real(abs(report.roots[i])));
      for (std::size_t j = 0; j < p.size(); ++j) scale += abs(p[j]) * pow(grow, static_cast<int>(j));
      EXPECT_LE(report.residuals[i], to_d(scale) * 1e-20);
    }
  }
}

TEST(FindRoots, DoubleRootsMatchCompanionEigenvalues) {
  std::mt19937 rng(5);
  std::normal_distribution<double> gauss;
  std::vector<cd> p;
  for (int i = 0; i <= 12; ++i) p.emplace_back(gauss(rng), gauss(rng));
  const int d = 12;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) companion(i, d - 1) = -p[static_cast<std::size_t>(i)] / p.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  auto roots = find_roots_double(p);
  ASSERT_EQ(roots.size(), 12u);
  for (int i = 0; i < d; ++i) {
    const cd e = solver.eigenvalues()(i);
    double nearest = 1e300;
    for (const cd& r : roots) nearest = std::min(nearest, std::abs(r - e));
    EXPECT_LT(nearest, 1e-9);
  }
}

TEST(FindRoots, ZeroRootsAreDeflated) {
  const auto roots = find_roots_double({cd(0), cd(0), cd(-1), cd(1)});  // X^2 (X - 1)
  ASSERT_EQ(roots.size(), 3u);
  int zeros = 0;
  for (const cd& r : roots) zeros += std::abs(r) == 0 ? 1 : 0;
  EXPECT_EQ(zeros, 2);
}

TEST(FindRoots, DegenerateLeadingIsRejected) {
  EXPECT_THROW(find_roots(real_coeffs({1, 2, 0}), Precision(30)), DegenerateLeading);
  EXPECT_THROW(find_roots(real_coeffs({1}), Precision(30)), DegenerateLeading);
}

TEST(FindRoots, SelfInversiveClosureOnRandomPolynomials) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> half(1, 11);
  std::uniform_int_distribution<int> degree(1, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 * half(rng) + 2;
    const int n = degree(rng);
    const int sign = coin(rng) ? 1 : -1;
    const auto lambda = symmetric_lambda(k, sign, rng);
    const auto r = periodpoly::build_r(lambda, k, n);
    const auto report = find_roots(r, Precision(30));
    for (const Complex& z : report.roots) {
      const Complex mirror = Complex(1) / Complex(z.real(), -z.imag());
      Real nearest = 1e300;
      for (const Complex& w : report.roots) nearest = std::min(nearest, Real(abs(w - mirror)));
      EXPECT_LT(nearest, Real("1e-8") * std::max(Real(1), Real(abs(mirror))))
          << "k=" << k << " n=" << n << " sign=" << sign;
    }
  }
}

TEST(CircleVerdict, MarginSign) {
  RootReport report;
  report.moduli_dev = {1e-9, 3e-9};
  const auto yes = circle_verdict(report, 1e-8);
  EXPECT_TRUE(yes.on_circle);
  EXPECT_NEAR(yes.margin, 7e-9, 1e-20);
  EXPECT_FALSE(circle_verdict(report, 2e-9).on_circle);
}

TEST(CircleVerdict, FixturesFromTheExamples) {
  for (const char* name : {"qsqrt33_k8_lambda.json", "cubic49_k6_lambda.json"}) {
    const auto f = fixture(name);
    const auto r = periodpoly::build_r(periodpoly::lambda_map(f), f.weight, f.degree);
    const auto report = find_roots(r, Precision(30), 1e-4);
    EXPECT_TRUE(circle_verdict(report, 1e-4).on_circle) << name;
  }
}

TEST(Discrepancy, Configurations) {
  const int n = 7;
  std::vector<double> spaced;
  for (int i = 0; i < n; ++i) spaced.push_back((i + 0.5) / n);
  EXPECT_NEAR(star_discrepancy(spaced), 1.0 / (2 * n), 1e-15);
  EXPECT_DOUBLE_EQ(star_discrepancy(std::vector<double>(5, 0.0)), 1.0);
  EXPECT_THROW(star_discrepancy({}), DomainError);
}

TEST(Rouche, UnitValuesPeakAtZero) {
  LambdaMap lambda;
  for (int s = 1; s <= 5; ++s) lambda[s] = Complex(Real(1));
  const auto q = periodpoly::build_pq(lambda, 6, 2).q;
  const auto margin = rouche_margin(q);
  EXPECT_NEAR(margin.max_value, 7.0, 1e-12);
  EXPECT_NEAR(std::min(margin.argmax, 2 * std::numbers::pi - margin.argmax), 0.0, 1e-6);
  EXPECT_FALSE(margin.certifies);
}

TEST(Rouche, MarginImpliesRootsOnCircleForEveryFixture) {
  for (const char* name : {"qsqrt5_k8_lambda.json", "qsqrt33_k8_lambda.json", "cubic49_k6_lambda.json"}) {
    const auto f = fixture(name);
    const auto lambda = periodpoly::lambda_map(f);
    const auto q = periodpoly::build_pq(lambda, f.weight, f.degree).q;
    const auto margin = rouche_margin(q);
    const auto report = find_roots(periodpoly::build_r(lambda, f.weight, f.degree), Precision(30), 1e-4);
    if (margin.max_value < 1 - 10 * to_d(f.tolerance)) EXPECT_TRUE(report.all_on_circle) << name;
  }
}

TEST(Rouche, CubicFixtureCertifies) {
  const auto f = fixture("cubic49_k6_lambda.json");
  const auto q = periodpoly::build_pq(periodpoly::lambda_map(f), 6, 3).q;
  EXPECT_TRUE(rouche_margin(q).certifies);
}

TEST(Rouche, GridRefinementNeverLowersTheGridMaximum) {
  const auto f = fixture("qsqrt5_k8_lambda.json");
  const auto q = periodpoly::build_pq(periodpoly::lambda_map(f), 8, 2).q;
  const auto coarse = rouche_margin(q, 16);
  const auto fine = rouche_margin(q, 4096);
  EXPECT_NEAR(coarse.max_value, fine.max_value, 1e-9);
}

TEST(AnalyticBound, ThresholdsForDegreesTwoThreeFive) {
  EXPECT_TRUE(analytic_bound(2, 8).verdict);
  EXPECT_FALSE(analytic_bound(2, 7).verdict);
  EXPECT_TRUE(analytic_bound(3, 5).verdict);
  EXPECT_FALSE(analytic_bound(3, 4).verdict);
  EXPECT_TRUE(analytic_bound(5, 3).verdict);
}

TEST(AnalyticBound, MatchesIndependentOracle) {
  for (int n : {2, 3, 4, 5}) {
    for (int m : {1, 2, 5, 8, 13}) {
      const Oracle expected = bound_oracle(n, m, std::nullopt);
      const Oracle got(to_string(analytic_bound(n, m).value));
      EXPECT_LT(abs(got - expected) / expected, Oracle("1e-15")) << n << " " << m;
    }
  }
  const Oracle refined = bound_oracle(2, 5, 12.0);
  EXPECT_LT(abs(Oracle(to_string(analytic_bound(2, 5, Real(12)).value)) - refined) / refined, Oracle("1e-15"));
}

TEST(AnalyticBound, EmptySumAtMEqualsOne) {
  const auto report = analytic_bound(2, 1);
  EXPECT_TRUE(report.per_term.empty());
  const Real base = 4 * pi() * pi() * 4 / 16;
  const Real expected = base / 4 * Real(121) / 25;
  EXPECT_LT(abs(report.value - expected) / expected, Real("1e-18"));
}

TEST(AnalyticBound, TermsSumToTotal) {
  const auto report = analytic_bound(3, 9);
  Real sum = report.first_term;
  for (const auto& t : report.per_term) sum += t.value;
  EXPECT_LT(abs(sum - report.value) / report.value, Real("1e-12"));
  EXPECT_EQ(report.per_term.size(), 8u);
}

TEST(AnalyticBound, MinkowskiDiscriminantReproducesDefault) {
  for (int n : {2, 3, 4}) {
    const auto d = analytic_bound(n, 6);
    const auto r = analytic_bound(n, 6, minkowski_discriminant_bound(n));
    EXPECT_LT(abs(d.value - r.value) / d.value, Real("1e-12"));
    EXPECT_TRUE(d.minkowski_default);
    EXPECT_FALSE(r.minkowski_default);
  }
}

TEST(AnalyticBound, RejectsOutOfDomain) {
  EXPECT_THROW(analytic_bound(1, 3), DomainError);
  EXPECT_THROW(analytic_bound(2, 0), DomainError);
  EXPECT_THROW(analytic_bound(2, 3, Real(-5)), DomainError);
}

TEST(ThresholdTable, QuadraticRows) {
  const std::vector<long long> discs{5, 8, 12, 13, 17, 21, 24, 29, 33, 35};
  const std::vector<int> expected{7, 6, 5, 5, 4, 4, 4, 4, 4, 3};
  const auto rows = bound_threshold_table(2, discs);
  ASSERT_EQ(rows.size(), discs.size());
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].min_m, expected[i]) << discs[i];
}

TEST(ThresholdTable, CubicAndQuarticRows) {
  EXPECT_EQ(bound_threshold_table(3, {84}).front().min_m, 3);
  EXPECT_EQ(bound_threshold_table(4, {209}).front().min_m, 3);
  EXPECT_LE(bound_threshold_table(4, {725}).front().min_m, 3);
}

TEST(Monotonicity, HoldsOnTheProvenRegion) {
  const auto report = check_bound_monotonicity({2, 3}, {8, 12});
  EXPECT_TRUE(report.holds);
  EXPECT_EQ(report.cells, 10);
  EXPECT_LE(analytic_bound(2, 9).value, analytic_bound(2, 8).value);
  EXPECT_LT(analytic_bound(5, 3).value, 1);
}

TEST(Monotonicity, RejectsOutOfRange) {
  EXPECT_THROW(check_bound_monotonicity({1, 3}, {1, 5}), DomainError);
  EXPECT_THROW(check_bound_monotonicity({2, 3}, {1, 25}), DomainError);
}

TEST(SmallWeight, WeightFourPlus) {
  const LambdaMap lambda{{1, Complex(Real(1))}, {2, Complex(Real("0.5"))}, {3, Complex(Real(1))}};
  const auto cert = small_weight_certificate(lambda, 4, 1);
  EXPECT_TRUE(cert.passed);
  EXPECT_EQ(cert.expected_roots, 2);
  EXPECT_EQ(cert.observed_roots, 2);
}

TEST(SmallWeight, WeightFourMinusHasRootsAtPlusMinusOne) {
  const LambdaMap lambda{{1, Complex(Real(-2))}, {2, Complex(Real(0))}, {3, Complex(Real(2))}};
  const auto cert = small_weight_certificate(lambda, 4, -1);
  EXPECT_TRUE(cert.passed);
  EXPECT_EQ(cert.observed_roots, 2);
}

TEST(SmallWeight, WeightSixMinus) {
  const LambdaMap lambda{{3, Complex(Real(0))}, {4, Complex(Real("0.4"))}, {5, Complex(Real(1))}};
  const auto cert = small_weight_certificate(lambda, 6, -1);
  EXPECT_TRUE(cert.passed);
  EXPECT_EQ(cert.expected_roots, 4);
  EXPECT_EQ(cert.observed_roots, 4);
}

TEST(SmallWeight, WeightSixPlusEqualityIsABoundaryFailure) {
  const LambdaMap lambda{{3, Complex(Real(1))}, {4, Complex(Real(1))}, {5, Complex(Real(1))}};
  const auto cert = small_weight_certificate(lambda, 6, 1);
  EXPECT_FALSE(cert.passed);
  ASSERT_EQ(cert.conditions.size(), 2u);
  EXPECT_FALSE(cert.conditions[0].passed);
  EXPECT_EQ(cert.conditions[0].lhs, cert.conditions[0].rhs);
  EXPECT_TRUE(cert.conditions[1].passed);
}

TEST(SmallWeight, WeightSixPlusGenericPass) {
  const LambdaMap lambda{{3, Complex(Real(1))}, {4, Complex(Real("1.2"))}, {5, Complex(Real(3))}};
  const auto cert = small_weight_certificate(lambda, 6, 1);
  EXPECT_TRUE(cert.passed);
  EXPECT_EQ(cert.observed_roots, 4);
}

TEST(SmallWeight, NegativeValuesAreFlagged) {
  const LambdaMap lambda{{2, Complex(Real(-1))}, {3, Complex(Real(1))}};
  const auto cert = small_weight_certificate(lambda, 4, 1);
  EXPECT_FALSE(cert.flags.empty());
  EXPECT_THROW(small_weight_certificate(lambda, 8, 1), UnsupportedWeight);
}

TEST(RootReportOutput, JsonAndSvgAreDeterministic) {
  const auto report = find_roots(real_coeffs({1, 0, 0, 0, 1}), Precision(30));
  EXPECT_EQ(to_json(report), to_json(find_roots(real_coeffs({1, 0, 0, 0, 1}), Precision(30))));
  const std::string svg = roots_svg(report, "X^4 + 1");
  EXPECT_EQ(svg, roots_svg(report, "X^4 + 1"));
  std::size_t markers = 0;
  for (std::size_t pos = svg.find("r=\"4\""); pos != std::string::npos; pos = svg.find("r=\"4\"", pos + 1))
    ++markers;
  EXPECT_EQ(markers, 4u);
  EXPECT_NE(to_json(analytic_bound(2, 3)).find("\"per_term\""), std::string::npos);
}
