#include "pprh/errors.hpp"
#include "pprh/rootlab.hpp"

#include <cmath>
#include <numbers>

namespace pprh::rootlab {

namespace {

constexpr int kSignGrid = 4096;

Real value_at(const periodpoly::LambdaMap& lambda, int s) {
  const auto it = lambda.find(s);
  if (it == lambda.end()) throw MissingLambda("Lambda(" + std::to_string(s) + ") is required");
  return it->second.real();
}

// Zeros of P(X) + sign P(1/X) on |X| = 1, counted as sign changes of the
// cosine (sign +1) or sine (sign -1) sum on a half-step offset grid.
int count_circle_roots(const std::vector<double>& p, int sign) {
  const auto f = [&](double theta) {
    double acc = sign == 1 ? p[0] : 0.0;
    for (std::size_t j = 1; j < p.size(); ++j)
      acc += p[j] * (sign == 1 ? std::cos(j * theta) : std::sin(j * theta));
    return acc;
  };
  const double step = 2 * std::numbers::pi / kSignGrid;
  int changes = 0;
  double prev = f(-step / 2);
  for (int i = 0; i < kSignGrid; ++i) {
    const double next = f((i + 0.5) * step);
    if ((prev < 0) != (next < 0)) ++changes;
    prev = next;
  }
  return changes;
}

CertificateCondition condition(std::string name, Real lhs, Real rhs, bool passed) {
  return {std::move(name), passed, std::move(lhs), std::move(rhs)};
}

}  // namespace

SmallWeightCertificate small_weight_certificate(const periodpoly::LambdaMap& lambda, int weight,
                                                int sign, const Real& tolerance) {
  if (weight != 4 && weight != 6) throw UnsupportedWeight("small-weight certificates cover k = 4 and 6");
  if (sign != 1 && sign != -1) throw InvariantViolation("sign must be +1 or -1");
  SmallWeightCertificate cert;
  cert.weight = weight;
  cert.sign = sign;
  const int centre = weight / 2;
  Real scale = 0;
  for (int s = centre; s <= weight - 1; ++s) {
    const Real v = value_at(lambda, s);
    scale = std::max(scale, Real(abs(v)));
    if (abs(lambda.at(s).imag()) > tolerance * (1 + abs(v)))
      cert.flags.push_back("Lambda(" + std::to_string(s) + ") is not real");
  }
  const Real slack = tolerance * std::max(scale, Real(1e-300));
  for (int s = centre; s <= weight - 1; ++s)
    if (value_at(lambda, s) < -slack) cert.flags.push_back("Lambda(" + std::to_string(s) + ") is negative");

  const auto L = [&](int s) { return value_at(lambda, s); };
  if (sign == -1) {
    cert.conditions.push_back(
        condition("central value vanishes", abs(L(centre)), slack, abs(L(centre)) <= slack));
  }
  if (weight == 4) {
    if (sign == 1) {
      cert.conditions.push_back(condition("Lambda(2) < Lambda(3)", L(2), L(3), L(2) < L(3)));
    } else {
      cert.conditions.push_back(condition("Lambda(3) > 0", L(3), Real(0), L(3) > 0));
    }
  } else if (sign == -1) {
    cert.conditions.push_back(condition("2 Lambda(4) < Lambda(5)", 2 * L(4), L(5), 2 * L(4) < L(5)));
  } else {
    const Real pos_lhs = 3 * L(3) + L(5);
    const Real pos_rhs = 4 * L(4);
    cert.conditions.push_back(
        condition("3 Lambda(3) + Lambda(5) > 4 Lambda(4)", pos_lhs, pos_rhs, pos_lhs > pos_rhs));
    const Real neg_lhs = 2 * L(4) * L(4) + L(5) * L(5);
    const Real neg_rhs = 3 * L(3) * L(5);
    cert.conditions.push_back(condition("2 Lambda(4)^2 + Lambda(5)^2 >= 3 Lambda(3) Lambda(5)", neg_lhs,
                                        neg_rhs, neg_lhs >= neg_rhs));
  }
  cert.passed = true;
  for (const auto& c : cert.conditions) cert.passed = cert.passed && c.passed;
  cert.expected_roots = weight - 2;

  // P(X) = 1/2 C(2h, h) Lambda(k/2) + sum_j C(2h, h + j) Lambda(k/2 + j) X^j.
  const std::vector<double> p =
      weight == 4 ? std::vector<double>{static_cast<double>(L(2)), static_cast<double>(L(3))}
                  : std::vector<double>{3 * static_cast<double>(L(3)), 4 * static_cast<double>(L(4)),
                                        static_cast<double>(L(5))};
  cert.observed_roots = count_circle_roots(p, sign);
  return cert;
}

}  // namespace pprh::rootlab
