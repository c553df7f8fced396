#include "pprh/periodpoly.hpp"

#include "pprh/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <algorithm>
#include <limits>

namespace pprh::periodpoly {

namespace {

using nlohmann::json;
using boost::multiprecision::cpp_int;

Real binomial(int top, int bottom) {
  cpp_int out = 1;
  for (int i = 1; i <= bottom; ++i) {
    out *= top - bottom + i;
    out /= i;
  }
  return Real(out.str());
}

const Complex& require(const LambdaMap& lambda, int s) {
  const auto it = lambda.find(s);
  if (it == lambda.end()) throw MissingLambda("Lambda(" + std::to_string(s) + ") is required");
  return it->second;
}

void check_weight(int weight, int degree_n) {
  if (weight < 3) throw UnsupportedWeight("period polynomials need weight >= 3");
  if (degree_n < 1) throw InvariantViolation("degree must be positive");
}

Kind parse_kind(const std::string& name) {
  if (name == "r") return Kind::R;
  if (name == "P") return Kind::P;
  if (name == "Q") return Kind::Q;
  throw MalformedDocument("unknown polynomial kind '" + name + "'");
}

Source parse_source(const std::string& name) {
  if (name == "evaluator") return Source::Evaluator;
  if (name == "fixture") return Source::Fixture;
  throw MalformedDocument("unknown polynomial source '" + name + "'");
}

std::string exact(const Real& x) { return pprh::to_string(x, std::numeric_limits<Real>::max_digits10); }

}  // namespace

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::R: return "r";
    case Kind::P: return "P";
    default: return "Q";
  }
}

std::string to_string(Source source) { return source == Source::Evaluator ? "evaluator" : "fixture"; }

LambdaMap lambda_map(const formdata::LambdaFixture& fixture) { return fixture.values; }

LambdaMap lambda_map(const std::vector<lfunc::LambdaValue>& values) {
  LambdaMap out;
  for (const auto& v : values) {
    if (v.s != floor(v.s)) throw DomainError("critical values must sit at integer points");
    out[v.s.convert_to<int>()] = Complex(v.value);
  }
  return out;
}

Complex PeriodPolynomial::operator()(const Complex& x) const {
  Complex acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<std::complex<double>> PeriodPolynomial::coeffs_double() const {
  std::vector<std::complex<double>> out;
  out.reserve(coeffs.size());
  for (const Complex& c : coeffs) out.push_back(to_double(c));
  return out;
}

PeriodPolynomial build_r(const LambdaMap& lambda, int weight, int degree_n, Source source,
                         const Real& tolerance) {
  check_weight(weight, degree_n);
  PeriodPolynomial r;
  r.weight = weight;
  r.degree_n = degree_n;
  r.kind = Kind::R;
  r.source = source;
  r.tolerance = tolerance;
  const int top = weight - 2;
  r.coeffs.reserve(static_cast<std::size_t>(top) + 1);
  for (int m = 0; m <= top; ++m) {
    const long long exponent = 2LL * m + static_cast<long long>(degree_n) * (weight - m - 1);
    r.coeffs.push_back(i_power(exponent) * Complex(binomial(top, m)) *
                       require(lambda, weight - m - 1));
  }
  return r;
}

PairPQ build_pq(const LambdaMap& lambda, int weight, int degree_n, Source source,
                const Real& tolerance, const Real& zero_tolerance) {
  check_weight(weight, degree_n);
  if (weight % 2 != 0) throw UnsupportedWeight("P and Q need even weight");
  const int half = (weight - 2) / 2;
  const int centre = weight / 2;
  PairPQ out;
  out.p.weight = out.q.weight = weight;
  out.p.degree_n = out.q.degree_n = degree_n;
  out.p.kind = Kind::P;
  out.q.kind = Kind::Q;
  out.p.source = out.q.source = source;
  out.p.tolerance = out.q.tolerance = tolerance;
  out.p.coeffs.push_back(Complex(binomial(2 * half, half) / 2) * require(lambda, centre));
  for (int j = 1; j <= half; ++j)
    out.p.coeffs.push_back(Complex(binomial(2 * half, half + j)) * require(lambda, centre + j));

  const Complex& top = require(lambda, weight - 1);
  Real scale = 0;
  for (int s = centre; s <= weight - 1; ++s) scale = std::max(scale, Real(abs(require(lambda, s))));
  if (!(abs(top) > zero_tolerance * scale)) throw ZeroTopLambda("Lambda(k-1) vanishes");
  for (const Complex& c : out.p.coeffs) out.q.coeffs.push_back(c / top);
  out.q.coeffs.back() = Complex(1);
  return out;
}

Real check_rq_identity(const PeriodPolynomial& r, const PeriodPolynomial& q, int sign, int samples) {
  if (r.kind != Kind::R || q.kind != Kind::Q) throw DomainError("identity needs an r and a Q polynomial");
  if (r.weight != q.weight || r.degree_n != q.degree_n)
    throw DomainError("r and Q come from different forms");
  if (samples < 1) throw DomainError("need at least one sample");
  const int k = r.weight;
  const int n = r.degree_n;
  const int half = (k - 2) / 2;
  const Complex phase = i_power(static_cast<long long>(n) * (k - 1));
  const Complex top = r.coeffs.front() / phase;  // Lambda(k-1)
  const Complex rotate = i_power(n + 2);
  const Complex eps{Real(sign)};

  Real worst = 0;
  Real scale = 0;
  for (int j = 0; j < samples; ++j) {
    const Real theta = two_pi() * j / samples;
    const Complex x(cos(theta), sin(theta));
    const Complex lhs = r(rotate * x);
    const Complex rhs = phase * eps * top * pow(x, half) * (q(x) + eps * q(Complex(1) / x));
    worst = std::max(worst, Real(abs(lhs - rhs)));
    scale = std::max(scale, Real(abs(lhs)));
  }
  return scale == 0 ? worst : Real(worst / scale);
}

ParityParts split_parity(const PeriodPolynomial& r) {
  if (r.kind != Kind::R) throw DomainError("parity split applies to r polynomials");
  ParityParts out{r, r};
  for (std::size_t m = 0; m < r.coeffs.size(); ++m) {
    if (m % 2 == 0) {
      out.odd.coeffs[m] = Complex(0);
    } else {
      out.even.coeffs[m] = Complex(0);
    }
  }
  return out;
}

std::string serialize(const PeriodPolynomial& poly) {
  json coefficients = json::array();
  for (std::size_t m = 0; m < poly.coeffs.size(); ++m)
    coefficients.push_back(
        {{"m", m}, {"re", exact(poly.coeffs[m].real())}, {"im", exact(poly.coeffs[m].imag())}});
  json doc{{"kind", to_string(poly.kind)},       {"weight", poly.weight},
           {"degree_n", poly.degree_n},          {"source", to_string(poly.source)},
           {"tolerance", exact(poly.tolerance)}, {"coefficients", coefficients}};
  return doc.dump(2) + "\n";
}

PeriodPolynomial parse_polynomial(const std::string& document) {
  try {
    const json doc = json::parse(document);
    PeriodPolynomial poly;
    poly.kind = parse_kind(doc.at("kind").get<std::string>());
    poly.weight = doc.at("weight").get<int>();
    poly.degree_n = doc.at("degree_n").get<int>();
    poly.source = parse_source(doc.value("source", std::string("fixture")));
    poly.tolerance = real_from_string(doc.value("tolerance", std::string("0")));
    std::map<std::size_t, Complex> entries;
    for (const json& entry : doc.at("coefficients")) {
      const auto m = entry.at("m").get<std::size_t>();
      const auto text = [&](const char* key) {
        const json& v = entry.at(key);
        return v.is_string() ? v.get<std::string>() : v.dump();
      };
      if (!entries.emplace(m, Complex(real_from_string(text("re")), real_from_string(text("im")))).second)
        throw MalformedDocument("duplicate coefficient index " + std::to_string(m));
    }
    if (entries.empty()) throw MalformedDocument("polynomial has no coefficients");
    poly.coeffs.assign(entries.rbegin()->first + 1, Complex(0));
    for (auto& [m, c] : entries) poly.coeffs[m] = c;
    return poly;
  } catch (const json::exception& e) {
    throw MalformedDocument(std::string("polynomial document: ") + e.what());
  }
}

}  // namespace pprh::periodpoly
