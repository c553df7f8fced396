#include "pprh/lfunc.hpp"

#include "pprh/errors.hpp"
#include "pprh/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pprh::lfunc {

namespace {

constexpr long long kMaxTerms = 20'000'000;
constexpr int kMaxTailBlocks = 64;

Real abs_real(const Real& x) { return x < 0 ? Real(-x) : x; }

long long binomial_small(long long top, long long bottom) {
  long long out = 1;
  for (long long i = 1; i <= bottom; ++i) out = out * (top - bottom + i) / i;
  return out;
}

// One group of kernel columns sharing an argument factor x = m * factor.
struct Group {
  Real factor;
  std::vector<Real> orders;

  std::size_t column(const Real& order) {
    for (std::size_t j = 0; j < orders.size(); ++j)
      if (orders[j] == order) return j;
    orders.push_back(order);
    return orders.size() - 1;
  }
};

// Lambda_{t0}(s) for each point: a left sum at order s with weight t0^s and a
// right sum at order k - s with weight sign * t0^(s - k).
struct Term {
  std::size_t left_group, left_column;
  std::size_t right_group, right_column;
  Real left_weight, right_weight;
};

struct Plan {
  std::vector<Group> groups;
  std::vector<Term> terms;
};

Plan make_plan(const LFunctionSpec& spec, const std::vector<Real>& points, const Real& t0) {
  Plan plan;
  const Real inv_scale = 1 / spec.scale();
  plan.groups.push_back(Group{inv_scale * t0, {}});
  const bool shifted = t0 != 1;
  if (shifted) plan.groups.push_back(Group{inv_scale / t0, {}});
  const std::size_t right = shifted ? 1 : 0;
  const int k = spec.weight();
  for (const Real& s : points) {
    Term term;
    term.left_group = 0;
    term.left_column = plan.groups[0].column(s);
    term.right_group = right;
    term.right_column = plan.groups[right].column(Real(k) - s);
    term.left_weight = shifted ? Real(pow(t0, s)) : Real(1);
    term.right_weight = Real(spec.sign()) * (shifted ? Real(pow(t0, s - k)) : Real(1));
    plan.terms.push_back(std::move(term));
  }
  return plan;
}

// Sum_{m <= X} d_r(m) <= X (1 + log X)^(r - 1).
Real divisor_summatory_bound(long long x, int parts) {
  const Real big(x);
  return big * pow(1 + log(big), parts - 1);
}

std::vector<LambdaValue> evaluate(const LFunctionSpec& spec, const std::vector<Real>& points,
                                  const Real& t0, const Precision& prec, kernels::Execution exec) {
  const std::size_t count = points.size();
  std::vector<LambdaValue> out(count);
  if (count == 0) return out;
  Plan plan = make_plan(spec, points, t0);
  const int n = spec.degree();

  std::vector<Real> sum(count, Real(0)), magnitude(count, Real(0)), majorant_sum(count, Real(0)),
      gaps(count, Real(0));
  const Real threshold = prec.tol / 10;

  long long m = 0;
  long long chunk = std::max<long long>(16, 2LL * kernels::max_threads());
  bool done = false;
  while (!done) {
    const long long first = m + 1;
    const long long last = first + chunk - 1;
    if (last > kMaxTerms) throw KernelFailure("approximate functional equation did not converge");
    std::vector<kernels::KernelTable> tables;
    tables.reserve(plan.groups.size());
    for (const Group& g : plan.groups)
      tables.push_back(kernels::afe_kernel_table(n, g.orders, first, last, g.factor, prec, exec));

    for (long long norm = first; norm <= last; ++norm) {
      if (!spec.known(norm) && !spec.allow_gaps()) {
        std::ostringstream msg;
        msg << "coefficient of norm " << norm << " is needed (known through "
            << spec.complete_through() << ")";
        throw InsufficientCoefficients(msg.str());
      }
      const std::size_t row = static_cast<std::size_t>(norm - first);
      const Real c = spec.coefficient(norm);
      const Real gap = spec.gap_bound(norm);
      const Real majorant = spec.coefficient_majorant(norm);
      bool converged = true;
      for (std::size_t i = 0; i < count; ++i) {
        const Term& t = plan.terms[i];
        const Real& kl = tables[t.left_group][row][t.left_column];
        const Real& kr = tables[t.right_group][row][t.right_column];
        const Real mag = abs_real(t.left_weight) * kl + abs_real(t.right_weight) * kr;
        sum[i] += c * (t.left_weight * kl + t.right_weight * kr);
        magnitude[i] += abs_real(c) * mag;
        majorant_sum[i] += majorant * mag;
        gaps[i] += gap * mag;
        const Real& scale = magnitude[i] > 0 ? magnitude[i] : majorant_sum[i];
        if (!(majorant * mag < threshold * scale)) converged = false;
      }
      if (converged) {
        m = norm;
        done = true;
        break;
      }
    }
    if (!done) {
      m = last;
      chunk = std::min<long long>(chunk * 2, 512);
    }
  }

  // Tail past m in doubling blocks (lo, hi], using that each kernel decreases
  // in its argument and the divisor summatory bound on the majorants.
  std::vector<Real> tail(count, Real(0));
  const Real half_weight = Real(spec.weight() - 1) / 2;
  long long lo = m + 1;
  for (int block = 0; block < kMaxTailBlocks; ++block) {
    const long long hi = 2 * lo;
    const Real mass = divisor_summatory_bound(hi, 2 * n) * pow(Real(hi), half_weight);
    std::vector<std::vector<Real>> at_lo;
    for (const Group& g : plan.groups)
      at_lo.push_back(specfun::kernel_g_incomplete_many(n, g.orders, Real(lo) * g.factor,
                                                        specfun::KernelSpec{}, prec));
    bool negligible = true;
    for (std::size_t i = 0; i < count; ++i) {
      const Term& t = plan.terms[i];
      const Real piece = mass * (abs_real(t.left_weight) * at_lo[t.left_group][t.left_column] +
                                 abs_real(t.right_weight) * at_lo[t.right_group][t.right_column]);
      tail[i] += piece;
      if (piece > tail[i] * Real("1e-6")) negligible = false;
    }
    if (negligible) break;
    lo = hi;
  }

  for (std::size_t i = 0; i < count; ++i) {
    out[i].s = points[i];
    out[i].value = sum[i];
    out[i].truncation_bound = tail[i] + gaps[i];
    out[i].terms_used = m;
  }
  return out;
}

}  // namespace

long long divisor_function(long long m, int parts) {
  if (m < 1 || parts < 1) throw DomainError("divisor function needs m >= 1 and parts >= 1");
  long long out = 1;
  long long rest = m;
  for (long long p = 2; p * p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e > 0) out *= binomial_small(e + parts - 1, parts - 1);
  }
  if (rest > 1) out *= parts;
  return out;
}

LFunctionSpec::LFunctionSpec(int degree, Real conductor_scale, int weight, int sign,
                             std::map<long long, Real> coefficients, long long complete_through,
                             std::map<long long, Real> gap_bounds, bool allow_gaps)
    : degree_(degree),
      conductor_scale_(std::move(conductor_scale)),
      weight_(weight),
      sign_(sign),
      coefficients_(std::make_shared<const std::map<long long, Real>>(std::move(coefficients))),
      gaps_(std::make_shared<const std::map<long long, Real>>(std::move(gap_bounds))),
      complete_through_(complete_through),
      allow_gaps_(allow_gaps) {
  if (degree_ < 1) throw InvariantViolation("degree must be positive");
  if (!(conductor_scale_ > 0)) throw InvariantViolation("conductor scale must be positive");
  if (weight_ < 1) throw UnsupportedWeight("weight must be positive");
  if (sign_ != 1 && sign_ != -1) throw InvariantViolation("sign must be +1 or -1");
  for (const auto& [norm, bound] : *gaps_)
    if (norm < 1 || bound < 0) throw InvariantViolation("gap bounds need norm >= 1 and bound >= 0");
}

LFunctionSpec LFunctionSpec::from_eigenform(const formdata::EigenformData& data, bool allow_gaps) {
  std::map<long long, Real> coefficients;
  for (const auto& [norm, value] : data.coefficients) {
    const Real re = value.real();
    const Real im = value.imag();
    if (abs_real(im) > Real("1e-20") * (1 + abs_real(re))) {
      std::ostringstream msg;
      msg << "coefficient of norm " << norm << " is not real";
      throw InvariantViolation(msg.str());
    }
    if (re != 0) coefficients.emplace(norm, re);
  }
  return LFunctionSpec(data.field.degree, data.effective_conductor_scale(), data.weight, data.sign,
                       std::move(coefficients), data.complete_through, data.gap_bounds, allow_gaps);
}

Real LFunctionSpec::scale() const { return conductor_scale_ / pow(two_pi(), degree_); }

bool LFunctionSpec::known(long long norm) const {
  return norm <= complete_through_ || coefficients_->count(norm) > 0;
}

Real LFunctionSpec::coefficient(long long norm) const {
  const auto it = coefficients_->find(norm);
  return it == coefficients_->end() ? Real(0) : it->second;
}

Real LFunctionSpec::gap_bound(long long norm) const {
  if (!known(norm)) return coefficient_majorant(norm);
  const auto it = gaps_->find(norm);
  return it == gaps_->end() ? Real(0) : it->second;
}

Real LFunctionSpec::coefficient_majorant(long long norm) const {
  return Real(divisor_function(norm, 2 * degree_)) * pow(Real(norm), Real(weight_ - 1) / 2);
}

LFunctionSpec LFunctionSpec::with_sign(int sign) const {
  LFunctionSpec copy = *this;
  if (sign != 1 && sign != -1) throw InvariantViolation("sign must be +1 or -1");
  copy.sign_ = sign;
  return copy;
}

std::vector<LambdaValue> lambda_values(const LFunctionSpec& spec, const std::vector<Real>& points,
                                       const Precision& prec, kernels::Execution exec) {
  return evaluate(spec, points, Real(1), prec, exec);
}

std::vector<LambdaValue> lambda_values(const LFunctionSpec& spec, const std::vector<Real>& points,
                                       const Precision& prec) {
  return lambda_values(spec, points, prec, kernels::default_execution());
}

LambdaValue lambda_value(const LFunctionSpec& spec, const Real& s, const Precision& prec) {
  return lambda_values(spec, {s}, prec).front();
}

long long suggested_max_norm(int degree, const Real& scale, int weight, const Precision& prec) {
  if (degree < 1 || !(scale > 0)) throw DomainError("suggested_max_norm needs degree >= 1 and scale > 0");
  const double a = static_cast<double>(scale);
  const double target = prec.digits * std::log(10.0) + 20;
  const double growth = (weight + 1) / 2.0 + 2.0 * degree;
  const auto margin = [&](double m) { return degree * std::pow(m / a, 1.0 / degree) - growth * std::log(m + 1); };
  double m = 8;
  while (margin(m) < target) m *= 1.25;
  return static_cast<long long>(std::ceil(m));
}

std::vector<LambdaValue> critical_values(const LFunctionSpec& spec, const Precision& prec) {
  std::vector<Real> points;
  for (int j = 1; j <= spec.weight() - 1; ++j) points.emplace_back(j);
  return lambda_values(spec, points, prec);
}

Real l_value(const LFunctionSpec& spec, const Real& s, const Precision& prec) {
  const LambdaValue lv = lambda_value(spec, s, prec);
  const Real log_factor = s * log(spec.scale()) + spec.degree() * specfun::log_gamma(s, prec);
  return lv.value / exp(log_factor);
}

Real dirichlet_partial_sum(const LFunctionSpec& spec, const Real& s, long long limit) {
  Real out = 0;
  for (long long m = 1; m <= limit; ++m) {
    const Real c = spec.coefficient(m);
    if (c != 0) out += c / pow(Real(m), s);
  }
  return out;
}

FunctionalEquationReport check_functional_equation(const LFunctionSpec& spec,
                                                   const std::vector<Real>& points,
                                                   const Precision& prec, const Real& tolerance,
                                                   const Real& t0) {
  if (!(t0 > 0) || t0 == 1) throw DomainError("split point must be positive and different from 1");
  const auto exec = kernels::default_execution();
  const auto base = evaluate(spec, points, Real(1), prec, exec);
  const auto shifted = evaluate(spec, points, t0, prec, exec);
  FunctionalEquationReport report;
  report.max_residual = 0;
  report.truncation_bound = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Real bound = base[i].truncation_bound + shifted[i].truncation_bound;
    const Real denom =
        std::max({abs_real(base[i].value), abs_real(shifted[i].value), bound, Real("1e-300")});
    const Real residual = abs_real(base[i].value - shifted[i].value) / denom;
    report.residuals.push_back(residual);
    report.truncation_bound = std::max(report.truncation_bound, bound);
    if (i == 0 || residual > report.max_residual) {
      report.max_residual = residual;
      report.worst_point = points[i];
    }
  }
  report.passed = report.max_residual <= tolerance;
  return report;
}

FunctionalEquationReport check_functional_equation(const formdata::LambdaFixture& fixture) {
  FunctionalEquationReport report;
  report.max_residual = 0;
  report.truncation_bound = 0;
  Real scale = 0;
  for (const auto& [j, v] : fixture.values) scale = std::max(scale, Real(abs(v)));
  if (scale == 0) scale = 1;
  bool first = true;
  for (const auto& [j, v] : fixture.values) {
    const auto partner = fixture.values.find(fixture.weight - j);
    if (partner == fixture.values.end()) continue;
    const Real residual = Real(abs(v - Real(fixture.sign) * partner->second)) / scale;
    report.residuals.push_back(residual);
    if (first || residual > report.max_residual) {
      report.max_residual = residual;
      report.worst_point = Real(j);
      first = false;
    }
  }
  report.passed = report.max_residual <= fixture.tolerance;
  return report;
}

GrowthReport check_lambda_growth(const std::map<int, Real>& values, int weight, int sign,
                                 const Real& tolerance) {
  GrowthReport report;
  const int centre = (weight + 1) / 2;
  Real scale = 0;
  for (int j = centre; j <= weight - 1; ++j) {
    const auto it = values.find(j);
    if (it == values.end()) {
      report.passed = false;
      report.violations.push_back("missing value at s = " + std::to_string(j));
      return report;
    }
    scale = std::max(scale, abs_real(it->second));
  }
  const Real slack = tolerance * std::max(scale, Real(1e-300));
  const auto value = [&](int j) { return values.at(j); };
  const auto fail = [&](const std::string& what) {
    report.passed = false;
    report.violations.push_back(what);
  };
  if (value(centre) < -slack) fail("negative value at s = " + std::to_string(centre));
  for (int j = centre; j + 1 <= weight - 1; ++j)
    if (value(j + 1) < value(j) - slack)
      fail("decrease from s = " + std::to_string(j) + " to s = " + std::to_string(j + 1));
  if (sign == -1 && weight % 2 == 0) {
    if (abs_real(value(centre)) > slack) fail("nonzero central value with sign -1");
    for (int j = 1; centre + j + 1 <= weight - 1; ++j) {
      const Real here = value(centre + j) / j;
      const Real next = value(centre + j + 1) / (j + 1);
      if (next < here - slack)
        fail("scaled chain breaks between s = " + std::to_string(centre + j) + " and s = " +
             std::to_string(centre + j + 1));
    }
  }
  return report;
}

GrowthReport check_lambda_growth(const formdata::LambdaFixture& fixture) {
  std::map<int, Real> values;
  for (const auto& [j, v] : fixture.values) values.emplace(j, v.real());
  return check_lambda_growth(values, fixture.weight, fixture.sign, fixture.tolerance);
}

RatioBoundReport check_ratio_bound(const LFunctionSpec& spec, const Real& a, const Real& b,
                                   const Precision& prec) {
  if (!(a > 0) || !(b > a)) throw DomainError("ratio bound needs 0 < a < b");
  const Real centre = Real(spec.weight() + 1) / 2;
  RatioBoundReport report;
  report.ratio = l_value(spec, centre + a, prec) / l_value(spec, centre + b, prec);
  report.bound = pow(specfun::zeta(1 + a, prec) / specfun::zeta(1 + b, prec), 2 * spec.degree());
  report.slack = report.bound - report.ratio;
  report.holds = report.slack >= 0;
  return report;
}

}  // namespace pprh::lfunc
