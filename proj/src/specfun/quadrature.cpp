#include "pprh/errors.hpp"
#include "pprh/specfun.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace pprh::specfun {

namespace {

GaussLegendreRule compute_rule(int count) {
  GaussLegendreRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  const Real eps = pow(Real(10), -(kStorageDigits - 3));
  const int half = (count + 1) / 2;
  for (int i = 0; i < half; ++i) {
    Real z = cos(pi() * (Real(i) + Real(0.75)) / (Real(count) + Real(0.5)));
    Real derivative = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Real p0 = 1, p1 = z;
      for (int j = 2; j <= count; ++j) {
        Real p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (count == 1) p0 = 1;
      derivative = count * (z * p1 - p0) / (z * z - 1);
      const Real step = p1 / derivative;
      z -= step;
      if (abs(step) < eps) break;
    }
    const Real w = 2 / ((1 - z * z) * derivative * derivative);
    rule.nodes[i] = -z;
    rule.nodes[count - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[count - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int nodes) {
  if (nodes < 2 || nodes > 400) throw DomainError("Gauss-Legendre node count must lie in [2, 400]");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[nodes];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(compute_rule(nodes));
  return *slot;
}

}  // namespace pprh::specfun
