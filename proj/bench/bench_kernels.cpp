// Serial reference against the OpenMP kernels on the three hot loops.

#include "pprh/formdata.hpp"
#include "pprh/kernels.hpp"
#include "pprh/perturb.hpp"
#include "pprh/rootlab.hpp"

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

using namespace pprh;
using kernels::Execution;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel/" + std::to_string(kernels::max_threads()));
}

void BM_AfeKernelTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(1));
  const Precision prec(40);
  std::vector<Real> orders;
  for (int s = 1; s <= 11; ++s) orders.emplace_back(s);
  const Real factor = two_pi();
  const long long rows = n >= 3 ? 16 : 256;  // contour kernels cost ~100 ms each
  for (auto _ : state) {
    auto table = kernels::afe_kernel_table(n, orders, 1, rows, factor, prec, mode(state));
    benchmark::DoNotOptimize(table);
  }
  label(state);
}

void BM_PerturbScan(benchmark::State& state) {
  const auto f = formdata::parse_lambda_fixture(
      formdata::read_file(std::string(PPRH_DATA_DIR) + "/qsqrt5_k8_lambda.json"));
  const auto r = periodpoly::build_r(periodpoly::lambda_map(f), f.weight, f.degree);
  perturb::ScanOptions options;
  options.resolution = 1e-4;
  for (auto _ : state) {
    auto res = perturb::parity_threshold_interval(r, Precision(30), options, mode(state));
    benchmark::DoNotOptimize(res);
  }
  label(state);
}

void BM_BoundGrid(benchmark::State& state) {
  std::vector<long long> discs;
  for (long long d = 5; d <= 400; ++d) discs.push_back(d);
  const Execution saved = kernels::default_execution();
  kernels::set_default_execution(mode(state));
  for (auto _ : state) {
    auto rows = rootlab::bound_threshold_table(2, discs);
    benchmark::DoNotOptimize(rows);
  }
  kernels::set_default_execution(saved);
  label(state);
}

}  // namespace

BENCHMARK(BM_AfeKernelTable)->ArgsProduct({{0, 1}, {1, 2, 3}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PerturbScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
