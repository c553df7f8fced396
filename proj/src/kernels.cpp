#include "pprh/kernels.hpp"

#include "pprh/specfun.hpp"

#include <atomic>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pprh::kernels {

namespace {

std::atomic<Execution> g_default{Execution::Parallel};

// Runs body(i) for i < count, serially or across the OpenMP team, and
// rethrows the lowest-index exception.
template <typename Body>
void for_indices(std::size_t count, Execution exec, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  const auto guarded = [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (exec == Execution::Serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) guarded(i);
  } else {
    const auto total = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < total; ++i) guarded(static_cast<std::size_t>(i));
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

void set_max_threads(int jobs) {
#ifdef _OPENMP
  if (jobs > 0) {
    omp_set_num_threads(jobs);
  } else {
    omp_set_num_threads(omp_get_num_procs());
  }
#else
  (void)jobs;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Execution default_execution() { return g_default.load(); }
void set_default_execution(Execution exec) { g_default.store(exec); }

KernelTable afe_kernel_table(int n, std::span<const Real> orders, long long first, long long last,
                             const Real& factor, const Precision& prec, Execution exec) {
  if (last < first) return {};
  KernelTable table(static_cast<std::size_t>(last - first + 1));
  for_indices(table.size(), exec, [&](std::size_t r) {
    const Real x = Real(first + static_cast<long long>(r)) * factor;
    table[r] = specfun::kernel_g_incomplete_many(n, orders, x, specfun::KernelSpec{}, prec);
  });
  return table;
}

std::vector<Real> map_indices(std::size_t count, const std::function<Real(std::size_t)>& fn,
                              Execution exec) {
  std::vector<Real> out(count);
  for_indices(count, exec, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

std::vector<char> map_predicate(std::size_t count, const std::function<bool(std::size_t)>& fn,
                                Execution exec) {
  std::vector<char> out(count, 0);
  for_indices(count, exec, [&](std::size_t i) { out[i] = fn(i) ? 1 : 0; });
  return out;
}

}  // namespace pprh::kernels
