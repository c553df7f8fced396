#pragma once

// Hot loops with a serial reference and an OpenMP version. Both produce
// identical results; the serial one is kept for testing and benchmarking.

#include "pprh/numeric.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pprh::kernels {

enum class Execution { Serial, Parallel };

/// Caps the OpenMP team size; jobs <= 0 restores the runtime default.
void set_max_threads(int jobs);
int max_threads();

Execution default_execution();
void set_default_execution(Execution exec);

/// Row r, column j: Ginc_n(orders[j], (first + r) * factor).
using KernelTable = std::vector<std::vector<Real>>;

KernelTable afe_kernel_table(int n, std::span<const Real> orders, long long first, long long last,
                             const Real& factor, const Precision& prec, Execution exec);

/// out[i] = fn(i) for i < count. Exceptions thrown by fn are rethrown on
/// the calling thread (the first one by index).
std::vector<Real> map_indices(std::size_t count, const std::function<Real(std::size_t)>& fn,
                              Execution exec);
std::vector<char> map_predicate(std::size_t count, const std::function<bool(std::size_t)>& fn,
                                Execution exec);

}  // namespace pprh::kernels
