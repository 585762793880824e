#ifndef EVWIN_KERNELS_HPP_
#define EVWIN_KERNELS_HPP_

// Data-parallel inner loops. Each kernel has an OpenMP version and a serial
// reference; both produce bit-identical results because every output slot
// depends only on its own index and reductions are either integer tallies or
// performed serially afterwards in index order.

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace evwin {

enum class Execution { Serial, Parallel };

namespace kernels {

/// Sets the OpenMP thread count used by parallel kernels (<= 0 keeps the default).
void set_thread_count(int threads);
int thread_count();

/// out[i] = body(i) for i in [0, count). The first exception (lowest index) is rethrown.
template <class T, class Body>
std::vector<T> map_indices(std::size_t count, Body&& body, Execution exec = Execution::Parallel) {
  std::vector<T> out(count);
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long long>(count);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = body(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (long long i = 0; i < n; ++i) {
      try {
        out[static_cast<std::size_t>(i)] = body(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

struct DominanceCount {
  long long greater = 0;  // pairs with a_i > b_j
  long long less = 0;     // pairs with a_i < b_j
};

/// Cross-sample sign tally over all n_a * n_b pairs.
DominanceCount dominance_counts(std::span<const double> a, std::span<const double> b);
DominanceCount dominance_counts_serial(std::span<const double> a, std::span<const double> b);

/// Row-major RBF Gram matrix K_ij = exp(-gamma * |x_i - x_j|^2) for `rows` points of `dims` features.
std::vector<double> rbf_gram(std::span<const double> points, std::size_t dims, double gamma);
std::vector<double> rbf_gram_serial(std::span<const double> points, std::size_t dims, double gamma);

}  // namespace kernels
}  // namespace evwin

#endif  // EVWIN_KERNELS_HPP_
