#include "evwin/kernels.hpp"

#include <cmath>

namespace evwin::kernels {

void set_thread_count(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

DominanceCount dominance_counts(std::span<const double> a, std::span<const double> b) {
  long long greater = 0, less = 0;
  const auto na = static_cast<long long>(a.size());
#pragma omp parallel for schedule(static) reduction(+ : greater, less)
  for (long long i = 0; i < na; ++i) {
    const double ai = a[static_cast<std::size_t>(i)];
    for (double bj : b) {
      greater += ai > bj;
      less += ai < bj;
    }
  }
  return {greater, less};
}

DominanceCount dominance_counts_serial(std::span<const double> a, std::span<const double> b) {
  DominanceCount c;
  for (double ai : a) {
    for (double bj : b) {
      c.greater += ai > bj;
      c.less += ai < bj;
    }
  }
  return c;
}

namespace {

inline double rbf(std::span<const double> points, std::size_t dims, std::size_t i, std::size_t j, double gamma) {
  double d2 = 0.0;
  for (std::size_t k = 0; k < dims; ++k) {
    const double d = points[i * dims + k] - points[j * dims + k];
    d2 += d * d;
  }
  return std::exp(-gamma * d2);
}

}  // namespace

std::vector<double> rbf_gram(std::span<const double> points, std::size_t dims, double gamma) {
  const std::size_t n = points.size() / dims;
  std::vector<double> k(n * n);
  const auto rows = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < n; ++j) k[i * n + j] = rbf(points, dims, i, j, gamma);
  }
  return k;
}

std::vector<double> rbf_gram_serial(std::span<const double> points, std::size_t dims, double gamma) {
  const std::size_t n = points.size() / dims;
  std::vector<double> k(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k[i * n + j] = rbf(points, dims, i, j, gamma);
  return k;
}

}  // namespace evwin::kernels
