#include "photam/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace photam {

namespace {
ExecMode g_mode = ExecMode::OpenMP;
}

ExecMode execution_mode() { return g_mode; }
void set_execution_mode(ExecMode mode) { g_mode = mode; }

int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace {

template <class T>
T pairwise_sum_impl(const T* x, std::size_t n) {
  if (n == 0) return T(0);
  if (n <= 8) {
    T s = x[0];
    for (std::size_t i = 1; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum_impl(x, h) + pairwise_sum_impl(x + h, n - h);
}

}  // namespace

double pairwise_sum(const double* x, std::size_t n) { return pairwise_sum_impl(x, n); }
std::complex<double> pairwise_sum(const std::complex<double>* x, std::size_t n) {
  return pairwise_sum_impl(x, n);
}

namespace detail {

void parallel_for_impl(std::size_t n, void* ctx, void (*fn)(void*, std::size_t)) {
#ifdef _OPENMP
  if (g_mode == ExecMode::OpenMP) {
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      fn(ctx, static_cast<std::size_t>(i));
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) fn(ctx, i);
}

}  // namespace detail

}  // namespace photam
