#ifndef PHOTAM_PARALLEL_HPP
#define PHOTAM_PARALLEL_HPP

/// Execution-mode switch and deterministic reductions. Every quadrature is
/// accumulated as per-ring partial sums (each ring summed sequentially in node
/// order) followed by a fixed-order pairwise reduction, so the OpenMP and
/// serial paths produce bit-identical results.

#include <complex>
#include <cstddef>
#include <vector>

namespace photam {

enum class ExecMode { Serial, OpenMP };

ExecMode execution_mode();
void set_execution_mode(ExecMode mode);
int hardware_threads();

/// Pairwise (tree) summation in fixed index order.
double pairwise_sum(const double* x, std::size_t n);
std::complex<double> pairwise_sum(const std::complex<double>* x, std::size_t n);

inline double pairwise_sum(const std::vector<double>& x) {
  return pairwise_sum(x.data(), x.size());
}
inline std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& x) {
  return pairwise_sum(x.data(), x.size());
}

namespace detail {
void parallel_for_impl(std::size_t n, void* ctx, void (*fn)(void*, std::size_t));
}

/// Runs fn(i) for i in [0, n), in parallel when the mode is OpenMP. The body
/// must only write to per-i slots.
template <class F>
void parallel_for(std::size_t n, F&& fn) {
  detail::parallel_for_impl(n, &fn, [](void* ctx, std::size_t i) {
    (*static_cast<F*>(ctx))(i);
  });
}

}  // namespace photam

#endif
