#include "kernels_impl.hpp"

namespace symquot::kernels::detail {

namespace {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void kron3(const double* src, std::size_t n, const double* v, double* dst) {
  for (std::size_t i = 0; i < n; ++i) {
    const double s = src[i];
    dst[3 * i] = s * v[0];
    dst[3 * i + 1] = s * v[1];
    dst[3 * i + 2] = s * v[2];
  }
}

void mode_apply(const double* m, const double* src, double* dst, std::size_t outer, std::size_t inner) {
  const std::size_t block = 3 * inner;
  for (std::size_t p = 0; p < outer; ++p) {
    const double* s0 = src + p * block;
    const double* s1 = s0 + inner;
    const double* s2 = s1 + inner;
    double* d = dst + p * block;
    for (std::size_t k = 0; k < 3; ++k) {
      const double m0 = m[3 * k], m1 = m[3 * k + 1], m2 = m[3 * k + 2];
      double* dk = d + k * inner;
      for (std::size_t q = 0; q < inner; ++q) dk[q] = m0 * s0[q] + m1 * s1[q] + m2 * s2[q];
    }
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable t{Isa::scalar, "scalar", &dot, &axpy, &kron3, &mode_apply};
  return t;
}

}  // namespace symquot::kernels::detail
