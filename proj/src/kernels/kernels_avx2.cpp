#include <immintrin.h>

#include "kernels_impl.hpp"

namespace symquot::kernels::detail {

namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), a1);
  }
  for (; i + 4 <= n; i += 4) a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

// Four source entries produce twelve outputs: three 4-wide stores built from
// the repeating pattern (v0 v1 v2 v0 | v1 v2 v0 v1 | v2 v0 v1 v2).
void kron3(const double* src, std::size_t n, const double* v, double* dst) {
  const __m256d p0 = _mm256_setr_pd(v[0], v[1], v[2], v[0]);
  const __m256d p1 = _mm256_setr_pd(v[1], v[2], v[0], v[1]);
  const __m256d p2 = _mm256_setr_pd(v[2], v[0], v[1], v[2]);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const double a = src[i], b = src[i + 1], c = src[i + 2], d = src[i + 3];
    _mm256_storeu_pd(dst + 3 * i, _mm256_mul_pd(p0, _mm256_setr_pd(a, a, a, b)));
    _mm256_storeu_pd(dst + 3 * i + 4, _mm256_mul_pd(p1, _mm256_setr_pd(b, b, c, c)));
    _mm256_storeu_pd(dst + 3 * i + 8, _mm256_mul_pd(p2, _mm256_setr_pd(c, d, d, d)));
  }
  for (; i < n; ++i) {
    dst[3 * i] = src[i] * v[0];
    dst[3 * i + 1] = src[i] * v[1];
    dst[3 * i + 2] = src[i] * v[2];
  }
}

void mode_apply_last(const double* m, const double* src, double* dst, std::size_t outer) {
  for (std::size_t p = 0; p < outer; ++p) {
    const double* s = src + 3 * p;
    double* d = dst + 3 * p;
    const double x = s[0], y = s[1], z = s[2];
    d[0] = m[0] * x + m[1] * y + m[2] * z;
    d[1] = m[3] * x + m[4] * y + m[5] * z;
    d[2] = m[6] * x + m[7] * y + m[8] * z;
  }
}

void mode_apply(const double* m, const double* src, double* dst, std::size_t outer, std::size_t inner) {
  if (inner < 4) {
    if (inner == 1) {
      mode_apply_last(m, src, dst, outer);
      return;
    }
    scalar_kernels().mode_apply(m, src, dst, outer, inner);
    return;
  }
  const std::size_t block = 3 * inner;
  for (std::size_t p = 0; p < outer; ++p) {
    const double* s0 = src + p * block;
    const double* s1 = s0 + inner;
    const double* s2 = s1 + inner;
    double* d = dst + p * block;
    for (std::size_t k = 0; k < 3; ++k) {
      const double m0 = m[3 * k], m1 = m[3 * k + 1], m2 = m[3 * k + 2];
      const __m256d v0 = _mm256_set1_pd(m0), v1 = _mm256_set1_pd(m1), v2 = _mm256_set1_pd(m2);
      double* dk = d + k * inner;
      std::size_t q = 0;
      for (; q + 4 <= inner; q += 4) {
        __m256d acc = _mm256_mul_pd(v0, _mm256_loadu_pd(s0 + q));
        acc = _mm256_fmadd_pd(v1, _mm256_loadu_pd(s1 + q), acc);
        acc = _mm256_fmadd_pd(v2, _mm256_loadu_pd(s2 + q), acc);
        _mm256_storeu_pd(dk + q, acc);
      }
      for (; q < inner; ++q) dk[q] = m0 * s0[q] + m1 * s1[q] + m2 * s2[q];
    }
  }
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable t{Isa::avx2, "avx2", &dot, &axpy, &kron3, &mode_apply};
  return t;
}

}  // namespace symquot::kernels::detail
