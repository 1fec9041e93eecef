#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

namespace symquot::kernels {

enum class Isa { scalar, avx2 };

/// Inner loops of the dense tensor code. Every entry has a scalar reference
/// and, where the CPU allows it, a vectorized variant with identical
/// semantics (results agree to round-off, not bit-for-bit).
struct KernelTable {
  Isa isa;
  std::string_view name;

  /// Σ x[i] y[i].
  double (*dot)(const double* x, const double* y, std::size_t n);

  /// y[i] += a x[i].
  void (*axpy)(double a, const double* x, double* y, std::size_t n);

  /// dst[3i + j] = src[i] v[j] for i < n, j < 3.
  void (*kron3)(const double* src, std::size_t n, const double* v, double* dst);

  /// Contraction of a row-major 3x3 matrix against the middle index of a
  /// tensor viewed as [outer][3][inner]:
  /// dst[p][k][q] = Σ_l m[3k + l] src[p][l][q].
  void (*mode_apply)(const double* m, const double* src, double* dst, std::size_t outer, std::size_t inner);
};

const KernelTable& scalar_table();

/// Table for `isa`, or nullptr when the variant is not compiled in or the CPU
/// lacks the instructions.
const KernelTable* table_for(Isa isa);

/// The table used by the library: the widest supported variant unless
/// overridden with `force_isa`.
const KernelTable& active();

/// Pins the active table (nullopt restores automatic selection). Throws
/// std::invalid_argument if the variant is unavailable. Not thread-safe with
/// respect to concurrent kernel calls; meant for tests and benchmarks.
void force_isa(std::optional<Isa> isa);

}  // namespace symquot::kernels
