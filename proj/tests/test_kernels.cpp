#include <doctest.h>

#include <random>
#include <vector>

#include "symquot/kernels/kernels.hpp"
#include "symquot/sampling.hpp"
#include "symquot/tensor.hpp"

using namespace symquot;
namespace k = symquot::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("scalar table is always available") {
  CHECK(k::table_for(k::Isa::scalar) == &k::scalar_table());
  CHECK(k::scalar_table().isa == k::Isa::scalar);
  CHECK_NOTHROW(k::force_isa(k::Isa::scalar));
  CHECK(&k::active() == &k::scalar_table());
  k::force_isa(std::nullopt);
}

TEST_CASE("vector kernels match the scalar reference") {
  const k::KernelTable* simd = k::table_for(k::Isa::avx2);
  if (simd == nullptr) {
    MESSAGE("AVX2 variant unavailable on this machine; equivalence test skipped");
    CHECK_THROWS_AS(k::force_isa(k::Isa::avx2), std::invalid_argument);
    return;
  }
  const k::KernelTable& ref = k::scalar_table();
  Rng rng(77);
  for (std::size_t n : {0UL, 1UL, 2UL, 3UL, 4UL, 5UL, 7UL, 8UL, 9UL, 15UL, 16UL, 17UL, 81UL, 243UL, 1000UL}) {
    CAPTURE(n);
    const auto x = random_vector(n, rng), y = random_vector(n, rng);
    const double a = ref.dot(x.data(), y.data(), n), b = simd->dot(x.data(), y.data(), n);
    CHECK(std::abs(a - b) <= 1e-13 * (1.0 + static_cast<double>(n)));

    auto y1 = y, y2 = y;
    ref.axpy(0.37, x.data(), y1.data(), n);
    simd->axpy(0.37, x.data(), y2.data(), n);
    CHECK(max_diff(y1, y2) < 1e-15);

    const double v[3] = {0.3, -1.2, 2.5};
    std::vector<double> d1(3 * n), d2(3 * n);
    ref.kron3(x.data(), n, v, d1.data());
    simd->kron3(x.data(), n, v, d2.data());
    CHECK(max_diff(d1, d2) == 0.0);
  }
  for (std::size_t outer : {1UL, 2UL, 3UL, 9UL, 27UL}) {
    for (std::size_t inner : {1UL, 2UL, 3UL, 4UL, 5UL, 9UL, 27UL, 81UL}) {
      CAPTURE(outer);
      CAPTURE(inner);
      const auto m = random_vector(9, rng);
      const auto src = random_vector(outer * 3 * inner, rng);
      std::vector<double> d1(src.size()), d2(src.size());
      ref.mode_apply(m.data(), src.data(), d1.data(), outer, inner);
      simd->mode_apply(m.data(), src.data(), d2.data(), outer, inner);
      CHECK(max_diff(d1, d2) < 1e-14);
    }
  }
}

TEST_CASE("library results agree across kernel variants") {
  if (k::table_for(k::Isa::avx2) == nullptr) return;
  Rng rng(5);
  std::normal_distribution<double> d(0.0, 1.0);
  for (int rank = 1; rank <= 8; ++rank) {
    DenseTensor t(rank);
    for (std::size_t i = 0; i < t.size(); ++i) t.data()[i] = d(rng);
    const Rotation r = random_rotation(rng);
    k::force_isa(k::Isa::scalar);
    const DenseTensor a = rotate(r, t);
    const DenseTensor pa = outer_power(r * Vec3(0.6, 0, 0.8), rank);
    const double ia = inner(a, t);
    k::force_isa(k::Isa::avx2);
    const DenseTensor b = rotate(r, t);
    const DenseTensor pb = outer_power(r * Vec3(0.6, 0, 0.8), rank);
    const double ib = inner(b, t);
    k::force_isa(std::nullopt);
    double m = 0, mp = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
      mp = std::max(mp, std::abs(pa.data()[i] - pb.data()[i]));
    }
    CHECK(m < 1e-12);
    CHECK(mp < 1e-15);
    CHECK(std::abs(ia - ib) < 1e-10);
  }
}
