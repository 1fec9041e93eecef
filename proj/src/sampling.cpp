#include "symquot/sampling.hpp"

#include <cmath>
#include <numbers>

namespace symquot {

Rotation random_rotation(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    const double w = normal(rng);
    const double x = normal(rng);
    const double y = normal(rng);
    const double z = normal(rng);
    if (w * w + x * x + y * y + z * z > 1e-24) return Rotation::from_quaternion(w, x, y, z);
  }
}

Rotation rotation_from_unit_cube(double u1, double u2, double u3) {
  const double a = std::sqrt(1.0 - u1);
  const double b = std::sqrt(u1);
  const double t2 = 2.0 * std::numbers::pi * u2;
  const double t3 = 2.0 * std::numbers::pi * u3;
  return Rotation::from_quaternion(b * std::cos(t3), a * std::sin(t2), a * std::cos(t2), b * std::sin(t3));
}

Rotation quasi_random_rotation(std::uint64_t index, std::uint64_t offset) {
  // Plastic-number generalization of the golden ratio for three dimensions.
  constexpr double g = 1.2207440846057594;
  constexpr double a1 = 1.0 / g;
  constexpr double a2 = 1.0 / (g * g);
  constexpr double a3 = 1.0 / (g * g * g);
  const std::uint64_t s = stream_seed(offset, 0);
  const double shift = offset == 0 ? 0.5 : static_cast<double>(s >> 11) * 0x1.0p-53;
  const double n = static_cast<double>(index + 1);
  auto frac = [](double v) { return v - std::floor(v); };
  return rotation_from_unit_cube(frac(shift + n * a1), frac(shift + n * a2), frac(shift + n * a3));
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rotation indexed_random_rotation(std::uint64_t seed, std::uint64_t index) {
  Rng rng(stream_seed(seed, index));
  return random_rotation(rng);
}

}  // namespace symquot
