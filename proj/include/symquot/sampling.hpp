#pragma once

#include <cstdint>
#include <random>

#include "symquot/rotation.hpp"

namespace symquot {

using Rng = std::mt19937_64;

/// Haar-uniform rotation from a normalized Gaussian quaternion.
Rotation random_rotation(Rng& rng);

/// Shoemake's map from the unit cube to unit quaternions; uniform input gives
/// a Haar-distributed output.
Rotation rotation_from_unit_cube(double u1, double u2, double u3);

/// Element `index` of an additive-recurrence (R3) low-discrepancy sequence on
/// the cube, pushed through `rotation_from_unit_cube`. `offset` shifts the
/// sequence; distinct offsets give distinct but equally uniform point sets.
Rotation quasi_random_rotation(std::uint64_t index, std::uint64_t offset = 0);

/// Seed for the `index`-th independent stream derived from `seed`
/// (SplitMix64 finalizer). Sampling loops seed one generator per index so that
/// results do not depend on how the loop is partitioned.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// random_rotation drawn from the stream `stream_seed(seed, index)`.
Rotation indexed_random_rotation(std::uint64_t seed, std::uint64_t index);

}  // namespace symquot
