#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "symquot/embedding.hpp"

namespace symquot {

/// Skew-symmetric basis of so(3), each with Frobenius norm √2:
/// s1 = [e1]x, s2 = [[0,0,-1],[0,0,0],[1,0,0]] (= −[e2]x), s3 = [e3]x.
struct TangentBasis {
  std::array<Mat3, 3> s;
  /// vee(s[l]): the unit rotation axis generated by s[l].
  std::array<Vec3, 3> axis;
};

const TangentBasis& tangent_basis();

/// dE([I]) s_l for l = 1, 2, 3, from the product rule applied to every orbit
/// direction (Σ_i ⊗^i w ⊗ s w ⊗ ⊗^(α−i−1) w), weighted and averaged as in embed.
std::array<SymTensorTuple, 3> differential_at_identity(const EmbeddingSpec& spec);

/// Central differences (E(exp(h s_l)) − E(exp(−h s_l))) / 2h.
std::array<SymTensorTuple, 3> differential_finite_difference(const EmbeddingSpec& spec, double h = 1e-6);

struct IsometryReport {
  Mat3 gram;
  double max_defect;  ///< max |gram − I|
  bool is_isometric;  ///< max_defect < 1e-10
};

IsometryReport isometry_check(const EmbeddingSpec& spec);

/// (‖B1‖², ‖B2‖², ‖B3‖²) for 3 <= k <= 60, evaluated exactly and rounded.
std::array<double, 3> b_norms_closed_form(int k);

/// Weights (β1, β2) making the C_k (u = (e1, e2), α = (1, k)) or D_k
/// (α = (2, k)) embedding locally isometric. Throws std::invalid_argument for
/// other families or k < 3, std::domain_error if no real solution exists.
std::pair<double, double> derive_beta(GroupFamily family, int k);

struct BoundsOptions {
  std::size_t n_pairs = 100000;
  bool refine = true;
  std::uint64_t seed = 0;
  /// Nelder–Mead evaluations per refinement start.
  int refine_evaluations = 200;
  /// Starts taken from each end of the sorted samples.
  int refine_starts = 10;
};

struct BoundsEstimate {
  double c_min = 0;
  double c_max = 0;
  std::size_t sample_count = 0;  ///< random pairs plus near-identity pairs
  int refinement_iterations = 0;  ///< total objective evaluations spent refining
  Rotation argmin;                ///< relative rotation attaining c_min
  Rotation argmax;
};

/// Extremes of ‖E([R1]) − E([R2])‖ / d([R1], [R2]) over sampled pairs.
///
/// Equivariance reduces a pair to its relative rotation Q = R1ᵀR2, so pair i
/// is Q_i = indexed_random_rotation(seed, i); the sample sets for n and 2n
/// are nested. Near-identity pairs at angles 1e-4 .. 1e-1 are always added.
BoundsEstimate global_bounds(const EmbeddingSpec& spec, const BoundsOptions& options = {});

/// c_max / c_min of `global_bounds` for each weight vector applied to the
/// tabulated row of `group_name`.
std::vector<double> bound_ratio_table(std::string_view group_name, const std::vector<std::vector<double>>& betas,
                                      const BoundsOptions& options = {});

struct DistancePair {
  double geodesic;
  double embedded;
};

/// Raw (coset distance, embedded distance) pairs for random coset pairs.
std::vector<DistancePair> distance_scatter(const EmbeddingSpec& spec, std::size_t n_pairs, std::uint64_t seed);

/// ‖(1/N) Σ embed([R_i])‖ over Haar samples. Throws std::invalid_argument
/// for an uncentered spec or n_samples == 0.
double mean_check(const EmbeddingSpec& spec, std::size_t n_samples, std::uint64_t seed = 0);

struct RankReport {
  std::size_t rank;
  std::vector<double> singular_values;
};

/// Numerical rank (σ > 1e-8 σ1) of the matrix of centered samples.
RankReport rank_check(const EmbeddingSpec& spec, std::size_t n_samples = 500, std::uint64_t seed = 0);

}  // namespace symquot
