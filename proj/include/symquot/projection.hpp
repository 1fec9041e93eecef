#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "symquot/embedding.hpp"

namespace symquot {

/// Rotation maximizing Σ ⟨R u_i, v_i⟩ (SVD of H = Σ u_i v_iᵀ with a
/// determinant correction). Throws std::invalid_argument on length mismatch
/// or fewer than two pairs, DegenerateInput when rank(H) < 2.
Rotation kabsch(std::span<const Vec3> us, std::span<const Vec3> vs);

/// J(R) = ⟨uncentered embedding of [R], target⟩.
double objective(const EmbeddingSpec& spec, const Rotation& r, const SymTensorTuple& target);

/// Directional derivatives of J along t ↦ exp(t s_l) R, l = 1, 2, 3, from
/// first-mode products of the rotated identity embedding against the
/// symmetrized target.
Vec3 gradient(const EmbeddingSpec& spec, const Rotation& r, const SymTensorTuple& target);

/// J and its gradient with the target reduced to one polynomial per
/// component: ⟨⊗^α v, T⟩ = Σ_m c_m v^m, c_m the sum of T over index class m.
class ObjectiveEvaluator {
 public:
  ObjectiveEvaluator(const EmbeddingSpec& spec, const SymTensorTuple& target);

  double value(const Rotation& r) const;
  /// Value, with the gradient written to `grad`.
  double value_and_gradient(const Rotation& r, Vec3& grad) const;

 private:
  const EmbeddingSpec& spec_;
  std::vector<std::vector<double>> coef_;
  mutable std::vector<double> scratch_;
};

struct ProjectionOptions {
  double tol = 1e-10;
  int max_iter = 200;
  /// Number of quasi-random starts; default max(8, |S|).
  std::optional<int> starts;
  std::uint64_t seed = 0;
  /// Skip the closed-form route for rank-1-only C1 specs.
  bool force_gradient = false;
};

struct ProjectionResult {
  Coset coset;
  double objective;  ///< ⟨embed(spec, coset).value, target⟩
  double residual;   ///< ‖embed(spec, coset).value − target‖
  int iterations;
  bool converged;
  int start_index;  ///< winning start (0 is the closed-form seed when present)
};

/// Point of the embedded manifold closest to `target`.
///
/// Gradient ascent of J with an exponential retraction and Armijo
/// backtracking (initial step 0.5 rad, shrink 0.5, slope 1e-4) from several
/// starts; the best objective wins, ties going to the lowest start index.
/// Throws std::invalid_argument on a signature mismatch and DegenerateInput
/// for a zero target.
ProjectionResult project(const EmbeddingSpec& spec, const SymTensorTuple& target, const ProjectionOptions& options = {});

}  // namespace symquot
