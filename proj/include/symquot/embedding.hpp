#pragma once

#include <memory>
#include <string>
#include <vector>

#include "symquot/symmetry.hpp"
#include "symquot/tensor.hpp"

namespace symquot {

/// One direction S·u of a symmetry orbit with its accumulated weight.
/// Directions w and −w are merged (⊗^α(−w) = (−1)^α ⊗^α w), so weights are
/// multiples of 1/|S| and may be negative.
struct OrbitPoint {
  Vec3 w;
  double weight;
};

class EmbeddingSpec;
using SpecPtr = std::shared_ptr<const EmbeddingSpec>;

/// Parameters (group, u, α, β, centered) of the weighted symmetrized tensor
/// embedding R ↦ (β_i / |S| Σ_S ⊗^{α_i}(R S u_i))_i.
class EmbeddingSpec : public std::enable_shared_from_this<EmbeddingSpec> {
 public:
  /// Validates and precomputes the orbits. Throws std::invalid_argument when
  /// lengths differ or are zero, a rank is outside [1, kMaxTensorRank], a
  /// weight is not positive and finite, a direction is farther than 1e-6 from
  /// unit length (closer ones are renormalized), or a component averages to
  /// the zero tensor over the group.
  static SpecPtr create(GroupPtr group, std::vector<Vec3> u, std::vector<int> alpha, std::vector<double> beta,
                        bool centered = true, std::string label = {});

  const GroupPtr& group() const { return group_; }
  const std::vector<Vec3>& u() const { return u_; }
  const std::vector<int>& alpha() const { return alpha_; }
  const std::vector<double>& beta() const { return beta_; }
  bool centered() const { return centered_; }
  /// Registry row name or a caller-chosen tag; informational only.
  const std::string& label() const { return label_; }

  std::size_t component_count() const { return u_.size(); }
  const std::vector<OrbitPoint>& orbit(std::size_t i) const { return orbits_[i]; }

  /// Σ 3^{α_i}.
  std::size_t ambient_dimension() const;
  /// Σ C(α_i + 2, 2): dimension of the symmetric tensor tuples.
  std::size_t compact_dimension() const;
  /// Σ C(α_i + 2, 2) − #{i : α_i even}.
  std::size_t affine_dimension_formula() const;

  SpecPtr with_centered(bool centered) const;
  SpecPtr with_beta(std::vector<double> beta) const;
  /// Same embedding expressed in a frame rotated by q: group Q S Qᵀ, directions Q u.
  SpecPtr conjugated(const Rotation& q) const;

  SpecPtr ptr() const { return shared_from_this(); }

 private:
  EmbeddingSpec() = default;

  GroupPtr group_;
  std::vector<Vec3> u_;
  std::vector<int> alpha_;
  std::vector<double> beta_;
  bool centered_ = true;
  std::string label_;
  std::vector<std::vector<OrbitPoint>> orbits_;
};

struct EmbeddedPoint {
  SymTensorTuple value;
  SpecPtr spec;
};

/// Embedding of the coset (centered when the spec says so). Throws
/// std::invalid_argument when the coset's group differs from the spec's.
EmbeddedPoint embed(const EmbeddingSpec& spec, const Coset& c);

/// Tensor tuple for representative `r`, centered or not regardless of the spec flag.
SymTensorTuple embedding_value(const EmbeddingSpec& spec, const Rotation& r, bool centered);

/// Constant (β_i / (α_i + 1)) M_{α_i} per even component, zero otherwise.
SymTensorTuple centering_shift(const EmbeddingSpec& spec);

/// Same point in the compact coordinates of SymmetricLayout, concatenated
/// over components.
std::vector<double> embed_compact(const EmbeddingSpec& spec, const Rotation& r, bool centered);
inline std::vector<double> embed_compact(const EmbeddingSpec& spec, const Rotation& r) {
  return embed_compact(spec, r, spec.centered());
}

/// ‖embed(spec, [I])‖.
double radius(const EmbeddingSpec& spec);

/// ‖embed(R ▷ c) − R ▷ embed(c)‖.
double equivariance_defect(const EmbeddingSpec& spec, const Rotation& r, const Coset& c);

}  // namespace symquot
