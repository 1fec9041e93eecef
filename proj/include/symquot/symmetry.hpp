#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symquot/rotation.hpp"

namespace symquot {

enum class GroupFamily { cyclic, dihedral, tetrahedral, octahedral, icosahedral, custom };

/// A finite subgroup of SO(3) given by its full element list.
///
/// Orientation convention for the named groups:
///  * C_k, D_k: k-fold axis along e1; D_k has a two-fold axis along e2.
///  * T, O: a three-fold axis along (1,1,1); two-fold (T) or four-fold (O)
///    axes along the coordinate axes.
///  * Y: five-fold axis through the icosahedron vertex (0, 1, Phi); two-fold
///    axes along the coordinate axes.
class SymmetryGroup {
 public:
  /// Canonical group by family name ("C", "D", "T", "O", "Y") or full name
  /// ("C4", "D6", "Ck" with `k`). Throws std::invalid_argument on unknown names
  /// or k < 1.
  static std::shared_ptr<const SymmetryGroup> make(std::string_view name,
                                                   std::optional<int> k = std::nullopt);

  /// Arbitrary finite group. The list is checked for closure and identity.
  static std::shared_ptr<const SymmetryGroup> from_elements(std::string name,
                                                            std::vector<Rotation> elements);

  /// The group Q S Qᵀ, named "<name>^Q".
  std::shared_ptr<const SymmetryGroup> conjugated(const Rotation& q) const;

  const std::string& name() const { return name_; }
  GroupFamily family() const { return family_; }
  /// Axis order for C_k / D_k, 0 otherwise.
  int order_parameter() const { return k_; }
  std::size_t size() const { return elements_.size(); }
  std::span<const Rotation> elements() const { return elements_; }

  /// True when both lists contain the same rotations (within 1e-10).
  bool same_as(const SymmetryGroup& other) const;

 private:
  SymmetryGroup(std::string name, GroupFamily family, int k, std::vector<Rotation> elements);

  std::string name_;
  GroupFamily family_ = GroupFamily::custom;
  int k_ = 0;
  std::vector<Rotation> elements_;
};

using GroupPtr = std::shared_ptr<const SymmetryGroup>;

/// Same as SymmetryGroup::make.
GroupPtr group_elements(std::string_view name, std::optional<int> k = std::nullopt);

/// The names with tabulated embedding parameters, in table order.
std::vector<std::string> crystallographic_group_names();

/// A coset [R]_S = {R S : S in group}.
class Coset {
 public:
  Coset(Rotation representative, GroupPtr group);

  const Rotation& representative() const { return rep_; }
  const GroupPtr& group() const { return group_; }

  /// Left action Q ▷ [R] = [Q R].
  Coset rotated_by(const Rotation& q) const { return Coset(q * rep_, group_); }

 private:
  Rotation rep_;
  GroupPtr group_;
};

/// min over S of geodesic_distance(c1.rep · S, c2.rep); throws
/// std::invalid_argument when the groups differ.
double coset_distance(const Coset& c1, const Coset& c2);

/// True when coset_distance < tol.
bool same_coset(const Coset& c1, const Coset& c2, double tol = 1e-10);

/// The element R·S of the coset closest to the identity; ties (within 1e-12)
/// go to the lexicographically smallest canonical quaternion.
Rotation fundamental_representative(const Coset& c);

}  // namespace symquot
