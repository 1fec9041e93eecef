#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "symquot/rotation.hpp"
#include "symquot/tensor.hpp"

namespace symquot {

/// Compact orthonormal coordinates on the symmetric rank-α tensors.
///
/// A symmetric tensor is fixed by one value per monomial x^a y^b z^c with
/// a + b + c = α, i.e. C(α+2, 2) numbers. Coordinate m holds the sum of the
/// entries of its index class divided by the square root of the class size,
/// so the map is an isometry from the symmetric subspace onto R^C(α+2,2) and
/// the orthogonal projection of a general tensor otherwise.
class SymmetricLayout {
 public:
  /// Shared instance for ranks 1..kMaxTensorRank.
  static const SymmetricLayout& get(int alpha);

  int rank() const { return alpha_; }
  std::size_t size() const { return monomials_.size(); }

  /// Exponents (a, b, c), ordered by descending a, then descending b.
  const std::vector<std::array<int, 3>>& monomials() const { return monomials_; }

  /// Class size α! / (a! b! c!).
  const std::vector<double>& multiplicities() const { return mult_; }

  /// Monomial id of every dense flat index.
  const std::vector<std::uint32_t>& class_of() const { return class_of_; }

  std::vector<double> compress(const DenseTensor& t) const;

  /// Symmetric dense tensor with the given compact coordinates.
  DenseTensor expand(std::span<const double> compact) const;

  /// out[m] += weight · sqrt(mult[m]) · v^(a,b,c): compact form of weight·⊗^α v.
  void accumulate_outer_power(const Vec3& v, double weight, double* out) const;

  /// Compact coordinates of M_α.
  const std::vector<double>& invariant() const { return invariant_; }

  /// out[m] = v^(a,b,c) (plain monomial values, no scaling).
  void monomial_values(const Vec3& v, double* out) const;

  /// Gradients of the monomials at v: grad[3m + d] = ∂_d v^(a,b,c).
  void monomial_gradients(const Vec3& v, double* grad) const;

 private:
  explicit SymmetricLayout(int alpha);

  int alpha_;
  std::vector<std::array<int, 3>> monomials_;
  std::vector<double> mult_;
  std::vector<double> sqrt_mult_;
  std::vector<std::uint32_t> class_of_;
  std::vector<double> invariant_;
};

}  // namespace symquot
