#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "symquot/rotation.hpp"

namespace symquot {

inline constexpr int kMaxTensorRank = 12;

/// 3^rank for rank in [0, kMaxTensorRank].
std::size_t pow3(int rank);

/// Dense tensor over R³ of rank α, 3^α entries in row-major index order
/// (the last index varies fastest).
class DenseTensor {
 public:
  DenseTensor() = default;

  /// Zero tensor. Throws std::invalid_argument outside [0, kMaxTensorRank].
  explicit DenseTensor(int rank);

  /// Takes ownership of `entries`, which must hold exactly 3^rank values.
  DenseTensor(int rank, std::vector<double> entries);

  int rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::span<const double> entries() const { return data_; }
  std::span<double> entries() { return data_; }

  /// Entry at zero-based multi-index (each value in {0, 1, 2}).
  double operator()(std::span<const int> index) const { return data_[flat_index(index)]; }
  double& operator()(std::span<const int> index) { return data_[flat_index(index)]; }
  std::size_t flat_index(std::span<const int> index) const;

  double squared_norm() const;
  double norm() const;

  /// True when every transposition of adjacent indices leaves the entries
  /// unchanged within `tol` (adjacent transpositions generate all permutations).
  bool is_symmetric(double tol = 1e-12) const;

  DenseTensor& operator+=(const DenseTensor& rhs);
  DenseTensor& operator-=(const DenseTensor& rhs);
  DenseTensor& operator*=(double s);
  /// this += a * x
  DenseTensor& add_scaled(double a, const DenseTensor& x);

  friend DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
  friend DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }
  friend DenseTensor operator*(double s, DenseTensor a) { return a *= s; }

 private:
  void require_same_rank(const DenseTensor& other, const char* op) const;

  int rank_ = 0;
  std::vector<double> data_{0.0};
};

/// Tuple of dense tensors; inner product and norm are sums over components.
class SymTensorTuple {
 public:
  SymTensorTuple() = default;
  explicit SymTensorTuple(std::vector<DenseTensor> components) : comps_(std::move(components)) {}

  /// Zero tuple with the given ranks.
  static SymTensorTuple zeros(std::span<const int> ranks);

  /// Splits `flat` into components of the given ranks; throws
  /// std::invalid_argument when the length is not Σ 3^rank.
  static SymTensorTuple from_flat(std::span<const int> ranks, std::span<const double> flat);

  std::size_t component_count() const { return comps_.size(); }
  const DenseTensor& operator[](std::size_t i) const { return comps_[i]; }
  DenseTensor& operator[](std::size_t i) { return comps_[i]; }
  const std::vector<DenseTensor>& components() const { return comps_; }

  std::vector<int> ranks() const;
  /// Σ 3^rank over components.
  std::size_t dimension() const;
  std::vector<double> flatten() const;

  double squared_norm() const;
  double norm() const;

  SymTensorTuple& operator+=(const SymTensorTuple& rhs);
  SymTensorTuple& operator-=(const SymTensorTuple& rhs);
  SymTensorTuple& operator*=(double s);

  friend SymTensorTuple operator+(SymTensorTuple a, const SymTensorTuple& b) { return a += b; }
  friend SymTensorTuple operator-(SymTensorTuple a, const SymTensorTuple& b) { return a -= b; }
  friend SymTensorTuple operator*(double s, SymTensorTuple a) { return a *= s; }

 private:
  void require_same_signature(const SymTensorTuple& other) const;

  std::vector<DenseTensor> comps_;
};

/// ⊗^α v. Throws std::invalid_argument for α < 1 or α > kMaxTensorRank.
DenseTensor outer_power(const Vec3& v, int alpha);

/// d/dt ⊗^α(v + t w) at t = 0, i.e. Σ_i ⊗^i v ⊗ w ⊗ ⊗^(α−i−1) v.
DenseTensor outer_power_derivative(const Vec3& v, const Vec3& w, int alpha);

/// The rotation-invariant tensor M_α (symmetrized ⊗^(α/2) I); the zero
/// tensor for odd α. Entry values depend only on how often each index value
/// occurs, and are computed by counting index pairings.
DenseTensor invariant_tensor(int alpha);

/// Frobenius pairing; throws std::invalid_argument on rank mismatch.
double inner(const DenseTensor& a, const DenseTensor& b);
/// Σ over components; throws std::invalid_argument on signature mismatch.
double inner(const SymTensorTuple& a, const SymTensorTuple& b);

/// (⊗^α m) t through α single-mode contractions.
DenseTensor multiply_all_modes(const Mat3& m, const DenseTensor& t);

/// Rotation action R ▷ t = (⊗^α R) t.
DenseTensor rotate(const Rotation& r, const DenseTensor& t);
SymTensorTuple rotate(const Rotation& r, const SymTensorTuple& t);

/// Contracts `m` against index `mode` (zero-based) only.
DenseTensor mode_multiply(const Mat3& m, const DenseTensor& t, int mode);

/// mode_multiply along the first index. Throws std::invalid_argument for rank 0.
DenseTensor mode1_multiply(const Mat3& m, const DenseTensor& t);

/// Average of t over all index permutations.
DenseTensor symmetrize(const DenseTensor& t);

}  // namespace symquot
