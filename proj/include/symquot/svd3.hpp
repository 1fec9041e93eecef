#pragma once

#include "symquot/rotation.hpp"

namespace symquot {

struct SymEigen3 {
  Vec3 values;   ///< descending
  Mat3 vectors;  ///< columns, orthonormal
  int sweeps;
};

/// Cyclic Jacobi eigendecomposition of a symmetric 3x3 matrix (at most 30
/// sweeps; stops once the off-diagonal mass is below round-off).
SymEigen3 jacobi_eigen_symmetric(const Mat3& a);

struct Svd3 {
  Mat3 u;
  Vec3 sigma;  ///< descending, nonnegative
  Mat3 v;      ///< a = u · diag(sigma) · vᵀ
};

/// SVD from the eigendecomposition of aᵀa. Columns of u belonging to
/// negligible singular values are completed to an orthonormal basis.
Svd3 svd3(const Mat3& a);

}  // namespace symquot
