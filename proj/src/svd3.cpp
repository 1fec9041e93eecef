#include "symquot/svd3.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace symquot {

SymEigen3 jacobi_eigen_symmetric(const Mat3& a_in) {
  Mat3 a = 0.5 * (a_in + a_in.transpose());
  Mat3 v = Mat3::Identity();
  int sweep = 0;
  const double scale = std::max(a.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  for (; sweep < 30; ++sweep) {
    const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (off <= 1e-36 * scale * scale) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        Mat3 j = Mat3::Identity();
        j(p, p) = c;
        j(q, q) = c;
        j(p, q) = s;
        j(q, p) = -s;
        a = j.transpose() * a * j;
        a(p, q) = a(q, p) = 0.0;
        v = v * j;
      }
    }
  }
  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) > a(y, y); });
  SymEigen3 out;
  out.sweeps = sweep;
  for (int i = 0; i < 3; ++i) {
    out.values[i] = a(order[i], order[i]);
    out.vectors.col(i) = v.col(order[i]);
  }
  return out;
}

Svd3 svd3(const Mat3& a) {
  const SymEigen3 eig = jacobi_eigen_symmetric(a.transpose() * a);
  Svd3 out;
  out.v = eig.vectors;
  // Singular values as column norms of a·V, descending.
  const Mat3 b = a * out.v;
  for (int i = 0; i < 3; ++i) out.sigma[i] = b.col(i).norm();
  for (int i = 0; i < 2; ++i) {
    if (out.sigma[i + 1] > out.sigma[i]) {
      std::swap(out.sigma[i], out.sigma[i + 1]);
      out.v.col(i).swap(out.v.col(i + 1));
    }
  }
  const Mat3 bs = a * out.v;

  const double tol = 1e-12 * std::max(out.sigma[0], std::numeric_limits<double>::min());
  if (out.sigma[0] <= tol) {
    out.u = Mat3::Identity();
    return out;
  }
  const Vec3 u0 = bs.col(0) / out.sigma[0];
  Vec3 u1;
  if (out.sigma[1] > tol) {
    u1 = bs.col(1) / out.sigma[1];
    u1 = (u1 - u0.dot(u1) * u0).normalized();
  } else {
    const Vec3 helper = std::abs(u0.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    u1 = u0.cross(helper).normalized();
  }
  Vec3 u2 = u0.cross(u1);
  if (out.sigma[2] > tol && bs.col(2).dot(u2) < 0.0) u2 = -u2;
  out.u.col(0) = u0;
  out.u.col(1) = u1;
  out.u.col(2) = u2;
  return out;
}

}  // namespace symquot
