#include "symquot/symmetric_layout.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace symquot {

namespace {

// powers[d][e] = v_d^e for e in [0, alpha].
struct PowerTable {
  std::array<std::array<double, kMaxTensorRank + 1>, 3> p;

  PowerTable(const Vec3& v, int alpha) {
    for (int d = 0; d < 3; ++d) {
      p[d][0] = 1.0;
      for (int e = 1; e <= alpha; ++e) p[d][e] = p[d][e - 1] * v[d];
    }
  }
};

}  // namespace

const SymmetricLayout& SymmetricLayout::get(int alpha) {
  if (alpha < 1 || alpha > kMaxTensorRank) throw std::invalid_argument("SymmetricLayout: rank out of range");
  static std::array<std::unique_ptr<SymmetricLayout>, kMaxTensorRank + 1> cache;
  static std::array<std::once_flag, kMaxTensorRank + 1> flags;
  std::call_once(flags[static_cast<std::size_t>(alpha)],
                 [&] { cache[static_cast<std::size_t>(alpha)].reset(new SymmetricLayout(alpha)); });
  return *cache[static_cast<std::size_t>(alpha)];
}

SymmetricLayout::SymmetricLayout(int alpha) : alpha_(alpha) {
  std::vector<double> fact(static_cast<std::size_t>(alpha) + 1, 1.0);
  for (int i = 1; i <= alpha; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i) - 1] * i;

  // id lookup by (a, b)
  std::vector<std::uint32_t> id((alpha + 1) * (alpha + 1), 0);
  for (int a = alpha; a >= 0; --a) {
    for (int b = alpha - a; b >= 0; --b) {
      const int c = alpha - a - b;
      id[static_cast<std::size_t>(a * (alpha + 1) + b)] = static_cast<std::uint32_t>(monomials_.size());
      monomials_.push_back({a, b, c});
      mult_.push_back(fact[static_cast<std::size_t>(alpha)] /
                      (fact[static_cast<std::size_t>(a)] * fact[static_cast<std::size_t>(b)] *
                       fact[static_cast<std::size_t>(c)]));
      sqrt_mult_.push_back(std::sqrt(mult_.back()));
    }
  }

  const std::size_t n = pow3(alpha);
  class_of_.resize(n);
  for (std::size_t f = 0; f < n; ++f) {
    int cnt[3] = {0, 0, 0};
    std::size_t r = f;
    for (int i = 0; i < alpha; ++i) {
      ++cnt[r % 3];
      r /= 3;
    }
    class_of_[f] = id[static_cast<std::size_t>(cnt[0] * (alpha + 1) + cnt[1])];
  }

  invariant_ = compress(invariant_tensor(alpha));
}

std::vector<double> SymmetricLayout::compress(const DenseTensor& t) const {
  if (t.rank() != alpha_) throw std::invalid_argument("SymmetricLayout::compress: rank mismatch");
  std::vector<double> out(size(), 0.0);
  const double* d = t.data();
  for (std::size_t f = 0; f < class_of_.size(); ++f) out[class_of_[f]] += d[f];
  for (std::size_t m = 0; m < out.size(); ++m) out[m] /= sqrt_mult_[m];
  return out;
}

DenseTensor SymmetricLayout::expand(std::span<const double> compact) const {
  if (compact.size() != size()) throw std::invalid_argument("SymmetricLayout::expand: wrong coordinate count");
  DenseTensor out(alpha_);
  for (std::size_t f = 0; f < class_of_.size(); ++f) {
    const std::uint32_t m = class_of_[f];
    out.data()[f] = compact[m] / sqrt_mult_[m];
  }
  return out;
}

void SymmetricLayout::accumulate_outer_power(const Vec3& v, double weight, double* out) const {
  const PowerTable pw(v, alpha_);
  for (std::size_t m = 0; m < monomials_.size(); ++m) {
    const auto& e = monomials_[m];
    out[m] += weight * sqrt_mult_[m] * pw.p[0][e[0]] * pw.p[1][e[1]] * pw.p[2][e[2]];
  }
}

void SymmetricLayout::monomial_values(const Vec3& v, double* out) const {
  const PowerTable pw(v, alpha_);
  for (std::size_t m = 0; m < monomials_.size(); ++m) {
    const auto& e = monomials_[m];
    out[m] = pw.p[0][e[0]] * pw.p[1][e[1]] * pw.p[2][e[2]];
  }
}

void SymmetricLayout::monomial_gradients(const Vec3& v, double* grad) const {
  const PowerTable pw(v, alpha_);
  for (std::size_t m = 0; m < monomials_.size(); ++m) {
    const auto& e = monomials_[m];
    const double x = pw.p[0][e[0]], y = pw.p[1][e[1]], z = pw.p[2][e[2]];
    grad[3 * m] = e[0] > 0 ? e[0] * pw.p[0][e[0] - 1] * y * z : 0.0;
    grad[3 * m + 1] = e[1] > 0 ? e[1] * x * pw.p[1][e[1] - 1] * z : 0.0;
    grad[3 * m + 2] = e[2] > 0 ? e[2] * x * y * pw.p[2][e[2] - 1] : 0.0;
  }
}

}  // namespace symquot
