#pragma once

#include <cstdint>
#include <string>

namespace symquot {

/// Exact rational number with 128-bit numerator and denominator, kept reduced
/// with a positive denominator. Arithmetic throws std::overflow_error instead
/// of wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(__int128 num, __int128 den = 1);  // NOLINT(google-explicit-constructor)

  __int128 numerator() const { return num_; }
  __int128 denominator() const { return den_; }
  double to_double() const;
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator<(const Rational& a, const Rational& b);

 private:
  __int128 num_ = 0;
  __int128 den_ = 1;
};

/// C(n, k) in exact unsigned 64-bit arithmetic; throws std::overflow_error if
/// the value does not fit.
std::uint64_t binomial(unsigned n, unsigned k);

struct BinomialIdentity {
  std::uint64_t lhs;  ///< (α+1) · C(α, α/2)
  std::uint64_t rhs;  ///< Σ_{i1+i2+i3=α/2} C(2i1,i1) C(2i2,i2) C(2i3,i3)
};

/// Both sides of the central-binomial convolution identity for even α in
/// [2, 30]; throws std::invalid_argument otherwise.
BinomialIdentity binom_identity_check(int alpha);

struct BNorms {
  Rational b1, b2, b3;
};

/// Closed-form squared norms of the tangent images of the rank-k component
/// (u = e2) of the C_k embedding, for 3 <= k <= 60.
BNorms b_norms_closed_form_exact(int k);

}  // namespace symquot
