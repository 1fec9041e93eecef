#include "symquot/combinatorics.hpp"

#include <limits>
#include <stdexcept>

namespace symquot {

namespace {

using i128 = __int128;

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 mul_checked(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rational: multiplication overflow");
  return r;
}

i128 add_checked(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rational: addition overflow");
  return r;
}

i128 pow2(int e) {
  if (e < 0 || e > 125) throw std::overflow_error("Rational: power of two out of range");
  return static_cast<i128>(1) << e;
}

}  // namespace

Rational::Rational(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  num_ = g ? num / g : 0;
  den_ = g ? den / g : 1;
}

double Rational::to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

std::string Rational::to_string() const {
  auto str = [](i128 v) {
    if (v == 0) return std::string("0");
    const bool neg = v < 0;
    std::string s;
    for (i128 a = abs128(v); a > 0; a /= 10) s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(a % 10)));
    return neg ? "-" + s : s;
  };
  return den_ == 1 ? str(num_) : str(num_) + "/" + str(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const i128 g = gcd128(a.den_, b.den_);
  const i128 da = a.den_ / g;
  const i128 db = b.den_ / g;
  return Rational(add_checked(mul_checked(a.num_, db), mul_checked(b.num_, da)), mul_checked(a.den_, db));
}

Rational operator-(const Rational& a, const Rational& b) { return a + Rational(-b.num_, b.den_); }

Rational operator*(const Rational& a, const Rational& b) {
  const i128 g1 = gcd128(a.num_, b.den_);
  const i128 g2 = gcd128(b.num_, a.den_);
  const i128 n1 = g1 ? a.num_ / g1 : 0, d2 = g1 ? b.den_ / g1 : b.den_;
  const i128 n2 = g2 ? b.num_ / g2 : 0, d1 = g2 ? a.den_ / g2 : a.den_;
  return Rational(mul_checked(n1, n2), mul_checked(d1, d2));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
  return a * Rational(b.den_, b.num_);
}

bool operator<(const Rational& a, const Rational& b) { return (a - b).num_ < 0; }

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact: r is C(n-k+i, i) after this step
    if (r > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("binomial: overflow");
  }
  return static_cast<std::uint64_t>(r);
}

BinomialIdentity binom_identity_check(int alpha) {
  if (alpha < 2 || alpha > 30 || alpha % 2 != 0) {
    throw std::invalid_argument("binom_identity_check: alpha must be even and in [2, 30]");
  }
  const unsigned h = static_cast<unsigned>(alpha / 2);
  BinomialIdentity out{};
  out.lhs = static_cast<std::uint64_t>(alpha + 1) * binomial(static_cast<unsigned>(alpha), h);
  for (unsigned i1 = 0; i1 <= h; ++i1) {
    for (unsigned i2 = 0; i1 + i2 <= h; ++i2) {
      const unsigned i3 = h - i1 - i2;
      out.rhs += binomial(2 * i1, i1) * binomial(2 * i2, i2) * binomial(2 * i3, i3);
    }
  }
  return out;
}

BNorms b_norms_closed_form_exact(int k) {
  if (k < 3 || k > 60) throw std::invalid_argument("b_norms_closed_form: k must be in [3, 60]");
  const i128 kk = k;
  BNorms out;
  if (k % 2 == 1) {
    out.b1 = Rational(kk * kk, pow2(k - 1));
    out.b2 = Rational(kk, pow2(k));
  } else {
    const unsigned h = static_cast<unsigned>(k / 2);
    const unsigned uk = static_cast<unsigned>(k);
    const i128 c1 = static_cast<i128>(binomial(uk - 2, h - 1));
    const i128 c2 = static_cast<i128>(binomial(uk, h));
    out.b1 = Rational(-kk * (kk - 1) * c1, pow2(k - 2)) + Rational(kk * kk * (c2 + 2), pow2(k));
    const i128 c3 = static_cast<i128>(binomial(uk - 1, h));
    const i128 c4 = static_cast<i128>(binomial(uk - 1, h - 1));
    out.b2 = Rational(kk * (2 + c3 + c4), pow2(k + 1));
  }
  out.b3 = out.b2;
  return out;
}

}  // namespace symquot
