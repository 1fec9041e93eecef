#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "symquot/analysis.hpp"
#include "symquot/combinatorics.hpp"
#include "symquot/symmetric_layout.hpp"

using namespace symquot;

TEST_CASE("outer_power") {
  const DenseTensor t = outer_power(Vec3(1, 2, 3), 2);
  CHECK(t.rank() == 2);
  const std::vector<double> expected{1, 2, 3, 2, 4, 6, 3, 6, 9};
  for (std::size_t i = 0; i < 9; ++i) CHECK(t.data()[i] == expected[i]);
  CHECK(outer_power(Vec3::UnitX(), 5).data()[0] == 1.0);
  CHECK(outer_power(Vec3::UnitX(), 5).norm() == 1.0);
  CHECK_THROWS_AS(outer_power(Vec3::UnitX(), 0), std::invalid_argument);
  CHECK_THROWS_AS(outer_power(Vec3::UnitX(), kMaxTensorRank + 1), std::invalid_argument);

  Rng rng(1);
  for (int a = 1; a <= 8; ++a) {
    const Vec3 v = oracle::random_unit(rng) * 1.3;
    const DenseTensor p = outer_power(v, a);
    CHECK(oracle::max_abs_diff(p, oracle::outer_power(v, a)) < 1e-14);
    CHECK(p.is_symmetric());
    CHECK(p.norm() == doctest::Approx(std::pow(1.3, a)).epsilon(1e-12));
  }
  SUBCASE("derivative against finite differences") {
    const Vec3 v = oracle::random_unit(rng), w = oracle::random_unit(rng);
    for (int a = 1; a <= 6; ++a) {
      const double h = 1e-6;
      DenseTensor fd = outer_power(v + h * w, a) - outer_power(v - h * w, a);
      fd *= 1.0 / (2 * h);
      CHECK(oracle::max_abs_diff(fd, outer_power_derivative(v, w, a)) < 1e-8);
    }
  }
}

TEST_CASE("dense tensor basics") {
  CHECK_THROWS_AS(DenseTensor(-1), std::invalid_argument);
  CHECK_THROWS_AS(DenseTensor(kMaxTensorRank + 1), std::invalid_argument);
  CHECK_THROWS_AS(DenseTensor(2, std::vector<double>(8)), std::invalid_argument);
  DenseTensor a(2), b(3);
  CHECK_THROWS_AS(a += b, std::invalid_argument);
  CHECK_THROWS_AS(inner(a, b), std::invalid_argument);
  const std::array<int, 3> idx{2, 0, 1};
  CHECK(b.flat_index(idx) == 19);
  b(idx) = 4.0;
  CHECK_FALSE(b.is_symmetric());
  CHECK(symmetrize(b).is_symmetric());
  CHECK(symmetrize(b).norm() < b.norm());

  const std::vector<int> ranks{1, 2};
  CHECK_THROWS_AS(SymTensorTuple::from_flat(ranks, std::vector<double>(11)), std::invalid_argument);
  const auto t = SymTensorTuple::from_flat(ranks, std::vector<double>(12, 1.0));
  CHECK(t.dimension() == 12);
  CHECK(t.squared_norm() == 12.0);
  CHECK(t.flatten() == std::vector<double>(12, 1.0));
  CHECK_THROWS_AS(inner(t, SymTensorTuple::zeros(std::vector<int>{1})), std::invalid_argument);

  Rng rng(9);
  for (int n = 0; n < 1000; ++n) {
    const DenseTensor x = oracle::random_tensor(3, rng), y = oracle::random_tensor(3, rng);
    CHECK(std::abs(inner(x, y)) <= x.norm() * y.norm() + 1e-12);
  }
  CHECK(inner(DenseTensor(2), DenseTensor(2)) == 0.0);
}

TEST_CASE("invariant tensor") {
  CHECK(oracle::max_abs_diff(invariant_tensor(2), DenseTensor(2, {1, 0, 0, 0, 1, 0, 0, 0, 1})) == 0.0);
  const DenseTensor m4 = invariant_tensor(4);
  for (std::size_t f = 0; f < m4.size(); ++f) {
    auto d = oracle::digits(f, 4);
    std::map<int, int> counts;
    for (int k : d) ++counts[k];
    double expected = 0.0;
    if (counts.size() == 1) expected = 1.0;
    if (counts.size() == 2 && counts.begin()->second == 2) expected = 1.0 / 3.0;
    CHECK(m4.data()[f] == doctest::Approx(expected).epsilon(1e-15));
  }
  for (int a : {2, 4, 6}) {
    CHECK(oracle::max_abs_diff(invariant_tensor(a), oracle::invariant_by_permutations(a)) < 1e-14);
  }
  for (int a : {1, 3, 5}) CHECK(invariant_tensor(a).norm() == 0.0);

  Rng rng(4);
  for (int a : {2, 4, 6, 8, 10}) {
    CAPTURE(a);
    const DenseTensor m = invariant_tensor(a);
    CHECK(m.squared_norm() == doctest::Approx(a + 1).epsilon(1e-12));
    CHECK(m.is_symmetric());
    const Rotation r = random_rotation(rng);
    CHECK(oracle::max_abs_diff(rotate(r, m), m) < 1e-10);
    CHECK(inner(outer_power(random_rotation(rng) * Vec3(0, 0.6, 0.8), a), m) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("compact form matches the dense tensor") {
    for (int a : {2, 4, 8}) {
      const auto& layout = SymmetricLayout::get(a);
      const auto c = layout.compress(invariant_tensor(a));
      for (std::size_t m = 0; m < c.size(); ++m) CHECK(c[m] == doctest::Approx(layout.invariant()[m]).epsilon(1e-13));
    }
  }
}

TEST_CASE("rotation action") {
  Rng rng(13);
  for (int a = 1; a <= 6; ++a) {
    CAPTURE(a);
    const DenseTensor t = oracle::random_tensor(a, rng), s = oracle::random_tensor(a, rng);
    const Rotation r1 = random_rotation(rng), r2 = random_rotation(rng);
    const DenseTensor rt = rotate(r1, t);
    CHECK(std::abs(rt.norm() - t.norm()) < 1e-12 * t.norm());
    CHECK(std::abs(inner(rt, rotate(r1, s)) - inner(t, s)) < 1e-10);
    CHECK(oracle::max_abs_diff(rotate(r2, rt), rotate(r2 * r1, t)) < 1e-10);
    CHECK(oracle::max_abs_diff(rt, oracle::rotate(r1.matrix(), t)) < 1e-12);
    CHECK(oracle::max_abs_diff(rotate(Rotation::identity(), t), t) < 1e-15);
    const Vec3 u = oracle::random_unit(rng);
    CHECK(oracle::max_abs_diff(rotate(r1, outer_power(u, a)), outer_power(r1 * u, a)) < 1e-12);
  }
}

TEST_CASE("mode products") {
  const Mat3 s3 = tangent_basis().s[2];
  const DenseTensor e11 = outer_power(Vec3::UnitX(), 2);
  DenseTensor e21(2);
  e21.data()[3 * 1 + 0] = 1.0;
  CHECK(oracle::max_abs_diff(mode1_multiply(s3, e11), e21) == 0.0);
  CHECK_THROWS_AS(mode1_multiply(s3, DenseTensor(0)), std::invalid_argument);

  Rng rng(21);
  for (int n = 0; n < 20; ++n) {
    const DenseTensor t = oracle::random_tensor(4, rng);
    Mat3 m = Mat3::Random();
    CHECK(oracle::max_abs_diff(mode1_multiply(Mat3::Identity(), t), t) == 0.0);
    CHECK(oracle::max_abs_diff(mode1_multiply(m, t), oracle::mode_multiply(m, t, 0)) < 1e-13);
    for (int mode = 0; mode < 4; ++mode) {
      CHECK(oracle::max_abs_diff(mode_multiply(m, t, mode), oracle::mode_multiply(m, t, mode)) < 1e-13);
    }
    CHECK(oracle::max_abs_diff(multiply_all_modes(m, t), oracle::rotate(m, t)) < 1e-12);
  }
}

TEST_CASE("symmetric layout") {
  for (int a = 1; a <= 10; ++a) {
    CAPTURE(a);
    const auto& layout = SymmetricLayout::get(a);
    CHECK(layout.size() == static_cast<std::size_t>((a + 2) * (a + 1) / 2));
    double total = 0.0;
    for (double m : layout.multiplicities()) total += m;
    CHECK(total == doctest::Approx(std::pow(3.0, a)));
    CHECK(layout.monomials().front() == std::array<int, 3>{a, 0, 0});
    CHECK(layout.monomials().back() == std::array<int, 3>{0, 0, a});
  }
  CHECK_THROWS_AS(SymmetricLayout::get(0), std::invalid_argument);

  Rng rng(31);
  for (int a : {1, 3, 4, 7}) {
    const auto& layout = SymmetricLayout::get(a);
    const DenseTensor x = symmetrize(oracle::random_tensor(a, rng)), y = symmetrize(oracle::random_tensor(a, rng));
    const auto cx = layout.compress(x), cy = layout.compress(y);
    double d = 0.0;
    for (std::size_t i = 0; i < cx.size(); ++i) d += cx[i] * cy[i];
    CHECK(d == doctest::Approx(inner(x, y)).epsilon(1e-12));
    CHECK(oracle::max_abs_diff(layout.expand(cx), x) < 1e-13);

    const Vec3 v = oracle::random_unit(rng);
    std::vector<double> acc(layout.size(), 0.0);
    layout.accumulate_outer_power(v, 0.5, acc.data());
    const auto expected = layout.compress(0.5 * outer_power(v, a));
    for (std::size_t i = 0; i < acc.size(); ++i) CHECK(acc[i] == doctest::Approx(expected[i]).epsilon(1e-12));

    std::vector<double> g(3 * layout.size()), vp(layout.size()), vm(layout.size());
    layout.monomial_gradients(v, g.data());
    for (int dim = 0; dim < 3; ++dim) {
      const double h = 1e-6;
      Vec3 step = Vec3::Zero();
      step[dim] = h;
      layout.monomial_values(v + step, vp.data());
      layout.monomial_values(v - step, vm.data());
      for (std::size_t m = 0; m < layout.size(); ++m) {
        CHECK(g[3 * m + static_cast<std::size_t>(dim)] == doctest::Approx((vp[m] - vm[m]) / (2 * h)).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("combinatorics") {
  CHECK(binomial(10, 5) == 252);
  CHECK(binomial(60, 30) == 118264581564861424ULL);
  CHECK(binomial(5, 7) == 0);
  CHECK_THROWS_AS(binomial(70, 35), std::overflow_error);

  CHECK(binom_identity_check(2).lhs == 6);
  CHECK(binom_identity_check(2).rhs == 6);
  CHECK(binom_identity_check(4).lhs == 30);
  CHECK(binom_identity_check(4).rhs == 30);
  for (int a = 2; a <= 30; a += 2) {
    const auto r = binom_identity_check(a);
    CHECK(r.lhs == r.rhs);
    CHECK(r.lhs == (a + 1) * binomial(static_cast<unsigned>(a), static_cast<unsigned>(a / 2)));
  }
  // Independent brute force of the right-hand side for a small case.
  std::uint64_t rhs = 0;
  for (unsigned i = 0; i <= 5; ++i) {
    for (unsigned j = 0; i + j <= 5; ++j) rhs += binomial(2 * i, i) * binomial(2 * j, j) * binomial(2 * (5 - i - j), 5 - i - j);
  }
  CHECK(binom_identity_check(10).rhs == rhs);
  CHECK_THROWS_AS(binom_identity_check(3), std::invalid_argument);
  CHECK_THROWS_AS(binom_identity_check(32), std::invalid_argument);

  SUBCASE("rational arithmetic") {
    const Rational a(1, 3), b(-2, 6);
    CHECK(a + b == Rational(0));
    CHECK(a * Rational(3) == Rational(1));
    CHECK((a / Rational(2)).to_string() == "1/6");
    CHECK(b < a);
    CHECK(Rational(4, -8).denominator() == 2);
    CHECK(Rational(4, -8).numerator() == -1);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK(Rational(7, 2).to_double() == 3.5);
  }
}

TEST_CASE("tangent norm closed forms") {
  CHECK_THROWS_AS(b_norms_closed_form_exact(2), std::invalid_argument);
  CHECK_THROWS_AS(b_norms_closed_form_exact(61), std::invalid_argument);
  for (int k = 3; k <= 60; ++k) {
    const auto b = b_norms_closed_form_exact(k);
    const auto d = b_norms_closed_form(k);
    CHECK(b.b1.to_double() == d[0]);
    CHECK(b.b2 == b.b3);
    CHECK(Rational(0) < b.b1);
  }
}
