#include <doctest.h>

#include <chrono>

#include "oracles.hpp"
#include "symquot/analysis.hpp"
#include "symquot/projection.hpp"
#include "symquot/registry.hpp"
#include "symquot/svd3.hpp"

using namespace symquot;

namespace {

std::vector<SpecPtr> table_specs() {
  std::vector<SpecPtr> out;
  for (const auto& n : registry_group_names()) out.push_back(registry_lookup(n));
  return out;
}

SymTensorTuple add_noise(SymTensorTuple t, double sigma, Rng& rng) {
  std::normal_distribution<double> d(0.0, sigma);
  for (std::size_t i = 0; i < t.component_count(); ++i) {
    for (std::size_t j = 0; j < t[i].size(); ++j) t[i].data()[j] += d(rng);
  }
  return t;
}

double fd_gradient(const EmbeddingSpec& spec, const Rotation& r, const SymTensorTuple& target, int l, double h) {
  const Mat3& s = tangent_basis().s[static_cast<std::size_t>(l)];
  return (objective(spec, Rotation::exp_skew(h * s) * r, target) - objective(spec, Rotation::exp_skew(-h * s) * r, target)) /
         (2 * h);
}

}  // namespace

TEST_CASE("symmetric eigen and svd") {
  Rng rng(3);
  std::normal_distribution<double> d(0.0, 1.0);
  for (int n = 0; n < 200; ++n) {
    Mat3 a;
    for (int i = 0; i < 9; ++i) a.data()[i] = d(rng);
    const Mat3 sym = a + a.transpose();
    const SymEigen3 e = jacobi_eigen_symmetric(sym);
    CHECK((e.vectors * e.values.asDiagonal() * e.vectors.transpose() - sym).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((e.vectors.transpose() * e.vectors - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(e.values[0] >= e.values[1]);
    CHECK(e.values[1] >= e.values[2]);
    CHECK(e.sweeps <= 30);

    const Svd3 s = svd3(a);
    CHECK((s.u * s.sigma.asDiagonal() * s.v.transpose() - a).cwiseAbs().maxCoeff() < 1e-11);
    CHECK((s.u.transpose() * s.u - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(s.sigma[2] >= 0.0);
    const Eigen::JacobiSVD<Mat3> ref(a);
    CHECK((s.sigma - ref.singularValues()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("rank-deficient input") {
    const Vec3 x(1, 2, 3), y(0, 1, -1);
    const Svd3 s = svd3(x * y.transpose());
    CHECK(s.sigma[1] < 1e-15);
    CHECK((s.u.transpose() * s.u - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(svd3(Mat3::Zero()).sigma.norm() == 0.0);
  }
}

TEST_CASE("kabsch") {
  const std::vector<Vec3> basis{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  CHECK(kabsch(basis, basis).angle() < 1e-12);
  Rng rng(10);
  for (int n = 0; n < 100; ++n) {
    const Rotation q = random_rotation(rng);
    std::vector<Vec3> v;
    for (const Vec3& u : basis) v.push_back(q * u);
    CHECK(geodesic_distance(kabsch(basis, v), q) < 1e-10);
  }
  const std::vector<Vec3> two{Vec3::UnitX(), Vec3::UnitY()};
  const Rotation q = random_rotation(rng);
  const std::vector<Vec3> two_img{q * two[0], q * two[1]};
  CHECK(geodesic_distance(kabsch(two, two_img), q) < 1e-10);
  CHECK_THROWS_AS(kabsch(std::vector<Vec3>{Vec3::UnitX(), 2 * Vec3::UnitX()}, two), DegenerateInput);
  CHECK_THROWS_AS(kabsch(basis, two), std::invalid_argument);
  CHECK_THROWS_AS(kabsch(std::vector<Vec3>{Vec3::UnitX()}, std::vector<Vec3>{Vec3::UnitY()}), std::invalid_argument);

  SUBCASE("noisy pairs against a 2 degree grid search") {
    std::normal_distribution<double> d(0.0, 0.2);
    for (int trial = 0; trial < 3; ++trial) {
      const Rotation truth = random_rotation(rng);
      std::vector<Vec3> us, vs;
      double weight = 0.0;
      for (int i = 0; i < 5; ++i) {
        us.push_back(oracle::random_unit(rng));
        vs.push_back(truth * us.back() + Vec3(d(rng), d(rng), d(rng)));
        weight += us.back().norm() * vs.back().norm();
      }
      auto score = [&](const Mat3& r) {
        double s = 0.0;
        for (std::size_t i = 0; i < us.size(); ++i) s += (r * us[i]).dot(vs[i]);
        return s;
      };
      const double best = score(kabsch(us, vs).matrix());
      double grid = -1e300;
      const double step = 2.0 * std::numbers::pi / 180.0;
      for (double a = 0; a < 2 * std::numbers::pi; a += step) {
        const Mat3 za = oracle::rot_z(a);
        for (double b = 0; b <= std::numbers::pi; b += step) {
          const Mat3 zab = za * oracle::rot_y(b);
          for (double c = 0; c < 2 * std::numbers::pi; c += step) grid = std::max(grid, score(zab * oracle::rot_z(c)));
        }
      }
      // Grid covering radius 3 degrees, quadratic loss at the maximum.
      const double eps = 3.0 * std::numbers::pi / 180.0;
      CHECK(best >= grid - 1e-12);
      CHECK(best - grid <= weight * eps * eps);
    }
  }
}

TEST_CASE("objective") {
  Rng rng(20);
  for (const SpecPtr& spec : table_specs()) {
    CAPTURE(spec->label());
    const Rotation r = random_rotation(rng);
    const SymTensorTuple self = embedding_value(*spec, r, false);
    const double ru = radius(*spec->with_centered(false));
    CHECK(objective(*spec, r, self) == doctest::Approx(ru * ru).epsilon(1e-12));
    const SymTensorTuple target = add_noise(self, 1.0, rng);
    const ObjectiveEvaluator ev(*spec, target);
    for (int n = 0; n < 5; ++n) {
      const Rotation q = random_rotation(rng);
      const double j = objective(*spec, q, target);
      CHECK(j <= ru * target.norm() + 1e-12);
      CHECK(ev.value(q) == doctest::Approx(j).epsilon(1e-10).scale(target.norm()));
      for (const Rotation& s : spec->group()->elements()) CHECK(std::abs(objective(*spec, q * s, target) - j) < 1e-10 * target.norm());
    }
  }
  CHECK_THROWS_AS(objective(*registry_lookup("C2"), Rotation::identity(), SymTensorTuple::zeros(std::vector<int>{1})),
                  std::invalid_argument);
}

TEST_CASE("gradient") {
  Rng rng(30);
  for (const SpecPtr& spec : table_specs()) {
    CAPTURE(spec->label());
    for (int n = 0; n < 5; ++n) {
      const SymTensorTuple target = add_noise(embedding_value(*spec, random_rotation(rng), false), 0.3, rng);
      const Rotation r = random_rotation(rng);
      const Vec3 g = gradient(*spec, r, target);
      Vec3 fast;
      const ObjectiveEvaluator ev(*spec, target);
      const double j = ev.value_and_gradient(r, fast);
      CHECK(j == doctest::Approx(objective(*spec, r, target)).epsilon(1e-10).scale(target.norm()));
      for (int l = 0; l < 3; ++l) {
        CHECK(std::abs(g[l] - fd_gradient(*spec, r, target, l, 1e-5)) < 1e-6);
        CHECK(std::abs(g[l] - fast[l]) < 1e-10 * (1.0 + target.norm()));
      }
    }
  }
  SUBCASE("rank-one reduction") {
    const SpecPtr spec = registry_lookup("C1");
    const SymTensorTuple target = add_noise(embedding_value(*spec, Rotation::identity(), false), 1.0, rng);
    const Rotation r = random_rotation(rng);
    const Vec3 g = gradient(*spec, r, target);
    for (int l = 0; l < 3; ++l) {
      double expected = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        const Vec3 t(target[i].data()[0], target[i].data()[1], target[i].data()[2]);
        expected += spec->beta()[i] * (tangent_basis().s[static_cast<std::size_t>(l)] * (r * spec->u()[i])).dot(t);
      }
      CHECK(g[l] == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("projection round trip and identities") {
  Rng rng(40);
  for (const SpecPtr& spec : table_specs()) {
    CAPTURE(spec->label());
    const double r0 = radius(*spec);
    for (int n = 0; n < 10; ++n) {
      const Coset truth(random_rotation(rng), spec->group());
      const SymTensorTuple target = embed(*spec, truth).value;
      const ProjectionResult p = project(*spec, target);
      CHECK(coset_distance(p.coset, truth) < 1e-8);
      CHECK(p.residual < 1e-7);
      CHECK(p.converged);
      CHECK(p.residual * p.residual == doctest::Approx(target.squared_norm() + r0 * r0 - 2 * p.objective).epsilon(1e-8).scale(1.0));
      CHECK(gradient(*spec, p.coset.representative(), target).norm() < 1e-8);
    }
    // Projection commutes with the rotation action.
    const SymTensorTuple target = add_noise(embed(*spec, Coset(random_rotation(rng), spec->group())).value, 0.05 * r0, rng);
    const Rotation q = random_rotation(rng);
    const ProjectionResult a = project(*spec, target);
    const ProjectionResult b = project(*spec, rotate(q, target));
    CHECK(coset_distance(a.coset.rotated_by(q), b.coset) < 1e-8);
    CHECK(std::abs(b.residual * b.residual - (target.squared_norm() + r0 * r0 - 2 * b.objective)) < 1e-8);
  }
  CHECK_THROWS_AS(project(*registry_lookup("C4"), SymTensorTuple::zeros(std::vector<int>{1, 4})), DegenerateInput);
  CHECK_THROWS_AS(project(*registry_lookup("C4"), SymTensorTuple::zeros(std::vector<int>{1})), std::invalid_argument);
  auto bad = SymTensorTuple::zeros(std::vector<int>{1, 4});
  bad[0].data()[0] = std::nan("");
  CHECK_THROWS_AS(project(*registry_lookup("C4"), bad), std::invalid_argument);
}

TEST_CASE("rank-one specs without symmetry use the closed form") {
  Rng rng(50);
  const SpecPtr spec = registry_lookup("C1");
  ProjectionOptions iterative;
  iterative.force_gradient = true;
  for (int n = 0; n < 50; ++n) {
    const SymTensorTuple target = add_noise(embedding_value(*spec, random_rotation(rng), false), 0.2, rng);
    std::vector<Vec3> us, vs;
    for (std::size_t i = 0; i < 3; ++i) {
      us.push_back(spec->beta()[i] * spec->u()[i]);
      vs.push_back(Vec3(target[i].data()[0], target[i].data()[1], target[i].data()[2]));
    }
    const Rotation k = kabsch(us, vs);
    const ProjectionResult closed = project(*spec, target);
    const ProjectionResult grad = project(*spec, target, iterative);
    CHECK(geodesic_distance(closed.coset.representative(), k) < 1e-10);
    CHECK(geodesic_distance(grad.coset.representative(), k) < 1e-10);
    CHECK(closed.iterations == 0);
  }
}

TEST_CASE("ascent never decreases the objective") {
  Rng rng(60);
  for (const char* name : {"C4", "D6", "O"}) {
    const SpecPtr spec = registry_lookup(name);
    const SymTensorTuple target = add_noise(embed(*spec, Coset(random_rotation(rng), spec->group())).value, 0.3, rng);
    ProjectionOptions opt;
    opt.tol = 0.0;
    double previous = -1e300;
    for (int it = 0; it <= 40; ++it) {
      opt.max_iter = it;
      const double j = objective(*spec, project(*spec, target, opt).coset.representative(), target);
      CHECK(j >= previous - 1e-12 * target.norm());
      previous = j;
    }
  }
}

TEST_CASE("noisy targets") {
  Rng rng(70);
  for (const SpecPtr& spec : table_specs()) {
    CAPTURE(spec->label());
    const double sigma = 0.01 * radius(*spec);
    const int trials = 1000;
    int within = 0;
    for (int n = 0; n < trials; ++n) {
      const Coset truth(random_rotation(rng), spec->group());
      const ProjectionResult p = project(*spec, add_noise(embed(*spec, truth).value, sigma, rng));
      within += coset_distance(p.coset, truth) < 5 * sigma ? 1 : 0;
    }
    CHECK(within >= 990);
  }
}

TEST_CASE("determinism") {
  const SpecPtr spec = registry_lookup("D4");
  Rng rng(80);
  const SymTensorTuple target = add_noise(embed(*spec, Coset(random_rotation(rng), spec->group())).value, 0.5, rng);
  const ProjectionResult a = project(*spec, target), b = project(*spec, target);
  CHECK(a.coset.representative().quaternion().coeffs() == b.coset.representative().quaternion().coeffs());
  CHECK(a.start_index == b.start_index);
}
