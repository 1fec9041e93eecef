#include "symquot/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "symquot/analysis.hpp"
#include "symquot/sampling.hpp"
#include "symquot/svd3.hpp"
#include "symquot/symmetric_layout.hpp"

namespace symquot {

namespace {

void require_signature(const EmbeddingSpec& spec, const SymTensorTuple& target) {
  if (target.ranks() != spec.alpha()) {
    throw std::invalid_argument("target signature does not match the embedding spec");
  }
}

Vec3 as_vec3(const DenseTensor& t) { return Vec3(t.data()[0], t.data()[1], t.data()[2]); }

// Mean orbit direction: the identity embedding of a rank-1 component, unweighted.
Vec3 orbit_mean(const EmbeddingSpec& spec, std::size_t i) {
  Vec3 m = Vec3::Zero();
  for (const OrbitPoint& p : spec.orbit(i)) m += p.weight * p.w;
  return m;
}

// Closed-form start from the rank-1 components alone.
std::optional<Rotation> rank1_seed(const EmbeddingSpec& spec, const SymTensorTuple& target) {
  std::vector<Vec3> us, vs;
  for (std::size_t i = 0; i < spec.component_count(); ++i) {
    if (spec.alpha()[i] != 1) continue;
    const Vec3 u = spec.beta()[i] * orbit_mean(spec, i);
    const Vec3 v = as_vec3(target[i]);
    if (u.norm() < 1e-12 || v.norm() < 1e-300) continue;
    us.push_back(u);
    vs.push_back(v);
  }
  if (us.empty()) return std::nullopt;
  if (us.size() >= 2) {
    try {
      return kabsch(us, vs);
    } catch (const DegenerateInput&) {
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < us.size(); ++i) {
    if (us[i].norm() * vs[i].norm() > us[best].norm() * vs[best].norm()) best = i;
  }
  return Rotation::from_quaternion(Eigen::Quaterniond::FromTwoVectors(us[best], vs[best]));
}

struct Run {
  Rotation r;
  double j;
  int iterations;
  bool converged;
};

Run ascend(const ObjectiveEvaluator& ev, const Rotation& start, const ProjectionOptions& opt, double noise) {
  const TangentBasis& tb = tangent_basis();
  Rotation r = start;
  Vec3 g;
  double j = ev.value_and_gradient(r, g);
  int it = 0;
  bool converged = false;
  for (;;) {
    const double gn = g.norm();
    if (gn < opt.tol) {
      converged = true;
      break;
    }
    if (it >= opt.max_iter) break;
    const Vec3 axis = (g[0] * tb.axis[0] + g[1] * tb.axis[1] + g[2] * tb.axis[2]) / gn;
    bool accepted = false;
    double tau = 0.5;
    for (int ls = 0; ls < 60; ++ls, tau *= 0.5) {
      const Rotation cand = Rotation::exp(tau * axis) * r;
      Vec3 gc;
      const double jc = ev.value_and_gradient(cand, gc);
      // Below the round-off level of J: keep J within noise, shrink the gradient.
      const double required = 1e-4 * tau * gn;
      const bool ok = required > noise ? jc >= j + required : (jc >= j - noise && gc.norm() < gn);
      if (ok) {
        r = cand;
        j = jc;
        g = gc;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    ++it;
  }
  return {r, j, it, converged};
}

ProjectionResult finalize(const EmbeddingSpec& spec, const SymTensorTuple& target, const Rotation& r, int iterations,
                          bool converged, int start_index) {
  const SymTensorTuple e = embedding_value(spec, r, spec.centered());
  const double obj = inner(e, target);
  const double res = (e - target).norm();
  return {Coset(r, spec.group()), obj, res, iterations, converged, start_index};
}

}  // namespace

Rotation kabsch(std::span<const Vec3> us, std::span<const Vec3> vs) {
  if (us.size() != vs.size()) throw std::invalid_argument("kabsch: point lists differ in length");
  if (us.size() < 2) throw std::invalid_argument("kabsch: need at least two vector pairs");
  Mat3 h = Mat3::Zero();
  for (std::size_t i = 0; i < us.size(); ++i) h += us[i] * vs[i].transpose();
  const Svd3 s = svd3(h);
  if (!(s.sigma[0] > 0.0) || s.sigma[1] <= 1e-12 * s.sigma[0]) {
    throw DegenerateInput("kabsch: cross-covariance has rank < 2; the optimal rotation is not unique");
  }
  const double d = (s.v * s.u.transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  const Mat3 r = s.v * Vec3(1.0, 1.0, d).asDiagonal() * s.u.transpose();
  return Rotation::from_matrix(r, 1e-8);
}

double objective(const EmbeddingSpec& spec, const Rotation& r, const SymTensorTuple& target) {
  require_signature(spec, target);
  return inner(embedding_value(spec, r, false), target);
}

Vec3 gradient(const EmbeddingSpec& spec, const Rotation& r, const SymTensorTuple& target) {
  require_signature(spec, target);
  const TangentBasis& tb = tangent_basis();
  Vec3 g = Vec3::Zero();
  for (std::size_t i = 0; i < spec.component_count(); ++i) {
    const int a = spec.alpha()[i];
    DenseTensor e(a);
    for (const OrbitPoint& p : spec.orbit(i)) e.add_scaled(p.weight, outer_power(p.w, a));
    const DenseTensor re = rotate(r, e);
    const DenseTensor t = symmetrize(target[i]);
    for (std::size_t l = 0; l < 3; ++l) {
      g[static_cast<Eigen::Index>(l)] += a * spec.beta()[i] * inner(mode1_multiply(tb.s[l], re), t);
    }
  }
  return g;
}

ObjectiveEvaluator::ObjectiveEvaluator(const EmbeddingSpec& spec, const SymTensorTuple& target) : spec_(spec) {
  require_signature(spec, target);
  std::size_t widest = 0;
  for (std::size_t i = 0; i < spec.component_count(); ++i) {
    const SymmetricLayout& lay = SymmetricLayout::get(spec.alpha()[i]);
    std::vector<double> c(lay.size(), 0.0);
    const double* d = target[i].data();
    for (std::size_t f = 0; f < lay.class_of().size(); ++f) c[lay.class_of()[f]] += d[f];
    coef_.push_back(std::move(c));
    widest = std::max(widest, lay.size());
  }
  scratch_.resize(3 * widest);
}

double ObjectiveEvaluator::value(const Rotation& r) const {
  double j = 0.0;
  for (std::size_t i = 0; i < spec_.component_count(); ++i) {
    const SymmetricLayout& lay = SymmetricLayout::get(spec_.alpha()[i]);
    const std::vector<double>& c = coef_[i];
    double ji = 0.0;
    for (const OrbitPoint& p : spec_.orbit(i)) {
      lay.monomial_values(r * p.w, scratch_.data());
      double s = 0.0;
      for (std::size_t m = 0; m < c.size(); ++m) s += c[m] * scratch_[m];
      ji += p.weight * s;
    }
    j += spec_.beta()[i] * ji;
  }
  return j;
}

double ObjectiveEvaluator::value_and_gradient(const Rotation& r, Vec3& grad) const {
  const TangentBasis& tb = tangent_basis();
  double j = 0.0;
  grad.setZero();
  for (std::size_t i = 0; i < spec_.component_count(); ++i) {
    const SymmetricLayout& lay = SymmetricLayout::get(spec_.alpha()[i]);
    const std::vector<double>& c = coef_[i];
    const double b = spec_.beta()[i];
    for (const OrbitPoint& p : spec_.orbit(i)) {
      const Vec3 v = r * p.w;
      lay.monomial_values(v, scratch_.data());
      double s = 0.0;
      for (std::size_t m = 0; m < c.size(); ++m) s += c[m] * scratch_[m];
      j += b * p.weight * s;
      lay.monomial_gradients(v, scratch_.data());
      Vec3 dp = Vec3::Zero();
      for (std::size_t m = 0; m < c.size(); ++m) {
        dp += c[m] * Vec3(scratch_[3 * m], scratch_[3 * m + 1], scratch_[3 * m + 2]);
      }
      for (std::size_t l = 0; l < 3; ++l) {
        grad[static_cast<Eigen::Index>(l)] += b * p.weight * dp.dot(tb.axis[l].cross(v));
      }
    }
  }
  return j;
}

ProjectionResult project(const EmbeddingSpec& spec, const SymTensorTuple& target, const ProjectionOptions& options) {
  require_signature(spec, target);
  const double tnorm = target.norm();
  if (!std::isfinite(tnorm)) throw std::invalid_argument("project: target has non-finite entries");
  if (!(tnorm > 0.0)) throw DegenerateInput("project: target is the zero tensor");

  const bool rank1_only = std::all_of(spec.alpha().begin(), spec.alpha().end(), [](int a) { return a == 1; });
  if (!options.force_gradient && rank1_only && spec.group()->size() == 1) {
    std::vector<Vec3> us, vs;
    for (std::size_t i = 0; i < spec.component_count(); ++i) {
      us.push_back(spec.beta()[i] * spec.u()[i]);
      vs.push_back(as_vec3(target[i]));
    }
    try {
      return finalize(spec, target, kabsch(us, vs), 0, true, 0);
    } catch (const DegenerateInput&) {
      // fall through to the iterative route
    } catch (const std::invalid_argument&) {
    }
  }

  std::vector<Rotation> starts;
  if (auto seed = rank1_seed(spec, target)) starts.push_back(*seed);
  const int n_quasi = options.starts.value_or(std::max<int>(8, static_cast<int>(spec.group()->size())));
  if (n_quasi < 0) throw std::invalid_argument("project: starts must be nonnegative");
  for (int i = 0; i < n_quasi; ++i) starts.push_back(quasi_random_rotation(static_cast<std::uint64_t>(i), options.seed));
  if (starts.empty()) starts.push_back(Rotation::identity());

  const ObjectiveEvaluator ev(spec, target);
  const double noise = 1e-14 * radius(*spec.with_centered(false)) * tnorm;
  const double tie = 1e-12 * (std::abs(ev.value(Rotation::identity())) + radius(spec) * tnorm);

  std::optional<Run> best;
  int best_index = 0;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    Run run = ascend(ev, starts[s], options, noise);
    if (!best || run.j > best->j + tie) {
      best = run;
      best_index = static_cast<int>(s);
    }
  }
  return finalize(spec, target, best->r, best->iterations, best->converged, best_index);
}

}  // namespace symquot
