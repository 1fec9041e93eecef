#include "symquot/embedding.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "symquot/combinatorics.hpp"
#include "symquot/symmetric_layout.hpp"

namespace symquot {

namespace {

const DenseTensor& cached_invariant(int alpha) {
  static std::array<DenseTensor, kMaxTensorRank + 1> cache;
  static std::array<std::once_flag, kMaxTensorRank + 1> flags;
  const auto i = static_cast<std::size_t>(alpha);
  std::call_once(flags[i], [&] { cache[i] = invariant_tensor(alpha); });
  return cache[i];
}

std::vector<OrbitPoint> build_orbit(const SymmetryGroup& g, const Vec3& u, int alpha) {
  constexpr double kMergeTol = 1e-9;
  const double unit = 1.0 / static_cast<double>(g.size());
  const double flip = alpha % 2 == 0 ? 1.0 : -1.0;
  std::vector<OrbitPoint> pts;
  for (const Rotation& s : g.elements()) {
    const Vec3 w = s * u;
    bool merged = false;
    for (OrbitPoint& p : pts) {
      if ((p.w - w).norm() < kMergeTol) {
        p.weight += unit;
        merged = true;
      } else if ((p.w + w).norm() < kMergeTol) {
        p.weight += flip * unit;
        merged = true;
      }
      if (merged) break;
    }
    if (!merged) pts.push_back({w, unit});
  }
  std::erase_if(pts, [](const OrbitPoint& p) { return std::abs(p.weight) < 1e-12; });
  return pts;
}

}  // namespace

SpecPtr EmbeddingSpec::create(GroupPtr group, std::vector<Vec3> u, std::vector<int> alpha, std::vector<double> beta,
                              bool centered, std::string label) {
  if (!group) throw std::invalid_argument("embedding spec needs a symmetry group");
  if (u.empty()) throw std::invalid_argument("embedding spec needs at least one component");
  if (u.size() != alpha.size() || u.size() != beta.size()) {
    throw std::invalid_argument("embedding spec: u, alpha and beta must have equal lengths");
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    const std::string which = "component " + std::to_string(i + 1);
    if (alpha[i] < 1 || alpha[i] > kMaxTensorRank) {
      throw std::invalid_argument(which + ": alpha must be in [1, " + std::to_string(kMaxTensorRank) + "]");
    }
    if (!(beta[i] > 0.0) || !std::isfinite(beta[i])) throw std::invalid_argument(which + ": beta must be positive");
    const double n = u[i].norm();
    if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-6) {
      throw std::invalid_argument(which + ": u must have unit norm (got " + std::to_string(n) + ")");
    }
    u[i] /= n;
  }

  auto spec = std::shared_ptr<EmbeddingSpec>(new EmbeddingSpec());
  spec->group_ = std::move(group);
  spec->u_ = std::move(u);
  spec->alpha_ = std::move(alpha);
  spec->beta_ = std::move(beta);
  spec->centered_ = centered;
  spec->label_ = std::move(label);
  for (std::size_t i = 0; i < spec->u_.size(); ++i) {
    spec->orbits_.push_back(build_orbit(*spec->group_, spec->u_[i], spec->alpha_[i]));
    if (spec->orbits_.back().empty()) {
      throw std::invalid_argument("component " + std::to_string(i + 1) + " averages to zero over " +
                                  spec->group_->name() + "; choose another direction or rank");
    }
  }
  return spec;
}

std::size_t EmbeddingSpec::ambient_dimension() const {
  std::size_t n = 0;
  for (int a : alpha_) n += pow3(a);
  return n;
}

std::size_t EmbeddingSpec::compact_dimension() const {
  std::size_t n = 0;
  for (int a : alpha_) n += static_cast<std::size_t>(binomial(static_cast<unsigned>(a + 2), 2));
  return n;
}

std::size_t EmbeddingSpec::affine_dimension_formula() const {
  std::size_t n = compact_dimension();
  for (int a : alpha_) n -= a % 2 == 0 ? 1 : 0;
  return n;
}

SpecPtr EmbeddingSpec::with_centered(bool centered) const {
  return create(group_, u_, alpha_, beta_, centered, label_);
}

SpecPtr EmbeddingSpec::with_beta(std::vector<double> beta) const {
  return create(group_, u_, alpha_, std::move(beta), centered_, label_);
}

SpecPtr EmbeddingSpec::conjugated(const Rotation& q) const {
  std::vector<Vec3> u;
  for (const Vec3& v : u_) u.push_back(q * v);
  return create(group_->conjugated(q), std::move(u), alpha_, beta_, centered_, label_);
}

SymTensorTuple embedding_value(const EmbeddingSpec& spec, const Rotation& r, bool centered) {
  std::vector<DenseTensor> comps;
  comps.reserve(spec.component_count());
  for (std::size_t i = 0; i < spec.component_count(); ++i) {
    const int a = spec.alpha()[i];
    const double b = spec.beta()[i];
    DenseTensor t(a);
    for (const OrbitPoint& p : spec.orbit(i)) t.add_scaled(b * p.weight, outer_power(r * p.w, a));
    if (centered && a % 2 == 0) t.add_scaled(-b / (a + 1), cached_invariant(a));
    comps.push_back(std::move(t));
  }
  return SymTensorTuple(std::move(comps));
}

EmbeddedPoint embed(const EmbeddingSpec& spec, const Coset& c) {
  if (!c.group()->same_as(*spec.group())) {
    throw std::invalid_argument("embed: coset group " + c.group()->name() + " differs from spec group " +
                                spec.group()->name());
  }
  return {embedding_value(spec, c.representative(), spec.centered()), spec.ptr()};
}

SymTensorTuple centering_shift(const EmbeddingSpec& spec) {
  std::vector<DenseTensor> comps;
  for (std::size_t i = 0; i < spec.component_count(); ++i) {
    const int a = spec.alpha()[i];
    DenseTensor t(a);
    if (a % 2 == 0) t.add_scaled(spec.beta()[i] / (a + 1), cached_invariant(a));
    comps.push_back(std::move(t));
  }
  return SymTensorTuple(std::move(comps));
}

std::vector<double> embed_compact(const EmbeddingSpec& spec, const Rotation& r, bool centered) {
  std::vector<double> out(spec.compact_dimension(), 0.0);
  double* dst = out.data();
  for (std::size_t i = 0; i < spec.component_count(); ++i) {
    const int a = spec.alpha()[i];
    const double b = spec.beta()[i];
    const SymmetricLayout& lay = SymmetricLayout::get(a);
    for (const OrbitPoint& p : spec.orbit(i)) lay.accumulate_outer_power(r * p.w, b * p.weight, dst);
    if (centered && a % 2 == 0) {
      const double s = b / (a + 1);
      for (std::size_t m = 0; m < lay.size(); ++m) dst[m] -= s * lay.invariant()[m];
    }
    dst += lay.size();
  }
  return out;
}

double radius(const EmbeddingSpec& spec) {
  const std::vector<double> v = embed_compact(spec, Rotation::identity());
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double equivariance_defect(const EmbeddingSpec& spec, const Rotation& r, const Coset& c) {
  const SymTensorTuple moved = embed(spec, c.rotated_by(r)).value;
  const SymTensorTuple acted = rotate(r, embed(spec, c).value);
  return (moved - acted).norm();
}

}  // namespace symquot
