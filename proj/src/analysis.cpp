#include "symquot/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/SVD>
#include <gsl/gsl_multimin.h>

#include "symquot/combinatorics.hpp"
#include "symquot/registry.hpp"
#include "symquot/sampling.hpp"

namespace symquot {

namespace {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Distance from [I] to [q] through the closest group element.
double distance_to_identity_coset(const SymmetryGroup& g, const Rotation& q) {
  const Eigen::Quaterniond& qq = q.quaternion();
  double best = -1.0;
  const Rotation* arg = nullptr;
  for (const Rotation& s : g.elements()) {
    const double d = std::abs(s.quaternion().dot(qq));
    if (d > best) {
      best = d;
      arg = &s;
    }
  }
  return (arg->inverse() * q).angle();
}

class RatioEvaluator {
 public:
  explicit RatioEvaluator(const EmbeddingSpec& spec)
      : spec_(spec), e0_(embed_compact(spec, Rotation::identity(), false)) {}

  // Returns (geodesic, embedded).
  std::pair<double, double> distances(const Rotation& q) const {
    const double d = distance_to_identity_coset(*spec_.group(), q);
    const double e = std::sqrt(squared_distance(e0_, embed_compact(spec_, q, false)));
    return {d, e};
  }

 private:
  const EmbeddingSpec& spec_;
  std::vector<double> e0_;
};

struct Sample {
  double ratio;
  Rotation q;
};

struct NelderMeadContext {
  const RatioEvaluator* eval;
  Rotation base;
  double sign;  // +1 minimizes the ratio, −1 maximizes it
  int evaluations = 0;
  double best = std::numeric_limits<double>::infinity();
  Rotation best_q;
};

double nelder_mead_objective(const gsl_vector* x, void* params) {
  auto* ctx = static_cast<NelderMeadContext*>(params);
  ++ctx->evaluations;
  const Rotation q = Rotation::exp(Vec3(gsl_vector_get(x, 0), gsl_vector_get(x, 1), gsl_vector_get(x, 2))) * ctx->base;
  const auto [d, e] = ctx->eval->distances(q);
  // Below this distance the ratio is dominated by cancellation error.
  if (d < 1e-6) return std::numeric_limits<double>::max();
  const double v = ctx->sign * (e / d);
  if (v < ctx->best) {
    ctx->best = v;
    ctx->best_q = q;
  }
  return v;
}

// Local search around `start`; returns the best value seen (in signed form).
NelderMeadContext refine_from(const RatioEvaluator& eval, const Rotation& start, double sign, int max_evals) {
  NelderMeadContext ctx{&eval, start, sign, 0, std::numeric_limits<double>::infinity(), start};
  gsl_multimin_function fn{&nelder_mead_objective, 3, &ctx};
  gsl_vector* x = gsl_vector_calloc(3);
  gsl_vector* step = gsl_vector_alloc(3);
  gsl_vector_set_all(step, 0.05);
  gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3);
  gsl_multimin_fminimizer_set(m, &fn, x, step);
  while (ctx.evaluations < max_evals) {
    if (gsl_multimin_fminimizer_iterate(m) != GSL_SUCCESS) break;
    if (gsl_multimin_fminimizer_size(m) < 1e-12) break;
  }
  gsl_multimin_fminimizer_free(m);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return ctx;
}

}  // namespace

const TangentBasis& tangent_basis() {
  static const TangentBasis b = [] {
    TangentBasis t;
    t.s[0] << 0, 0, 0, 0, 0, -1, 0, 1, 0;
    t.s[1] << 0, 0, -1, 0, 0, 0, 1, 0, 0;
    t.s[2] << 0, -1, 0, 1, 0, 0, 0, 0, 0;
    for (int l = 0; l < 3; ++l) t.axis[static_cast<std::size_t>(l)] = vee(t.s[static_cast<std::size_t>(l)]);
    return t;
  }();
  return b;
}

std::array<SymTensorTuple, 3> differential_at_identity(const EmbeddingSpec& spec) {
  const TangentBasis& tb = tangent_basis();
  std::array<SymTensorTuple, 3> out;
  for (std::size_t l = 0; l < 3; ++l) {
    std::vector<DenseTensor> comps;
    for (std::size_t i = 0; i < spec.component_count(); ++i) {
      const int a = spec.alpha()[i];
      DenseTensor t(a);
      for (const OrbitPoint& p : spec.orbit(i)) {
        t.add_scaled(spec.beta()[i] * p.weight, outer_power_derivative(p.w, tb.s[l] * p.w, a));
      }
      comps.push_back(std::move(t));
    }
    out[l] = SymTensorTuple(std::move(comps));
  }
  return out;
}

std::array<SymTensorTuple, 3> differential_finite_difference(const EmbeddingSpec& spec, double h) {
  const TangentBasis& tb = tangent_basis();
  std::array<SymTensorTuple, 3> out;
  for (std::size_t l = 0; l < 3; ++l) {
    SymTensorTuple plus = embedding_value(spec, Rotation::exp(h * tb.axis[l]), false);
    const SymTensorTuple minus = embedding_value(spec, Rotation::exp(-h * tb.axis[l]), false);
    plus -= minus;
    plus *= 1.0 / (2.0 * h);
    out[l] = std::move(plus);
  }
  return out;
}

IsometryReport isometry_check(const EmbeddingSpec& spec) {
  const auto d = differential_at_identity(spec);
  IsometryReport r{};
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a; b < 3; ++b) {
      const double g = inner(d[a], d[b]);
      r.gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = g;
      r.gram(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = g;
    }
  }
  r.max_defect = (r.gram - Mat3::Identity()).cwiseAbs().maxCoeff();
  r.is_isometric = r.max_defect < 1e-10;
  return r;
}

std::array<double, 3> b_norms_closed_form(int k) {
  const BNorms n = b_norms_closed_form_exact(k);
  return {n.b1.to_double(), n.b2.to_double(), n.b3.to_double()};
}

std::pair<double, double> derive_beta(GroupFamily family, int k) {
  if (family != GroupFamily::cyclic && family != GroupFamily::dihedral) {
    throw std::invalid_argument("derive_beta: only C_k and D_k have closed-form weights");
  }
  if (k < 3) throw std::invalid_argument("derive_beta: k must be at least 3");
  const BNorms n = b_norms_closed_form_exact(k);
  if (n.b1 < n.b2) throw std::domain_error("derive_beta: no real solution (|B2|^2 > |B1|^2)");
  Rational sq = Rational(1) - n.b2 / n.b1;
  if (family == GroupFamily::dihedral) sq = sq / Rational(2);
  return {std::sqrt(sq.to_double()), 1.0 / std::sqrt(n.b1.to_double())};
}

BoundsEstimate global_bounds(const EmbeddingSpec& spec, const BoundsOptions& options) {
  const RatioEvaluator eval(spec);
  std::vector<Sample> samples;
  samples.reserve(options.n_pairs + 200);

  for (std::size_t i = 0; i < options.n_pairs; ++i) {
    const Rotation q = indexed_random_rotation(options.seed, i);
    const auto [d, e] = eval.distances(q);
    if (d > 1e-9) samples.push_back({e / d, q});
  }

  // Near-identity ladder along fixed and random axes.
  std::vector<Vec3> axes{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ(), Vec3(1, 1, 1).normalized()};
  for (std::uint64_t j = 0; j < 8; ++j) {
    axes.push_back(indexed_random_rotation(stream_seed(options.seed, 0xA11CE), j) * Vec3::UnitX());
  }
  for (const Vec3& axis : axes) {
    for (int j = 0; j <= 12; ++j) {
      const double angle = std::pow(10.0, -4.0 + 0.25 * j);
      const Rotation q = Rotation::from_axis_angle(axis, angle);
      const auto [d, e] = eval.distances(q);
      samples.push_back({e / d, q});
    }
  }
  if (samples.empty()) throw std::invalid_argument("global_bounds: no usable sample pairs");

  BoundsEstimate est;
  est.sample_count = samples.size();
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end(),
                                            [](const Sample& a, const Sample& b) { return a.ratio < b.ratio; });
  est.c_min = lo->ratio;
  est.argmin = lo->q;
  est.c_max = hi->ratio;
  est.argmax = hi->q;

  if (options.refine) {
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(options.refine_starts), samples.size());
    auto by_ratio = [](const Sample& a, const Sample& b) { return a.ratio < b.ratio; };
    std::vector<Sample> low(samples);
    std::partial_sort(low.begin(), low.begin() + static_cast<std::ptrdiff_t>(k), low.end(), by_ratio);
    for (std::size_t i = 0; i < k; ++i) {
      const NelderMeadContext ctx = refine_from(eval, low[i].q, 1.0, options.refine_evaluations);
      est.refinement_iterations += ctx.evaluations;
      if (ctx.best < est.c_min) {
        est.c_min = ctx.best;
        est.argmin = ctx.best_q;
      }
    }
    std::vector<Sample> high(samples);
    std::partial_sort(high.begin(), high.begin() + static_cast<std::ptrdiff_t>(k), high.end(),
                      [](const Sample& a, const Sample& b) { return a.ratio > b.ratio; });
    for (std::size_t i = 0; i < k; ++i) {
      const NelderMeadContext ctx = refine_from(eval, high[i].q, -1.0, options.refine_evaluations);
      est.refinement_iterations += ctx.evaluations;
      if (-ctx.best > est.c_max) {
        est.c_max = -ctx.best;
        est.argmax = ctx.best_q;
      }
    }
  }
  return est;
}

std::vector<double> bound_ratio_table(std::string_view group_name, const std::vector<std::vector<double>>& betas,
                                      const BoundsOptions& options) {
  const SpecPtr base = registry_lookup(group_name, Variant::isometric);
  std::vector<double> out;
  out.reserve(betas.size());
  for (const auto& b : betas) {
    const BoundsEstimate e = global_bounds(*base->with_beta(b), options);
    out.push_back(e.c_max / e.c_min);
  }
  return out;
}

std::vector<DistancePair> distance_scatter(const EmbeddingSpec& spec, std::size_t n_pairs, std::uint64_t seed) {
  std::vector<DistancePair> out;
  out.reserve(n_pairs);
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const Rotation r1 = indexed_random_rotation(seed, 2 * i);
    const Rotation r2 = indexed_random_rotation(seed, 2 * i + 1);
    const double d = coset_distance(Coset(r1, spec.group()), Coset(r2, spec.group()));
    const double e = std::sqrt(squared_distance(embed_compact(spec, r1, false), embed_compact(spec, r2, false)));
    out.push_back({d, e});
  }
  return out;
}

double mean_check(const EmbeddingSpec& spec, std::size_t n_samples, std::uint64_t seed) {
  if (!spec.centered()) throw std::invalid_argument("mean_check: the zero-mean property needs a centered spec");
  if (n_samples == 0) throw std::invalid_argument("mean_check: need at least one sample");
  std::vector<double> sum(spec.compact_dimension(), 0.0);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const std::vector<double> v = embed_compact(spec, indexed_random_rotation(seed, i), true);
    for (std::size_t j = 0; j < v.size(); ++j) sum[j] += v[j];
  }
  double s = 0.0;
  for (double x : sum) s += x * x;
  return std::sqrt(s) / static_cast<double>(n_samples);
}

RankReport rank_check(const EmbeddingSpec& spec, std::size_t n_samples, std::uint64_t seed) {
  if (!spec.centered()) throw std::invalid_argument("rank_check: needs a centered spec");
  if (n_samples == 0) throw std::invalid_argument("rank_check: need at least one sample");
  const auto cols = static_cast<Eigen::Index>(spec.compact_dimension());
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n_samples), cols);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const std::vector<double> v = embed_compact(spec, indexed_random_rotation(seed, i), true);
    x.row(static_cast<Eigen::Index>(i)) = Eigen::Map<const Eigen::RowVectorXd>(v.data(), cols);
  }
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(x);
  const Eigen::VectorXd sv = svd.singularValues();
  RankReport r{0, std::vector<double>(sv.data(), sv.data() + sv.size())};
  const double thr = sv.size() > 0 ? 1e-8 * sv[0] : 0.0;
  for (double s : r.singular_values) r.rank += s > thr ? 1 : 0;
  return r;
}

}  // namespace symquot
