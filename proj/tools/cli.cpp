#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include "csv.hpp"
#include "symquot/analysis.hpp"
#include "symquot/combinatorics.hpp"
#include "symquot/projection.hpp"
#include "symquot/registry.hpp"
#include "symquot/spec_io.hpp"

namespace symquot::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SpecFlags {
  std::string spec_file;
  std::string group;
  std::optional<int> k;
  std::string variant = "isometric";
  bool uncentered = false;

  void add_to(CLI::App& app, bool group_required_text = true) {
    app.add_option("--spec", spec_file, "YAML spec document");
    app.add_option("--group", group, group_required_text ? "Symmetry group (C1..C6, D2..D6, T, O, Y, Ck, Dk)"
                                                         : "Symmetry group");
    app.add_option("--k", k, "Order for Ck / Dk");
    app.add_option("--variant", variant, "arnold or isometric")->check(CLI::IsMember({"arnold", "isometric"}));
    app.add_flag("--uncentered", uncentered, "Do not subtract the invariant part");
  }

  SpecPtr resolve() const {
    SpecPtr s;
    if (!spec_file.empty()) {
      s = load_spec_file(spec_file);
    } else if (!group.empty()) {
      s = registry_lookup(group, parse_variant(variant), k);
    } else {
      throw UsageError("either --spec or --group is required");
    }
    return uncentered ? s->with_centered(false) : s;
  }
};

// Opens --input / --output, where "-" selects the provided streams.
struct Streams {
  std::istream& in;
  std::ostream& out;
  std::unique_ptr<std::ifstream> fin;
  std::unique_ptr<std::ofstream> fout;

  std::istream& input(const std::string& path) {
    if (path == "-") return in;
    fin = std::make_unique<std::ifstream>(path);
    if (!*fin) throw DataError("cannot open input file '" + path + "'");
    return *fin;
  }

  std::ostream& output(const std::string& path) {
    if (path == "-") return out;
    fout = std::make_unique<std::ofstream>(path);
    if (!*fout) throw DataError("cannot open output file '" + path + "'");
    return *fout;
  }
};

int column(const CsvTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

// Locates an orientation given either as a quaternion (w,x,y,z) or as ZYZ
// Euler angles (alpha,beta,gamma), with an optional column-name suffix.
class OrientationColumns {
 public:
  OrientationColumns(const CsvTable& t, const std::string& suffix, bool degrees) : degrees_(degrees) {
    for (const char* n : {"w", "x", "y", "z"}) quat_.push_back(column(t, n + suffix));
    for (const char* n : {"alpha", "beta", "gamma"}) euler_.push_back(column(t, n + suffix));
    auto all = [](const std::vector<int>& c) {
      return std::all_of(c.begin(), c.end(), [](int i) { return i >= 0; });
    };
    use_quat_ = all(quat_);
    if (!use_quat_ && !all(euler_)) {
      throw DataError("header needs columns w" + suffix + ",x" + suffix + ",y" + suffix + ",z" + suffix +
                      " or alpha" + suffix + ",beta" + suffix + ",gamma" + suffix);
    }
    names_ = t.header;
  }

  Rotation parse(const std::vector<std::string>& row, std::size_t line) const {
    auto value = [&](int c) { return parse_double(row[static_cast<std::size_t>(c)], line, names_[static_cast<std::size_t>(c)]); };
    if (use_quat_) {
      const double w = value(quat_[0]), x = value(quat_[1]), y = value(quat_[2]), z = value(quat_[3]);
      const double n = std::sqrt(w * w + x * x + y * y + z * z);
      if (std::abs(n - 1.0) > 1e-3) {
        throw DataError("line " + std::to_string(line) + ": quaternion norm " + format_double(n) +
                        " deviates from 1 by more than 1e-3");
      }
      return Rotation::from_quaternion(w, x, y, z);
    }
    const double f = degrees_ ? std::numbers::pi / 180.0 : 1.0;
    const double a = value(euler_[0]) * f, b = value(euler_[1]) * f, g = value(euler_[2]) * f;
    if (b < -1e-12 || b > std::numbers::pi + 1e-12) {
      throw DataError("line " + std::to_string(line) + ": Euler angle beta must lie in [0, pi]");
    }
    return Rotation::from_euler_zyz(a, b, g);
  }

 private:
  bool degrees_;
  bool use_quat_ = false;
  std::vector<int> quat_, euler_;
  std::vector<std::string> names_;
};

std::string id_of(const CsvTable& t, const std::vector<std::string>& row, std::size_t index) {
  const int c = column(t, "id");
  return c >= 0 ? row[static_cast<std::size_t>(c)] : std::to_string(index + 1);
}

std::string sanitize(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  }
  return s;
}

// ---------------------------------------------------------------- embed

int cmd_embed(const SpecFlags& sf, const std::string& input, const std::string& output, bool degrees, Streams& io) {
  const SpecPtr spec = sf.resolve();
  const CsvTable t = read_csv(io.input(input));
  const OrientationColumns oc(t, "", degrees);
  std::vector<Rotation> rotations;
  rotations.reserve(t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) rotations.push_back(oc.parse(t.rows[i], t.line_numbers[i]));

  std::ostream& out = io.output(output);
  std::vector<std::string> header{"id"};
  for (std::size_t c = 0; c < spec->ambient_dimension(); ++c) header.push_back("c" + std::to_string(c));
  write_row(out, header);
  for (std::size_t i = 0; i < rotations.size(); ++i) {
    const std::vector<double> v = embed(*spec, Coset(rotations[i], spec->group())).value.flatten();
    std::vector<std::string> row{id_of(t, t.rows[i], i)};
    for (double x : v) row.push_back(format_double(x));
    write_row(out, row);
  }
  return kOk;
}

// -------------------------------------------------------------- project

int cmd_project(const SpecFlags& sf, const std::string& input, const std::string& output,
                const ProjectionOptions& popt, Streams& io, std::ostream& err) {
  const SpecPtr spec = sf.resolve();
  const CsvTable t = read_csv(io.input(input));
  const int id_col = column(t, "id");
  const std::size_t found = t.header.size() - (id_col >= 0 ? 1 : 0);
  if (found != spec->ambient_dimension()) {
    throw DataError("spec " + spec->label() + " expects " + std::to_string(spec->ambient_dimension()) +
                    " coordinates per row, found " + std::to_string(found));
  }

  std::ostream& out = io.output(output);
  write_row(out, {"id", "w", "x", "y", "z", "residual", "objective", "iterations", "converged", "error"});
  std::size_t warnings = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    std::vector<double> flat;
    flat.reserve(found);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (static_cast<int>(c) == id_col) continue;
      flat.push_back(parse_double(row[c], t.line_numbers[i], t.header[c]));
    }
    const std::string id = id_of(t, row, i);
    try {
      const SymTensorTuple target = SymTensorTuple::from_flat(spec->alpha(), flat);
      const ProjectionResult r = project(*spec, target, popt);
      const auto q = fundamental_representative(r.coset).canonical_quaternion();
      write_row(out, {id, format_double(q[0]), format_double(q[1]), format_double(q[2]), format_double(q[3]),
                      format_double(r.residual), format_double(r.objective), std::to_string(r.iterations),
                      r.converged ? "true" : "false", ""});
      if (!r.converged) ++warnings;
    } catch (const DegenerateInput& e) {
      write_row(out, {id, "", "", "", "", "", "", "0", "false", sanitize(e.what())});
      ++warnings;
    }
  }
  if (warnings > 0) err << "warning: " << warnings << " row(s) did not yield a converged projection\n";
  return kOk;
}

// ------------------------------------------------------------- distance

int cmd_distance(const SpecFlags& sf, const std::string& metric, const std::string& input, const std::string& output,
                 bool degrees, Streams& io) {
  SpecPtr spec;
  GroupPtr group;
  if (metric == "embedded") {
    spec = sf.resolve();
    group = spec->group();
  } else if (!sf.spec_file.empty()) {
    group = load_spec_file(sf.spec_file)->group();
  } else if (!sf.group.empty()) {
    group = SymmetryGroup::make(sf.group, sf.k);
  } else {
    throw UsageError("either --spec or --group is required");
  }

  const CsvTable t = read_csv(io.input(input));
  const OrientationColumns a(t, "1", degrees);
  const OrientationColumns b(t, "2", degrees);
  std::vector<std::pair<Rotation, Rotation>> pairs;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    pairs.emplace_back(a.parse(t.rows[i], t.line_numbers[i]), b.parse(t.rows[i], t.line_numbers[i]));
  }

  std::ostream& out = io.output(output);
  write_row(out, {"id", "distance"});
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    double d;
    if (spec) {
      d = (embed(*spec, Coset(pairs[i].first, group)).value - embed(*spec, Coset(pairs[i].second, group)).value).norm();
    } else {
      d = coset_distance(Coset(pairs[i].first, group), Coset(pairs[i].second, group));
    }
    write_row(out, {id_of(t, t.rows[i], i), format_double(d)});
  }
  return kOk;
}

// --------------------------------------------------------------- verify

struct VerifyOptions {
  std::string suite = "all";
  std::string group = "all";
  std::size_t mean_samples = 100000;
  std::size_t rank_samples = 500;
  std::uint64_t seed = 0;
};

class Tally {
 public:
  explicit Tally(std::ostream& out) : out_(out) {}

  void line(const std::string& text, bool pass) {
    out_ << text << ' ' << (pass ? "PASS" : "FAIL") << '\n';
    ++total_;
    failed_ += pass ? 0 : 1;
  }

  int finish() {
    out_ << total_ << " checks, " << failed_ << " failed\n";
    return failed_ == 0 ? kOk : kVerificationFailed;
  }

 private:
  std::ostream& out_;
  int total_ = 0;
  int failed_ = 0;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

int cmd_verify(const VerifyOptions& vo, std::ostream& out) {
  const std::vector<std::string> suites{"isometry", "norms", "mean", "rank", "binom"};
  if (vo.suite != "all" && std::find(suites.begin(), suites.end(), vo.suite) == suites.end()) {
    throw UsageError("unknown suite '" + vo.suite + "'");
  }
  auto wants = [&](const std::string& s) { return vo.suite == "all" || vo.suite == s; };

  std::vector<std::string> groups;
  if (vo.group == "all") {
    groups = registry_group_names();
  } else {
    groups.push_back(SymmetryGroup::make(vo.group)->name());
  }

  Tally tally(out);
  if (wants("isometry")) {
    for (const auto& g : groups) {
      const IsometryReport r = isometry_check(*registry_lookup(g));
      tally.line("isometry " + g + " max_defect=" + fmt(r.max_defect), r.is_isometric);
    }
  }
  if (wants("norms")) {
    for (int k = 3; k <= 8; ++k) {
      const auto closed = b_norms_closed_form(k);
      const SpecPtr s = EmbeddingSpec::create(SymmetryGroup::make("C", k), {Vec3::UnitY()}, {k}, {1.0}, false);
      const IsometryReport r = isometry_check(*s);
      double defect = 0.0;
      for (int l = 0; l < 3; ++l) defect = std::max(defect, std::abs(r.gram(l, l) - closed[static_cast<std::size_t>(l)]));
      tally.line("norms k=" + std::to_string(k) + " B=(" + fmt(closed[0]) + "," + fmt(closed[1]) + "," +
                     fmt(closed[2]) + ") defect=" + fmt(defect),
                 defect < 1e-10);
    }
    for (const auto& g : groups) {
      const GroupPtr grp = SymmetryGroup::make(g);
      const int k = grp->order_parameter();
      if ((grp->family() != GroupFamily::cyclic && grp->family() != GroupFamily::dihedral) || k < 3) continue;
      const auto [b1, b2] = derive_beta(grp->family(), k);
      const SpecPtr row = registry_lookup(g);
      const std::vector<double>& table = row->beta();
      const double defect = std::max(std::abs(b1 - table[0]), std::abs(b2 - table[1]));
      tally.line("beta " + g + " derived=(" + fmt(b1) + "," + fmt(b2) + ") defect=" + fmt(defect), defect < 1e-12);
    }
  }
  if (wants("mean")) {
    for (const auto& g : groups) {
      const SpecPtr s = registry_lookup(g);
      const double m = mean_check(*s, vo.mean_samples, vo.seed);
      const double bound = 5.0 * radius(*s) / std::sqrt(static_cast<double>(vo.mean_samples));
      tally.line("mean " + g + " norm=" + fmt(m) + " bound=" + fmt(bound), m < bound);
    }
  }
  if (wants("rank")) {
    for (const auto& g : groups) {
      const SpecPtr s = registry_lookup(g);
      const RankReport r = rank_check(*s, vo.rank_samples, vo.seed);
      const std::size_t expected = s->affine_dimension_formula();
      tally.line("rank " + g + ": rank " + std::to_string(r.rank) + " expected " + std::to_string(expected),
                 r.rank == expected);
    }
  }
  if (wants("binom")) {
    for (int a = 2; a <= 30; a += 2) {
      const BinomialIdentity b = binom_identity_check(a);
      tally.line("binom alpha=" + std::to_string(a) + " lhs=" + std::to_string(b.lhs) + " rhs=" + std::to_string(b.rhs),
                 b.lhs == b.rhs);
    }
  }
  return tally.finish();
}

// --------------------------------------------------------- bounds/scatter

std::vector<double> parse_beta_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item, 0, "--beta"));
  return out;
}

int cmd_bounds(SpecFlags sf, const BoundsOptions& bo, const std::string& beta, const std::string& output, Streams& io) {
  std::vector<std::string> groups;
  if (sf.spec_file.empty() && sf.group == "all") {
    groups = registry_group_names();
  } else {
    groups.push_back(sf.group);
  }
  std::ostream& out = io.output(output);
  write_row(out, {"group", "variant", "pairs", "samples", "c_min", "c_max", "ratio", "refine_evaluations"});
  for (const auto& g : groups) {
    sf.group = g;
    SpecPtr s = sf.resolve();
    if (!beta.empty()) s = s->with_beta(parse_beta_list(beta));
    const BoundsEstimate e = global_bounds(*s, bo);
    write_row(out, {s->group()->name(), sf.spec_file.empty() ? sf.variant : "custom", std::to_string(bo.n_pairs),
                    std::to_string(e.sample_count), format_double(e.c_min), format_double(e.c_max),
                    format_double(e.c_max / e.c_min), std::to_string(e.refinement_iterations)});
  }
  return kOk;
}

int cmd_scatter(const SpecFlags& sf, std::size_t pairs, std::uint64_t seed, const std::string& output, Streams& io) {
  const SpecPtr s = sf.resolve();
  std::ostream& out = io.output(output);
  write_row(out, {"geodesic", "embedded"});
  for (const DistancePair& p : distance_scatter(*s, pairs, seed)) {
    write_row(out, {format_double(p.geodesic), format_double(p.embedded)});
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetrized tensor embeddings of SO(3)/S: embedding, projection and verification"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string output = "-";
  bool degrees = false;

  SpecFlags embed_spec;
  auto* embed_cmd = app.add_subcommand("embed", "Embed orientations (CSV id,w,x,y,z or id,alpha,beta,gamma)");
  embed_spec.add_to(*embed_cmd);
  embed_cmd->add_option("--input,-i", input, "Input CSV ('-' for stdin)");
  embed_cmd->add_option("--output,-o", output, "Output CSV ('-' for stdout)");
  embed_cmd->add_flag("--degrees", degrees, "Euler angles are in degrees");

  SpecFlags project_spec;
  ProjectionOptions popt;
  int starts = -1;
  auto* project_cmd = app.add_subcommand("project", "Project flattened tensors back to orientations");
  project_spec.add_to(*project_cmd);
  project_cmd->add_option("--input,-i", input, "Input CSV of flattened tensors");
  project_cmd->add_option("--output,-o", output, "Output CSV");
  project_cmd->add_option("--tol", popt.tol, "Gradient-norm tolerance")->capture_default_str();
  project_cmd->add_option("--max-iter", popt.max_iter, "Iterations per start")->capture_default_str();
  project_cmd->add_option("--starts", starts, "Quasi-random starts (default max(8, |S|))");
  project_cmd->add_option("--seed", popt.seed, "Start-sequence offset")->capture_default_str();

  SpecFlags distance_spec;
  std::string metric = "geodesic";
  auto* distance_cmd = app.add_subcommand("distance", "Distances between orientation pairs");
  distance_spec.add_to(*distance_cmd);
  distance_cmd->add_option("--metric", metric, "geodesic or embedded")
      ->check(CLI::IsMember({"geodesic", "embedded"}))
      ->capture_default_str();
  distance_cmd->add_option("--input,-i", input, "CSV with w1..z2 or alpha1..gamma2 columns");
  distance_cmd->add_option("--output,-o", output, "Output CSV");
  distance_cmd->add_flag("--degrees", degrees, "Euler angles are in degrees");

  VerifyOptions vo;
  auto* verify_cmd = app.add_subcommand("verify", "Run verification suites");
  verify_cmd->add_option("--suite", vo.suite, "isometry, norms, mean, rank, binom or all")->capture_default_str();
  verify_cmd->add_option("--group", vo.group, "Group name or all")->capture_default_str();
  verify_cmd->add_option("--mean-samples", vo.mean_samples, "Samples for the mean suite")->capture_default_str();
  verify_cmd->add_option("--rank-samples", vo.rank_samples, "Samples for the rank suite")->capture_default_str();
  verify_cmd->add_option("--seed", vo.seed, "Sampling seed")->capture_default_str();

  SpecFlags bounds_spec;
  BoundsOptions bo;
  bo.refine = false;
  std::string beta;
  auto* bounds_cmd = app.add_subcommand("bounds", "Estimate the distance-ratio constants c_min and c_max");
  bounds_spec.add_to(*bounds_cmd);
  bounds_cmd->add_option("--pairs", bo.n_pairs, "Random pairs")->capture_default_str();
  bounds_cmd->add_flag("--refine", bo.refine, "Refine extremes with Nelder-Mead");
  bounds_cmd->add_option("--seed", bo.seed, "Sampling seed")->capture_default_str();
  bounds_cmd->add_option("--beta", beta, "Comma-separated weight override");
  bounds_cmd->add_option("--output,-o", output, "Output CSV");

  SpecFlags scatter_spec;
  std::size_t scatter_pairs = 1000;
  std::uint64_t scatter_seed = 0;
  auto* scatter_cmd = app.add_subcommand("scatter", "Emit (geodesic, embedded) distance pairs");
  scatter_spec.add_to(*scatter_cmd);
  scatter_cmd->add_option("--pairs", scatter_pairs, "Random pairs")->capture_default_str();
  scatter_cmd->add_option("--seed", scatter_seed, "Sampling seed")->capture_default_str();
  scatter_cmd->add_option("--output,-o", output, "Output CSV");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Streams io{in, out, nullptr, nullptr};
  try {
    if (*embed_cmd) return cmd_embed(embed_spec, input, output, degrees, io);
    if (*project_cmd) {
      if (starts >= 0) popt.starts = starts;
      return cmd_project(project_spec, input, output, popt, io, err);
    }
    if (*distance_cmd) return cmd_distance(distance_spec, metric, input, output, degrees, io);
    if (*verify_cmd) return cmd_verify(vo, out);
    if (*bounds_cmd) return cmd_bounds(bounds_spec, bo, beta, output, io);
    if (*scatter_cmd) return cmd_scatter(scatter_spec, scatter_pairs, scatter_seed, output, io);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace symquot::cli
