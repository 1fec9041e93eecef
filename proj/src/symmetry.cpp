#include "symquot/symmetry.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace symquot {

namespace {

constexpr double kSameRotationTol = 1e-10;

bool same_rotation(const Rotation& a, const Rotation& b) {
  // |<qa, qb>| = cos(angle/2); compare on the angle for a scale-free tolerance.
  return geodesic_distance(a, b) < kSameRotationTol;
}

bool contains(const std::vector<Rotation>& list, const Rotation& r) {
  return std::any_of(list.begin(), list.end(), [&](const Rotation& e) { return same_rotation(e, r); });
}

std::vector<Rotation> closure(const std::vector<Rotation>& generators, std::size_t expected) {
  std::vector<Rotation> elements{Rotation::identity()};
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const Rotation& g : generators) {
      const Rotation p = elements[i] * g;
      if (!contains(elements, p)) elements.push_back(p);
    }
    if (elements.size() > expected) break;
  }
  if (elements.size() != expected) {
    throw ConsistencyError("group closure produced " + std::to_string(elements.size()) +
                           " elements, expected " + std::to_string(expected));
  }
  return elements;
}

std::vector<Rotation> cyclic_elements(int k) {
  std::vector<Rotation> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    out.push_back(Rotation::from_axis_angle(Vec3::UnitX(), 2.0 * std::numbers::pi * j / k));
  }
  return out;
}

std::vector<Rotation> dihedral_elements(int k) {
  std::vector<Rotation> out = cyclic_elements(k);
  for (int j = 0; j < k; ++j) {
    const double t = std::numbers::pi * j / k;
    out.push_back(Rotation::from_axis_angle(Vec3(0.0, std::cos(t), std::sin(t)), std::numbers::pi));
  }
  return out;
}

std::vector<Rotation> tetrahedral_elements() {
  return closure({Rotation::from_axis_angle(Vec3(1, 1, 1), 2.0 * std::numbers::pi / 3.0),
                  Rotation::from_axis_angle(Vec3::UnitX(), std::numbers::pi)},
                 12);
}

std::vector<Rotation> octahedral_elements() {
  return closure({Rotation::from_axis_angle(Vec3(1, 1, 1), 2.0 * std::numbers::pi / 3.0),
                  Rotation::from_axis_angle(Vec3::UnitX(), std::numbers::pi / 2.0)},
                 24);
}

std::vector<Rotation> icosahedral_elements() {
  const double phi = std::numbers::phi;
  return closure({Rotation::from_axis_angle(Vec3(0.0, 1.0, phi), 2.0 * std::numbers::pi / 5.0),
                  Rotation::from_axis_angle(Vec3::UnitX(), std::numbers::pi),
                  Rotation::from_axis_angle(Vec3(1, 1, 1), 2.0 * std::numbers::pi / 3.0)},
                 60);
}

// Lexicographic order that ignores differences below round-off.
bool lex_less(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (a[i] < b[i] - 1e-12) return true;
    if (a[i] > b[i] + 1e-12) return false;
  }
  return false;
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

}  // namespace

SymmetryGroup::SymmetryGroup(std::string name, GroupFamily family, int k, std::vector<Rotation> elements)
    : name_(std::move(name)), family_(family), k_(k), elements_(std::move(elements)) {}

GroupPtr SymmetryGroup::make(std::string_view name, std::optional<int> k) {
  if (name.empty()) throw std::invalid_argument("empty symmetry group name");
  const char family = static_cast<char>(std::toupper(static_cast<unsigned char>(name.front())));
  std::string_view rest = name.substr(1);
  if (rest == "k" || rest == "K") rest = {};

  auto order = [&]() -> int {
    std::optional<int> n;
    if (!rest.empty()) {
      n = parse_int(rest);
      if (!n) throw std::invalid_argument("unknown symmetry group '" + std::string(name) + "'");
      if (k && *k != *n) throw std::invalid_argument("conflicting group order for '" + std::string(name) + "'");
    } else {
      n = k;
    }
    if (!n) throw std::invalid_argument("group '" + std::string(name) + "' needs an order k");
    if (*n < 1) throw std::invalid_argument("group order k must be >= 1");
    return *n;
  };

  switch (family) {
    case 'C': {
      const int n = order();
      return GroupPtr(new SymmetryGroup("C" + std::to_string(n), GroupFamily::cyclic, n, cyclic_elements(n)));
    }
    case 'D': {
      const int n = order();
      return GroupPtr(new SymmetryGroup("D" + std::to_string(n), GroupFamily::dihedral, n, dihedral_elements(n)));
    }
    case 'T':
    case 'O':
    case 'Y':
      if (!rest.empty()) throw std::invalid_argument("unknown symmetry group '" + std::string(name) + "'");
      break;
    default:
      throw std::invalid_argument("unknown symmetry group '" + std::string(name) + "'");
  }
  if (family == 'T') return GroupPtr(new SymmetryGroup("T", GroupFamily::tetrahedral, 0, tetrahedral_elements()));
  if (family == 'O') return GroupPtr(new SymmetryGroup("O", GroupFamily::octahedral, 0, octahedral_elements()));
  return GroupPtr(new SymmetryGroup("Y", GroupFamily::icosahedral, 0, icosahedral_elements()));
}

GroupPtr SymmetryGroup::from_elements(std::string name, std::vector<Rotation> elements) {
  if (elements.empty()) throw std::invalid_argument("a group needs at least the identity");
  if (!contains(elements, Rotation::identity())) throw std::invalid_argument("group lacks the identity");
  for (const Rotation& a : elements) {
    for (const Rotation& b : elements) {
      if (!contains(elements, a * b)) throw std::invalid_argument("element list is not closed under composition");
    }
  }
  return GroupPtr(new SymmetryGroup(std::move(name), GroupFamily::custom, 0, std::move(elements)));
}

GroupPtr SymmetryGroup::conjugated(const Rotation& q) const {
  std::vector<Rotation> out;
  out.reserve(elements_.size());
  const Rotation qi = q.inverse();
  for (const Rotation& s : elements_) out.push_back(q * s * qi);
  return GroupPtr(new SymmetryGroup(name_ + "^Q", family_, k_, std::move(out)));
}

bool SymmetryGroup::same_as(const SymmetryGroup& other) const {
  if (this == &other) return true;
  if (size() != other.size()) return false;
  return std::all_of(elements_.begin(), elements_.end(),
                     [&](const Rotation& r) { return contains(other.elements_, r); });
}

GroupPtr group_elements(std::string_view name, std::optional<int> k) { return SymmetryGroup::make(name, k); }

std::vector<std::string> crystallographic_group_names() {
  return {"C1", "C2", "C3", "C4", "C6", "D2", "D3", "D4", "D6", "T", "O", "Y"};
}

Coset::Coset(Rotation representative, GroupPtr group) : rep_(representative), group_(std::move(group)) {
  if (!group_) throw std::invalid_argument("coset needs a symmetry group");
}

double coset_distance(const Coset& c1, const Coset& c2) {
  if (!c1.group()->same_as(*c2.group())) {
    throw std::invalid_argument("coset_distance: cosets belong to different groups (" + c1.group()->name() +
                                " vs " + c2.group()->name() + ")");
  }
  double best = std::numbers::pi;
  for (const Rotation& s : c1.group()->elements()) {
    best = std::min(best, geodesic_distance(c1.representative() * s, c2.representative()));
  }
  return best;
}

bool same_coset(const Coset& c1, const Coset& c2, double tol) { return coset_distance(c1, c2) < tol; }

Rotation fundamental_representative(const Coset& c) {
  constexpr double kTieTol = 1e-12;
  std::optional<Rotation> best;
  double best_angle = 0.0;
  std::array<double, 4> best_q{};
  for (const Rotation& s : c.group()->elements()) {
    const Rotation cand = c.representative() * s;
    const double a = cand.angle();
    const auto q = cand.canonical_quaternion();
    const bool better = !best || a < best_angle - kTieTol || (a <= best_angle + kTieTol && lex_less(q, best_q));
    if (better) {
      if (!best || a < best_angle) best_angle = a;
      best = cand;
      best_q = q;
    }
  }
  return *best;
}

}  // namespace symquot
