#include "symquot/registry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "symquot/analysis.hpp"

namespace symquot {

namespace {

const Vec3 e1 = Vec3::UnitX();
const Vec3 e2 = Vec3::UnitY();
const Vec3 e3 = Vec3::UnitZ();

Vec3 tetra_axis() { return Vec3(1.0, 1.0, 1.0).normalized(); }
Vec3 icosa_vertex() { return Vec3(0.0, 1.0, std::numbers::phi).normalized(); }

struct Row {
  std::vector<Vec3> u;
  std::vector<int> alpha;
  std::vector<double> beta;
};

Row isometric_row(const SymmetryGroup& g) {
  const double r2 = std::sqrt(2.0);
  const int k = g.order_parameter();
  switch (g.family()) {
    case GroupFamily::cyclic:
      if (k == 1) return {{e1, e2, e3}, {1, 1, 1}, {1 / r2, 1 / r2, 1 / r2}};
      if (k == 2) return {{e1, e2, e3}, {1, 2, 2}, {1 / r2, 0.5, 0.5}};
      if (k == 3) return {{e1, e2}, {1, 3}, {std::sqrt(5.0 / 6.0), 2.0 / 3.0}};
      if (k == 4) return {{e1, e2}, {1, 4}, {1 / r2, 1 / r2}};
      if (k == 6) return {{e1, e2}, {1, 6}, {1 / std::sqrt(12.0), 2 * r2 / 3}};
      {
        const auto [b1, b2] = derive_beta(GroupFamily::cyclic, k);
        return {{e1, e2}, {1, k}, {b1, b2}};
      }
    case GroupFamily::dihedral:
      if (k == 1) throw std::invalid_argument("no tabulated embedding parameters for D1");
      if (k == 2) return {{e1, e2, e3}, {2, 2, 2}, {0.5, 0.5, 0.5}};
      if (k == 3) return {{e1, e2}, {2, 3}, {std::sqrt(5.0 / 12.0), 2.0 / 3.0}};
      if (k == 4) return {{e1, e2}, {2, 4}, {0.5, 1 / r2}};
      if (k == 6) return {{e1, e2}, {2, 6}, {1 / std::sqrt(24.0), 2 * r2 / 3}};
      {
        const auto [b1, b2] = derive_beta(GroupFamily::dihedral, k);
        return {{e1, e2}, {2, k}, {b1, b2}};
      }
    case GroupFamily::tetrahedral:
      return {{tetra_axis()}, {3}, {3 / (2 * r2)}};
    case GroupFamily::octahedral:
      return {{e1}, {4}, {3 / (2 * r2)}};
    case GroupFamily::icosahedral:
      return {{icosa_vertex()}, {10}, {75.0 / (8.0 * std::sqrt(95.0))}};
    case GroupFamily::custom:
      break;
  }
  throw std::invalid_argument("no tabulated embedding parameters for group " + g.name());
}

Row arnold_row(const SymmetryGroup& g) {
  const int k = g.order_parameter();
  switch (g.family()) {
    case GroupFamily::cyclic:
      if (k == 1) return {{e1, e2, e3}, {1, 1, 1}, {1, 1, 1}};
      return {{e1, e2}, {1, k}, {1, 1}};
    case GroupFamily::dihedral:
      if (k == 1) throw std::invalid_argument("no tabulated embedding parameters for D1");
      if (k == 2) return {{e1, e2}, {2, 2}, {1, 1}};
      // e1 is fixed up to sign by D_k in this orientation; the in-plane
      // direction e2 carries the k-fold information.
      return {{e2}, {k}, {1}};
    case GroupFamily::tetrahedral:
      return {{tetra_axis()}, {3}, {1}};
    case GroupFamily::octahedral:
      return {{e1}, {4}, {1}};
    case GroupFamily::icosahedral:
      return {{icosa_vertex()}, {10}, {1}};
    case GroupFamily::custom:
      break;
  }
  throw std::invalid_argument("no tabulated embedding parameters for group " + g.name());
}

}  // namespace

Variant parse_variant(std::string_view name) {
  if (name == "arnold") return Variant::arnold;
  if (name == "isometric") return Variant::isometric;
  throw std::invalid_argument("unknown variant '" + std::string(name) + "' (expected arnold or isometric)");
}

std::string_view variant_name(Variant v) { return v == Variant::arnold ? "arnold" : "isometric"; }

SpecPtr registry_lookup(std::string_view group_name, Variant variant, std::optional<int> k) {
  GroupPtr g = SymmetryGroup::make(group_name, k);
  Row row = variant == Variant::isometric ? isometric_row(*g) : arnold_row(*g);
  std::string label = g->name() + "/" + std::string(variant_name(variant));
  return EmbeddingSpec::create(std::move(g), std::move(row.u), std::move(row.alpha), std::move(row.beta), true,
                               std::move(label));
}

std::vector<std::string> registry_group_names() { return crystallographic_group_names(); }

}  // namespace symquot
