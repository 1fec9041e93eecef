#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "symquot/embedding.hpp"

namespace symquot {

/// `arnold`: the plain averaged embeddings (all β = 1).
/// `isometric`: weights chosen so the differential at the identity is orthonormal.
enum class Variant { arnold, isometric };

/// Parses "arnold" or "isometric"; throws std::invalid_argument otherwise.
Variant parse_variant(std::string_view name);
std::string_view variant_name(Variant v);

/// Tabulated parameter row for a group, centered by default.
///
/// Names are those accepted by SymmetryGroup::make. C_k and D_k for k outside
/// the table are generated from the closed-form weights (k >= 3). Throws
/// std::invalid_argument for groups without parameters (e.g. D1) and
/// std::domain_error when the closed form has no real solution (even k >= 8).
SpecPtr registry_lookup(std::string_view group_name, Variant variant = Variant::isometric,
                        std::optional<int> k = std::nullopt);

/// The twelve tabulated groups, in table order.
std::vector<std::string> registry_group_names();

}  // namespace symquot
