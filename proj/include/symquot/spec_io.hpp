#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "symquot/registry.hpp"

namespace symquot {

/// Reads an embedding spec from a YAML key-value document:
///
///     group: C4          # required
///     k: 4               # optional, for C/D families
///     variant: isometric # arnold | isometric, default isometric
///     centered: true     # default true
///     u: [[1,0,0],[0,1,0]]   # optional overrides
///     alpha: [1, 4]
///     beta: [0.7071067811865476, 0.7071067811865476]
///
/// With all of u, alpha and beta present the registry is bypassed; otherwise
/// the registry row is taken and the given fields replace its entries.
/// Throws std::invalid_argument on malformed documents.
SpecPtr parse_spec_document(std::string_view text);
SpecPtr load_spec_file(const std::string& path);

/// YAML document that parse_spec_document maps back to an equal spec (for
/// groups constructible by name).
std::string dump_spec_document(const EmbeddingSpec& spec);

}  // namespace symquot
