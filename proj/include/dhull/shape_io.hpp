#pragma once

#include <dhull/oracle.hpp>

#include <memory>
#include <string>

namespace dhull {

// Builds a body from its JSON description:
//   {"type":"disk","cx":"1/2","cy":"1/2","r":"1000"}
//   {"type":"polygon","vertices":[[0,0],[10,0],[10,10]]}
// Rational values may be integers, "p/q" strings, or decimal strings; the
// disk's "r" is the radius (squared internally, exactly). Malformed input
// throws std::invalid_argument.
std::shared_ptr<BodyOracle> parse_shape_json(const std::string& text);

// Accepts either inline JSON (first non-space character '{') or a path to a
// JSON file.
std::shared_ptr<BodyOracle> load_shape(const std::string& file_or_inline);

} // namespace dhull
