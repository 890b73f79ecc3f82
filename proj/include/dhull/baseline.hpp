#pragma once

#include <dhull/hull.hpp>
#include <dhull/oracle.hpp>

namespace dhull {

// Reference algorithm: walks every integer column crossing the body, takes
// the top and bottom lattice points of each, and feeds them to incremental
// monotone chains, so its cost is linear in the body's width rather than in
// the hull size. Output uses the same conventions as discrete_hull, starting
// at the lowest (then leftmost) vertex. Columns without lattice points are
// skipped; a body with no lattice point at all throws std::runtime_error
// ("no lattice points").
HullChain naive_hull(const BodyOracle& body);

} // namespace dhull
