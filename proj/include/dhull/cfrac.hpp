#ifndef DHULL_CFRAC_HPP
#define DHULL_CFRAC_HPP

#include <dhull/lattice.hpp>

#include <vector>

namespace dhull {

// One step of the continued-fraction expansion of a ratio a/b, carried as a
// lattice vector: point.dy / point.dx is the classical convergent fraction.
struct Convergent {
    int index = 0;       // step number, starting at 0
    Coord quotient = 0;  // partial quotient; >= 1 except possibly at index 0
    LatticeVector point; // quotient * previous point + the one before that

    friend bool operator==(const Convergent&, const Convergent&) = default;
};

// Geometric convergents of ratio = a/b (requires a, b >= 1; Rational values
// are reduced by construction), seeded with (1,0) and (0,1).  The last point
// is (b, a); successive points satisfy cross(prev, cur) = +-1 with
// alternating sign.  Length is at most 2 + ceil(log_phi(max(a, b))).
std::vector<Convergent> convergents(Rational ratio);

// Same list as convergents(ratio), but computed geometrically: walk the
// lattice staircase toward the direction (b, a), stepping from each corner
// along the previous direction while staying strictly on the starting side
// of the target ray; landing on the ray ends the walk.  Only cross-product
// side tests are used, never division of the ratio.  Deliberately
// independent of convergents(); the tests cross-check the two.
std::vector<Convergent> geom_gcd(Rational ratio);

} // namespace dhull

#endif
