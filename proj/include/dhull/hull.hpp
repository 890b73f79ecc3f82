#pragma once

#include <dhull/edgedir.hpp>
#include <dhull/lattice.hpp>
#include <dhull/oracle.hpp>

#include <optional>
#include <vector>

namespace dhull {

// Convex hull of the body's lattice points, as a counterclockwise cycle of
// extreme points. Degenerate lattice sets are legal: a single point has no
// edges and boundary_count 1; a collinear set has two vertices, one edge
// weight, and boundary_count weight + 1. For three or more vertices every
// consecutive triple turns strictly left, every vertex lies in the body, and
// boundary_count (the number of distinct lattice points on the cycle) equals
// the sum of the edge weights.
struct HullChain {
    std::vector<LatticePoint> vertices;
    std::vector<Coord> edge_weights; // lattice points per edge, start excluded
    Coord boundary_count = 0;
    int max_edge_iterations = 0; // worst edge-direction search, for harnesses
};

// The leftmost lattice point of the body's lowest nonempty lattice row,
// located by a downward doubling search over rows followed by a binary
// search. Requires the lattice set to be connected through unit steps (true
// for every convex body handled here) and the seed to be a lattice point of
// the body; a seed outside throws std::invalid_argument.
LatticePoint find_lowest_vertex(const BodyOracle& body, LatticePoint seed);

// Full hull trace starting from a known hull vertex: repeatedly finds the
// next edge direction and extends it as far as the body allows. The chain
// begins at v0 and runs counterclockwise. Throws internal_error if the trace
// fails to close within the cube-root vertex budget.
HullChain discrete_hull_from(const BodyOracle& body, LatticePoint v0);

// find_lowest_vertex followed by discrete_hull_from.
HullChain discrete_hull(const BodyOracle& body, LatticePoint seed);

// A hull vertex of the body's lattice set given only a rational interior
// point, or no answer when the body holds no lattice point at all. Narrow
// bodies are scanned column by column; wide ones get a trapezoid glued below
// (then above) the chord joining the extreme lattice-occupied columns, and
// the hull of the union is traced until it enters the body. The point must
// lie in the body (std::invalid_argument otherwise).
std::optional<LatticePoint> find_hull_vertex_general(const BodyOracle& body,
                                                     RationalPoint p);

} // namespace dhull
