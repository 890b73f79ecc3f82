#include <dhull/baseline.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace dhull {

HullChain naive_hull(const BodyOracle& body) {
    const BoundingBox box = body.approx_bbox();
    const Coord x_lo = static_cast<Coord>(std::floor(box.x_min)) - 1;
    const Coord x_hi = static_cast<Coord>(std::ceil(box.x_max)) + 1;
    const double mid = std::clamp((box.y_min + box.y_max) / 2.0, -1e15, 1e15);
    const Coord y_ref = static_cast<Coord>(std::llround(mid));

    // One pass over the columns, maintaining the two monotone chains. The
    // lower chain keeps strict left turns, the upper strict right turns, so
    // collinear boundary points drop out as they arrive.
    std::vector<LatticePoint> lower;
    std::vector<LatticePoint> upper;
    for (Coord x = x_lo; x <= x_hi; ++x) {
        const auto run =
            lattice_run_on_line(body, LatticePoint{x, y_ref}, LatticeVector{0, 1});
        if (!run) continue;
        const LatticePoint bottom{x, y_ref + run->first};
        const LatticePoint top{x, y_ref + run->second};
        while (lower.size() >= 2 &&
               orientation(lower[lower.size() - 2], lower.back(), bottom) <= 0)
            lower.pop_back();
        lower.push_back(bottom);
        while (upper.size() >= 2 &&
               orientation(upper[upper.size() - 2], upper.back(), top) >= 0)
            upper.pop_back();
        upper.push_back(top);
    }
    if (lower.empty()) throw std::runtime_error("no lattice points");

    // Counterclockwise cycle: lower chain left to right, then the upper chain
    // right to left, dropping the shared extreme points.
    std::vector<LatticePoint> cycle = lower;
    std::size_t stop = upper.size();
    if (upper.back() == lower.back()) --stop;
    std::size_t first = 0;
    if (upper.front() == lower.front()) first = 1;
    for (std::size_t i = stop; i-- > first;) cycle.push_back(upper[i]);

    std::size_t start = 0;
    for (std::size_t i = 1; i < cycle.size(); ++i) {
        if (cycle[i].y < cycle[start].y ||
            (cycle[i].y == cycle[start].y && cycle[i].x < cycle[start].x))
            start = i;
    }
    std::rotate(cycle.begin(),
                cycle.begin() + static_cast<std::ptrdiff_t>(start), cycle.end());

    HullChain chain;
    chain.vertices = std::move(cycle);
    const std::size_t n = chain.vertices.size();
    if (n == 1) {
        chain.boundary_count = 1;
        return chain;
    }
    if (n == 2) {
        chain.edge_weights.push_back(
            edge_weight(chain.vertices[0], chain.vertices[1]));
        chain.boundary_count = chain.edge_weights.front() + 1;
        return chain;
    }
    for (std::size_t i = 0; i < n; ++i) {
        chain.edge_weights.push_back(
            edge_weight(chain.vertices[i], chain.vertices[(i + 1) % n]));
        chain.boundary_count += chain.edge_weights.back();
    }
    return chain;
}

} // namespace dhull
