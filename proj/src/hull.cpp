#include <dhull/hull.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

namespace dhull {

namespace {

bool row_has_lattice_point(const BodyOracle& body, LatticePoint probe) {
    return lattice_run_on_line(body, probe, LatticeVector{1, 0}).has_value();
}

LatticePoint advance(LatticePoint p, LatticeVector dir, Coord steps) {
    const Wide nx = Wide(p.x) + Wide(steps) * Wide(dir.dx);
    const Wide ny = Wide(p.y) + Wide(steps) * Wide(dir.dy);
    return LatticePoint{detail::narrow_checked(nx, "hull vertex coordinate"),
                        detail::narrow_checked(ny, "hull vertex coordinate")};
}

std::size_t trace_vertex_budget(const BodyOracle& body) {
    const double diameter = std::max(body.approx_bbox().diameter(), 1.0);
    return static_cast<std::size_t>(7.0 * std::pow(diameter, 2.0 / 3.0)) + 16;
}

// Largest offset along `sign` for which `hits` still succeeds, found by a
// doubling probe followed by a binary search. Requires hits(anchor).
template <typename Pred>
Coord doubling_extreme(Coord anchor, Coord sign, const Pred& hits) {
    Coord last_hit = 0;
    Coord step = 1;
    for (;;) {
        if (step > (Coord(1) << 55))
            throw internal_error("extent search failed to terminate");
        if (hits(anchor + sign * step)) {
            last_hit = step;
            step *= 2;
        } else {
            break;
        }
    }
    Coord lo = last_hit; // still hits
    Coord hi = step;     // misses
    while (hi - lo > 1) {
        const Coord mid = lo + (hi - lo) / 2;
        if (hits(anchor + sign * mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return anchor + sign * lo;
}

bool strictly_inside_quad(const std::array<LatticePoint, 4>& quad,
                          LatticePoint v) {
    for (int i = 0; i < 4; ++i) {
        const LatticeVector edge = quad[(i + 1) % 4] - quad[i];
        if (cross(edge, v - quad[i]) <= 0) return false;
    }
    return true;
}

// Walks the hull of `uni` (the body clipped to its lattice box, merged with
// one trapezoid) from a known hull vertex and returns the first traced vertex
// that belongs to the clipped body without being strictly inside the
// trapezoid. Such a point is extreme for the union's lattice set, which
// contains the body's, so it is a hull vertex of the body's lattice set.
std::optional<LatticePoint> trace_union_for_body_vertex(
    const BodyOracle& uni, const BodyOracle& clipped,
    const std::array<LatticePoint, 4>& quad, LatticePoint start, int budget) {
    LatticePoint cur = start;
    std::optional<QuadrantFrame> hint;
    for (int step = 0; step < budget; ++step) {
        if (clipped.contains(cur) && !strictly_inside_quad(quad, cur))
            return cur;
        const auto edge = find_edge_direction(uni, cur, hint);
        if (!edge) return std::nullopt; // single lattice point, not in body
        const auto steps = last_inside(uni, cur, edge->direction);
        if (!steps || *steps < 1)
            throw internal_error("union trace lost its edge endpoint");
        cur = advance(cur, edge->direction, *steps);
        hint = quadrant_of(edge->direction);
        if (cur == start) return std::nullopt; // closed without entering the body
    }
    return std::nullopt;
}

} // namespace

LatticePoint find_lowest_vertex(const BodyOracle& body, LatticePoint seed) {
    if (!body.contains(seed)) throw std::invalid_argument("seed outside body");

    // Probe rows seed.y - 2^i until one is empty. Nonempty rows form a
    // contiguous band for a connected lattice set, so the lowest nonempty row
    // then falls to a binary search.
    Coord last_hit = seed.y;
    std::optional<Coord> first_empty;
    for (int i = 0; i < 62 && !first_empty; ++i) {
        const Coord y = seed.y - (Coord(1) << i);
        if (row_has_lattice_point(body, LatticePoint{seed.x, y})) {
            last_hit = y;
        } else {
            first_empty = y;
        }
    }
    if (!first_empty)
        throw internal_error("no empty row below a bounded body");

    Coord lo = *first_empty; // empty row
    Coord hi = last_hit;     // nonempty row
    while (hi - lo > 1) {
        const Coord mid = lo + (hi - lo) / 2;
        if (row_has_lattice_point(body, LatticePoint{seed.x, mid})) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    const auto run =
        lattice_run_on_line(body, LatticePoint{seed.x, hi}, LatticeVector{1, 0});
    if (!run) throw internal_error("lowest row lost its lattice points");
    return LatticePoint{seed.x + run->first, hi};
}

HullChain discrete_hull_from(const BodyOracle& body, LatticePoint v0) {
    if (!body.contains(v0)) throw std::invalid_argument("seed outside body");

    HullChain chain;
    chain.vertices.push_back(v0);
    const std::size_t vertex_budget = trace_vertex_budget(body);

    LatticePoint p = v0;
    std::optional<QuadrantFrame> hint;
    for (;;) {
        const auto edge = find_edge_direction(body, p, hint);
        if (!edge) {
            if (chain.vertices.size() == 1) {
                chain.boundary_count = 1;
                return chain;
            }
            throw internal_error("edge direction search failed mid-trace");
        }
        chain.max_edge_iterations =
            std::max(chain.max_edge_iterations, edge->iterations);

        const auto steps = last_inside(body, p, edge->direction);
        if (!steps || *steps < 1)
            throw internal_error("hull edge lost its far endpoint");
        chain.edge_weights.push_back(*steps);

        const LatticePoint next = advance(p, edge->direction, *steps);
        if (next == v0) break;

        chain.vertices.push_back(next);
        if (chain.vertices.size() > vertex_budget)
            throw internal_error("hull trace exceeded its vertex budget");
        p = next;
        hint = quadrant_of(edge->direction);
    }

    if (chain.vertices.size() == 2) {
        // Collinear lattice set: the two traversal directions cover one
        // geometric edge, so record it once and count both endpoints.
        chain.edge_weights.pop_back();
        chain.boundary_count = chain.edge_weights.front() + 1;
    } else {
        for (const Coord w : chain.edge_weights) chain.boundary_count += w;
    }
    return chain;
}

HullChain discrete_hull(const BodyOracle& body, LatticePoint seed) {
    return discrete_hull_from(body, find_lowest_vertex(body, seed));
}

std::optional<LatticePoint> find_hull_vertex_general(const BodyOracle& body,
                                                     RationalPoint p) {
    if (!body.contains_rational(p))
        throw std::invalid_argument("point outside body");

    // Exact line-hit predicates over a window that the bounding box
    // guarantees to cover the whole body.
    const BoundingBox box = body.approx_bbox();
    const Coord x_pad_lo = static_cast<Coord>(std::floor(box.x_min)) - 2;
    const Coord x_pad_hi = static_cast<Coord>(std::ceil(box.x_max)) + 2;
    const Coord y_pad_lo = static_cast<Coord>(std::floor(box.y_min)) - 2;
    const Coord y_pad_hi = static_cast<Coord>(std::ceil(box.y_max)) + 2;
    const auto column_hits = [&](Coord x) {
        return body.segment_hits(LatticePoint{x, y_pad_lo}, LatticeVector{0, 1},
                                 Rational(0), Rational(y_pad_hi - y_pad_lo));
    };
    const auto row_hits = [&](Coord y) {
        return body.segment_hits(LatticePoint{x_pad_lo, y}, LatticeVector{1, 0},
                                 Rational(0), Rational(x_pad_hi - x_pad_lo));
    };

    // Anchor an integer column and row through the body. The integer columns
    // hitting a convex body form a contiguous range, so if neither the floor
    // nor the ceiling column through p hits, no integer column does and the
    // body has no lattice point (and likewise for rows).
    std::optional<Coord> col_anchor;
    if (column_hits(rational_floor(p.x))) {
        col_anchor = rational_floor(p.x);
    } else if (column_hits(rational_ceil(p.x))) {
        col_anchor = rational_ceil(p.x);
    }
    if (!col_anchor) return std::nullopt;
    std::optional<Coord> row_anchor;
    if (row_hits(rational_floor(p.y))) {
        row_anchor = rational_floor(p.y);
    } else if (row_hits(rational_ceil(p.y))) {
        row_anchor = rational_ceil(p.y);
    }
    if (!row_anchor) return std::nullopt;

    // Lattice bounding box of the body: the extreme integer columns and rows
    // that still meet it.
    const Coord box_x_lo = doubling_extreme(*col_anchor, -1, column_hits);
    const Coord box_x_hi = doubling_extreme(*col_anchor, +1, column_hits);
    const Coord box_y_lo = doubling_extreme(*row_anchor, -1, row_hits);
    const Coord box_y_hi = doubling_extreme(*row_anchor, +1, row_hits);

    const auto column_run = [&](Coord x) {
        return lattice_run_on_line(body, LatticePoint{x, *row_anchor},
                                   LatticeVector{0, 1});
    };

    // Narrow body: scan every column and return the lowest (then leftmost)
    // lattice point, which is extreme and therefore a hull vertex.
    if (box_x_hi - box_x_lo < 100) {
        std::optional<LatticePoint> best;
        for (Coord x = box_x_lo; x <= box_x_hi; ++x) {
            const auto run = column_run(x);
            if (!run) continue;
            const LatticePoint cand{x, *row_anchor + run->first};
            if (!best || cand.y < best->y ||
                (cand.y == best->y && cand.x < best->x))
                best = cand;
        }
        return best;
    }

    // Wide body: locate the extreme lattice-occupied columns by scanning
    // inward from the ends of the column range. For round bodies the first
    // column or two already holds lattice points; a long run of occupied-free
    // columns means a needle-like body this search does not support.
    constexpr Coord scan_cap = 4096;
    std::optional<Coord> left_col;
    std::optional<std::pair<Coord, Coord>> left_run;
    for (Coord i = 0; i <= std::min(scan_cap, box_x_hi - box_x_lo); ++i) {
        if (auto run = column_run(box_x_lo + i)) {
            left_col = box_x_lo + i;
            left_run = run;
            break;
        }
    }
    if (!left_col) {
        if (box_x_hi - box_x_lo <= scan_cap) return std::nullopt;
        throw std::runtime_error("could not locate a lattice-occupied column");
    }
    std::optional<Coord> right_col;
    std::optional<std::pair<Coord, Coord>> right_run;
    for (Coord i = 0; i <= std::min(scan_cap, box_x_hi - box_x_lo); ++i) {
        if (auto run = column_run(box_x_hi - i)) {
            right_col = box_x_hi - i;
            right_run = run;
            break;
        }
    }
    if (!right_col)
        throw internal_error("occupied column vanished on the second scan");

    const Coord x0 = *left_col;
    const Coord x1 = *right_col;
    const LatticePoint left_bottom{x0, *row_anchor + left_run->first};
    if (x0 == x1) {
        // Single occupied column: its bottom point is the lexicographically
        // smallest lattice point of the body, always a hull vertex.
        return left_bottom;
    }

    const auto base =
        std::shared_ptr<const BodyOracle>(std::shared_ptr<void>(), &body);
    const auto clipped = std::make_shared<ClippedBody>(base, box_x_lo, box_x_hi,
                                                       box_y_lo, box_y_hi);

    const Coord eta0 = *row_anchor + left_run->first;
    const Coord eta1 = *row_anchor + right_run->first;
    const Coord tau0 = *row_anchor + left_run->second;
    const Coord tau1 = *row_anchor + right_run->second;
    const Coord depth = std::max<Coord>(
        static_cast<Coord>(std::ceil(std::hypot(double(box_x_hi - box_x_lo),
                                                double(box_y_hi - box_y_lo)))),
        1);

    const double body_diameter = std::max(box.diameter(), 1.0);
    const Coord log_arg = std::min<Coord>(
        static_cast<Coord>(std::ceil(2.0 * body_diameter)), Coord(1) << 60);
    const int trace_budget = 1 + 4 * (2 * ceil_log_phi(std::max<Coord>(log_arg, 1)) + 7);

    // Trapezoid glued below the chord joining the bottom lattice points of
    // the extreme occupied columns. Its bottom edge sits strictly below the
    // body, so the bottom-left corner is the lowest-leftmost lattice point of
    // the union and a hull vertex to start the trace from.
    {
        const Coord y_b = std::min(eta0, eta1) - depth - 2;
        const std::array<LatticePoint, 4> quad{
            LatticePoint{x0, y_b}, LatticePoint{x1, y_b}, LatticePoint{x1, eta1},
            LatticePoint{x0, eta0}};
        std::vector<RationalPoint> corners;
        for (const auto& q : quad)
            corners.push_back(RationalPoint{Rational(q.x), Rational(q.y)});
        const TrapezoidUnionBody uni(clipped, corners, {2, 3});
        if (auto hit = trace_union_for_body_vertex(uni, *clipped, quad,
                                                   quad[0], trace_budget))
            return hit;
    }

    // Mirrored trapezoid above the chord joining the top lattice points; the
    // union's top-left corner plays the start role.
    {
        const Coord y_t = std::max(tau0, tau1) + depth + 2;
        const std::array<LatticePoint, 4> quad{
            LatticePoint{x0, tau0}, LatticePoint{x1, tau1},
            LatticePoint{x1, y_t}, LatticePoint{x0, y_t}};
        std::vector<RationalPoint> corners;
        for (const auto& q : quad)
            corners.push_back(RationalPoint{Rational(q.x), Rational(q.y)});
        const TrapezoidUnionBody uni(clipped, corners, {0, 1});
        if (auto hit = trace_union_for_body_vertex(uni, *clipped, quad,
                                                   quad[3], trace_budget))
            return hit;
    }

    // Both scans found occupied columns, so lattice points exist and one of
    // the traces must have reached one.
    throw internal_error("trapezoid traces failed to reach a body vertex");
}

} // namespace dhull
