#include <dhull/edgedir.hpp>

#include <algorithm>
#include <cmath>

namespace dhull {
namespace {

constexpr Wide point_budget = Wide(1) << 62;

// p + mult * v evaluated in 128 bits; no value when the result leaves the
// safe coordinate range (such a point is far outside any supported body).
std::optional<LatticePoint> shifted(LatticePoint p, LatticeVector v,
                                    Coord mult = 1) {
    const Wide x = Wide(p.x) + Wide(mult) * v.dx;
    const Wide y = Wide(p.y) + Wide(mult) * v.dy;
    if (x > point_budget || x < -point_budget || y > point_budget ||
        y < -point_budget)
        return std::nullopt;
    return LatticePoint{Coord(x), Coord(y)};
}

bool contains_shifted(const BodyOracle& body, LatticePoint p, LatticeVector v,
                      Coord mult = 1) {
    const auto q = shifted(p, v, mult);
    return q && body.contains(*q);
}

void push_candidate(std::vector<LatticeVector>& candidates, LatticeVector c) {
    if (std::find(candidates.begin(), candidates.end(), c) == candidates.end())
        candidates.push_back(c);
}

LatticeVector combine(LatticeVector base, LatticeVector step, Coord k) {
    const Wide dx = Wide(base.dx) + Wide(k) * step.dx;
    const Wide dy = Wide(base.dy) + Wide(k) * step.dy;
    if (dx > point_budget || dx < -point_budget || dy > point_budget ||
        dy < -point_budget)
        throw internal_error("convergent coordinates exceeded the supported range");
    return LatticeVector{Coord(dx), Coord(dy)};
}

int stage_cap(const BodyOracle& body) {
    const double diameter = body.approx_bbox().diameter();
    Coord bound = 1;
    if (diameter > 1.0)
        bound = std::min<Coord>(Coord(std::ceil(diameter)), Coord(1) << 60);
    return 2 + ceil_log_phi(bound) + 4;
}

} // namespace

QuadrantFrame quadrant_of(LatticeVector dir) {
    if (dir.is_zero()) throw std::invalid_argument("zero direction has no quadrant");
    if (dir.dx > 0 && dir.dy >= 0) return QuadrantFrame(Quadrant::pos_x);
    if (dir.dy > 0 && dir.dx <= 0) return QuadrantFrame(Quadrant::pos_y);
    if (dir.dx < 0 && dir.dy <= 0) return QuadrantFrame(Quadrant::neg_x);
    return QuadrantFrame(Quadrant::neg_y);
}

CandidateSet find_edge_direction_in_quadrant(const BodyOracle& body,
                                             LatticePoint p,
                                             QuadrantFrame frame) {
    CandidateSet out;
    const int cap = stage_cap(body);

    // An edge along the quadrant's own axis equals the very first convergent
    // and the staged search below only records candidates strictly above the
    // axis, so probe the axis neighbor directly.
    const LatticeVector axis = frame.from_frame({1, 0});
    if (contains_shifted(body, p, axis)) push_candidate(out.candidates, axis);

    LatticeVector prev2{1, 0}; // frame coordinates
    LatticeVector prev1{0, 1};
    for (int stage = 0;; ++stage) {
        if (stage > cap)
            throw internal_error(
                "edge direction search exceeded its iteration bound");
        ++out.iterations;

        const auto anchor = shifted(p, frame.from_frame(prev2));
        if (!anchor) break; // ray starts beyond any supported body
        const LatticeVector dir = frame.from_frame(prev1);

        if (stage % 2 == 1) {
            // outermost unit segment of the discrete ray still meeting the body
            const auto k = max_seg_index(body, *anchor, dir);
            if (!k) break;      // the ray misses the body: all convergents found
            if (*k == 0) break; // the next convergent would repeat prev2
            const LatticeVector conv = combine(prev2, prev1, *k);
            out.convergents.push_back(conv);
            if (contains_shifted(body, p, frame.from_frame(conv)))
                push_candidate(out.candidates, frame.from_frame(conv));
            prev2 = prev1;
            prev1 = conv;
        } else {
            // innermost unit segment of the discrete ray meeting the body
            const auto k = min_seg_index(body, *anchor, dir);
            if (!k) break;
            if (contains_shifted(body, *anchor, dir, *k + 1))
                push_candidate(out.candidates,
                               frame.from_frame(combine(prev2, prev1, *k + 1)));
            if (*k == 0 && stage > 0) break;
            const LatticeVector conv = combine(prev2, prev1, *k);
            out.convergents.push_back(conv);
            prev2 = prev1;
            prev1 = conv;
        }
    }
    return out;
}

std::optional<LatticeVector>
select_clockwise_most(const std::vector<LatticeVector>& candidates) {
    if (candidates.empty()) return std::nullopt;
    LatticeVector best = candidates.front();
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const LatticeVector c = candidates[i];
        const Wide side = cross(best, c);
        if (side < 0 || (side == 0 && norm_sq(c) > norm_sq(best))) best = c;
    }
    return best;
}

std::optional<EdgeDirection>
find_edge_direction(const BodyOracle& body, LatticePoint p,
                    std::optional<QuadrantFrame> hint) {
    if (hint) {
        // Hull tracing: the next edge is never clockwise of the previous one,
        // so the first nonempty quadrant counterclockwise from the hint holds
        // the answer.
        QuadrantFrame frame = *hint;
        for (int step = 0; step < 4; ++step) {
            const CandidateSet set =
                find_edge_direction_in_quadrant(body, p, frame);
            if (!set.candidates.empty()) {
                const auto best = select_clockwise_most(set.candidates);
                return EdgeDirection{*best, set.iterations};
            }
            frame = frame.next_ccw();
        }
        return std::nullopt;
    }

    // No previous edge: gather all quadrants and pick the global winner.
    std::vector<CandidateSet> sets;
    std::vector<LatticeVector> all;
    QuadrantFrame frame(Quadrant::pos_x);
    for (int step = 0; step < 4; ++step) {
        sets.push_back(find_edge_direction_in_quadrant(body, p, frame));
        for (const LatticeVector c : sets.back().candidates)
            push_candidate(all, c);
        frame = frame.next_ccw();
    }
    const auto best = select_clockwise_most(all);
    if (!best) return std::nullopt;
    for (const CandidateSet& set : sets) {
        if (std::find(set.candidates.begin(), set.candidates.end(), *best) !=
            set.candidates.end())
            return EdgeDirection{*best, set.iterations};
    }
    throw internal_error("winning candidate lost its quadrant");
}

} // namespace dhull
