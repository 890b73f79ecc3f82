#pragma once

#include <dhull/lattice.hpp>
#include <dhull/oracle.hpp>

#include <optional>
#include <vector>

namespace dhull {

// Quarter-turn frames for the edge-direction search. Directions of the plane
// split into four half-open quadrants, each owning the axis it starts at:
//   pos_x owns {dx > 0, dy >= 0}     pos_y owns {dy > 0, dx <= 0}
//   neg_x owns {dx < 0, dy <= 0}     neg_y owns {dy < 0, dx >= 0}
// Every nonzero direction belongs to exactly one quadrant, so an axis-parallel
// hull edge is found exactly once.
enum class Quadrant { pos_x = 0, pos_y = 1, neg_x = 2, neg_y = 3 };

// A unimodular rotation mapping one quadrant onto the positive one. The search
// runs in frame coordinates, where the owned directions are exactly
// {alpha > 0, beta >= 0}; rays are shot in world coordinates through
// from_frame.
class QuadrantFrame {
public:
    explicit QuadrantFrame(Quadrant q) : quadrant_(q) {}

    Quadrant quadrant() const { return quadrant_; }

    QuadrantFrame next_ccw() const {
        return QuadrantFrame(Quadrant((int(quadrant_) + 1) % 4));
    }

    LatticeVector to_frame(LatticeVector w) const {
        switch (quadrant_) {
        case Quadrant::pos_x: return w;
        case Quadrant::pos_y: return LatticeVector{w.dy, -w.dx};
        case Quadrant::neg_x: return LatticeVector{-w.dx, -w.dy};
        case Quadrant::neg_y: return LatticeVector{-w.dy, w.dx};
        }
        throw internal_error("invalid quadrant");
    }

    LatticeVector from_frame(LatticeVector f) const {
        switch (quadrant_) {
        case Quadrant::pos_x: return f;
        case Quadrant::pos_y: return LatticeVector{-f.dy, f.dx};
        case Quadrant::neg_x: return LatticeVector{-f.dx, -f.dy};
        case Quadrant::neg_y: return LatticeVector{f.dy, -f.dx};
        }
        throw internal_error("invalid quadrant");
    }

    // half-open membership of a world direction in this frame's quadrant
    bool owns(LatticeVector dir) const {
        const LatticeVector f = to_frame(dir);
        return f.dx > 0 && f.dy >= 0;
    }

private:
    Quadrant quadrant_;
};

// The quadrant owning a nonzero direction.
QuadrantFrame quadrant_of(LatticeVector dir);

// Output of one in-quadrant search. Candidates are primitive, distinct, and
// each satisfies contains(body, p + c); there are at most a handful per
// quadrant. Convergents are kept in frame coordinates for diagnostics: the
// continued-fraction convergents of the winning direction always form a
// prefix of this list.
struct CandidateSet {
    std::vector<LatticeVector> candidates;  // world coordinates
    std::vector<LatticeVector> convergents; // frame coordinates, in order
    int iterations = 0;                     // ray-shooting stages performed
};

// Staged convergent search for the next hull edge within one quadrant.
// Starting from the frame basis (1,0), (0,1), it alternates outer and inner
// discrete ray shootings, recording every lattice vector that could be the
// edge direction. Throws internal_error if the stage count ever exceeds the
// golden-ratio bound derived from the body's bounding-box diameter.
CandidateSet find_edge_direction_in_quadrant(const BodyOracle& body,
                                             LatticePoint p,
                                             QuadrantFrame frame);

// The candidate every other candidate lies counterclockwise of. Collinear
// ties resolve to the longer vector; empty input gives no answer. All inputs
// must fit in a cone narrower than a half turn for the order to make sense,
// which holds for candidates gathered at a hull vertex.
std::optional<LatticeVector>
select_clockwise_most(const std::vector<LatticeVector>& candidates);

struct EdgeDirection {
    LatticeVector direction; // primitive, world coordinates
    int iterations = 0;      // stages used by the successful quadrant
};

// Direction of the next counterclockwise hull edge out of hull vertex p, or
// no answer when p is the only lattice point of the body. With a hint (the
// quadrant of the previous edge) quadrants are scanned counterclockwise from
// it and the first nonempty candidate set decides; without one all four
// quadrants are searched and the global clockwise-most candidate wins.
std::optional<EdgeDirection>
find_edge_direction(const BodyOracle& body, LatticePoint p,
                    std::optional<QuadrantFrame> hint = std::nullopt);

} // namespace dhull
