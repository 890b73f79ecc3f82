#ifndef DHULL_ORACLE_HPP
#define DHULL_ORACLE_HPP

#include <dhull/lattice.hpp>

#include <atomic>
#include <memory>
#include <optional>
#include <vector>

// Convex-body oracles.
//
// Robustness protocol: chord() returns floating-point estimates of the
// parameter window in which a line meets the body.  Every integer index
// derived from a chord (last_inside, min_seg_index, max_seg_index) is
// decided by exact predicates - contains() probes and, where the answer
// depends on the body between lattice points, segment_hits() - so floating
// point only steers where the exact probes start, never what they conclude.
// chord() implementations must keep their endpoints within chord_guard of
// the true values; if an estimate is further off, the derived-index helpers
// detect the inconsistency and recover with exact bisection.

namespace dhull {

inline constexpr double chord_guard = 2.0;

struct RationalPoint {
    Rational x;
    Rational y;
};

// Approximate parameter window [lo, hi] of {t : origin + t*dir in body}.
struct ChordWindow {
    double lo = 0.0;
    double hi = 0.0;
};

struct BoundingBox {
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    // Bounding-box diameter; used as the diameter estimate in all
    // iteration budgets (an upper bound on the true diameter).
    double diameter() const;
};

class BodyOracle {
public:
    virtual ~BodyOracle() = default;

    // Exact lattice membership.
    virtual bool contains(LatticePoint p) const = 0;

    // Exact membership of a rational point.
    virtual bool contains_rational(RationalPoint p) const = 0;

    // Float estimate of the chord window along origin + t*dir, or nullopt
    // when the line (approximately) misses the body.  Advisory only; see
    // the robustness protocol above.
    virtual std::optional<ChordWindow> chord(LatticePoint origin,
                                             LatticeVector dir) const = 0;

    // Exact: does {origin + t*dir : t0 <= t <= t1} meet the body?
    virtual bool segment_hits(LatticePoint origin, LatticeVector dir,
                              Rational t0, Rational t1) const = 0;

    // Loose outer bounding box (float, padded by at least one unit).
    virtual BoundingBox approx_bbox() const = 0;

    // True when every line meets the body in a single parameter interval
    // (convex bodies).  The derived-index helpers then trust local
    // contains-probe certificates; otherwise they use exact bisection with
    // segment_hits, which needs no contiguity assumption.
    virtual bool convex_chords() const { return true; }
};

// Closed disk with exact rational center and squared radius.
class DiskBody : public BodyOracle {
public:
    DiskBody(Rational center_x, Rational center_y, Rational radius_sq);
    static DiskBody from_radius(Rational center_x, Rational center_y,
                                Rational radius);

    Rational center_x() const { return cx_; }
    Rational center_y() const { return cy_; }
    Rational radius_sq() const { return rsq_; }

    bool contains(LatticePoint p) const override;
    bool contains_rational(RationalPoint p) const override;
    std::optional<ChordWindow> chord(LatticePoint origin,
                                     LatticeVector dir) const override;
    bool segment_hits(LatticePoint origin, LatticeVector dir, Rational t0,
                      Rational t1) const override;
    BoundingBox approx_bbox() const override;

private:
    Rational cx_, cy_, rsq_;
    // Scaled-integer form: center = (cnx, cny) / cden, radius_sq = rnum / rden.
    Coord cden_, cnx_, cny_;
    Coord rnum_, rden_;
    Wide rhs_;          // rnum * cden^2, the scaled membership threshold
    Coord probe_limit_; // |coordinate| bound for the 128-bit fast paths
    double cxd_, cyd_, rsqd_, rd_;
};

// Closed convex polygon with rational vertices in strictly convex CCW order.
class PolygonBody : public BodyOracle {
public:
    explicit PolygonBody(std::vector<RationalPoint> vertices);
    static PolygonBody from_lattice(const std::vector<LatticePoint>& vertices);

    std::size_t vertex_count() const { return verts_.size(); }
    const RationalPoint& vertex(std::size_t i) const { return verts_[i]; }

    bool contains(LatticePoint p) const override;
    bool contains_rational(RationalPoint p) const override;
    // O(log n): locates the two boundary chains crossing the query line by
    // binary search for the extreme vertices along the line normal.
    std::optional<ChordWindow> chord(LatticePoint origin,
                                     LatticeVector dir) const override;
    bool segment_hits(LatticePoint origin, LatticeVector dir, Rational t0,
                      Rational t1) const override;
    BoundingBox approx_bbox() const override;

    // O(n) reference scan used by tests to validate the binary search.
    std::optional<ChordWindow> chord_by_scan(LatticePoint origin,
                                             LatticeVector dir) const;

private:
    std::size_t extreme_vertex_index(LatticeVector outward) const;

    std::vector<RationalPoint> verts_;
    Coord den_ = 1;                    // common denominator of all vertices
    std::vector<LatticePoint> scaled_; // vertex numerators at den_
    Coord probe_limit_ = 0;
    BoundingBox bbox_;
};

// A body intersected with an axis-aligned integer box.
class ClippedBody : public BodyOracle {
public:
    ClippedBody(std::shared_ptr<const BodyOracle> inner, Coord x_min,
                Coord x_max, Coord y_min, Coord y_max);

    bool contains(LatticePoint p) const override;
    bool contains_rational(RationalPoint p) const override;
    std::optional<ChordWindow> chord(LatticePoint origin,
                                     LatticeVector dir) const override;
    bool segment_hits(LatticePoint origin, LatticeVector dir, Rational t0,
                      Rational t1) const override;
    BoundingBox approx_bbox() const override;
    bool convex_chords() const override { return inner_->convex_chords(); }

private:
    // Exact parameter window of the box along origin + t*dir, or nullopt.
    std::optional<std::pair<Rational, Rational>>
    box_window(LatticePoint origin, LatticeVector dir) const;

    std::shared_ptr<const BodyOracle> inner_;
    Coord x_min_, x_max_, y_min_, y_max_;
};

// Union of a clipped body and a trapezoid glued onto one of the body's
// chords.  The two trapezoid vertices named by chord_vertices must lie in
// the clipped body (checked at construction, along with samples of the edge
// between them).  When the caller additionally arranges for the trapezoid to
// span every lattice column of the body - as the hull seeding code does -
// lattice-point runs along every line stay contiguous even though the union
// itself is not convex; the glue-edge check alone does not guarantee that.
class TrapezoidUnionBody : public BodyOracle {
public:
    TrapezoidUnionBody(std::shared_ptr<const BodyOracle> clipped,
                       std::vector<RationalPoint> trapezoid,
                       std::pair<std::size_t, std::size_t> chord_vertices);

    const PolygonBody& trapezoid() const { return trap_; }

    bool contains(LatticePoint p) const override;
    bool contains_rational(RationalPoint p) const override;
    // Interval hull of the two chords.
    std::optional<ChordWindow> chord(LatticePoint origin,
                                     LatticeVector dir) const override;
    bool segment_hits(LatticePoint origin, LatticeVector dir, Rational t0,
                      Rational t1) const override;
    BoundingBox approx_bbox() const override;
    // Lines can meet the union in two parameter intervals, so the index
    // helpers must not rely on local certificates.
    bool convex_chords() const override { return false; }

private:
    std::shared_ptr<const BodyOracle> clipped_;
    PolygonBody trap_;
};

// Decorator counting oracle calls; queries remain exact and thread-safe.
class CountingBody : public BodyOracle {
public:
    explicit CountingBody(const BodyOracle& inner) : inner_(&inner) {}

    long long contains_calls() const {
        return contains_calls_.load(std::memory_order_relaxed);
    }
    long long chord_calls() const {
        return chord_calls_.load(std::memory_order_relaxed);
    }
    long long segment_calls() const {
        return segment_calls_.load(std::memory_order_relaxed);
    }
    long long total_calls() const {
        return contains_calls() + chord_calls() + segment_calls();
    }
    void reset();

    bool contains(LatticePoint p) const override;
    bool contains_rational(RationalPoint p) const override;
    std::optional<ChordWindow> chord(LatticePoint origin,
                                     LatticeVector dir) const override;
    bool segment_hits(LatticePoint origin, LatticeVector dir, Rational t0,
                      Rational t1) const override;
    BoundingBox approx_bbox() const override;
    bool convex_chords() const override { return inner_->convex_chords(); }

private:
    const BodyOracle* inner_;
    mutable std::atomic<long long> contains_calls_{0};
    mutable std::atomic<long long> chord_calls_{0};
    mutable std::atomic<long long> segment_calls_{0};
};

// Convenience overload: closed segment [origin + k0*dir, origin + k1*dir].
bool segment_hits(const BodyOracle& body, LatticePoint origin,
                  LatticeVector dir, Coord k0, Coord k1);

// Largest k >= 0 with origin + k*dir in the body, or nullopt when the
// origin itself is outside.  Exact; at most a handful of contains probes.
std::optional<Coord> last_inside(const BodyOracle& body, LatticePoint origin,
                                 LatticeVector dir);

// Minimal / maximal k >= 0 such that the closed segment
// [origin + k*dir, origin + (k+1)*dir] meets the body; nullopt when the
// ray {t >= 0} misses it.  Exact.
std::optional<Coord> min_seg_index(const BodyOracle& body,
                                   LatticePoint origin, LatticeVector dir);
std::optional<Coord> max_seg_index(const BodyOracle& body,
                                   LatticePoint origin, LatticeVector dir);

// Both endpoints of the run of lattice points of the body on the full line
// origin + t*dir (t ranges over all integers): returns [t_min, t_max], or
// nullopt when the line carries no lattice point of the body.  Exact.
std::optional<std::pair<Coord, Coord>>
lattice_run_on_line(const BodyOracle& body, LatticePoint origin,
                    LatticeVector dir);

} // namespace dhull

#endif
