#include "brute.hpp"

#include <algorithm>

namespace brute {

using dhull::Coord;
using dhull::LatticePoint;
using dhull::LatticeVector;
using dhull::Rational;

BigRat to_rat(Rational r) { return BigRat(BigInt(r.num)) / BigInt(r.den); }

namespace {

struct RatPt {
    BigRat x, y;
};

BigRat cross(const RatPt& o, const RatPt& a, const RatPt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

RatPt at(LatticePoint origin, LatticeVector dir, const BigRat& t) {
    return RatPt{BigRat(BigInt(origin.x)) + t * BigInt(dir.dx),
                 BigRat(BigInt(origin.y)) + t * BigInt(dir.dy)};
}

// Squared distance from c to the closed segment [a, b].
BigRat dist_sq_point_segment(const RatPt& c, const RatPt& a, const RatPt& b) {
    const BigRat wx = b.x - a.x, wy = b.y - a.y;
    const BigRat len_sq = wx * wx + wy * wy;
    BigRat px = a.x, py = a.y;
    if (len_sq != 0) {
        BigRat s = ((c.x - a.x) * wx + (c.y - a.y) * wy) / len_sq;
        if (s < 0) s = 0;
        if (s > 1) s = 1;
        px = a.x + s * wx;
        py = a.y + s * wy;
    }
    const BigRat dx = c.x - px, dy = c.y - py;
    return dx * dx + dy * dy;
}

int sgn(const BigRat& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

bool on_segment(const RatPt& p, const RatPt& a, const RatPt& b) {
    if (cross(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const RatPt& p1, const RatPt& p2, const RatPt& p3,
                        const RatPt& p4) {
    const int d1 = sgn(cross(p3, p4, p1));
    const int d2 = sgn(cross(p3, p4, p2));
    const int d3 = sgn(cross(p1, p2, p3));
    const int d4 = sgn(cross(p1, p2, p4));
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    return (d1 == 0 && on_segment(p1, p3, p4)) ||
           (d2 == 0 && on_segment(p2, p3, p4)) ||
           (d3 == 0 && on_segment(p3, p1, p2)) ||
           (d4 == 0 && on_segment(p4, p1, p2));
}

} // namespace

bool Disk::contains(LatticePoint p) const {
    return contains(BigRat(BigInt(p.x)), BigRat(BigInt(p.y)));
}

bool Disk::contains(const BigRat& x, const BigRat& y) const {
    const BigRat dx = x - cx, dy = y - cy;
    return dx * dx + dy * dy <= rsq;
}

bool Disk::segment_hits(LatticePoint origin, LatticeVector dir,
                        const BigRat& t0, const BigRat& t1) const {
    if (t1 < t0) return false;
    const RatPt a = at(origin, dir, t0), b = at(origin, dir, t1);
    return dist_sq_point_segment(RatPt{cx, cy}, a, b) <= rsq;
}

bool Polygon::contains(LatticePoint p) const {
    return contains(BigRat(BigInt(p.x)), BigRat(BigInt(p.y)));
}

bool Polygon::contains(const BigRat& x, const BigRat& y) const {
    const RatPt p{x, y};
    const std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const RatPt a{to_rat(verts[i].x), to_rat(verts[i].y)};
        const RatPt b{to_rat(verts[(i + 1) % n].x), to_rat(verts[(i + 1) % n].y)};
        if (cross(a, b, p) < 0) return false;
    }
    return true;
}

bool Polygon::segment_hits(LatticePoint origin, LatticeVector dir,
                           const BigRat& t0, const BigRat& t1) const {
    if (t1 < t0) return false;
    const RatPt a = at(origin, dir, t0), b = at(origin, dir, t1);
    if (contains(a.x, a.y) || contains(b.x, b.y)) return true;
    const std::size_t n = verts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const RatPt va{to_rat(verts[i].x), to_rat(verts[i].y)};
        const RatPt vb{to_rat(verts[(i + 1) % n].x),
                       to_rat(verts[(i + 1) % n].y)};
        if (segments_intersect(a, b, va, vb)) return true;
    }
    return false;
}

std::vector<LatticePoint> convex_hull(std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end(), [](LatticePoint a, LatticePoint b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<LatticePoint> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 &&
               dhull::orientation(hull[k - 2], hull[k - 1], pts[i]) <= 0)
            --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower &&
               dhull::orientation(hull[k - 2], hull[k - 1], pts[i]) <= 0)
            --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() == 2 && hull[0] == hull[1]) hull.resize(1);
    return hull;
}

long long boundary_lattice_count(const std::vector<LatticePoint>& hull) {
    if (hull.empty()) return 0;
    if (hull.size() == 1) return 1;
    if (hull.size() == 2) return dhull::edge_weight(hull[0], hull[1]) + 1;
    long long total = 0;
    for (std::size_t i = 0; i < hull.size(); ++i)
        total += dhull::edge_weight(hull[i], hull[(i + 1) % hull.size()]);
    return total;
}

std::optional<Coord> min_seg_index_scan(const dhull::BodyOracle& body,
                                        LatticePoint origin, LatticeVector dir,
                                        Coord k_max) {
    for (Coord k = 0; k <= k_max; ++k)
        if (body.segment_hits(origin, dir, Rational(k), Rational(k + 1)))
            return k;
    return std::nullopt;
}

std::optional<Coord> max_seg_index_scan(const dhull::BodyOracle& body,
                                        LatticePoint origin, LatticeVector dir,
                                        Coord k_max) {
    for (Coord k = k_max; k >= 0; --k)
        if (body.segment_hits(origin, dir, Rational(k), Rational(k + 1)))
            return k;
    return std::nullopt;
}

std::optional<Coord> last_inside_scan(const dhull::BodyOracle& body,
                                      LatticePoint origin, LatticeVector dir,
                                      Coord k_max) {
    if (!body.contains(origin)) return std::nullopt;
    std::optional<Coord> best;
    for (Coord k = 0; k <= k_max; ++k) {
        const LatticePoint p{origin.x + k * dir.dx, origin.y + k * dir.dy};
        if (body.contains(p)) best = k;
    }
    return best;
}

} // namespace brute
