#include <dhull/oracle.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace dhull {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
using Int256 = boost::multiprecision::int256_t;

Coord abs64(Coord v) { return v < 0 ? -v : v; }

BigRat to_big(Rational r) { return BigRat(BigInt(r.num)) / BigInt(r.den); }

Coord checked_lcm(Coord a, Coord b) {
    const Coord g = std::gcd(a, b);
    return detail::narrow_checked(Wide(a / g) * b, "common denominator");
}

// The 128/256-bit fast paths assume direction components of convergent
// magnitude; anything larger is routed to the arbitrary-precision code.
bool dir_in_fast_range(LatticeVector v) {
    const Coord lim = Coord(1) << 40;
    return abs64(v.dx) <= lim && abs64(v.dy) <= lim;
}

void require_direction(LatticeVector dir) {
    if (dir.is_zero()) throw std::domain_error("direction must be nonzero");
}

} // namespace

double BoundingBox::diameter() const { return std::hypot(width(), height()); }

// ---------------------------------------------------------------------------
// DiskBody

DiskBody::DiskBody(Rational center_x, Rational center_y, Rational radius_sq)
    : cx_(center_x), cy_(center_y), rsq_(radius_sq) {
    if (rsq_.num <= 0) throw std::domain_error("radius_sq must be positive");
    cden_ = checked_lcm(cx_.den, cy_.den);
    if (cden_ > (Coord(1) << 26))
        throw std::domain_error("disk center denominator exceeds the supported range");
    cnx_ = detail::narrow_checked(Wide(cx_.num) * (cden_ / cx_.den), "scaled center");
    cny_ = detail::narrow_checked(Wide(cy_.num) * (cden_ / cy_.den), "scaled center");
    rnum_ = rsq_.num;
    rden_ = rsq_.den;
    rhs_ = Wide(rnum_) * cden_ * cden_;

    // Largest |coordinate| for which the 128-bit membership test
    //   rden * |p*cden - cn|^2 <= rnum * cden^2
    // stays well inside 128 bits; beyond it contains() falls back to
    // arbitrary-precision rationals.
    const Coord cmax = std::max(abs64(cnx_), abs64(cny_));
    const BigInt wmax = sqrt(((BigInt(1) << 125) / rden_) / 2);
    BigInt pl = (wmax - cmax) / cden_ - 1;
    const BigInt pl_cap = BigInt(Coord(1) << 43);
    if (pl > pl_cap) pl = pl_cap;
    probe_limit_ = pl > 0 ? pl.convert_to<Coord>() : 0;

    cxd_ = cx_.to_double();
    cyd_ = cy_.to_double();
    rsqd_ = rsq_.to_double();
    rd_ = std::sqrt(rsqd_);
}

DiskBody DiskBody::from_radius(Rational center_x, Rational center_y,
                               Rational radius) {
    if (radius.num <= 0) throw std::domain_error("radius must be positive");
    return DiskBody(center_x, center_y, radius * radius);
}

bool DiskBody::contains(LatticePoint p) const {
    if (probe_limit_ > 0 && abs64(p.x) <= probe_limit_ &&
        abs64(p.y) <= probe_limit_) {
        const Wide wx = Wide(p.x) * cden_ - cnx_;
        const Wide wy = Wide(p.y) * cden_ - cny_;
        return Wide(rden_) * (wx * wx + wy * wy) <= rhs_;
    }
    return contains_rational(RationalPoint{Rational(p.x), Rational(p.y)});
}

bool DiskBody::contains_rational(RationalPoint p) const {
    const BigRat dx = to_big(p.x) - to_big(cx_);
    const BigRat dy = to_big(p.y) - to_big(cy_);
    return dx * dx + dy * dy <= to_big(rsq_);
}

std::optional<ChordWindow> DiskBody::chord(LatticePoint origin,
                                           LatticeVector dir) const {
    require_direction(dir);
    const double ux = double(origin.x) - cxd_;
    const double uy = double(origin.y) - cyd_;
    const double vx = double(dir.dx), vy = double(dir.dy);
    const double a = vx * vx + vy * vy;
    const double b = 2.0 * (ux * vx + uy * vy);
    const double c = ux * ux + uy * uy - rsqd_;
    const double disc = b * b - 4.0 * a * c;
    if (!(disc >= 0.0)) return std::nullopt;
    const double s = std::sqrt(disc);
    return ChordWindow{(-b - s) / (2.0 * a), (-b + s) / (2.0 * a)};
}

bool DiskBody::segment_hits(LatticePoint origin, LatticeVector dir,
                            Rational t0, Rational t1) const {
    require_direction(dir);
    if (t1 < t0) return false;

    if (probe_limit_ > 0 && dir_in_fast_range(dir) && t0.is_integer() &&
        t1.is_integer()) {
        const Wide e0x = Wide(origin.x) + Wide(t0.num) * dir.dx;
        const Wide e0y = Wide(origin.y) + Wide(t0.num) * dir.dy;
        const Wide e1x = Wide(origin.x) + Wide(t1.num) * dir.dx;
        const Wide e1y = Wide(origin.y) + Wide(t1.num) * dir.dy;
        const auto fits = [&](Wide v) {
            return v >= -Wide(probe_limit_) && v <= Wide(probe_limit_);
        };
        if (fits(e0x) && fits(e0y) && fits(e1x) && fits(e1y)) {
            const Wide w0x = e0x * cden_ - cnx_, w0y = e0y * cden_ - cny_;
            const Wide w1x = e1x * cden_ - cnx_, w1y = e1y * cden_ - cny_;
            if (Wide(rden_) * (w0x * w0x + w0y * w0y) <= rhs_) return true;
            if (Wide(rden_) * (w1x * w1x + w1y * w1y) <= rhs_) return true;
            // Both endpoints outside: the distance to the center is a convex
            // parabola in t, so a hit needs an interior minimum below r^2.
            const Wide d0 = w0x * dir.dx + w0y * dir.dy;
            const Wide d1 = w1x * dir.dx + w1y * dir.dy;
            if (d0 >= 0 || d1 <= 0) return false;
            const Wide cr = w0x * dir.dy - w0y * dir.dx;
            const Int256 lhs = Int256(rden_) * Int256(cr) * Int256(cr);
            const Int256 rhs = Int256(rhs_) * Int256(norm_sq(dir));
            return lhs <= rhs;
        }
    }

    const BigRat ux = BigRat(BigInt(origin.x)) - to_big(cx_);
    const BigRat uy = BigRat(BigInt(origin.y)) - to_big(cy_);
    const BigRat vx = BigRat(BigInt(dir.dx)), vy = BigRat(BigInt(dir.dy));
    const BigRat rsq = to_big(rsq_);
    const BigRat bt0 = to_big(t0), bt1 = to_big(t1);
    const auto outside = [&](const BigRat& t) {
        const BigRat px = ux + t * vx, py = uy + t * vy;
        return px * px + py * py > rsq;
    };
    if (!outside(bt0) || !outside(bt1)) return true;
    const BigRat g0 = (ux + bt0 * vx) * vx + (uy + bt0 * vy) * vy;
    const BigRat g1 = (ux + bt1 * vx) * vx + (uy + bt1 * vy) * vy;
    if (g0 >= 0 || g1 <= 0) return false;
    const BigRat cr = (ux + bt0 * vx) * vy - (uy + bt0 * vy) * vx;
    const BigInt nsq = BigInt(dir.dx) * dir.dx + BigInt(dir.dy) * dir.dy;
    return cr * cr <= rsq * BigRat(nsq);
}

BoundingBox DiskBody::approx_bbox() const {
    const double pad = rd_ + 2.0;
    return BoundingBox{cxd_ - pad, cxd_ + pad, cyd_ - pad, cyd_ + pad};
}

// ---------------------------------------------------------------------------
// PolygonBody

PolygonBody::PolygonBody(std::vector<RationalPoint> vertices)
    : verts_(std::move(vertices)) {
    const std::size_t n = verts_.size();
    if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    den_ = 1;
    for (const auto& v : verts_) {
        den_ = checked_lcm(den_, v.x.den);
        den_ = checked_lcm(den_, v.y.den);
    }
    if (den_ > (Coord(1) << 26))
        throw std::domain_error("polygon vertex denominators exceed the supported range");
    scaled_.reserve(n);
    Coord vmax = 0;
    for (const auto& v : verts_) {
        const Coord sx = detail::narrow_checked(Wide(v.x.num) * (den_ / v.x.den), "scaled vertex");
        const Coord sy = detail::narrow_checked(Wide(v.y.num) * (den_ / v.y.den), "scaled vertex");
        scaled_.push_back(LatticePoint{sx, sy});
        vmax = std::max({vmax, abs64(sx), abs64(sy)});
    }
    if (vmax > (Coord(1) << 58))
        throw std::domain_error("polygon vertices exceed the supported range");
    for (std::size_t i = 0; i < n; ++i) {
        if (orientation(scaled_[i], scaled_[(i + 1) % n], scaled_[(i + 2) % n]) != 1)
            throw std::invalid_argument(
                "polygon vertices must be in strictly convex CCW order");
    }
    // All-left turns also admit star polygons winding more than once; the
    // edge directions of a simple convex CCW polygon cross the upper/lower
    // half-plane boundary exactly once per side.
    int wraps = 0;
    const auto upper = [](LatticeVector e) {
        return e.dy > 0 || (e.dy == 0 && e.dx > 0);
    };
    for (std::size_t i = 0; i < n; ++i) {
        const LatticeVector e = scaled_[(i + 1) % n] - scaled_[i];
        const LatticeVector f = scaled_[(i + 2) % n] - scaled_[(i + 1) % n];
        if (!upper(e) && upper(f)) ++wraps;
    }
    if (wraps != 1)
        throw std::invalid_argument("polygon boundary must wind around exactly once");

    probe_limit_ = std::min<Coord>(Coord(1) << 43,
                                   ((Coord(1) << 61) - vmax) / den_ - 1);

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& v : verts_) {
        const double x = v.x.to_double(), y = v.y.to_double();
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    bbox_ = BoundingBox{xmin - 2.0, xmax + 2.0, ymin - 2.0, ymax + 2.0};
}

PolygonBody PolygonBody::from_lattice(const std::vector<LatticePoint>& vertices) {
    std::vector<RationalPoint> rv;
    rv.reserve(vertices.size());
    for (const auto& p : vertices)
        rv.push_back(RationalPoint{Rational(p.x), Rational(p.y)});
    return PolygonBody(std::move(rv));
}

bool PolygonBody::contains(LatticePoint p) const {
    if (abs64(p.x) > probe_limit_ || abs64(p.y) > probe_limit_)
        return contains_rational(RationalPoint{Rational(p.x), Rational(p.y)});
    const std::size_t n = scaled_.size();
    const LatticePoint P{p.x * den_, p.y * den_};
    const LatticePoint& a = scaled_[0];
    const auto side = [&](std::size_t i) { return orientation(a, scaled_[i], P); };
    if (side(1) < 0 || side(n - 1) > 0) return false;
    std::size_t lo = 1, hi = n - 1;
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        (side(mid) >= 0 ? lo : hi) = mid;
    }
    return orientation(scaled_[lo], scaled_[lo + 1], P) >= 0;
}

bool PolygonBody::contains_rational(RationalPoint p) const {
    const BigRat px = to_big(p.x) * den_, py = to_big(p.y) * den_;
    const std::size_t n = scaled_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const LatticePoint& a = scaled_[i];
        const LatticePoint& b = scaled_[(i + 1) % n];
        const BigRat cr = BigRat(BigInt(b.x - a.x)) * (py - BigInt(a.y)) -
                          BigRat(BigInt(b.y - a.y)) * (px - BigInt(a.x));
        if (cr < 0) return false;
    }
    return true;
}

// Index of a vertex maximizing dot(outward, vertex) over the polygon.
// Binary search over the cyclic boundary; ties from an edge orthogonal to
// outward resolve to the vertex whose predecessor is strictly lower.
std::size_t PolygonBody::extreme_vertex_index(LatticeVector outward) const {
    const std::size_t n = scaled_.size();
    const auto h = [&](std::size_t i) {
        const LatticePoint& s = scaled_[i % n];
        return Wide(outward.dx) * s.x + Wide(outward.dy) * s.y;
    };
    // kcmp(i, j) = sign of h(j) - h(i)
    const auto kcmp = [&](std::size_t i, std::size_t j) {
        return sign_of(h(j) - h(i));
    };
    const auto extr = [&](std::size_t i) {
        return kcmp(i + 1, i) >= 0 && kcmp(i, i + n - 1) < 0;
    };
    std::size_t lo = 0, hi = n;
    if (extr(0)) return 0;
    while (lo + 1 < hi) {
        const std::size_t m = lo + (hi - lo) / 2;
        if (extr(m)) return m;
        const int ls = kcmp(lo + 1, lo), ms = kcmp(m + 1, m);
        if (ls < ms || (ls == ms && ls == kcmp(lo, m)))
            hi = m;
        else
            lo = m;
    }
    return lo;
}

std::optional<ChordWindow> PolygonBody::chord(LatticePoint origin,
                                              LatticeVector dir) const {
    require_direction(dir);
    if (abs64(origin.x) > probe_limit_ || abs64(origin.y) > probe_limit_ ||
        !dir_in_fast_range(dir))
        return chord_by_scan(origin, dir);
    const std::size_t n = scaled_.size();
    const Wide ox = Wide(origin.x) * den_, oy = Wide(origin.y) * den_;
    // Signed area the vertex makes with the query line; positive to its left.
    const auto f = [&](std::size_t i) {
        const LatticePoint& s = scaled_[i % n];
        return Wide(dir.dx) * (Wide(s.y) - oy) - Wide(dir.dy) * (Wide(s.x) - ox);
    };
    const std::size_t imax = extreme_vertex_index(LatticeVector{-dir.dy, dir.dx});
    const std::size_t imin = extreme_vertex_index(LatticeVector{dir.dy, -dir.dx});
    const Wide fmax = f(imax), fmin = f(imin);
    if (fmax < 0 || fmin > 0) return std::nullopt;

    const double nsq = double(norm_sq(dir));
    const auto t_vertex = [&](std::size_t i) {
        const LatticePoint& s = scaled_[i % n];
        const double px = double(s.x) / double(den_) - double(origin.x);
        const double py = double(s.y) / double(den_) - double(origin.y);
        return (px * double(dir.dx) + py * double(dir.dy)) / nsq;
    };

    if (fmax == 0 || fmin == 0) {
        // Tangent line: the window degenerates to a vertex or one flat edge.
        const std::size_t base = (fmax == 0) ? imax : imin;
        double lo = t_vertex(base), hi = lo;
        for (const std::size_t nb : {base + 1, base + n - 1}) {
            if (f(nb) == 0) {
                const double t = t_vertex(nb);
                lo = std::min(lo, t);
                hi = std::max(hi, t);
            }
        }
        return ChordWindow{lo, hi};
    }

    const auto t_edge = [&](std::size_t i) {
        const Wide fa = f(i), fb = f(i + 1);
        const LatticePoint& a = scaled_[i % n];
        const LatticePoint& b = scaled_[(i + 1) % n];
        const double sigma = double(fa) / (double(fa) - double(fb));
        const double px =
            (double(a.x) + sigma * double(b.x - a.x)) / double(den_) -
            double(origin.x);
        const double py =
            (double(a.y) + sigma * double(b.y - a.y)) / double(den_) -
            double(origin.y);
        return (px * double(dir.dx) + py * double(dir.dy)) / nsq;
    };

    // f is weakly monotone along each boundary chain between the extreme
    // vertices, so each sign change localizes by binary search.
    const auto chain_cross = [&](std::size_t start, std::size_t len,
                                 bool want_nonneg) {
        std::size_t clo = 0, chi = len;
        while (chi - clo > 1) {
            const std::size_t mid = clo + (chi - clo) / 2;
            const bool pred = want_nonneg ? f(start + mid) >= 0 : f(start + mid) < 0;
            (pred ? clo : chi) = mid;
        }
        return start + clo;
    };
    const std::size_t len_a = (imin + n - imax) % n;
    const std::size_t len_b = (imax + n - imin) % n;
    const double ta = t_edge(chain_cross(imax, len_a, true));
    const double tb = t_edge(chain_cross(imin, len_b, false));
    return ChordWindow{std::min(ta, tb), std::max(ta, tb)};
}

std::optional<ChordWindow> PolygonBody::chord_by_scan(LatticePoint origin,
                                                      LatticeVector dir) const {
    require_direction(dir);
    std::optional<BigRat> lo, hi;
    const std::size_t n = scaled_.size();
    const BigInt ox = BigInt(origin.x) * den_, oy = BigInt(origin.y) * den_;
    for (std::size_t i = 0; i < n; ++i) {
        const LatticePoint& a = scaled_[i];
        const LatticePoint& b = scaled_[(i + 1) % n];
        const BigInt ex = BigInt(b.x) - a.x, ey = BigInt(b.y) - a.y;
        const BigInt c0 = ex * (oy - a.y) - ey * (ox - a.x);
        const BigInt c1 = (ex * dir.dy - ey * dir.dx) * den_;
        if (c1 == 0) {
            if (c0 < 0) return std::nullopt;
            continue;
        }
        const BigRat bound = BigRat(-c0) / BigRat(c1);
        if (c1 > 0) {
            if (!lo || bound > *lo) lo = bound;
        } else {
            if (!hi || bound < *hi) hi = bound;
        }
    }
    if (!lo || !hi) throw internal_error("polygon chord window is unbounded");
    if (*lo > *hi) return std::nullopt;
    return ChordWindow{lo->convert_to<double>(), hi->convert_to<double>()};
}

bool PolygonBody::segment_hits(LatticePoint origin, LatticeVector dir,
                               Rational t0, Rational t1) const {
    require_direction(dir);
    if (t1 < t0) return false;
    // Cheap exact shortcut: an integer endpoint inside decides immediately.
    const auto endpoint_inside = [&](Rational t) {
        if (!t.is_integer()) return false;
        const Wide px = Wide(origin.x) + Wide(t.num) * dir.dx;
        const Wide py = Wide(origin.y) + Wide(t.num) * dir.dy;
        const Wide lo64 = std::numeric_limits<Coord>::min();
        const Wide hi64 = std::numeric_limits<Coord>::max();
        if (px < lo64 || px > hi64 || py < lo64 || py > hi64) return false;
        return contains(LatticePoint{Coord(px), Coord(py)});
    };
    if (endpoint_inside(t0) || endpoint_inside(t1)) return true;

    BigRat lo = to_big(t0), hi = to_big(t1);
    const std::size_t n = scaled_.size();
    const BigInt ox = BigInt(origin.x) * den_, oy = BigInt(origin.y) * den_;
    for (std::size_t i = 0; i < n; ++i) {
        const LatticePoint& a = scaled_[i];
        const LatticePoint& b = scaled_[(i + 1) % n];
        const BigInt ex = BigInt(b.x) - a.x, ey = BigInt(b.y) - a.y;
        const BigInt c0 = ex * (oy - a.y) - ey * (ox - a.x);
        const BigInt c1 = (ex * dir.dy - ey * dir.dx) * den_;
        if (c1 == 0) {
            if (c0 < 0) return false;
            continue;
        }
        const BigRat bound = BigRat(-c0) / BigRat(c1);
        if (c1 > 0) {
            if (bound > lo) lo = bound;
        } else {
            if (bound < hi) hi = bound;
        }
        if (lo > hi) return false;
    }
    return true;
}

BoundingBox PolygonBody::approx_bbox() const { return bbox_; }

// ---------------------------------------------------------------------------
// ClippedBody

ClippedBody::ClippedBody(std::shared_ptr<const BodyOracle> inner, Coord x_min,
                         Coord x_max, Coord y_min, Coord y_max)
    : inner_(std::move(inner)),
      x_min_(x_min),
      x_max_(x_max),
      y_min_(y_min),
      y_max_(y_max) {
    if (!inner_) throw std::invalid_argument("clipped body needs an inner body");
    if (x_min_ > x_max_ || y_min_ > y_max_)
        throw std::invalid_argument("clip box is empty");
}

bool ClippedBody::contains(LatticePoint p) const {
    return p.x >= x_min_ && p.x <= x_max_ && p.y >= y_min_ && p.y <= y_max_ &&
           inner_->contains(p);
}

bool ClippedBody::contains_rational(RationalPoint p) const {
    if (p.x < Rational(x_min_) || p.x > Rational(x_max_)) return false;
    if (p.y < Rational(y_min_) || p.y > Rational(y_max_)) return false;
    return inner_->contains_rational(p);
}

std::optional<std::pair<Rational, Rational>>
ClippedBody::box_window(LatticePoint origin, LatticeVector dir) const {
    bool have = false;
    Rational lo, hi;
    const auto apply = [&](Coord o, Coord v, Coord mn, Coord mx) {
        if (v == 0) return o >= mn && o <= mx;
        Rational a = make_rational_wide(Wide(mn) - o, v);
        Rational b = make_rational_wide(Wide(mx) - o, v);
        if (b < a) std::swap(a, b);
        if (!have) {
            lo = a;
            hi = b;
            have = true;
        } else {
            lo = std::max(lo, a);
            hi = std::min(hi, b);
        }
        return !(hi < lo);
    };
    if (!apply(origin.x, dir.dx, x_min_, x_max_)) return std::nullopt;
    if (!apply(origin.y, dir.dy, y_min_, y_max_)) return std::nullopt;
    if (!have) return std::nullopt;
    return std::make_pair(lo, hi);
}

std::optional<ChordWindow> ClippedBody::chord(LatticePoint origin,
                                              LatticeVector dir) const {
    require_direction(dir);
    const auto window = box_window(origin, dir);
    if (!window) return std::nullopt;
    const auto inner = inner_->chord(origin, dir);
    if (!inner) return std::nullopt;
    const double lo = std::max(inner->lo, window->first.to_double());
    const double hi = std::min(inner->hi, window->second.to_double());
    if (lo > hi) return std::nullopt;
    return ChordWindow{lo, hi};
}

bool ClippedBody::segment_hits(LatticePoint origin, LatticeVector dir,
                               Rational t0, Rational t1) const {
    require_direction(dir);
    if (t1 < t0) return false;
    const auto window = box_window(origin, dir);
    if (!window) return false;
    const Rational lo = std::max(t0, window->first);
    const Rational hi = std::min(t1, window->second);
    if (hi < lo) return false;
    return inner_->segment_hits(origin, dir, lo, hi);
}

BoundingBox ClippedBody::approx_bbox() const {
    const BoundingBox b = inner_->approx_bbox();
    BoundingBox r;
    r.x_min = std::max(b.x_min, double(x_min_) - 1.0);
    r.x_max = std::min(b.x_max, double(x_max_) + 1.0);
    r.y_min = std::max(b.y_min, double(y_min_) - 1.0);
    r.y_max = std::min(b.y_max, double(y_max_) + 1.0);
    if (r.x_max < r.x_min) r.x_max = r.x_min;
    if (r.y_max < r.y_min) r.y_max = r.y_min;
    return r;
}

// ---------------------------------------------------------------------------
// TrapezoidUnionBody

TrapezoidUnionBody::TrapezoidUnionBody(
    std::shared_ptr<const BodyOracle> clipped,
    std::vector<RationalPoint> trapezoid,
    std::pair<std::size_t, std::size_t> chord_vertices)
    : clipped_(std::move(clipped)), trap_(std::move(trapezoid)) {
    if (!clipped_)
        throw std::invalid_argument("trapezoid union needs an inner body");
    if (trap_.vertex_count() != 4)
        throw std::invalid_argument("trapezoid must have exactly 4 vertices");
    const auto [ia, ib] = chord_vertices;
    if (ia >= 4 || ib >= 4 || ia == ib)
        throw std::invalid_argument(
            "chord_vertices must name two distinct trapezoid vertices");
    const RationalPoint& a = trap_.vertex(ia);
    const RationalPoint& b = trap_.vertex(ib);
    for (int k = 0; k <= 4; ++k) {
        const Rational s(k, 4);
        const Rational r = Rational(1) - s;
        const RationalPoint q{a.x * r + b.x * s, a.y * r + b.y * s};
        if (!clipped_->contains_rational(q))
            throw std::invalid_argument(
                "trapezoid glue edge must lie inside the body");
    }
}

bool TrapezoidUnionBody::contains(LatticePoint p) const {
    return trap_.contains(p) || clipped_->contains(p);
}

bool TrapezoidUnionBody::contains_rational(RationalPoint p) const {
    return trap_.contains_rational(p) || clipped_->contains_rational(p);
}

std::optional<ChordWindow> TrapezoidUnionBody::chord(LatticePoint origin,
                                                     LatticeVector dir) const {
    require_direction(dir);
    const auto a = clipped_->chord(origin, dir);
    const auto b = trap_.chord(origin, dir);
    if (!a) return b;
    if (!b) return a;
    return ChordWindow{std::min(a->lo, b->lo), std::max(a->hi, b->hi)};
}

bool TrapezoidUnionBody::segment_hits(LatticePoint origin, LatticeVector dir,
                                      Rational t0, Rational t1) const {
    return trap_.segment_hits(origin, dir, t0, t1) ||
           clipped_->segment_hits(origin, dir, t0, t1);
}

BoundingBox TrapezoidUnionBody::approx_bbox() const {
    const BoundingBox a = clipped_->approx_bbox();
    const BoundingBox b = trap_.approx_bbox();
    return BoundingBox{std::min(a.x_min, b.x_min), std::max(a.x_max, b.x_max),
                       std::min(a.y_min, b.y_min), std::max(a.y_max, b.y_max)};
}

// ---------------------------------------------------------------------------
// CountingBody

void CountingBody::reset() {
    contains_calls_.store(0, std::memory_order_relaxed);
    chord_calls_.store(0, std::memory_order_relaxed);
    segment_calls_.store(0, std::memory_order_relaxed);
}

bool CountingBody::contains(LatticePoint p) const {
    contains_calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_->contains(p);
}

bool CountingBody::contains_rational(RationalPoint p) const {
    contains_calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_->contains_rational(p);
}

std::optional<ChordWindow> CountingBody::chord(LatticePoint origin,
                                               LatticeVector dir) const {
    chord_calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_->chord(origin, dir);
}

bool CountingBody::segment_hits(LatticePoint origin, LatticeVector dir,
                                Rational t0, Rational t1) const {
    segment_calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_->segment_hits(origin, dir, t0, t1);
}

BoundingBox CountingBody::approx_bbox() const { return inner_->approx_bbox(); }

// ---------------------------------------------------------------------------
// Derived integer indices along rays and lines.
//
// Floating-point chord estimates only pick where the exact probes start.
// Every returned index is justified by a certificate of exact predicates:
// either contains() at the index plus its failure one step further, or a
// bisection over the monotone predicate "segment_hits beyond k".

namespace {

std::optional<LatticePoint> point_at(LatticePoint origin, LatticeVector dir,
                                     Coord k) {
    const Wide px = Wide(origin.x) + Wide(k) * dir.dx;
    const Wide py = Wide(origin.y) + Wide(k) * dir.dy;
    const Wide lo64 = std::numeric_limits<Coord>::min();
    const Wide hi64 = std::numeric_limits<Coord>::max();
    if (px < lo64 || px > hi64 || py < lo64 || py > hi64) return std::nullopt;
    return LatticePoint{Coord(px), Coord(py)};
}

bool contains_at(const BodyOracle& body, LatticePoint origin,
                 LatticeVector dir, Coord k) {
    const auto p = point_at(origin, dir, k);
    return p && body.contains(*p);
}

// Upper parameter cap: every t >= 0 with origin + t*dir inside the body
// satisfies t <= cap.  nullopt when the forward ray misses the padded
// bounding box, which is an exact miss because the box outer-bounds the body
// with more than a unit to spare.
std::optional<Coord> ray_span_cap(const BodyOracle& body, LatticePoint origin,
                                  LatticeVector dir) {
    const BoundingBox box = body.approx_bbox();
    double lo = 0.0, hi = std::numeric_limits<double>::max();
    const auto clip = [&](double o, double v, double mn, double mx) {
        mn -= 2.0;
        mx += 2.0;
        if (v == 0.0) return o >= mn && o <= mx;
        double a = (mn - o) / v, b = (mx - o) / v;
        if (a > b) std::swap(a, b);
        lo = std::max(lo, a);
        hi = std::min(hi, b);
        return true;
    };
    if (!clip(double(origin.x), double(dir.dx), box.x_min, box.x_max))
        return std::nullopt;
    if (!clip(double(origin.y), double(dir.dy), box.y_min, box.y_max))
        return std::nullopt;
    if (hi < lo) return std::nullopt;
    const double dmax = double(std::max(abs64(dir.dx), abs64(dir.dy)));
    const double coord_cap = double(Coord(1) << 57) / std::max(1.0, dmax);
    return Coord(std::min(std::ceil(hi) + 2.0, coord_cap));
}

bool sane_estimate(double x, Coord lo_cap, Coord hi_cap) {
    return std::isfinite(x) && x >= double(lo_cap) - 64.0 &&
           x <= double(hi_cap) + 64.0;
}

} // namespace

bool segment_hits(const BodyOracle& body, LatticePoint origin,
                  LatticeVector dir, Coord k0, Coord k1) {
    return body.segment_hits(origin, dir, Rational(k0), Rational(k1));
}

std::optional<Coord> last_inside(const BodyOracle& body, LatticePoint origin,
                                 LatticeVector dir) {
    require_direction(dir);
    if (!body.contains(origin)) return std::nullopt;
    const auto capo = ray_span_cap(body, origin, dir);
    const Coord cap = capo ? *capo : 0;

    if (const auto est = body.chord(origin, dir)) {
        if (sane_estimate(est->hi, 0, cap)) {
            const Coord base =
                std::clamp<Coord>(Coord(std::floor(est->hi)), 0, cap);
            static constexpr Coord offsets[] = {0, -1, 1, -2, 2};
            for (const Coord off : offsets) {
                Coord k = base + off;
                if (k < 0 || k > cap || !contains_at(body, origin, dir, k))
                    continue;
                int steps = 0;
                while (steps < 4 && contains_at(body, origin, dir, k + 1)) {
                    ++k;
                    ++steps;
                }
                if (steps < 4 || !contains_at(body, origin, dir, k + 1))
                    return k;
                break; // estimate too far off; take the exact route
            }
        }
    }

    // Exact: gallop then bisect over the contiguous membership run [0, K].
    Coord lo = 0, step = 1;
    while (lo + step <= cap && contains_at(body, origin, dir, lo + step)) {
        lo += step;
        step *= 2;
    }
    Coord hi = std::min(lo + step, cap + 1);
    while (hi - lo > 1) {
        const Coord mid = lo + (hi - lo) / 2;
        (contains_at(body, origin, dir, mid) ? lo : hi) = mid;
    }
    return lo;
}

std::optional<Coord> max_seg_index(const BodyOracle& body, LatticePoint origin,
                                   LatticeVector dir) {
    require_direction(dir);
    const auto capo = ray_span_cap(body, origin, dir);
    if (!capo) return std::nullopt;
    const Coord cap = *capo;

    if (body.convex_chords()) {
        if (const auto est = body.chord(origin, dir)) {
            if (sane_estimate(est->hi, 0, cap) && est->hi >= -chord_guard) {
                const Coord base =
                    std::clamp<Coord>(Coord(std::floor(est->hi)), 0, cap);
                static constexpr Coord offsets[] = {0, -1, 1, -2, 2};
                for (const Coord off : offsets) {
                    Coord k = base + off;
                    if (k < 0 || k > cap || !contains_at(body, origin, dir, k))
                        continue;
                    int steps = 0;
                    while (steps < 4 && contains_at(body, origin, dir, k + 1)) {
                        ++k;
                        ++steps;
                    }
                    if (steps < 4 || !contains_at(body, origin, dir, k + 1))
                        return k;
                    break;
                }
            }
        }
    }

    // Exact: P(k) = "the body meets [k, cap] along the ray" falls once in k.
    const Rational cap_r(cap);
    if (!body.segment_hits(origin, dir, Rational(0), cap_r)) return std::nullopt;
    Coord lo = 0, hi = cap;
    while (lo < hi) {
        const Coord mid = lo + (hi - lo + 1) / 2;
        if (body.segment_hits(origin, dir, Rational(mid), cap_r))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

std::optional<Coord> min_seg_index(const BodyOracle& body, LatticePoint origin,
                                   LatticeVector dir) {
    require_direction(dir);
    const auto capo = ray_span_cap(body, origin, dir);
    if (!capo) return std::nullopt;
    const Coord cap = *capo;
    if (body.contains(origin)) return 0;

    if (body.convex_chords()) {
        if (const auto est = body.chord(origin, dir)) {
            if (sane_estimate(est->lo, 0, cap)) {
                const Coord base =
                    std::clamp<Coord>(Coord(std::ceil(est->lo)) - 1, 0, cap);
                static constexpr Coord offsets[] = {0, -1, 1, -2, 2};
                for (const Coord off : offsets) {
                    Coord k = base + off;
                    if (k < 0 || k > cap ||
                        !contains_at(body, origin, dir, k + 1))
                        continue;
                    int steps = 0;
                    while (k > 0 && steps < 4 &&
                           contains_at(body, origin, dir, k)) {
                        --k;
                        ++steps;
                    }
                    if (k == 0 || !contains_at(body, origin, dir, k)) return k;
                    break;
                }
            }
        }
    }

    // Exact: Q(k) = "the body meets [0, k+1] along the ray" rises once in k.
    if (!body.segment_hits(origin, dir, Rational(0), Rational(cap)))
        return std::nullopt;
    Coord lo = 0, hi = cap;
    while (lo < hi) {
        const Coord mid = lo + (hi - lo) / 2;
        if (body.segment_hits(origin, dir, Rational(0), Rational(mid + 1)))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

std::optional<std::pair<Coord, Coord>>
lattice_run_on_line(const BodyOracle& body, LatticePoint origin,
                    LatticeVector dir) {
    require_direction(dir);
    const auto fwd = ray_span_cap(body, origin, dir);
    const auto bwd =
        ray_span_cap(body, origin, LatticeVector{-dir.dx, -dir.dy});
    if (!fwd && !bwd) return std::nullopt;
    const Coord hi_cap = fwd ? *fwd : 0;
    const Coord lo_cap = bwd ? -*bwd : 0;

    const auto certify_top = [&](Coord guess) -> std::optional<Coord> {
        static constexpr Coord offsets[] = {0, -1, 1, -2, 2};
        for (const Coord off : offsets) {
            Coord k = guess + off;
            if (k < lo_cap || k > hi_cap || !contains_at(body, origin, dir, k))
                continue;
            int steps = 0;
            while (steps < 4 && contains_at(body, origin, dir, k + 1)) {
                ++k;
                ++steps;
            }
            if (steps < 4 || !contains_at(body, origin, dir, k + 1)) return k;
            return std::nullopt;
        }
        return std::nullopt;
    };
    const auto certify_bottom = [&](Coord guess) -> std::optional<Coord> {
        static constexpr Coord offsets[] = {0, -1, 1, -2, 2};
        for (const Coord off : offsets) {
            Coord k = guess + off;
            if (k < lo_cap || k > hi_cap || !contains_at(body, origin, dir, k))
                continue;
            int steps = 0;
            while (steps < 4 && contains_at(body, origin, dir, k - 1)) {
                --k;
                ++steps;
            }
            if (steps < 4 || !contains_at(body, origin, dir, k - 1)) return k;
            return std::nullopt;
        }
        return std::nullopt;
    };

    if (const auto est = body.chord(origin, dir)) {
        if (sane_estimate(est->lo, lo_cap, hi_cap) &&
            sane_estimate(est->hi, lo_cap, hi_cap) && est->lo <= est->hi) {
            const auto top = certify_top(
                std::clamp<Coord>(Coord(std::floor(est->hi)), lo_cap, hi_cap));
            if (top) {
                const auto bottom = certify_bottom(std::clamp<Coord>(
                    Coord(std::ceil(est->lo)), lo_cap, hi_cap));
                if (bottom && *bottom <= *top)
                    return std::make_pair(*bottom, *top);
            }
        }
    }

    // Exact: bracket the chord parameters by bisection, then certify.
    const Rational lo_r(lo_cap), hi_r(hi_cap);
    if (!body.segment_hits(origin, dir, lo_r, hi_r)) return std::nullopt;
    Coord lo = lo_cap, hi = hi_cap;
    while (lo < hi) {
        const Coord mid = lo + (hi - lo + 1) / 2;
        if (body.segment_hits(origin, dir, Rational(mid), hi_r))
            lo = mid;
        else
            hi = mid - 1;
    }
    Coord top = lo;
    lo = lo_cap;
    hi = hi_cap;
    while (lo < hi) {
        const Coord mid = lo + (hi - lo) / 2;
        if (body.segment_hits(origin, dir, lo_r, Rational(mid)))
            hi = mid;
        else
            lo = mid + 1;
    }
    Coord bottom = lo;
    // Sub-unit slivers of a non-convex union can push either bracket one
    // step past the lattice run; pull them in and certify.
    if (bottom > top) return std::nullopt;
    if (!contains_at(body, origin, dir, top)) --top;
    if (bottom > top) return std::nullopt;
    if (!contains_at(body, origin, dir, bottom)) ++bottom;
    if (bottom > top) return std::nullopt;
    if (!contains_at(body, origin, dir, bottom) ||
        !contains_at(body, origin, dir, top))
        throw internal_error("lattice run endpoints failed to certify");
    return std::make_pair(bottom, top);
}

} // namespace dhull
