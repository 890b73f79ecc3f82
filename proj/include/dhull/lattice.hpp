#ifndef DHULL_LATTICE_HPP
#define DHULL_LATTICE_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <compare>

// Integer lattice primitives.
//
// Coordinate budget: hull computations support body diameters up to 1e8.
// All predicates that multiply two coordinates use 128-bit intermediates,
// so products of magnitudes up to ~1e18 are exact.  Callers keep
// coordinates within |x| <= 2^31; constructors of bodies validate their
// own parameter budgets (see oracle.hpp).

namespace dhull {

using Coord = std::int64_t;
using Wide = __int128;

// Raised when an internal consistency guard fails (bad correction window,
// runaway iteration, non-closing hull trace).  Indicates a bug or a body
// violating its documented preconditions, never a user-input problem.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

struct LatticePoint {
    Coord x = 0;
    Coord y = 0;
    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

struct LatticeVector {
    Coord dx = 0;
    Coord dy = 0;
    friend bool operator==(const LatticeVector&, const LatticeVector&) = default;

    bool is_zero() const { return dx == 0 && dy == 0; }
};

inline LatticePoint operator+(LatticePoint p, LatticeVector v) {
    return {p.x + v.dx, p.y + v.dy};
}
inline LatticeVector operator-(LatticePoint p, LatticePoint q) {
    return {p.x - q.x, p.y - q.y};
}
inline LatticeVector operator+(LatticeVector a, LatticeVector b) {
    return {a.dx + b.dx, a.dy + b.dy};
}
inline LatticeVector operator*(Coord k, LatticeVector v) {
    return {k * v.dx, k * v.dy};
}
inline LatticeVector operator-(LatticeVector v) { return {-v.dx, -v.dy}; }

inline Wide cross(LatticeVector a, LatticeVector b) {
    return Wide(a.dx) * b.dy - Wide(a.dy) * b.dx;
}
inline Wide dot(LatticeVector a, LatticeVector b) {
    return Wide(a.dx) * b.dx + Wide(a.dy) * b.dy;
}
// |v|^2, exact.
inline Wide norm_sq(LatticeVector v) { return dot(v, v); }

inline int sign_of(Wide w) { return w > 0 ? 1 : (w < 0 ? -1 : 0); }

// gcd(|a|,|b|); gcd(0,0) has no sensible value here and is rejected so
// that reduce() can never silently accept the zero vector.
inline Coord lattice_gcd(Coord a, Coord b) {
    if (a == 0 && b == 0)
        throw std::domain_error("lattice_gcd: gcd(0,0) is undefined");
    return std::gcd(a, b);
}

// Primitive vector with the same direction.  reduce(k*v) == reduce(v) for
// any k > 0; the zero vector is rejected.
inline LatticeVector reduce(LatticeVector v) {
    Coord g = lattice_gcd(v.dx, v.dy);
    return {v.dx / g, v.dy / g};
}

inline bool is_primitive(LatticeVector v) {
    return !v.is_zero() && lattice_gcd(v.dx, v.dy) == 1;
}

// Sign of the turn p -> q -> r: +1 counterclockwise, -1 clockwise,
// 0 collinear.
inline int orientation(LatticePoint p, LatticePoint q, LatticePoint r) {
    return sign_of(cross(q - p, r - p));
}

// Number of lattice points on the closed segment [p,q] minus one.
// Equal to gcd(|qx-px|, |qy-py|); p == q is rejected.
inline Coord edge_weight(LatticePoint p, LatticePoint q) {
    if (p == q)
        throw std::domain_error("edge_weight: degenerate segment");
    return lattice_gcd(q.x - p.x, q.y - p.y);
}

// Reduced rational with positive denominator.  Arithmetic uses 128-bit
// intermediates and rejects results that do not fit back into 64 bits;
// under the documented coordinate budgets that never happens.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g == 0) g = 1;
        num = n / g;
        den = d / g;
    }

    friend bool operator==(const Rational&, const Rational&) = default;

    double to_double() const { return double(num) / double(den); }
    bool is_integer() const { return den == 1; }
};

namespace detail {
inline std::int64_t narrow_checked(Wide w, const char* what) {
    if (w > Wide(INT64_MAX) || w < Wide(INT64_MIN))
        throw std::domain_error(std::string(what) + ": value exceeds 64-bit budget");
    return std::int64_t(w);
}
} // namespace detail

inline Rational make_rational_wide(Wide n, Wide d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    Wide a = n < 0 ? -n : n, b = d;
    while (b) { Wide t = a % b; a = b; b = t; }
    if (a == 0) a = 1;
    n /= a;
    d /= a;
    return Rational(detail::narrow_checked(n, "Rational num"),
                    detail::narrow_checked(d, "Rational den"));
}

inline Rational operator+(Rational a, Rational b) {
    return make_rational_wide(Wide(a.num) * b.den + Wide(b.num) * a.den,
                              Wide(a.den) * b.den);
}
inline Rational operator-(Rational a, Rational b) {
    return make_rational_wide(Wide(a.num) * b.den - Wide(b.num) * a.den,
                              Wide(a.den) * b.den);
}
inline Rational operator*(Rational a, Rational b) {
    return make_rational_wide(Wide(a.num) * b.num, Wide(a.den) * b.den);
}
inline Rational operator-(Rational a) { return Rational(-a.num, a.den); }

inline std::strong_ordering operator<=>(Rational a, Rational b) {
    Wide lhs = Wide(a.num) * b.den;
    Wide rhs = Wide(b.num) * a.den;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

// Parses "p/q", "p", or a decimal string such as "3.25" / "-0.5".
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto parse_int = [](const std::string& s) -> std::int64_t {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument("parse_rational: trailing characters in '" + s + "'");
        return v;
    };
    if (auto slash = text.find('/'); slash != std::string::npos) {
        return Rational(parse_int(text.substr(0, slash)),
                        parse_int(text.substr(slash + 1)));
    }
    if (auto point = text.find('.'); point != std::string::npos) {
        std::string whole = text.substr(0, point);
        std::string frac = text.substr(point + 1);
        if (frac.empty() || frac.size() > 18)
            throw std::invalid_argument("parse_rational: bad decimal '" + text + "'");
        bool negative = !whole.empty() && whole[0] == '-';
        if (whole == "-" || whole == "+" || whole.empty()) whole += "0";
        std::int64_t ipart = parse_int(whole);
        std::int64_t fpart = parse_int(frac);
        if (fpart < 0)
            throw std::invalid_argument("parse_rational: bad decimal '" + text + "'");
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        Wide num = Wide(ipart) * den + (negative ? -Wide(fpart) : Wide(fpart));
        return make_rational_wide(num, den);
    }
    return Rational(parse_int(text));
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

inline std::int64_t rational_floor(Rational r) { return floor_div(r.num, r.den); }
inline std::int64_t rational_ceil(Rational r) { return -floor_div(-r.num, r.den); }

// Smallest m >= 0 with phi^m >= x, phi the golden ratio, decided in exact
// integer arithmetic via phi^m = F(m)*phi + F(m-1):
//   phi^m >= x  <=>  F(m)*sqrt(5) >= 2x - F(m) - 2F(m-1).
inline int ceil_log_phi(std::uint64_t x) {
    if (x <= 1) return 0;
    if (x > (std::uint64_t(1) << 60))
        throw std::domain_error("ceil_log_phi: argument exceeds budget");
    Wide f_prev = 1, f_cur = 0; // F(m-1), F(m) at m = 0
    for (int m = 0;; ++m) {
        Wide t = 2 * Wide(x) - f_cur - 2 * f_prev;
        if (t <= 0 || 5 * f_cur * f_cur >= t * t) return m;
        Wide next = f_cur + f_prev;
        f_prev = f_cur;
        f_cur = next;
    }
}

} // namespace dhull

#endif
