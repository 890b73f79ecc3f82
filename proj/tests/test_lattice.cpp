#include <doctest.h>

#include <dhull/lattice.hpp>

#include <cmath>
#include <cstdlib>
#include <random>

using namespace dhull;

TEST_CASE("lattice_gcd basics") {
    CHECK(lattice_gcd(31, 14) == 1);
    CHECK(lattice_gcd(4, 6) == 2);
    CHECK(lattice_gcd(0, 7) == 7);
    CHECK(lattice_gcd(-9, 6) == 3);
    CHECK_THROWS_AS(lattice_gcd(0, 0), std::domain_error);
}

TEST_CASE("reduce yields primitive direction") {
    CHECK(reduce({14, 31}) == LatticeVector{14, 31});
    CHECK(reduce({4, 6}) == LatticeVector{2, 3});
    CHECK(reduce({0, -5}) == LatticeVector{0, -1});
    CHECK(reduce({-8, -12}) == LatticeVector{-2, -3});
    CHECK_THROWS_AS(reduce({0, 0}), std::domain_error);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<Coord> coord(-50, 50);
    std::uniform_int_distribution<Coord> scale(1, 9);
    for (int i = 0; i < 500; ++i) {
        LatticeVector v{coord(rng), coord(rng)};
        if (v.is_zero()) continue;
        LatticeVector r = reduce(v);
        CHECK(is_primitive(r));
        CHECK(reduce(r) == r);              // idempotent
        Coord k = scale(rng);
        CHECK(reduce(k * v) == r);          // scale invariant
        CHECK(reduce(-v) == -r);
    }
}

TEST_CASE("orientation sign and invariances") {
    LatticePoint o{0, 0}, e1{1, 0}, e2{0, 1};
    CHECK(orientation(o, e1, e2) == 1);
    CHECK(orientation(o, e2, e1) == -1);
    CHECK(orientation(o, e1, LatticePoint{5, 0}) == 0);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Coord> coord(-1000, 1000);
    for (int i = 0; i < 500; ++i) {
        LatticePoint p{coord(rng), coord(rng)};
        LatticePoint q{coord(rng), coord(rng)};
        LatticePoint r{coord(rng), coord(rng)};
        int s = orientation(p, q, r);
        CHECK(orientation(q, r, p) == s);   // cyclic
        CHECK(orientation(p, r, q) == -s);  // swap flips
        LatticeVector t{coord(rng), coord(rng)};
        CHECK(orientation(p + t, q + t, r + t) == s); // translation
    }
}

TEST_CASE("orientation exact at 128-bit scale") {
    // Coordinates near the 2^31 budget; doubles would round these.
    Coord big = (Coord(1) << 31) - 1;
    LatticePoint p{-big, -big}, q{big, big - 1}, r{big, big};
    CHECK(orientation(p, q, r) == 1);
    CHECK(orientation(p, r, q) == -1);
    LatticePoint s{big - 1, big - 1};
    CHECK(orientation(p, s, LatticePoint{big, big}) == 0);
}

static int count_lattice_points_on_segment(LatticePoint p, LatticePoint q) {
    // Brute force over the bounding box; only for small coordinates.
    int count = 0;
    Coord x0 = std::min(p.x, q.x), x1 = std::max(p.x, q.x);
    Coord y0 = std::min(p.y, q.y), y1 = std::max(p.y, q.y);
    for (Coord x = x0; x <= x1; ++x)
        for (Coord y = y0; y <= y1; ++y) {
            LatticeVector a = LatticePoint{x, y} - p;
            LatticeVector b = q - p;
            if (cross(a, b) == 0 && dot(a, b) >= 0 && norm_sq(a) <= norm_sq(b))
                ++count;
        }
    return count;
}

TEST_CASE("edge_weight counts segment lattice points") {
    CHECK(edge_weight({0, 0}, {14, 31}) == 1);
    CHECK(edge_weight({0, 0}, {4, 6}) == 2);
    CHECK(edge_weight({2, 3}, {2, 10}) == 7);
    CHECK_THROWS_AS(edge_weight({1, 1}, {1, 1}), std::domain_error);

    std::mt19937_64 rng(13);
    std::uniform_int_distribution<Coord> coord(-20, 20);
    for (int i = 0; i < 300; ++i) {
        LatticePoint p{coord(rng), coord(rng)};
        LatticePoint q{coord(rng), coord(rng)};
        if (p == q) continue;
        CHECK(edge_weight(p, q) + 1 == count_lattice_points_on_segment(p, q));
    }
}

TEST_CASE("Rational normalization and comparison") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(0, -7) == Rational(0, 1));
    CHECK(Rational(5) == Rational(5, 1));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);

    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(7, 3) > Rational(2));

    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(-Rational(2, 3) == Rational(-2, 3));
}

TEST_CASE("rational floor and ceil") {
    CHECK(rational_floor(Rational(7, 2)) == 3);
    CHECK(rational_ceil(Rational(7, 2)) == 4);
    CHECK(rational_floor(Rational(-7, 2)) == -4);
    CHECK(rational_ceil(Rational(-7, 2)) == -3);
    CHECK(rational_floor(Rational(6, 2)) == 3);
    CHECK(rational_ceil(Rational(6, 2)) == 3);

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<std::int64_t> num(-10'000, 10'000);
    std::uniform_int_distribution<std::int64_t> den(1, 500);
    for (int i = 0; i < 500; ++i) {
        Rational r(num(rng), den(rng));
        std::int64_t f = rational_floor(r), c = rational_ceil(r);
        CHECK(Rational(f) <= r);
        CHECK(r < Rational(f + 1));
        CHECK(Rational(c) >= r);
        CHECK(r > Rational(c - 1));
        CHECK((r.is_integer() ? f == c : c == f + 1));
    }
}

TEST_CASE("parse_rational accepts fractions, integers, decimals") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("3/-4") == Rational(-3, 4));
    CHECK(parse_rational("12") == Rational(12));
    CHECK(parse_rational("-12") == Rational(-12));
    CHECK(parse_rational("3.25") == Rational(13, 4));
    CHECK(parse_rational("-0.5") == Rational(-1, 2));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational(".5") == Rational(1, 2));
    CHECK_THROWS(parse_rational(""));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational("1.2.3"));
}

TEST_CASE("ceil_log_phi matches the real logarithm") {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(ceil_log_phi(0) == 0);
    CHECK(ceil_log_phi(1) == 0);
    CHECK(ceil_log_phi(2) == 2);  // phi^1 ~ 1.618 < 2 <= phi^2
    for (std::uint64_t x : {3ull, 5ull, 8ull, 100ull, 12345ull, 1000000ull,
                            123456789ull, 10000000000ull}) {
        int m = ceil_log_phi(x);
        CHECK(std::pow(phi, m) >= double(x) * (1 - 1e-12));
        if (m > 0) CHECK(std::pow(phi, m - 1) < double(x) * (1 + 1e-12));
    }
    // Fibonacci numbers sit exactly at integer powers: F(n) ~ phi^n / sqrt(5).
    CHECK(ceil_log_phi(13) == 6);   // phi^5 ~ 11.09, phi^6 ~ 17.94
    CHECK(ceil_log_phi(12) == 6);
    CHECK(ceil_log_phi(11) == 5);
}
