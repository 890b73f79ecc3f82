#include <doctest.h>

#include <dhull/baseline.hpp>
#include <dhull/hull.hpp>

#include "brute.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

using namespace dhull;
using brute::BigInt;

namespace {

std::vector<LatticePoint> rotate_to_lowest(std::vector<LatticePoint> cycle) {
    if (cycle.empty()) return cycle;
    std::size_t start = 0;
    for (std::size_t i = 1; i < cycle.size(); ++i) {
        if (cycle[i].y < cycle[start].y ||
            (cycle[i].y == cycle[start].y && cycle[i].x < cycle[start].x))
            start = i;
    }
    std::rotate(cycle.begin(),
                cycle.begin() + static_cast<std::ptrdiff_t>(start), cycle.end());
    return cycle;
}

// Reference hull of everything the scan finds in [-span, span]^2, starting at
// the lowest (then leftmost) vertex like the library's chains do.
template <typename BruteBody>
std::vector<LatticePoint> reference_hull(const BruteBody& body, Coord span) {
    return rotate_to_lowest(brute::convex_hull(
        brute::lattice_points_in_box(body, -span, span, -span, span)));
}

// Structural checks every returned chain must satisfy: vertices inside the
// body, strict convexity, weights matching the vertex cycle, and the
// cube-root bound on the vertex count.
void check_chain_invariants(const HullChain& chain, const BodyOracle& body) {
    const std::size_t n = chain.vertices.size();
    REQUIRE(n >= 1);
    for (const auto& v : chain.vertices) CHECK(body.contains(v));
    if (n == 1) {
        CHECK(chain.edge_weights.empty());
        CHECK(chain.boundary_count == 1);
    } else if (n == 2) {
        REQUIRE(chain.edge_weights.size() == 1);
        CHECK(chain.edge_weights[0] ==
              edge_weight(chain.vertices[0], chain.vertices[1]));
        CHECK(chain.boundary_count == chain.edge_weights[0] + 1);
    } else {
        REQUIRE(chain.edge_weights.size() == n);
        Coord weight_sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(orientation(chain.vertices[i], chain.vertices[(i + 1) % n],
                              chain.vertices[(i + 2) % n]) == 1);
            CHECK(chain.edge_weights[i] ==
                  edge_weight(chain.vertices[i], chain.vertices[(i + 1) % n]));
            weight_sum += chain.edge_weights[i];
        }
        CHECK(chain.boundary_count == weight_sum);
    }
    const double diameter = std::max(body.approx_bbox().diameter(), 1.0);
    CHECK(static_cast<double>(n) <=
          6.0 * std::cbrt(2.0) * std::pow(diameter, 2.0 / 3.0) + 1e-9);
}

void check_same_chain(const HullChain& a, const HullChain& b) {
    CHECK(a.vertices == b.vertices);
    CHECK(a.edge_weights == b.edge_weights);
    CHECK(a.boundary_count == b.boundary_count);
}

Rational random_center(std::mt19937_64& rng) {
    std::uniform_int_distribution<Coord> den(1, 8);
    const Coord q = den(rng);
    std::uniform_int_distribution<Coord> num(-2 * q, 2 * q);
    return Rational(num(rng), q);
}

struct DiskCase {
    DiskBody body;
    brute::Disk ref;
};

DiskCase random_disk(std::mt19937_64& rng, Coord rsq_min, Coord rsq_max) {
    std::uniform_int_distribution<Coord> rs(rsq_min, rsq_max);
    const Rational cx = random_center(rng);
    const Rational cy = random_center(rng);
    const Rational rsq(rs(rng));
    return DiskCase{DiskBody(cx, cy, rsq),
                    brute::Disk{brute::to_rat(cx), brute::to_rat(cy),
                                brute::to_rat(rsq)}};
}

std::vector<LatticePoint> random_convex_lattice_polygon(std::mt19937_64& rng,
                                                        Coord span) {
    std::uniform_int_distribution<Coord> coord(-span, span);
    for (;;) {
        std::vector<LatticePoint> pts;
        for (int i = 0; i < 10; ++i)
            pts.push_back(LatticePoint{coord(rng), coord(rng)});
        auto hull = brute::convex_hull(std::move(pts));
        if (hull.size() >= 3) return hull;
    }
}

} // namespace

TEST_CASE("lowest vertex: frozen cases") {
    const DiskBody big(Rational(1, 2), Rational(1, 2), Rational(100));
    CHECK(find_lowest_vertex(big, LatticePoint{0, 0}) == LatticePoint{-2, -9});
    CHECK(find_lowest_vertex(big, LatticePoint{3, 9}) == LatticePoint{-2, -9});

    const DiskBody unit(Rational(0), Rational(0), Rational(1));
    CHECK(find_lowest_vertex(unit, LatticePoint{0, 0}) == LatticePoint{0, -1});

    const DiskBody dot(Rational(0), Rational(0), Rational(1, 4));
    CHECK(find_lowest_vertex(dot, LatticePoint{0, 0}) == LatticePoint{0, 0});

    CHECK_THROWS_WITH_AS(find_lowest_vertex(unit, LatticePoint{5, 5}),
                         "seed outside body", std::invalid_argument);
}

TEST_CASE("lowest vertex: agrees with brute force on random disks") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const auto dc = random_disk(rng, 2, 900);
        const auto points =
            brute::lattice_points_in_box(dc.ref, -40, 40, -40, 40);
        REQUIRE(!points.empty());
        LatticePoint expected = points.front();
        for (const auto& p : points) {
            if (p.y < expected.y || (p.y == expected.y && p.x < expected.x))
                expected = p;
        }
        std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
        const LatticePoint seed = points[pick(rng)];
        CAPTURE(trial);
        CHECK(find_lowest_vertex(dc.body, seed) == expected);
    }
}

TEST_CASE("hull trace from a vertex: frozen cases") {
    SUBCASE("radius-2 disk at the origin") {
        const DiskBody disk(Rational(0), Rational(0), Rational(4));
        const HullChain chain = discrete_hull_from(disk, LatticePoint{0, -2});
        CHECK(chain.vertices ==
              std::vector<LatticePoint>{
                  {0, -2}, {2, 0}, {0, 2}, {-2, 0}});
        CHECK(chain.edge_weights == std::vector<Coord>{2, 2, 2, 2});
        CHECK(chain.boundary_count == 8);
        CHECK(chain.max_edge_iterations >= 1);
        check_chain_invariants(chain, disk);
    }
    SUBCASE("unit disk") {
        const DiskBody disk(Rational(0), Rational(0), Rational(1));
        const HullChain chain = discrete_hull_from(disk, LatticePoint{0, -1});
        CHECK(chain.vertices ==
              std::vector<LatticePoint>{
                  {0, -1}, {1, 0}, {0, 1}, {-1, 0}});
        CHECK(chain.edge_weights == std::vector<Coord>{1, 1, 1, 1});
        CHECK(chain.boundary_count == 4);
    }
    SUBCASE("axis-aligned lattice square") {
        const PolygonBody square = PolygonBody::from_lattice(
            {{0, 0}, {5, 0}, {5, 5}, {0, 5}});
        const HullChain chain = discrete_hull_from(square, LatticePoint{0, 0});
        CHECK(chain.vertices ==
              std::vector<LatticePoint>{{0, 0}, {5, 0}, {5, 5}, {0, 5}});
        CHECK(chain.edge_weights == std::vector<Coord>{5, 5, 5, 5});
        CHECK(chain.boundary_count == 20);
        check_chain_invariants(chain, square);
    }
    SUBCASE("seed must be a lattice point of the body") {
        const DiskBody disk(Rational(0), Rational(0), Rational(4));
        CHECK_THROWS_WITH_AS(discrete_hull_from(disk, LatticePoint{9, 9}),
                             "seed outside body", std::invalid_argument);
    }
}

TEST_CASE("full hull: degenerate lattice sets") {
    SUBCASE("single lattice point") {
        const DiskBody dot(Rational(0), Rational(0), Rational(1, 4));
        const HullChain chain = discrete_hull(dot, LatticePoint{0, 0});
        CHECK(chain.vertices == std::vector<LatticePoint>{{0, 0}});
        CHECK(chain.edge_weights.empty());
        CHECK(chain.boundary_count == 1);
        check_same_chain(chain, naive_hull(dot));
    }
    SUBCASE("two collinear points, horizontal") {
        const DiskBody pair(Rational(1, 2), Rational(0), Rational(1, 2));
        const HullChain chain = discrete_hull(pair, LatticePoint{0, 0});
        CHECK(chain.vertices == std::vector<LatticePoint>{{0, 0}, {1, 0}});
        CHECK(chain.edge_weights == std::vector<Coord>{1});
        CHECK(chain.boundary_count == 2);
        check_same_chain(chain, naive_hull(pair));
    }
    SUBCASE("vertical run of six points") {
        const auto disk = std::make_shared<DiskBody>(
            Rational(0), Rational(1, 2), Rational(25, 4));
        const ClippedBody segment(disk, 0, 0, -10, 10);
        const HullChain chain = discrete_hull(segment, LatticePoint{0, 1});
        CHECK(chain.vertices == std::vector<LatticePoint>{{0, -2}, {0, 3}});
        CHECK(chain.edge_weights == std::vector<Coord>{5});
        CHECK(chain.boundary_count == 6);
        check_same_chain(chain, naive_hull(segment));
    }
}

TEST_CASE("full hull: equals the reference hull on disks") {
    std::mt19937_64 rng(515151);
    std::vector<DiskCase> cases;
    // adversarial fixed bodies: tangencies, tiny disks, frozen examples
    const auto fixed = {
        DiskBody(Rational(1, 2), Rational(1, 2), Rational(100)),
        DiskBody(Rational(0), Rational(0), Rational(4)),
        DiskBody(Rational(1, 2), Rational(0), Rational(1, 2)),
        DiskBody(Rational(1, 2), Rational(1, 2), Rational(25, 4)),
        DiskBody(Rational(0), Rational(1, 2), Rational(49)),
        DiskBody(Rational(0), Rational(0), Rational(2)),
    };
    for (const auto& body : fixed) {
        cases.push_back(DiskCase{
            body, brute::Disk{brute::to_rat(body.center_x()),
                              brute::to_rat(body.center_y()),
                              brute::to_rat(body.radius_sq())}});
    }
    for (int trial = 0; trial < 30; ++trial)
        cases.push_back(random_disk(rng, 2, 2500));

    for (std::size_t i = 0; i < cases.size(); ++i) {
        CAPTURE(i);
        const auto& dc = cases[i];
        const auto expected = reference_hull(dc.ref, 60);
        REQUIRE(!expected.empty());

        std::uniform_int_distribution<std::size_t> pick(0, expected.size() - 1);
        const LatticePoint seed = expected[pick(rng)];
        const HullChain chain = discrete_hull(dc.body, seed);
        CHECK(chain.vertices == expected);
        check_chain_invariants(chain, dc.body);
        CHECK(chain.boundary_count ==
              brute::boundary_lattice_count(expected));

        check_same_chain(chain, naive_hull(dc.body));
    }
}

TEST_CASE("full hull: equals the polygon itself on lattice polygons") {
    std::mt19937_64 rng(616161);
    for (int trial = 0; trial < 25; ++trial) {
        CAPTURE(trial);
        const auto verts = random_convex_lattice_polygon(rng, 15);
        const PolygonBody body = PolygonBody::from_lattice(verts);
        const auto expected = rotate_to_lowest(verts);

        const HullChain chain = discrete_hull(body, expected.front());
        CHECK(chain.vertices == expected);
        check_chain_invariants(chain, body);
        check_same_chain(chain, naive_hull(body));
    }
    // one scanned double-check that interior points change nothing
    std::vector<RationalPoint> shifted;
    for (const auto& v : std::vector<LatticePoint>{
             {-7, -3}, {6, -5}, {8, 2}, {1, 7}, {-5, 6}})
        shifted.push_back(RationalPoint{Rational(v.x), Rational(v.y)});
    const PolygonBody body(shifted);
    const brute::Polygon ref{shifted};
    const auto expected = reference_hull(ref, 12);
    const HullChain chain = discrete_hull(body, expected.front());
    CHECK(chain.vertices == expected);
}

TEST_CASE("disk hull edges obey the curvature weight bound") {
    std::mt19937_64 rng(717171);
    int heavy_edges = 0;
    for (int trial = 0; trial < 25; ++trial) {
        CAPTURE(trial);
        const auto dc = random_disk(rng, 25, 2500);
        const auto points =
            brute::lattice_points_in_box(dc.ref, -60, 60, -60, 60);
        REQUIRE(!points.empty());
        const HullChain chain = discrete_hull(dc.body, points.front());
        if (chain.vertices.size() < 3) continue;
        const Rational rsq = dc.body.radius_sq();
        for (std::size_t i = 0; i < chain.vertices.size(); ++i) {
            const Coord w = chain.edge_weights[i];
            if (w < 2) continue;
            ++heavy_edges;
            const LatticeVector step = reduce(
                chain.vertices[(i + 1) % chain.vertices.size()] -
                chain.vertices[i]);
            const BigInt csq(static_cast<long long>(norm_sq(step)));
            const BigInt lhs =
                BigInt(w) * w * w * w * csq * csq * csq * rsq.den;
            const BigInt rhs = BigInt(256) * rsq.num;
            CHECK(lhs <= rhs);
        }
    }
    CHECK(heavy_edges > 0); // the property must actually get exercised
}

TEST_CASE("hull trace stays within the oracle call budget") {
    std::mt19937_64 rng(818181);
    for (int trial = 0; trial < 12; ++trial) {
        CAPTURE(trial);
        const auto dc = random_disk(rng, 100, 2500);
        const CountingBody counted(dc.body);
        const LatticePoint seed =
            find_lowest_vertex(dc.body, LatticePoint{0, 0});
        const HullChain chain = discrete_hull(counted, seed);
        const double diameter = dc.body.approx_bbox().diameter();
        const auto log_delta = ceil_log_phi(
            static_cast<std::uint64_t>(std::ceil(std::max(diameter, 1.0))));
        const long long budget = 12LL *
                                 static_cast<long long>(chain.vertices.size()) *
                                 (2 + log_delta);
        CHECK(counted.total_calls() <= budget);
    }
}

TEST_CASE("lattice triangle hulls stay logarithmic in the diameter") {
    std::mt19937_64 rng(919191);
    std::uniform_int_distribution<Coord> leg(2, 70000);
    for (int trial = 0; trial < 15; ++trial) {
        CAPTURE(trial);
        const Coord b = leg(rng);
        const Coord a = leg(rng);
        const PolygonBody tri =
            PolygonBody::from_lattice({{0, 0}, {b, 0}, {b, a}});
        const HullChain chain = discrete_hull(tri, LatticePoint{b, 0});
        check_chain_invariants(chain, tri);
        const auto log_delta = ceil_log_phi(static_cast<std::uint64_t>(
            std::ceil(std::hypot(double(a), double(b)))));
        CHECK(static_cast<long long>(chain.vertices.size()) <=
              2LL * log_delta + 7);
    }
    // apex off the lattice: the two lattice vertices still pin the bound
    const PolygonBody tri({RationalPoint{Rational(0), Rational(0)},
                           RationalPoint{Rational(60000), Rational(0)},
                           RationalPoint{Rational(119999, 2),
                                         Rational(70001, 3)}});
    const HullChain chain = discrete_hull(tri, LatticePoint{0, 0});
    const auto log_delta = ceil_log_phi(static_cast<std::uint64_t>(
        std::ceil(std::hypot(60000.0, 70001.0 / 3.0))));
    CHECK(static_cast<long long>(chain.vertices.size()) <= 2LL * log_delta + 7);
}

TEST_CASE("naive hull: errors and per-column cost") {
    const DiskBody empty(Rational(1, 2), Rational(1, 2), Rational(9, 100));
    CHECK_THROWS_WITH_AS(naive_hull(empty), "no lattice points",
                         std::runtime_error);

    const DiskBody disk(Rational(1, 2), Rational(1, 2), Rational(400));
    const CountingBody counted(disk);
    const HullChain chain = naive_hull(counted);
    check_chain_invariants(chain, disk);
    const long long columns =
        static_cast<long long>(std::ceil(disk.approx_bbox().width())) + 3;
    CHECK(counted.total_calls() <= 64 * columns);
}

TEST_CASE("general vertex finder: frozen cases") {
    const DiskBody big(Rational(1, 2), Rational(1, 2), Rational(100));
    const auto vertex = find_hull_vertex_general(
        big, RationalPoint{Rational(1, 2), Rational(1, 2)});
    REQUIRE(vertex.has_value());
    const brute::Disk ref{brute::to_rat(big.center_x()),
                          brute::to_rat(big.center_y()),
                          brute::to_rat(big.radius_sq())};
    const auto hull = reference_hull(ref, 15);
    CHECK(std::find(hull.begin(), hull.end(), *vertex) != hull.end());

    const DiskBody empty(Rational(1, 2), Rational(1, 2), Rational(9, 100));
    CHECK(!find_hull_vertex_general(
               empty, RationalPoint{Rational(1, 2), Rational(1, 2)})
               .has_value());

    const DiskBody unit(Rational(0), Rational(0), Rational(1));
    CHECK_THROWS_WITH_AS(
        find_hull_vertex_general(unit,
                                 RationalPoint{Rational(5), Rational(0)}),
        "point outside body", std::invalid_argument);
}

TEST_CASE("general vertex finder: narrow bodies checked against brute force") {
    std::mt19937_64 rng(101010);
    int found = 0;
    int empty = 0;
    for (int trial = 0; trial < 40; ++trial) {
        CAPTURE(trial);
        const Rational cx = random_center(rng);
        const Rational cy = random_center(rng);
        // every fourth body is sub-unit so some hold no lattice point at all
        Rational rsq(1);
        if (trial % 4 == 0) {
            std::uniform_int_distribution<Coord> rs_num(1, 48);
            rsq = Rational(rs_num(rng), 100);
        } else {
            std::uniform_int_distribution<Coord> rs_num(1, 1600);
            rsq = Rational(rs_num(rng), trial % 3 == 0 ? 16 : 1);
        }
        const DiskBody body(cx, cy, rsq);
        const brute::Disk ref{brute::to_rat(cx), brute::to_rat(cy),
                              brute::to_rat(rsq)};
        const auto hull = reference_hull(ref, 46);
        const auto vertex =
            find_hull_vertex_general(body, RationalPoint{cx, cy});
        if (hull.empty()) {
            CHECK(!vertex.has_value());
            ++empty;
        } else {
            REQUIRE(vertex.has_value());
            CHECK(std::find(hull.begin(), hull.end(), *vertex) != hull.end());
            ++found;
        }
    }
    CHECK(found > 0);
    CHECK(empty > 0);
}

TEST_CASE("general vertex finder: wide bodies use the glued trapezoids") {
    std::mt19937_64 rng(111111);
    for (int trial = 0; trial < 6; ++trial) {
        CAPTURE(trial);
        std::uniform_int_distribution<Coord> radius(80, 300);
        const Rational cx = random_center(rng);
        const Rational cy = random_center(rng);
        const DiskBody body =
            DiskBody::from_radius(cx, cy, Rational(radius(rng)));
        const auto vertex =
            find_hull_vertex_general(body, RationalPoint{cx, cy});
        REQUIRE(vertex.has_value());
        // confirmed a hull vertex by rebuilding the hull from it
        const HullChain chain = discrete_hull_from(body, *vertex);
        check_chain_invariants(chain, body);
        CHECK(std::find(chain.vertices.begin(), chain.vertices.end(),
                        *vertex) != chain.vertices.end());
        CHECK(chain.vertices.front() == *vertex);
    }

    // a polygon pushed off the lattice exercises the same path
    std::vector<RationalPoint> verts;
    for (const auto& v : std::vector<std::pair<Coord, Coord>>{
             {0, 0}, {250, 40}, {260, 200}, {10, 170}})
        verts.push_back(
            RationalPoint{Rational(3 * v.first + 1, 3),
                          Rational(3 * v.second + 2, 3)});
    const PolygonBody poly(verts);
    const auto vertex = find_hull_vertex_general(
        poly, RationalPoint{Rational(100), Rational(100)});
    REQUIRE(vertex.has_value());
    const HullChain from_vertex = discrete_hull_from(poly, *vertex);
    CHECK(from_vertex.vertices.front() == *vertex);
    // the chain starts wherever the found vertex is; align before comparing
    HullChain aligned = from_vertex;
    aligned.vertices = rotate_to_lowest(aligned.vertices);
    const auto shift = static_cast<std::size_t>(
        std::find(from_vertex.vertices.begin(), from_vertex.vertices.end(),
                  aligned.vertices.front()) -
        from_vertex.vertices.begin());
    std::rotate(aligned.edge_weights.begin(),
                aligned.edge_weights.begin() + shift,
                aligned.edge_weights.end());
    check_same_chain(aligned, naive_hull(poly));
}
