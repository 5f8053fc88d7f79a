#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pants/surface.hpp"

using namespace pants;

TEST_CASE("euler characteristic") {
    CHECK(euler_characteristic({2, 0}) == -2);
    CHECK(euler_characteristic({0, 3}) == -1);
    CHECK(euler_characteristic({1, 2}) == -2);
    CHECK(euler_characteristic({0, 0}) == 2);
}

TEST_CASE("admits pants decomposition") {
    CHECK_FALSE(admits_pants_decomposition({1, 0})); // torus
    CHECK(admits_pants_decomposition({0, 4}));
    CHECK_FALSE(admits_pants_decomposition({0, 2})); // annulus
    CHECK_FALSE(admits_pants_decomposition({0, 0})); // sphere
    CHECK_FALSE(admits_pants_decomposition({0, 1})); // disk
    CHECK(admits_pants_decomposition({0, 3}));
    CHECK(admits_pants_decomposition({1, 1}));
}

TEST_CASE("decomposition census") {
    CHECK(decomposition_census({2, 0}) == Census{3, 2});
    CHECK(decomposition_census({1, 1}) == Census{1, 1});
    CHECK(decomposition_census({0, 5}) == Census{2, 3});
    CHECK_THROWS_AS(decomposition_census({1, 0}), Error);

    // pants count balances chi; curve count is always integral
    for (int g = 0; g <= 5; ++g)
        for (int n = 0; n <= 6; ++n) {
            SurfaceType s{g, n};
            if (!admits_pants_decomposition(s)) continue;
            Census c = decomposition_census(s);
            CHECK(c.pants == -euler_characteristic(s));
            CHECK(2 * c.curves == 3 * c.pants - n);
        }
}

TEST_CASE("slope canonical form") {
    CHECK(Slope(2, 4) == Slope(1, 2));
    CHECK(Slope(-3, -6) == Slope(1, 2));
    CHECK(Slope(3, -6) == Slope(-1, 2));
    CHECK(Slope(-5, 0) == Slope(1, 0));
    CHECK_THROWS_AS(Slope(0, 0), Error);
    CHECK(parse_slope("inf") == Slope(1, 0));
    CHECK(parse_slope("-2/4") == Slope(-1, 2));
    CHECK(to_string(Slope(1, 0)) == "1/0");
}

// Count straight-line intersections on the square torus directly. The two
// curves lift to the lines t*(q1,p1) and u*(q2,p2) + (m,n); each transverse
// intersection on the torus corresponds to one lattice point (m,n) lying in
// the half-open parallelogram spanned by the direction vectors, i.e. to a
// solution with t,u in [0,1). Enumerate lattice offsets over a covering
// window and test t,u rationally.
static long long torus_line_intersections(Slope a, Slope b) {
    long long v1x = a.q, v1y = a.p, v2x = b.q, v2y = b.p;
    long long D = v1x * v2y - v1y * v2x; // -det(a,b)
    if (D == 0) return 0;                // parallel: isotopic, no transverse points
    auto mag = [](long long x) { return x < 0 ? -x : x; };
    long long window = mag(v1x) + mag(v1y) + mag(v2x) + mag(v2y);
    long long hits = 0;
    for (long long m = -window; m <= window; ++m)
        for (long long n = -window; n <= window; ++n) {
            // (m,n) = t*v1 - u*v2 with t,u in [0,1)
            long long tn = m * v2y - n * v2x; // t = tn / D
            long long un = m * v1y - n * v1x; // u = un / D
            auto in_unit = [&](long long num) {
                return D > 0 ? (num >= 0 && num < D) : (num <= 0 && num > D);
            };
            if (in_unit(tn) && in_unit(un)) ++hits;
        }
    return hits;
}

TEST_CASE("slope intersection against the line-counting oracle") {
    CHECK(slope_intersection({1, 1}, Slope(0, 1), Slope(1, 0)) == 1);
    CHECK(slope_intersection({1, 1}, Slope(1, 2), Slope(1, 2)) == 0);
    CHECK(slope_intersection({0, 4}, Slope(0, 1), Slope(1, 0)) == 2);

    std::mt19937 rng(7);
    std::uniform_int_distribution<long long> d(-9, 9);
    for (int i = 0; i < 200; ++i) {
        long long p = d(rng), q = d(rng), r = d(rng), s = d(rng);
        if ((p == 0 && q == 0) || (r == 0 && s == 0)) continue;
        Slope a(p, q), b(r, s);
        long long oracle = torus_line_intersections(a, b);
        CHECK(slope_intersection({1, 1}, a, b) == oracle);
        CHECK(slope_intersection({0, 4}, a, b) == 2 * oracle);
    }
    CHECK_THROWS_AS(slope_intersection({2, 0}, Slope(0, 1), Slope(1, 0)), Error);
}

TEST_CASE("elementary moves") {
    CHECK(is_elementary_move({1, 1}, Slope(0, 1), Slope(1, 1)));
    CHECK_FALSE(is_elementary_move({0, 4}, Slope(0, 1), Slope(2, 1)));
    CHECK_FALSE(is_elementary_move({1, 1}, Slope(3, 5), Slope(3, 5)));
    CHECK(is_elementary_move({0, 4}, Slope(0, 1), Slope(1, 0)));
}

TEST_CASE("slope intersection symmetry and vanishing") {
    auto slopes = farey_slopes(6);
    for (const Slope& a : slopes)
        for (const Slope& b : slopes) {
            CHECK(slope_intersection({1, 1}, a, b) == slope_intersection({1, 1}, b, a));
            CHECK((slope_intersection({1, 1}, a, b) == 0) == (a == b));
        }
}

TEST_CASE("farey triangles: serial equals parallel, and they are triangles") {
    auto serial = farey_triangles_serial(10);
    auto parallel = farey_triangles_parallel(10);
    CHECK(serial == parallel);
    CHECK_FALSE(serial.empty());
    for (const auto& t : serial) {
        CHECK(is_elementary_move({1, 1}, t.a, t.b));
        CHECK(is_elementary_move({1, 1}, t.b, t.c));
        CHECK(is_elementary_move({1, 1}, t.a, t.c));
    }
}

TEST_CASE("farey triangle completions") {
    auto z = farey_triangle_completions(Slope(0, 1), Slope(1, 0));
    REQUIRE(z.size() == 2);
    CHECK(z[0] == Slope(-1, 1));
    CHECK(z[1] == Slope(1, 1));
}

TEST_CASE("04 pairing classes") {
    CHECK(slope_pairing_s04(Slope(0, 1)) == std::pair{std::pair{1, 2}, std::pair{3, 4}});
    CHECK(slope_pairing_s04(Slope(1, 0)) == std::pair{std::pair{1, 3}, std::pair{2, 4}});
    CHECK(slope_pairing_s04(Slope(1, 1)) == std::pair{std::pair{1, 4}, std::pair{2, 3}});
    CHECK(slope_pairing_s04(Slope(3, 5)) == std::pair{std::pair{1, 4}, std::pair{2, 3}});
}

TEST_CASE("surface parsing") {
    CHECK(parse_surface("(2,0)") == SurfaceType{2, 0});
    CHECK_THROWS_AS(parse_surface("2,0"), Error);
    CHECK(parse_support_kind("(0,5)") == SupportKind::S05);
    CHECK_THROWS_AS(parse_support_kind("(2,0)"), Error);
}
