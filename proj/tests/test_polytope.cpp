#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lpmink/polytope.hpp"
#include "lpmink/selftest.hpp"

using namespace lpmink;

TEST_CASE("cube from halfspaces") {
    Polytope P = Polytope::box(3, {-1, -1, -1}, {1, 1, 1});
    REQUIRE(P.dim() == 3);
    REQUIRE(P.vertices().size() == 8);
    REQUIRE(P.facets().size() == 6);
    for (const auto& f : P.facets()) {
        CHECK(f.area == Catch::Approx(4.0).margin(1e-12));
        CHECK(f.h == Catch::Approx(1.0).margin(1e-12));
        CHECK(f.vertex_ids.size() == 4);
    }
    CHECK(P.volume() == Catch::Approx(8.0).margin(1e-12));
    CHECK(P.diameter() == Catch::Approx(2.0 * std::sqrt(3.0)).margin(1e-12));
}

TEST_CASE("support function and faces of the cube") {
    Polytope P = Polytope::box(3, {-1, -1, -1}, {1, 1, 1});
    CHECK(P.support({1, 0, 0}) == Catch::Approx(1.0));
    CHECK(P.support({2, 0, 0}) == Catch::Approx(2.0));  // 1-homogeneous
    Vec3 diag = normalized({1, 1, 1});
    CHECK(P.support(diag) == Catch::Approx(std::sqrt(3.0)));

    CHECK(P.face({1, 0, 0}).dim == 2);
    CHECK(P.face({1, 0, 0}).measure() == Catch::Approx(4.0));
    CHECK(P.face({1, 1, 0}).dim == 1);  // edge
    CHECK(P.face({1, 1, 0}).measure() == Catch::Approx(2.0));
    CHECK(P.face(diag).dim == 0);  // vertex
}

TEST_CASE("octahedron from eight diagonal halfspaces") {
    std::vector<Vec3> normals;
    std::vector<double> h;
    double s = 1.0 / std::sqrt(3.0);
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) {
                normals.push_back({sx * s, sy * s, sz * s});
                h.push_back(s);
            }
    Polytope P = Polytope::from_halfspaces(3, normals, h);
    REQUIRE(P.vertices().size() == 6);  // +-e_i
    REQUIRE(P.facets().size() == 8);
    CHECK(P.volume() == Catch::Approx(4.0 / 3.0).margin(1e-12));
    for (const auto& f : P.facets())
        CHECK(f.area == Catch::Approx(std::sqrt(3.0) / 2.0).margin(1e-12));
}

TEST_CASE("2-d polygon geometry") {
    Polytope Sq = Polytope::box(2, {-1, -2, 0}, {1, 2, 0});
    REQUIRE(Sq.vertices().size() == 4);
    REQUIRE(Sq.facets().size() == 4);
    CHECK(Sq.volume() == Catch::Approx(8.0));
    CHECK(Sq.support({0, 1, 0}) == Catch::Approx(2.0));
    // edge "areas" are lengths
    for (const auto& f : Sq.facets()) {
        double want = std::abs(f.normal[0]) > 0.5 ? 4.0 : 2.0;
        CHECK(f.area == Catch::Approx(want));
    }

    // regular pentagon
    std::vector<Vec3> normals;
    std::vector<double> h;
    for (int i = 0; i < 5; ++i) {
        double th = 2.0 * M_PI * i / 5.0;
        normals.push_back({std::cos(th), std::sin(th), 0.0});
        h.push_back(1.0);
    }
    Polytope Pent = Polytope::from_halfspaces(2, normals, h);
    REQUIRE(Pent.vertices().size() == 5);
    double edge = 2.0 * std::tan(M_PI / 5.0);
    for (const auto& f : Pent.facets()) CHECK(f.area == Catch::Approx(edge));
    CHECK(Pent.volume() == Catch::Approx(5.0 * std::tan(M_PI / 5.0)));
}

TEST_CASE("surface area measure is closed") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        Polytope P = detail::random_polytope3(rng);
        DiscreteMeasure m = P.surface_area_measure();
        CHECK(norm(m.weighted_normal_sum()) <= 1e-9 * m.total());
        CHECK(m.total() > 0.0);
    }
}

TEST_CASE("lp area measure") {
    Polytope P = Polytope::box(3, {-1, -1, -1}, {1, 1, 1});
    DiscreteMeasure m0 = P.lp_area_measure(0.0);
    CHECK(m0.total() == Catch::Approx(24.0));  // h * A = 4 per facet
    DiscreteMeasure mneg = P.lp_area_measure(-1.0);
    CHECK(mneg.total() == Catch::Approx(24.0));  // h^2 A = 4 since h = 1
    CHECK_THROWS_AS(P.lp_area_measure(1.0), std::invalid_argument);

    // origin on a facet: that facet's weight is zero for p < 1
    Polytope Q = Polytope::box(3, {0, -1, -1}, {2, 1, 1});
    DiscreteMeasure mq = Q.lp_area_measure(0.5);
    double zero_normal_weight = -1.0;
    for (const auto& a : mq.atoms)
        if (a.u[0] < -0.5) zero_normal_weight = a.w;
    CHECK(zero_normal_weight == 0.0);
}

TEST_CASE("normal cones") {
    Polytope P = Polytope::box(3, {-1, -1, -1}, {1, 1, 1});
    CHECK(P.normal_cone({0, 0, 0}).dim == 0);               // interior
    CHECK(P.normal_cone({1, 0, 0}).dim == 1);               // facet point
    CHECK(P.normal_cone({1, 1, 0}).dim == 2);               // edge point
    Cone corner = P.normal_cone({1, 1, 1});
    CHECK(corner.dim == 3);
    CHECK(corner.contains(normalized({1, 1, 1})));
    CHECK_FALSE(corner.contains({-1, 0, 0}));

    Polytope Q = Polytope::box(3, {0, 0, 0}, {2, 2, 2});
    CHECK(Q.normal_cone({0, 0, 0}).dim == 3);  // origin at a corner
}

TEST_CASE("containment and redundant halfspaces") {
    std::vector<Vec3> normals{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                              {0, -1, 0}, {0, 0, 1}, {0, 0, -1},
                              normalized({1, 1, 1})};
    std::vector<double> h{1, 1, 1, 1, 1, 1, 10.0};  // last plane never binds
    Polytope P = Polytope::from_halfspaces(3, normals, h);
    CHECK(P.facets().size() == 6);  // dead facet dropped from the body
    CHECK(P.contains({0.5, 0.5, 0.5}));
    CHECK_FALSE(P.contains({1.5, 0, 0}));

    // but facet_areas still reports per input normal, zero for the dead one
    auto areas = facet_areas(3, normals, h);
    REQUIRE(areas.size() == 7);
    CHECK(areas[6] == 0.0);
    for (int i = 0; i < 6; ++i) CHECK(areas[i] == Catch::Approx(4.0));
}

TEST_CASE("unbounded or empty input is rejected") {
    // missing the -x halfspace: unbounded
    std::vector<Vec3> normals{{1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    std::vector<double> h{1, 1, 1, 1, 1};
    CHECK_THROWS(Polytope::from_halfspaces(3, normals, h));
    // non-unit normal
    CHECK_THROWS(Polytope::from_halfspaces(3, {{2, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                                               {0, -1, 0}, {0, 0, 1}, {0, 0, -1}},
                                           {1, 1, 1, 1, 1, 1}));
}

TEST_CASE("positive spanning test") {
    std::vector<Vec3> box{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    CHECK(origin_in_hull_interior(3, box));
    std::vector<Vec3> half{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, normalized({1, 1, 1})};
    CHECK_FALSE(origin_in_hull_interior(3, half));
    std::vector<Vec3> tri2{{1, 0, 0}, {-0.5, std::sqrt(3.0) / 2.0, 0}, {-0.5, -std::sqrt(3.0) / 2.0, 0}};
    CHECK(origin_in_hull_interior(2, tri2));
    CHECK_FALSE(origin_in_hull_interior(2, {{1, 0, 0}, {0, 1, 0}, normalized({1, 1, 0})}));
}

TEST_CASE("cone membership via nonnegative combinations") {
    std::vector<Vec3> gens{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(cone_contains(gens, normalized({1, 2, 3})));
    CHECK(cone_contains(gens, {0, 0, 0}));
    CHECK_FALSE(cone_contains(gens, {-1, 0, 0}));
    CHECK_FALSE(cone_contains(gens, normalized({1, 1, -0.2})));
}

TEST_CASE("round-trip validation on random bodies") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 15; ++trial) {
        Polytope P = detail::random_polytope3(rng, 10);
        REQUIRE_NOTHROW(P.validate());
        // support consistency: every facet's h equals the support value
        for (const auto& f : P.facets())
            CHECK(P.support(f.normal) == Catch::Approx(f.h).margin(1e-9 * (1.0 + P.diameter())));
    }
}

TEST_CASE("measure validation rejects bad data") {
    DiscreteMeasure m;
    m.atoms.push_back({{1, 0, 0}, 1.0});
    m.atoms.push_back({{-1, 0, 0}, -0.5});
    CHECK_THROWS(m.validate());
}
