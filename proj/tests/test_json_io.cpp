#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lpmink/json_io.hpp"
#include "lpmink/selftest.hpp"

using namespace lpmink;

TEST_CASE("polytope JSON round trip") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 8; ++trial) {
        Polytope P = detail::random_polytope3(rng);
        json j = to_json(P);
        Polytope Q = polytope_from_json(j);
        REQUIRE(Q.vertices().size() == P.vertices().size());
        REQUIRE(Q.facets().size() == P.facets().size());
        CHECK(Q.volume() == Catch::Approx(P.volume()).epsilon(1e-12));
        // second serialization is byte-identical (determinism)
        CHECK(to_json(Q).dump() == j.dump());
    }
}

TEST_CASE("polytope JSON rejects malformed input") {
    CHECK_THROWS_AS(polytope_from_json(json::parse(R"({"vertices": []})")), SchemaError);
    CHECK_THROWS_AS(polytope_from_json(json::parse(R"({"dim": 4, "facets": []})")), SchemaError);
    CHECK_THROWS_AS(polytope_from_json(json::parse(R"({"dim": 3, "facets": []})")), SchemaError);
    CHECK_THROWS_AS(
        polytope_from_json(json::parse(
            R"({"dim": 3, "facets": [{"normal": [1, 0], "h": 1}]})")),
        SchemaError);
    // listed vertex that is not a vertex of the body
    json j = to_json(Polytope::box(3, {-1, -1, -1}, {1, 1, 1}));
    j["vertices"][0] = {0.5, 0.5, 0.5};
    CHECK_THROWS_AS(polytope_from_json(j), SchemaError);
}

TEST_CASE("measure JSON round trip") {
    Polytope P = Polytope::box(3, {-1, -1, -1}, {1, 1, 1});
    DiscreteMeasure m = P.lp_area_measure(0.5);
    json j = to_json(m, 3);
    DiscreteMeasure back = measure_from_json(j, 3);
    REQUIRE(back.atoms.size() == m.atoms.size());
    for (size_t i = 0; i < m.atoms.size(); ++i) {
        CHECK(back.atoms[i].w == m.atoms[i].w);
        CHECK(dist(back.atoms[i].u, m.atoms[i].u) == 0.0);
    }
}

TEST_CASE("problem JSON round trip and validation") {
    LpProblem prob;
    prob.dim = 2;
    prob.p = -0.5;
    for (int i = 0; i < 5; ++i) {
        double th = 2.0 * M_PI * i / 5.0;
        prob.normals.push_back({std::cos(th), std::sin(th), 0.0});
        prob.targets.push_back(1.0 + 0.1 * i);
    }
    json j = to_json(prob);
    LpProblem back = problem_from_json(j);
    CHECK(back.dim == 2);
    CHECK(back.p == -0.5);
    REQUIRE(back.targets.size() == 5);
    for (size_t i = 0; i < 5; ++i) CHECK(back.targets[i] == prob.targets[i]);

    // invalid problems are schema errors, not crashes
    json bad = j;
    bad["p"] = 1.5;
    CHECK_THROWS_AS(problem_from_json(bad), SchemaError);
    bad = j;
    bad["atoms"][0]["f"] = -1.0;
    CHECK_THROWS_AS(problem_from_json(bad), SchemaError);
}

TEST_CASE("PL function JSON round trip") {
    PLConvexFunction v(PLDomain::rectangle(-2, 2, -2, 2),
                       {{{1, 1}, 0}, {{1, -1}, 0}, {{-1, 1}, 0}, {{-1, -1}, 0}});
    json j = to_json(v);
    PLConvexFunction back = pl_function_from_json(j);
    CHECK(back.pieces().size() == v.pieces().size());
    CHECK(back.point_mass({0, 0}) == Catch::Approx(4.0));

    PLConvexFunction line(PLDomain::interval(-1, 1), {{{1, 0}, 0}, {{-1, 0}, 0}});
    PLConvexFunction lback = pl_function_from_json(to_json(line));
    CHECK(lback.domain().dim == 1);
    CHECK(lback.point_mass({0, 0}) == Catch::Approx(2.0));

    CHECK_THROWS_AS(pl_function_from_json(json::parse(R"({"domain": [[0,0],[1,0],[0,1]]})")),
                    SchemaError);
    CHECK_THROWS_AS(
        pl_function_from_json(json::parse(R"({"domain": [0, 1], "pieces": [{"a": [1, 2], "b": 0}]})")),
        SchemaError);
}

TEST_CASE("solve result JSON carries the full record") {
    LpProblem prob;
    prob.dim = 2;
    prob.p = 0.0;
    for (int i = 0; i < 4; ++i) {
        double th = M_PI * i / 2.0;
        prob.normals.push_back({std::cos(th), std::sin(th), 0.0});
        prob.targets.push_back(2.0);
    }
    SolveResult res = solve(prob);
    REQUIRE(res.converged);
    json j = to_json(res, prob);
    CHECK(j.at("converged").get<bool>());
    CHECK(j.at("h").size() == 4);
    CHECK(j.contains("polytope"));
    CHECK(j.at("problem").at("atoms").size() == 4);
    // emitted JSON re-parses under the same schema
    REQUIRE_NOTHROW(polytope_from_json(j.at("polytope")));
    REQUIRE_NOTHROW(problem_from_json(j.at("problem")));
}
