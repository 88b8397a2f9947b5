#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lpmink/solver.hpp"

using namespace lpmink;

namespace {

LpProblem box_problem(int n, double p, double a, double b, double c) {
    // forward-compute the targets of the centred box with half-widths (a,b,c)
    LpProblem prob;
    prob.dim = n;
    prob.p = p;
    std::vector<double> half{a, b, c};
    for (int axis = 0; axis < n; ++axis) {
        double area = 1.0;
        for (int other = 0; other < n; ++other)
            if (other != axis) area *= 2.0 * half[other];
        double f = std::pow(half[axis], 1.0 - p) * area;
        for (double s : {1.0, -1.0}) {
            Vec3 u{0, 0, 0};
            u[axis] = s;
            prob.normals.push_back(u);
            prob.targets.push_back(f);
        }
    }
    return prob;
}

LpProblem kgon_problem(int k, double p, double f) {
    LpProblem prob;
    prob.dim = 2;
    prob.p = p;
    for (int i = 0; i < k; ++i) {
        double th = 2.0 * M_PI * i / k;
        prob.normals.push_back({std::cos(th), std::sin(th), 0.0});
        prob.targets.push_back(f);
    }
    return prob;
}

}  // namespace

TEST_CASE("problem validation") {
    LpProblem good = box_problem(3, 0.0, 1, 1, 1);
    REQUIRE_NOTHROW(good.validate());

    LpProblem bad = good;
    bad.p = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = good;
    bad.targets[0] = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = good;  // drop a halfspace: no longer positively spanning
    bad.normals.erase(bad.normals.begin());
    bad.targets.erase(bad.targets.begin());
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = good;
    bad.normals[0] = bad.normals[1];  // duplicate
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("residuals of an explicit body") {
    Polytope cube = Polytope::box(3, {-1, -1, -1}, {1, 1, 1});
    LpProblem prob = box_problem(3, 0.0, 1, 1, 1);  // targets 4 each
    auto rho = residuals(cube, prob);
    for (double r : rho) CHECK(r == Catch::Approx(0.0).margin(1e-14));

    LpProblem doubled = prob;
    for (double& f : doubled.targets) f *= 2.0;
    for (double r : residuals(cube, doubled)) CHECK(r == Catch::Approx(-0.5));

    // monotonicity probe: growing one support number raises its residual
    Polytope bigger = Polytope::box(3, {-1, -1, -1}, {1.1, 1, 1});
    auto rho2 = residuals(bigger, prob);
    for (size_t i = 0; i < prob.normals.size(); ++i)
        if (prob.normals[i][0] > 0.5) CHECK(rho2[i] > 0.0);

    LpProblem mismatched = prob;
    mismatched.normals.pop_back();
    mismatched.targets.pop_back();
    CHECK_THROWS_AS(residuals(cube, mismatched), std::invalid_argument);
}

TEST_CASE("solver: cube instance with p = 0") {
    LpProblem prob = box_problem(3, 0.0, 1, 1, 1);
    SolveResult res = solve(prob);
    REQUIRE(res.converged);
    CHECK(res.max_residual <= 1e-8);
    for (double h : res.h) CHECK(h == Catch::Approx(1.0).margin(1e-8));
    REQUIRE(res.polytope.has_value());
    REQUIRE_NOTHROW(res.polytope->validate());
}

TEST_CASE("solver: anisotropic box with p = -1 recovers (1, 2, 0.5)") {
    LpProblem prob = box_problem(3, -1.0, 1.0, 2.0, 0.5);
    SolveResult res = solve(prob);
    REQUIRE(res.converged);
    std::vector<double> want{1.0, 1.0, 2.0, 2.0, 0.5, 0.5};
    for (size_t i = 0; i < res.h.size(); ++i)
        CHECK(std::abs(res.h[i] - want[i]) <= 1e-6 * want[i]);
}

TEST_CASE("solver: regular polygons") {
    for (int k : {8, 12}) {
        LpProblem prob = kgon_problem(k, 0.5, 1.7);
        SolveResult res = solve(prob);
        REQUIRE(res.converged);
        auto oracle = oracle_small(prob);
        REQUIRE(oracle.has_value());
        double h_oracle = oracle->support(prob.normals[0]);
        for (double h : res.h) CHECK(std::abs(h - h_oracle) <= 1e-8 * h_oracle);
    }
}

TEST_CASE("solver: residual history is monotone over the tail") {
    LpProblem prob = box_problem(3, -1.0, 1.0, 2.0, 0.5);
    SolveResult res = solve(prob);
    REQUIRE(res.converged);
    size_t start = res.residual_history.size() / 10;
    for (size_t i = start + 1; i < res.residual_history.size(); ++i)
        CHECK(res.residual_history[i] <= res.residual_history[i - 1] * (1.0 + 1e-12));
}

TEST_CASE("solver: unstable anisotropic instance reports divergence honestly") {
    // for p in (0,1) the multiplicative update repels anisotropic fixed
    // points; the solver must fail loudly, not silently
    LpProblem prob = box_problem(3, 0.5, 1.0, 2.0, 0.5);
    SolveResult res = solve(prob);
    CHECK_FALSE(res.converged);
    CHECK_FALSE(res.message.empty());
}

TEST_CASE("oracle: box family") {
    auto prob = box_problem(3, 0.5, 1.0, 2.0, 0.5);
    auto P = oracle_small(prob);
    REQUIRE(P.has_value());
    CHECK(P->support({1, 0, 0}) == Catch::Approx(1.0).epsilon(1e-10));
    CHECK(P->support({0, 1, 0}) == Catch::Approx(2.0).epsilon(1e-10));
    CHECK(P->support({0, 0, 1}) == Catch::Approx(0.5).epsilon(1e-10));
    for (double r : residuals(*P, prob)) CHECK(std::abs(r) < 1e-9);

    auto prob2 = box_problem(2, -1.0, 0.7, 1.3, 0.0);
    auto Q = oracle_small(prob2);
    REQUIRE(Q.has_value());
    CHECK(Q->support({1, 0, 0}) == Catch::Approx(0.7).epsilon(1e-10));
    CHECK(Q->support({0, 1, 0}) == Catch::Approx(1.3).epsilon(1e-10));

    // p = 0 constrains only the volume; the oracle returns the cube
    auto prob0 = box_problem(3, 0.0, 1.0, 2.0, 0.5);
    auto C = oracle_small(prob0);
    REQUIRE(C.has_value());
    CHECK(C->support({1, 0, 0}) == Catch::Approx(1.0).epsilon(1e-10));
    CHECK(C->volume() == Catch::Approx(8.0 * 1.0 * 2.0 * 0.5).epsilon(1e-10));
}

TEST_CASE("oracle: regular polygons and unsupported inputs") {
    LpProblem prob = kgon_problem(8, 0.0, 2.0);
    auto P = oracle_small(prob);
    REQUIRE(P.has_value());
    // h * edge(h) = f with edge = 2 h tan(pi/8)
    double h = P->support(prob.normals[0]);
    CHECK(h * 2.0 * h * std::tan(M_PI / 8.0) == Catch::Approx(2.0).epsilon(1e-10));

    // irregular normals: unsupported
    LpProblem irr;
    irr.dim = 2;
    irr.p = 0.0;
    double ths[4] = {0.0, 1.3, 3.0, 4.9};
    for (double th : ths) {
        irr.normals.push_back({std::cos(th), std::sin(th), 0.0});
        irr.targets.push_back(1.0);
    }
    CHECK_FALSE(oracle_small(irr).has_value());
}

TEST_CASE("scaling covariance on the octagon") {
    LpProblem prob = kgon_problem(8, 0.5, 1.0);
    SolveResult base = solve(prob);
    LpProblem scaled = prob;
    for (double& f : scaled.targets) f *= 3.0;
    SolveResult up = solve(scaled);
    REQUIRE(base.converged);
    REQUIRE(up.converged);
    double want = std::pow(3.0, 1.0 / (2.0 - 0.5));
    for (size_t i = 0; i < base.h.size(); ++i)
        CHECK(up.h[i] / base.h[i] == Catch::Approx(want).epsilon(1e-6));
}
