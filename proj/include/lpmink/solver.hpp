#pragma once

// Fixed-point solver for the discrete L_p Minkowski problem with p < 1:
// given unit normals u_i and positive targets f_i, find support numbers h_i
// such that the polytope P(h) satisfies h_i^(1-p) A_i(h) = f_i, where A_i is
// the area of the facet with normal u_i.
//
// The iteration is the damped multiplicative update
//     h_i <- h_i * (f_i / (h_i^(1-p) A_i(h)))^(gamma / (n - p)),
// started from h = 1.  A facet whose area drops to zero is pulled back just
// inside the hull of its neighbours before the next step.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpmink/geom.hpp"
#include "lpmink/polytope.hpp"

namespace lpmink {

struct LpProblem {
    int dim = 3;
    double p = 0.0;
    std::vector<Vec3> normals;   // distinct unit vectors, positively spanning
    std::vector<double> targets; // strictly positive weights f_i

    void validate() const {
        if (dim != 2 && dim != 3) throw std::invalid_argument("problem: dim must be 2 or 3");
        if (!(p < 1.0)) throw std::invalid_argument("problem: requires p < 1");
        if (normals.size() != targets.size() || normals.size() < static_cast<size_t>(dim) + 1)
            throw std::invalid_argument("problem: need at least dim+1 normal/target pairs");
        for (size_t i = 0; i < normals.size(); ++i) {
            if (std::abs(norm(normals[i]) - 1.0) > 1e-9)
                throw std::invalid_argument("problem: normals must be unit vectors");
            if (dim == 2 && std::abs(normals[i][2]) > 1e-12)
                throw std::invalid_argument("problem: 2-d normals must have zero z");
            if (!(targets[i] > 0.0))
                throw std::invalid_argument("problem: targets must be positive");
            for (size_t j = i + 1; j < normals.size(); ++j)
                if (angle_between(normals[i], normals[j]) < kAngularTol)
                    throw std::invalid_argument("problem: duplicate normals");
        }
        if (!origin_in_hull_interior(dim, normals))
            throw std::invalid_argument("problem: normals do not span positively");
    }
};

struct SolveOptions {
    double tol = 1e-8;       // convergence threshold on max |residual|
    int max_iter = 500;
    double damping = 1.0;    // gamma in the update exponent gamma/(n-p)
    double boundary_tol = 1e-9;  // h_i below boundary_tol * max h flags a boundary touch
};

struct SolveResult {
    bool converged = false;
    int iterations = 0;
    double max_residual = 0.0;
    bool origin_near_boundary = false;
    std::vector<double> h;
    std::vector<double> residuals;        // h_i^(1-p) A_i / f_i - 1 at the final iterate
    std::vector<double> residual_history; // max |residual| per iteration
    std::optional<Polytope> polytope;     // absent when the final iterate is degenerate
    std::string message;
};

// Residuals of an explicit polytope against a problem.  Facets are matched
// to problem normals by angle; any unmatched facet or missing normal with
// nonzero target area is an error.
inline std::vector<double> residuals(const Polytope& P, const LpProblem& prob) {
    prob.validate();
    if (P.dim() != prob.dim) throw std::invalid_argument("residuals: dimension mismatch");
    std::vector<double> rho(prob.normals.size());
    std::vector<char> used(P.facets().size(), 0);
    for (size_t i = 0; i < prob.normals.size(); ++i) {
        int match = -1;
        for (size_t k = 0; k < P.facets().size(); ++k)
            if (!used[k] && angle_between(P.facets()[k].normal, prob.normals[i]) < kAngularTol) {
                match = static_cast<int>(k);
                break;
            }
        if (match < 0) throw std::invalid_argument("residuals: polytope lacks a facet for a target normal");
        used[match] = 1;
        const Facet& f = P.facets()[match];
        rho[i] = std::pow(f.h, 1.0 - prob.p) * f.area / prob.targets[i] - 1.0;
    }
    for (char u : used)
        if (!u) throw std::invalid_argument("residuals: polytope has a facet outside the target normals");
    return rho;
}

inline SolveResult solve(const LpProblem& prob, const SolveOptions& opts = {}) {
    prob.validate();
    if (!(opts.tol > 0.0) || opts.max_iter < 1 || !(opts.damping > 0.0) || opts.damping > 1.0)
        throw std::invalid_argument("solve: bad options");
    const int n = prob.dim;
    const size_t m = prob.normals.size();
    const double expo = opts.damping / (static_cast<double>(n) - prob.p);

    SolveResult out;
    out.h.assign(m, 1.0);
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        out.iterations = iter;
        std::vector<double> area = facet_areas(n, prob.normals, out.h);

        bool revived = false;
        for (size_t i = 0; i < m; ++i) {
            if (area[i] > 0.0) continue;
            // facet i has been cut away: place it just inside the hull the
            // remaining facets generate, so it reappears with a small area
            double eff = -std::numeric_limits<double>::infinity();
            auto verts = detail::enumerate_vertices(n, prob.normals, out.h);
            for (const auto& z : verts) eff = std::max(eff, dot(prob.normals[i], z));
            if (!std::isfinite(eff)) {
                out.message = "iterate degenerated to an empty body";
                return out;
            }
            out.h[i] = eff * (1.0 - 1e-6);
            revived = true;
        }
        if (revived) {
            out.residual_history.push_back(out.residual_history.empty()
                                               ? std::numeric_limits<double>::infinity()
                                               : out.residual_history.back());
            continue;
        }

        double worst = 0.0;
        std::vector<double> rho(m);
        for (size_t i = 0; i < m; ++i) {
            rho[i] = std::pow(out.h[i], 1.0 - prob.p) * area[i] / prob.targets[i] - 1.0;
            worst = std::max(worst, std::abs(rho[i]));
        }
        if (!std::isfinite(worst)) {
            out.message = "iteration diverged (non-finite residual)";
            out.residual_history.push_back(worst);
            out.residuals = rho;
            out.max_residual = worst;
            break;
        }
        out.residual_history.push_back(worst);
        out.residuals = rho;
        out.max_residual = worst;
        if (worst <= opts.tol) {
            out.converged = true;
            break;
        }
        for (size_t i = 0; i < m; ++i) out.h[i] *= std::pow(1.0 / (rho[i] + 1.0), expo);
        for (size_t i = 0; i < m; ++i)
            if (!std::isfinite(out.h[i]) || !(out.h[i] > 0.0)) {
                out.message = "iteration diverged (support numbers left the positive cone)";
                return out;
            }
    }

    double hmax = *std::max_element(out.h.begin(), out.h.end());
    double hmin = *std::min_element(out.h.begin(), out.h.end());
    out.origin_near_boundary = hmin < opts.boundary_tol * hmax;
    try {
        out.polytope = Polytope::from_halfspaces(n, prob.normals, out.h);
    } catch (const std::exception& e) {
        out.polytope.reset();
        if (out.message.empty()) out.message = std::string("final iterate rejected: ") + e.what();
    }
    if (!out.converged && out.message.empty())
        out.message = "iteration limit reached before the residual dropped below tol";
    return out;
}

// ---------------------------------------------------------------------------
// Independent closed-form solutions for special target families, used as
// oracles against the iterative solver.  Returns nullopt when the problem is
// not in a supported family.

namespace detail {

// strictly monotone scalar root find by bisection on [lo, hi]
template <class F>
double bisect(F f, double lo, double hi, double tol) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw std::runtime_error("bisect: no sign change");
    for (int k = 0; k < 200 && hi - lo > tol * std::max(1.0, std::abs(lo)); ++k) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        ((fm > 0.0) == (flo > 0.0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

inline std::optional<Polytope> oracle_small(const LpProblem& prob) {
    prob.validate();
    const int n = prob.dim;
    const size_t m = prob.normals.size();

    // axis-aligned box family: normals are exactly +-e_a
    if (m == 2 * static_cast<size_t>(n)) {
        std::vector<double> fplus(n, -1.0), fminus(n, -1.0);
        bool axes = true;
        for (size_t i = 0; i < m && axes; ++i) {
            const Vec3& u = prob.normals[i];
            int axis = -1;
            for (int a = 0; a < n; ++a)
                if (std::abs(std::abs(u[a]) - 1.0) < 1e-12) axis = a;
            if (axis < 0) { axes = false; break; }
            for (int a = 0; a < 3; ++a)
                if (a != axis && std::abs(u[a]) > 1e-12) axes = false;
            (u[axis] > 0 ? fplus : fminus)[axis] = prob.targets[i];
        }
        if (axes) {
            for (int a = 0; a < n; ++a)
                if (fplus[a] < 0 || std::abs(fplus[a] - fminus[a]) > 1e-12 * fplus[a])
                    return std::nullopt;  // asymmetric box has no centred closed form
            const double twon1 = std::pow(2.0, n - 1);
            std::vector<double> half(n);
            if (prob.p == 0.0) {
                // p = 0: the system only pins the volume; every box with
                // V = f/2^(n-1) solves it when all targets agree -- return
                // the cube representative
                for (int a = 1; a < n; ++a)
                    if (std::abs(fplus[a] - fplus[0]) > 1e-12 * fplus[0]) return std::nullopt;
                double vol = fplus[0] / twon1;
                half.assign(n, std::pow(vol, 1.0 / n));
            } else {
                auto gap = [&](double logV) {
                    double s = 0.0;  // log prod a_i(V) - log V, strictly monotone
                    for (int a = 0; a < n; ++a)
                        s += (std::log(twon1) + logV - std::log(fplus[a])) / prob.p;
                    return s - logV;
                };
                double logV = detail::bisect(gap, -60.0, 60.0, 1e-14);
                for (int a = 0; a < n; ++a)
                    half[a] = std::pow(twon1 * std::exp(logV) / fplus[a], 1.0 / prob.p);
            }
            Vec3 lo{0, 0, 0}, hi{0, 0, 0};
            for (int a = 0; a < n; ++a) { lo[a] = -half[a]; hi[a] = half[a]; }
            return Polytope::box(n, lo, hi);
        }
    }

    // regular k-gon family in the plane: equal angular gaps, equal targets
    if (n == 2 && m >= 3) {
        std::vector<double> ang(m);
        for (size_t i = 0; i < m; ++i) ang[i] = std::atan2(prob.normals[i][1], prob.normals[i][0]);
        std::sort(ang.begin(), ang.end());
        bool regular = true;
        const double step = 2.0 * M_PI / m;
        for (size_t i = 0; i < m; ++i) {
            double gap = (i + 1 < m ? ang[i + 1] - ang[i] : ang[0] + 2.0 * M_PI - ang[m - 1]);
            if (std::abs(gap - step) > 1e-9) regular = false;
        }
        for (size_t i = 1; i < m; ++i)
            if (std::abs(prob.targets[i] - prob.targets[0]) > 1e-12 * prob.targets[0])
                regular = false;
        if (regular) {
            // each edge of the circumscribed regular k-gon has length
            // 2 h tan(pi/k), so h solves h^(1-p) * 2 h tan(pi/k) = f
            double t = 2.0 * std::tan(M_PI / m);
            double f = prob.targets[0];
            auto g = [&](double logh) { return (2.0 - prob.p) * logh + std::log(t) - std::log(f); };
            double hval = std::exp(detail::bisect(g, -60.0, 60.0, 1e-14));
            std::vector<double> h(m, hval);
            return Polytope::from_halfspaces(2, prob.normals, h);
        }
    }

    return std::nullopt;
}

}  // namespace lpmink
