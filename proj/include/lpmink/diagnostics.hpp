#pragma once

// Boundary-regularity diagnostics for a solution body K of the discrete
// L_p Minkowski problem with the origin allowed on the boundary.
//
// For a body K with o in K the report evaluates:
//   * zero_set_negligible:     dim N(K, o) < n
//   * density identity:        h_i^(1-p) A_i = f_i on facets with h_i > 0
//   * origin_cone_mass:        S_K(N(K,o) cap S^(n-1)), the total area of
//                              facets whose normal lies in N(K, o); the
//                              stricter regularity condition demands zero
//   * touching set X0:         union of the faces F(K, u) over unit
//                              u in N(K, o); closed under subfaces by
//                              construction
// plus verdicts for the structural bounds that a boundary origin must obey.

#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpmink/closed_forms.hpp"
#include "lpmink/geom.hpp"
#include "lpmink/polytope.hpp"
#include "lpmink/solver.hpp"

namespace lpmink {

enum class Verdict { Pass, Fail, NotApplicable };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "not_applicable";
    }
}

// hypothesis/conclusion pair for a conditional statement, with the numeric
// quantity the verdict was computed from
struct TheoremVerdict {
    Verdict hypothesis = Verdict::NotApplicable;
    Verdict conclusion = Verdict::NotApplicable;
    double metric = 0.0;
};

struct RegularityReport {
    bool origin_on_boundary = false;
    int normal_cone_dim = 0;           // dim N(K, o)
    std::vector<Vec3> normal_cone_generators;

    bool zero_set_negligible = false;  // dim N(K, o) < n
    double origin_cone_mass = 0.0;     // S_K(N(K,o) cap S^(n-1))
    bool origin_cone_mass_zero = false;

    // touching set X0 = union of F(K, u), u unit in N(K, o)
    std::vector<int> x0_facets;        // indices into P.facets()
    std::vector<Vec3> x0_vertices;     // every vertex lying in X0
    double x0_mass = 0.0;              // (n-1)-measure, equals origin_cone_mass

    // density residuals h_i^(1-p) A_i / f_i - 1 on facets with h_i > 0,
    // present only when a target problem is supplied
    std::optional<std::vector<double>> density_residuals;

    std::map<std::string, Verdict> verdicts;
};

inline RegularityReport diagnose(const Polytope& P, double p,
                                 const LpProblem* prob = nullptr,
                                 double density_tol = 1e-8) {
    if (!(p < 1.0)) throw std::invalid_argument("diagnose: requires p < 1");
    if (!P.contains({0, 0, 0})) throw std::domain_error("diagnose: origin outside the body");
    const int n = P.dim();

    RegularityReport rep;
    Cone nko = P.normal_cone({0, 0, 0});
    rep.normal_cone_dim = nko.dim;
    rep.normal_cone_generators = nko.generators;
    rep.origin_on_boundary = nko.dim > 0;
    rep.zero_set_negligible = nko.dim < n;

    // a facet F(K, u_f) lies in X0 exactly when its own normal belongs to
    // N(K, o); its area is then the S_K-mass the origin cone carries
    double total_area = 0.0;
    for (size_t k = 0; k < P.facets().size(); ++k) {
        const Facet& f = P.facets()[k];
        total_area += f.area;
        if (rep.origin_on_boundary && nko.contains(f.normal)) {
            rep.x0_facets.push_back(static_cast<int>(k));
            rep.origin_cone_mass += f.area;
        }
    }
    rep.x0_mass = rep.origin_cone_mass;
    rep.origin_cone_mass_zero = rep.origin_cone_mass <= 1e-12 * std::max(total_area, 1.0);

    // X0 vertices: faces F(K, u) over the cone directions, closed under
    // subfaces automatically because every vertex of a face is collected
    if (rep.origin_on_boundary) {
        std::set<std::array<long long, 3>> seen;
        auto collect = [&](const Vec3& u) {
            Face f = P.face(u);
            for (const auto& z : f.vertices) {
                std::array<long long, 3> key{};
                for (int a = 0; a < 3; ++a) key[a] = std::llround(z[a] / (1e-9 * (1.0 + P.diameter())));
                if (seen.insert(key).second) rep.x0_vertices.push_back(z);
            }
        };
        for (const auto& g : nko.generators) collect(g);
        // probe the relative interior of the cone as well
        std::mt19937_64 rng(0x51a3u);
        std::uniform_real_distribution<double> coef(0.05, 1.0);
        for (int trial = 0; trial < 64 && nko.generators.size() > 1; ++trial) {
            Vec3 u{0, 0, 0};
            for (const auto& g : nko.generators) u = add(u, scale(g, coef(rng)));
            if (norm(u) > 1e-12) collect(normalized(u));
        }
    }

    if (prob) {
        std::vector<double> rho = residuals(P, *prob);
        // keep only entries whose facet meets the origin-free part
        std::vector<double> kept;
        for (size_t i = 0; i < prob->normals.size(); ++i)
            if (P.support(prob->normals[i]) > 1e-12 * P.diameter()) kept.push_back(rho[i]);
        rep.density_residuals = kept;
        double worst = 0.0;
        for (double r : kept) worst = std::max(worst, std::abs(r));
        rep.verdicts["density_identity"] = worst <= density_tol ? Verdict::Pass : Verdict::Fail;
    } else {
        rep.verdicts["density_identity"] = Verdict::NotApplicable;
    }

    rep.verdicts["zero_set_negligible"] =
        rep.zero_set_negligible ? Verdict::Pass : Verdict::Fail;
    rep.verdicts["origin_cone_mass_zero"] =
        rep.origin_cone_mass_zero ? Verdict::Pass : Verdict::Fail;
    rep.verdicts["normal_cone_dim_bound"] =
        !rep.origin_on_boundary
            ? Verdict::NotApplicable
            : (static_cast<double>(rep.normal_cone_dim) < nko_bound(n) ? Verdict::Pass
                                                                       : Verdict::Fail);
    return rep;
}

// Conditional structural statements evaluated on a body.  The conclusion
// "the body is smooth" is never literally true for a polytope, so the
// conclusion verdict reports the raw data instead: metric carries the
// maximal normal-cone dimension over the vertices.
inline std::map<std::string, TheoremVerdict> theorem_verdicts(const Polytope& P, double p) {
    if (!(p < 1.0)) throw std::invalid_argument("theorem_verdicts: requires p < 1");
    const int n = P.dim();
    std::map<std::string, TheoremVerdict> out;

    Cone nko = P.normal_cone({0, 0, 0});
    int max_vertex_cone = 0;
    for (const auto& z : P.vertices())
        max_vertex_cone = std::max(max_vertex_cone, P.normal_cone(z).dim);

    {
        TheoremVerdict t;  // smoothness holds throughout the regime n<=3 or p<4-n
        t.hypothesis = smoothness_predicate(n, p) ? Verdict::Pass : Verdict::Fail;
        t.conclusion = Verdict::NotApplicable;
        t.metric = static_cast<double>(max_vertex_cone);
        out["smooth_regime"] = t;
    }
    {
        TheoremVerdict t;  // origin a smooth boundary point forces global smoothness
        t.hypothesis = (nko.dim == 1) ? Verdict::Pass
                       : nko.dim == 0 ? Verdict::NotApplicable
                                      : Verdict::Fail;
        t.conclusion = Verdict::NotApplicable;
        t.metric = static_cast<double>(nko.dim);
        out["origin_smooth_implies_body_smooth"] = t;
    }
    {
        TheoremVerdict t;  // null touching set forces global smoothness
        RegularityReport rep = diagnose(P, p);
        t.hypothesis = rep.origin_cone_mass_zero ? Verdict::Pass : Verdict::Fail;
        t.conclusion = Verdict::NotApplicable;
        t.metric = rep.x0_mass;
        out["x0_null_implies_body_smooth"] = t;
    }
    {
        TheoremVerdict t;  // boundary origin: dim N(K, o) < (n + 1)/2
        t.hypothesis = nko.dim > 0 ? Verdict::Pass : Verdict::NotApplicable;
        t.conclusion = nko.dim == 0 ? Verdict::NotApplicable
                       : static_cast<double>(nko.dim) < nko_bound(n) ? Verdict::Pass
                                                                     : Verdict::Fail;
        t.metric = static_cast<double>(nko.dim);
        out["normal_cone_dim_bound"] = t;
    }
    return out;
}

// For p <= 2 - n with strictly positive targets the origin must be interior
// with quantitative margin; not applicable outside that exponent range.
struct InteriorityCheck {
    Verdict verdict = Verdict::NotApplicable;
    double min_support = 0.0;      // min_i h_i of the body
    double margin_required = 0.0;  // 1e-6 * diameter
};

inline InteriorityCheck lemma_interiority(const Polytope& P, const LpProblem& prob) {
    prob.validate();
    InteriorityCheck out;
    if (!(prob.p <= 2.0 - static_cast<double>(prob.dim))) return out;
    out.min_support = std::numeric_limits<double>::infinity();
    for (const auto& f : P.facets()) out.min_support = std::min(out.min_support, f.h);
    out.margin_required = 1e-6 * P.diameter();
    out.verdict = out.min_support > out.margin_required ? Verdict::Pass : Verdict::Fail;
    return out;
}

}  // namespace lpmink
