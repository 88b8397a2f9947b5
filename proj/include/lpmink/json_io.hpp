#pragma once

// JSON (de)serialization for the library types.
//
// Schemas:
//   Polytope          {"dim": n, "vertices": [[..]],
//                      "facets": [{"normal": [..], "h": s, "vertex_ids": [..]}]}
//   DiscreteMeasure   {"atoms": [{"u": [..], "w": s}]}
//   PLConvexFunction  {"domain": [[x,y],..] or [lo,hi], "pieces": [{"a": [..], "b": s}]}
//   LpProblem         {"dim": n, "p": p, "atoms": [{"u": [..], "f": s}]}
//
// Parse errors throw SchemaError with a field path, which the CLI maps to
// exit code 64.

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpmink/diagnostics.hpp"
#include "lpmink/geom.hpp"
#include "lpmink/pl_convex.hpp"
#include "lpmink/polytope.hpp"
#include "lpmink/solver.hpp"

namespace lpmink {

using json = nlohmann::json;

struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw SchemaError(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

inline Vec3 read_vec(const json& j, int dim, const char* where) {
    if (!j.is_array() || j.size() != static_cast<size_t>(dim))
        throw SchemaError(std::string(where) + ": expected an array of " + std::to_string(dim) +
                          " numbers");
    Vec3 v{0, 0, 0};
    for (int a = 0; a < dim; ++a) {
        if (!j[a].is_number()) throw SchemaError(std::string(where) + ": non-numeric entry");
        v[a] = j[a].get<double>();
    }
    return v;
}

inline json write_vec(const Vec3& v, int dim) {
    json a = json::array();
    for (int i = 0; i < dim; ++i) a.push_back(v[i]);
    return a;
}

}  // namespace detail

// --------------------------------------------------------------------------- Polytope

inline json to_json(const Polytope& P) {
    json j;
    j["dim"] = P.dim();
    j["vertices"] = json::array();
    for (const auto& z : P.vertices()) j["vertices"].push_back(detail::write_vec(z, P.dim()));
    j["facets"] = json::array();
    for (const auto& f : P.facets()) {
        json jf;
        jf["normal"] = detail::write_vec(f.normal, P.dim());
        jf["h"] = f.h;
        jf["vertex_ids"] = f.vertex_ids;
        j["facets"].push_back(jf);
    }
    return j;
}

inline Polytope polytope_from_json(const json& j) {
    int dim = detail::field(j, "dim").get<int>();
    if (dim != 2 && dim != 3) throw SchemaError("dim: must be 2 or 3");
    const json& jf = detail::field(j, "facets");
    if (!jf.is_array() || jf.empty()) throw SchemaError("facets: expected a nonempty array");
    std::vector<Vec3> normals;
    std::vector<double> h;
    for (const auto& f : jf) {
        normals.push_back(detail::read_vec(detail::field(f, "normal"), dim, "facets[].normal"));
        const json& jh = detail::field(f, "h");
        if (!jh.is_number()) throw SchemaError("facets[].h: expected a number");
        h.push_back(jh.get<double>());
    }
    Polytope P = Polytope::from_halfspaces(dim, normals, h);
    if (j.contains("vertices")) {
        const json& jv = j.at("vertices");
        if (!jv.is_array()) throw SchemaError("vertices: expected an array");
        if (jv.size() != P.vertices().size())
            throw SchemaError("vertices: count disagrees with the facet description");
        for (const auto& pt : jv) {
            Vec3 z = detail::read_vec(pt, dim, "vertices[]");
            bool found = false;
            for (const auto& w : P.vertices())
                if (dist(z, w) <= 1e-7 * (1.0 + P.diameter())) found = true;
            if (!found) throw SchemaError("vertices: listed point is not a vertex of the body");
        }
    }
    return P;
}

// --------------------------------------------------------------------------- DiscreteMeasure

inline json to_json(const DiscreteMeasure& m, int dim) {
    json j;
    j["atoms"] = json::array();
    for (const auto& a : m.atoms)
        j["atoms"].push_back({{"u", detail::write_vec(a.u, dim)}, {"w", a.w}});
    return j;
}

inline DiscreteMeasure measure_from_json(const json& j, int dim) {
    DiscreteMeasure m;
    const json& ja = detail::field(j, "atoms");
    if (!ja.is_array()) throw SchemaError("atoms: expected an array");
    for (const auto& a : ja) {
        const json& jw = detail::field(a, "w");
        if (!jw.is_number()) throw SchemaError("atoms[].w: expected a number");
        m.atoms.push_back({detail::read_vec(detail::field(a, "u"), dim, "atoms[].u"),
                           jw.get<double>()});
    }
    return m;
}

// --------------------------------------------------------------------------- LpProblem

inline json to_json(const LpProblem& prob) {
    json j;
    j["dim"] = prob.dim;
    j["p"] = prob.p;
    j["atoms"] = json::array();
    for (size_t i = 0; i < prob.normals.size(); ++i)
        j["atoms"].push_back(
            {{"u", detail::write_vec(prob.normals[i], prob.dim)}, {"f", prob.targets[i]}});
    return j;
}

inline LpProblem problem_from_json(const json& j) {
    LpProblem prob;
    prob.dim = detail::field(j, "dim").get<int>();
    if (prob.dim != 2 && prob.dim != 3) throw SchemaError("dim: must be 2 or 3");
    const json& jp = detail::field(j, "p");
    if (!jp.is_number()) throw SchemaError("p: expected a number");
    prob.p = jp.get<double>();
    const json& ja = detail::field(j, "atoms");
    if (!ja.is_array()) throw SchemaError("atoms: expected an array");
    for (const auto& a : ja) {
        prob.normals.push_back(detail::read_vec(detail::field(a, "u"), prob.dim, "atoms[].u"));
        const json& jf = detail::field(a, "f");
        if (!jf.is_number()) throw SchemaError("atoms[].f: expected a number");
        prob.targets.push_back(jf.get<double>());
    }
    try {
        prob.validate();
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    return prob;
}

// --------------------------------------------------------------------------- SolveResult

inline json to_json(const SolveResult& r, const LpProblem& prob) {
    json j;
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    j["max_residual"] = r.max_residual;
    j["origin_near_boundary"] = r.origin_near_boundary;
    j["h"] = r.h;
    j["residuals"] = r.residuals;
    j["residual_history"] = r.residual_history;
    if (!r.message.empty()) j["message"] = r.message;
    if (r.polytope) j["polytope"] = to_json(*r.polytope);
    j["problem"] = to_json(prob);
    return j;
}

// --------------------------------------------------------------------------- PLConvexFunction

inline json to_json(const PLConvexFunction& v) {
    json j;
    const PLDomain& d = v.domain();
    if (d.dim == 1) {
        j["domain"] = json::array({d.lo, d.hi});
    } else {
        j["domain"] = json::array();
        for (const auto& pt : d.polygon) j["domain"].push_back({pt[0], pt[1]});
    }
    j["pieces"] = json::array();
    for (const auto& pc : v.pieces()) {
        json ja = d.dim == 1 ? json::array({pc.a[0]}) : json::array({pc.a[0], pc.a[1]});
        j["pieces"].push_back({{"a", ja}, {"b", pc.b}});
    }
    return j;
}

inline PLConvexFunction pl_function_from_json(const json& j) {
    const json& jd = detail::field(j, "domain");
    if (!jd.is_array() || jd.empty()) throw SchemaError("domain: expected a nonempty array");
    PLDomain dom;
    int d;
    if (jd[0].is_number()) {
        if (jd.size() != 2) throw SchemaError("domain: interval needs exactly [lo, hi]");
        dom = PLDomain::interval(jd[0].get<double>(), jd[1].get<double>());
        d = 1;
    } else {
        std::vector<Vec2> poly;
        for (const auto& pt : jd) {
            if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number())
                throw SchemaError("domain: polygon entries must be [x, y]");
            poly.push_back({pt[0].get<double>(), pt[1].get<double>()});
        }
        dom = PLDomain::convex_polygon(std::move(poly));
        d = 2;
    }
    const json& jp = detail::field(j, "pieces");
    if (!jp.is_array() || jp.empty()) throw SchemaError("pieces: expected a nonempty array");
    std::vector<AffinePiece> pieces;
    for (const auto& pc : jp) {
        const json& ja = detail::field(pc, "a");
        if (!ja.is_array() || ja.size() != static_cast<size_t>(d))
            throw SchemaError("pieces[].a: gradient length must match the domain dimension");
        const json& jb = detail::field(pc, "b");
        if (!jb.is_number()) throw SchemaError("pieces[].b: expected a number");
        Vec2 a{ja[0].get<double>(), d == 2 ? ja[1].get<double>() : 0.0};
        pieces.push_back({a, jb.get<double>()});
    }
    return PLConvexFunction(std::move(dom), std::move(pieces));
}

// --------------------------------------------------------------------------- RegularityReport

inline json to_json(const RegularityReport& rep, int dim) {
    json j;
    j["origin_on_boundary"] = rep.origin_on_boundary;
    j["normal_cone_dim"] = rep.normal_cone_dim;
    j["normal_cone_generators"] = json::array();
    for (const auto& g : rep.normal_cone_generators)
        j["normal_cone_generators"].push_back(detail::write_vec(g, dim));
    j["zero_set_negligible"] = rep.zero_set_negligible;
    j["origin_cone_mass"] = rep.origin_cone_mass;
    j["origin_cone_mass_zero"] = rep.origin_cone_mass_zero;
    j["x0_facets"] = rep.x0_facets;
    j["x0_vertices"] = json::array();
    for (const auto& z : rep.x0_vertices) j["x0_vertices"].push_back(detail::write_vec(z, dim));
    j["x0_mass"] = rep.x0_mass;
    if (rep.density_residuals) j["density_residuals"] = *rep.density_residuals;
    json jv;
    for (const auto& [name, v] : rep.verdicts) jv[name] = to_string(v);
    j["verdicts"] = jv;
    return j;
}

// --------------------------------------------------------------------------- file helpers

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open input file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

// atomic write: stage to a sibling temp file, then rename over the target
inline void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file: " + tmp);
        out << content;
        if (!out.good()) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed for: " + path);
}

}  // namespace lpmink
