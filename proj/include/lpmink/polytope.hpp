#pragma once

// Polytopal convex bodies in dimensions 2 and 3, with exact combinatorial
// surface data: support functions, faces, normal cones, surface area
// measures and L_p area measures.
//
// A Polytope stores both the vertex representation and the
// (normal, support number) representation and cross-validates them on
// construction.  All types are immutable after construction and all
// operations are pure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lpmink/geom.hpp"

namespace lpmink {

// Angular tolerance for identifying unit normals.
inline constexpr double kAngularTol = 1e-9;
// Geometric incidence tolerance, scaled by the body diameter.
inline constexpr double kIncidenceTol = 1e-9;

struct Facet {
    Vec3 normal;                   // outward unit normal
    double h = 0.0;                // support number, >= 0 when o is inside
    std::vector<int> vertex_ids;   // cycle (3-d) or endpoint pair (2-d)
    double area = 0.0;             // (n-1)-volume of the facet
};

// Finite atomic measure on unit normals (surface area and L_p area measures).
struct DiscreteMeasure {
    struct Atom {
        Vec3 u;
        double w;
    };
    std::vector<Atom> atoms;

    double total() const {
        double s = 0.0;
        for (const auto& a : atoms) s += a.w;
        return s;
    }

    // Sum of w * u over all atoms; vanishes for surface area measures.
    Vec3 weighted_normal_sum() const {
        Vec3 s{0, 0, 0};
        for (const auto& a : atoms) s = add(s, scale(a.u, a.w));
        return s;
    }

    void validate() const {
        for (const auto& a : atoms) {
            if (a.w < 0.0) throw std::domain_error("measure weight must be nonnegative");
            if (std::abs(norm(a.u) - 1.0) > 1e-12)
                throw std::domain_error("measure atom normal must be a unit vector");
        }
        for (size_t i = 0; i < atoms.size(); ++i)
            for (size_t j = i + 1; j < atoms.size(); ++j)
                if (angle_between(atoms[i].u, atoms[j].u) <= kAngularTol)
                    throw std::domain_error("measure atoms must have distinct normals");
    }
};

// ---------------------------------------------------------------------------
// Cones

// x in cone(gens)?  Caratheodory for cones: membership is witnessed by a
// subset of at most dim generators, so small subsets are enumerated.
inline bool cone_contains(const std::vector<Vec3>& gens, const Vec3& x, double tol = 1e-9) {
    double nx = norm(x);
    if (nx <= tol) return true;
    const size_t k = gens.size();
    // single generator
    for (size_t i = 0; i < k; ++i) {
        double c = dot(gens[i], x);
        if (c >= -tol * nx && norm(cross(gens[i], x)) <= tol * nx * 10.0 &&
            norm(sub(scale(gens[i], c), x)) <= tol * (1.0 + nx) * 10.0)
            return true;
    }
    // pairs: least squares in the span of (g_i, g_j)
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = i + 1; j < k; ++j) {
            double a = dot(gens[i], gens[i]), b = dot(gens[i], gens[j]), c = dot(gens[j], gens[j]);
            double det = a * c - b * b;
            if (std::abs(det) < 1e-14) continue;
            double p = dot(gens[i], x), q = dot(gens[j], x);
            double al = (c * p - b * q) / det, be = (a * q - b * p) / det;
            if (al < -tol * nx || be < -tol * nx) continue;
            Vec3 r = sub(add(scale(gens[i], al), scale(gens[j], be)), x);
            if (norm(r) <= tol * (1.0 + nx) * 10.0) return true;
        }
    }
    // triples: exact solve
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = i + 1; j < k; ++j) {
            for (size_t l = j + 1; l < k; ++l) {
                const Vec3 &g1 = gens[i], &g2 = gens[j], &g3 = gens[l];
                double det = dot(g1, cross(g2, g3));
                if (std::abs(det) < 1e-12) continue;
                double al = dot(x, cross(g2, g3)) / det;
                double be = dot(g1, cross(x, g3)) / det;
                double ga = dot(g1, cross(g2, x)) / det;
                if (al >= -tol * nx && be >= -tol * nx && ga >= -tol * nx) return true;
            }
        }
    }
    return false;
}

// Closed convex cone with apex at the origin, generated by finitely many
// unit rays.  Generators are reduced to the extremal ones on construction.
struct Cone {
    std::vector<Vec3> generators;  // extremal unit rays
    int dim = 0;                   // dimension of the linear span

    static Cone from_rays(std::vector<Vec3> rays) {
        Cone c;
        // dedupe
        for (const auto& r : rays) {
            double n = norm(r);
            if (n < 1e-14) continue;
            Vec3 u = scale(r, 1.0 / n);
            bool dup = false;
            for (const auto& g : c.generators)
                if (angle_between(g, u) <= kAngularTol) dup = true;
            if (!dup) c.generators.push_back(u);
        }
        // drop non-extremal generators
        for (size_t i = 0; i < c.generators.size();) {
            std::vector<Vec3> others;
            for (size_t j = 0; j < c.generators.size(); ++j)
                if (j != i) others.push_back(c.generators[j]);
            if (!others.empty() && cone_contains(others, c.generators[i]))
                c.generators.erase(c.generators.begin() + static_cast<long>(i));
            else
                ++i;
        }
        c.dim = c.span_dim();
        return c;
    }

    bool contains(const Vec3& x, double tol = 1e-9) const { return cone_contains(generators, x, tol); }

    int span_dim() const {
        if (generators.empty()) return 0;
        // rank of the generator matrix via successive orthogonalization
        std::vector<Vec3> basis;
        for (Vec3 g : generators) {
            for (const auto& b : basis) g = sub(g, scale(b, dot(b, g)));
            if (norm(g) > 1e-9) basis.push_back(normalized(g));
        }
        return static_cast<int>(basis.size());
    }
};

// ---------------------------------------------------------------------------
// Polytope

// Lower-dimensional face returned by Polytope::face.
struct Face {
    std::vector<Vec3> vertices;
    int dim = 0;  // affine dimension: 0 vertex, 1 edge/segment, 2 polygon

    double measure() const {  // dim-dimensional volume
        if (dim == 0) return 0.0;
        if (dim == 1) {
            double d = 0.0;
            for (const auto& a : vertices)
                for (const auto& b : vertices) d = std::max(d, dist(a, b));
            return d;
        }
        // polygon area via the shoelace formula about the centroid
        Vec3 c{0, 0, 0};
        for (const auto& v : vertices) c = add(c, v);
        c = scale(c, 1.0 / static_cast<double>(vertices.size()));
        Vec3 s{0, 0, 0};
        for (size_t i = 0; i < vertices.size(); ++i) {
            const Vec3& a = vertices[i];
            const Vec3& b = vertices[(i + 1) % vertices.size()];
            s = add(s, cross(sub(a, c), sub(b, c)));
        }
        return 0.5 * norm(s);
    }
};

class Polytope {
  public:
    // Construct from the halfspace intersection {x : <u_i, x> <= h_i}.
    // Facets with empty or lower-dimensional contact are dropped; the
    // input must describe a bounded body with nonempty interior.
    static Polytope from_halfspaces(int dim, const std::vector<Vec3>& normals,
                                    const std::vector<double>& support_numbers);

    // Axis-aligned box [x0,x1] x [y0,y1] (x [z0,z1] when dim == 3).
    static Polytope box(int dim, const Vec3& lo, const Vec3& hi);

    int dim() const { return dim_; }
    const std::vector<Vec3>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    double diameter() const { return diameter_; }

    // h_P(u) = max_z <u, z>; positively 1-homogeneous.
    double support(const Vec3& u) const {
        require_direction(u);
        double s = -std::numeric_limits<double>::infinity();
        for (const auto& z : vertices_) s = std::max(s, dot(u, z));
        return s;
    }

    // F(P, u) = argmax_z <u, z>, as a (possibly lower-dimensional) face.
    Face face(const Vec3& u) const {
        require_direction(u);
        double s = support(u);
        double tol = kIncidenceTol * diameter_ * norm(u);
        Face f;
        for (const auto& z : vertices_)
            if (dot(u, z) >= s - tol) f.vertices.push_back(z);
        f.dim = affine_dim(f.vertices);
        if (f.dim == 2) order_cycle(f.vertices, normalized(u));
        return f;
    }

    bool contains(const Vec3& z, double tol_scale = kIncidenceTol) const {
        double tol = tol_scale * diameter_;
        for (const auto& fct : facets_)
            if (dot(fct.normal, z) > fct.h + tol) return false;
        return true;
    }

    // N(P, z): cone generated by the normals of the facets incident to z.
    // dim 0 iff z is interior.
    Cone normal_cone(const Vec3& z) const {
        if (!contains(z)) throw std::domain_error("normal_cone: point outside the body");
        double tol = kIncidenceTol * diameter_;
        std::vector<Vec3> rays;
        for (const auto& fct : facets_)
            if (dot(fct.normal, z) >= fct.h - tol) rays.push_back(fct.normal);
        return Cone::from_rays(std::move(rays));
    }

    // Atom at each facet normal with the facet's (n-1)-volume as weight.
    DiscreteMeasure surface_area_measure() const {
        DiscreteMeasure m;
        for (const auto& fct : facets_) m.atoms.push_back({fct.normal, fct.area});
        return m;
    }

    // dS_{K,p} = h^{1-p} dS_K; needs o in the body and p < 1.
    DiscreteMeasure lp_area_measure(double p) const {
        if (p >= 1.0) throw std::invalid_argument("lp_area_measure: exponent must satisfy p < 1");
        if (!contains({0, 0, 0})) throw std::domain_error("lp_area_measure: origin outside the body");
        DiscreteMeasure m;
        for (const auto& fct : facets_) {
            double h = std::max(fct.h, 0.0);  // clamp the o-on-facet case
            double w = h == 0.0 ? 0.0 : std::pow(h, 1.0 - p) * fct.area;
            m.atoms.push_back({fct.normal, w});
        }
        return m;
    }

    double volume() const {  // (1/n) sum h_i A_i
        double s = 0.0;
        for (const auto& fct : facets_) s += fct.h * fct.area;
        return s / static_cast<double>(dim_);
    }

    // Cross-validation of the dual representation; throws on violation.
    void validate() const;

  private:
    Polytope() = default;

    static void require_direction(const Vec3& u) {
        if (norm(u) == 0.0) throw std::domain_error("zero direction");
    }

    static int affine_dim(const std::vector<Vec3>& pts) {
        if (pts.size() <= 1) return 0;
        std::vector<Vec3> basis;
        for (size_t i = 1; i < pts.size(); ++i) {
            Vec3 d = sub(pts[i], pts[0]);
            for (const auto& b : basis) d = sub(d, scale(b, dot(b, d)));
            double scale_ref = 1.0 + norm(sub(pts[i], pts[0]));
            if (norm(d) > 1e-9 * scale_ref) basis.push_back(normalized(d));
        }
        return static_cast<int>(basis.size());
    }

    static void order_cycle(std::vector<Vec3>& pts, const Vec3& normal) {
        Vec3 c{0, 0, 0};
        for (const auto& v : pts) c = add(c, v);
        c = scale(c, 1.0 / static_cast<double>(pts.size()));
        auto [s, t] = orthonormal_basis(normal);
        std::sort(pts.begin(), pts.end(), [&](const Vec3& a, const Vec3& b) {
            Vec3 da = sub(a, c), db = sub(b, c);
            return std::atan2(dot(da, t), dot(da, s)) < std::atan2(dot(db, t), dot(db, s));
        });
    }

    int dim_ = 0;
    std::vector<Vec3> vertices_;
    std::vector<Facet> facets_;
    double diameter_ = 0.0;
};

namespace detail {

// Vertex candidates of the halfspace intersection, by brute-force plane
// intersection.  Suited to the few dozen facets this library works with.
inline std::vector<Vec3> enumerate_vertices(int dim, const std::vector<Vec3>& normals,
                                            const std::vector<double>& h) {
    const size_t m = normals.size();
    double scale_ref = 1.0;
    for (double hi : h) scale_ref = std::max(scale_ref, std::abs(hi));
    const double feas_tol = 1e-9 * scale_ref * 10.0;
    std::vector<Vec3> pts;
    auto push_if_new = [&](const Vec3& x) {
        for (const auto& q : pts)
            if (dist(q, x) <= 1e-7 * (scale_ref + norm(x))) return;
        pts.push_back(x);
    };
    auto feasible = [&](const Vec3& x) {
        for (size_t i = 0; i < m; ++i)
            if (dot(normals[i], x) > h[i] + feas_tol) return false;
        return true;
    };
    if (dim == 2) {
        for (size_t i = 0; i < m; ++i) {
            for (size_t j = i + 1; j < m; ++j) {
                double det = normals[i][0] * normals[j][1] - normals[i][1] * normals[j][0];
                if (std::abs(det) < 1e-10) continue;
                Vec3 x{(h[i] * normals[j][1] - h[j] * normals[i][1]) / det,
                       (normals[i][0] * h[j] - normals[j][0] * h[i]) / det, 0.0};
                if (feasible(x)) push_if_new(x);
            }
        }
    } else {
        for (size_t i = 0; i < m; ++i) {
            for (size_t j = i + 1; j < m; ++j) {
                Vec3 cij = cross(normals[i], normals[j]);
                for (size_t k = j + 1; k < m; ++k) {
                    double det = dot(cij, normals[k]);
                    if (std::abs(det) < 1e-10) continue;
                    // Cramer via cross products
                    Vec3 x = scale(add(add(scale(cross(normals[j], normals[k]), h[i]),
                                           scale(cross(normals[k], normals[i]), h[j])),
                                       scale(cij, h[k])),
                                   1.0 / det);
                    if (feasible(x)) push_if_new(x);
                }
            }
        }
    }
    return pts;
}

}  // namespace detail

// Facet (n-1)-volumes of the halfspace intersection, one entry per input
// normal; zero for facets that have shrunk away.  This is the solver's
// inner evaluation and deliberately tolerates dead facets.
inline std::vector<double> facet_areas(int dim, const std::vector<Vec3>& normals,
                                       const std::vector<double>& h) {
    std::vector<Vec3> pts = detail::enumerate_vertices(dim, normals, h);
    std::vector<double> areas(normals.size(), 0.0);
    if (pts.empty()) return areas;
    double scale_ref = 1.0;
    for (const auto& p : pts) scale_ref = std::max(scale_ref, norm(p));
    const double tol = 1e-8 * scale_ref;
    for (size_t i = 0; i < normals.size(); ++i) {
        std::vector<Vec3> on;
        for (const auto& p : pts)
            if (dot(normals[i], p) >= h[i] - tol) on.push_back(p);
        if (dim == 2) {
            if (on.size() < 2) continue;
            double lo = 1e300, hi = -1e300;
            Vec3 t{-normals[i][1], normals[i][0], 0.0};
            for (const auto& p : on) {
                lo = std::min(lo, dot(t, p));
                hi = std::max(hi, dot(t, p));
            }
            areas[i] = hi - lo;
        } else {
            if (on.size() < 3) continue;
            Vec3 c{0, 0, 0};
            for (const auto& p : on) c = add(c, p);
            c = scale(c, 1.0 / static_cast<double>(on.size()));
            auto [s, t] = orthonormal_basis(normals[i]);
            std::sort(on.begin(), on.end(), [&](const Vec3& a, const Vec3& b) {
                Vec3 da = sub(a, c), db = sub(b, c);
                return std::atan2(dot(da, t), dot(da, s)) < std::atan2(dot(db, t), dot(db, s));
            });
            double a2 = 0.0;
            for (size_t k = 0; k < on.size(); ++k) {
                Vec3 da = sub(on[k], c), db = sub(on[(k + 1) % on.size()], c);
                a2 += dot(normals[i], cross(da, db));
            }
            areas[i] = 0.5 * std::abs(a2);
        }
    }
    return areas;
}

// o in the interior of conv(points)?  Exact for dims 2 and 3: every
// supporting hyperplane of the hull is spanned by input points, so all
// candidate separators are enumerated.
inline bool origin_in_hull_interior(int dim, const std::vector<Vec3>& pts, double tol = 1e-9) {
    const size_t m = pts.size();
    if (dim == 2) {
        if (m < 3) return false;
        for (size_t i = 0; i < m; ++i) {
            for (size_t j = i + 1; j < m; ++j) {
                Vec3 d = sub(pts[j], pts[i]);
                if (norm(d) < 1e-14) continue;
                Vec3 nrm = normalized(Vec3{-d[1], d[0], 0.0});
                double off = dot(nrm, pts[i]);
                bool support_pos = true, support_neg = true;
                for (const auto& p : pts) {
                    if (dot(nrm, p) > off + tol) support_pos = false;
                    if (dot(nrm, p) < off - tol) support_neg = false;
                }
                if (support_pos && off <= tol) return false;
                if (support_neg && off >= -tol) return false;
            }
        }
        return true;
    }
    if (m < 4) return false;
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            for (size_t k = j + 1; k < m; ++k) {
                Vec3 nrm = cross(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
                if (norm(nrm) < 1e-12) continue;
                nrm = normalized(nrm);
                double off = dot(nrm, pts[i]);
                bool support_pos = true, support_neg = true;
                for (const auto& p : pts) {
                    if (dot(nrm, p) > off + tol) support_pos = false;
                    if (dot(nrm, p) < off - tol) support_neg = false;
                }
                if (support_pos && off <= tol) return false;
                if (support_neg && off >= -tol) return false;
            }
        }
    }
    return true;
}

inline Polytope Polytope::from_halfspaces(int dim, const std::vector<Vec3>& normals,
                                          const std::vector<double>& support_numbers) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("dimension must be 2 or 3");
    if (normals.size() != support_numbers.size())
        throw std::invalid_argument("normals/support_numbers size mismatch");
    for (const auto& u : normals) {
        if (std::abs(norm(u) - 1.0) > 1e-12) throw std::domain_error("facet normal must be unit");
        if (dim == 2 && u[2] != 0.0) throw std::domain_error("2-d normal must have zero z");
    }
    if (!origin_in_hull_interior(dim, normals))
        throw std::domain_error("facet normals do not positively span; body unbounded");

    Polytope P;
    P.dim_ = dim;
    P.vertices_ = detail::enumerate_vertices(dim, normals, support_numbers);
    if (P.vertices_.size() < static_cast<size_t>(dim + 1))
        throw std::domain_error("degenerate polytope: too few vertices");
    for (const auto& a : P.vertices_)
        for (const auto& b : P.vertices_) P.diameter_ = std::max(P.diameter_, dist(a, b));
    if (P.diameter_ <= 0.0) throw std::domain_error("degenerate polytope");

    const double tol = 1e-8 * std::max(1.0, P.diameter_);
    for (size_t i = 0; i < normals.size(); ++i) {
        Facet f;
        f.normal = normals[i];
        f.h = support_numbers[i];
        for (size_t v = 0; v < P.vertices_.size(); ++v)
            if (dot(normals[i], P.vertices_[v]) >= support_numbers[i] - tol)
                f.vertex_ids.push_back(static_cast<int>(v));
        if (dim == 2) {
            if (f.vertex_ids.size() < 2) continue;
            f.area = dist(P.vertices_[static_cast<size_t>(f.vertex_ids[0])],
                          P.vertices_[static_cast<size_t>(f.vertex_ids[1])]);
            if (f.area <= tol) continue;
        } else {
            if (f.vertex_ids.size() < 3) continue;
            std::vector<Vec3> pts;
            for (int id : f.vertex_ids) pts.push_back(P.vertices_[static_cast<size_t>(id)]);
            order_cycle(pts, f.normal);
            // re-map ordered points back to ids
            std::vector<int> ordered;
            for (const auto& p : pts)
                for (size_t v = 0; v < P.vertices_.size(); ++v)
                    if (dist(P.vertices_[v], p) == 0.0) ordered.push_back(static_cast<int>(v));
            f.vertex_ids = ordered;
            Face poly{pts, 2};
            f.area = poly.measure();
            if (f.area <= tol * tol) continue;
        }
        P.facets_.push_back(std::move(f));
    }
    if (P.volume() <= 0.0) throw std::domain_error("degenerate polytope: empty interior");
    P.validate();
    return P;
}

inline Polytope Polytope::box(int dim, const Vec3& lo, const Vec3& hi) {
    std::vector<Vec3> normals;
    std::vector<double> h;
    for (int a = 0; a < dim; ++a) {
        Vec3 e{0, 0, 0};
        e[static_cast<size_t>(a)] = 1.0;
        normals.push_back(e);
        h.push_back(hi[static_cast<size_t>(a)]);
        e[static_cast<size_t>(a)] = -1.0;
        normals.push_back(e);
        h.push_back(-lo[static_cast<size_t>(a)]);
    }
    return from_halfspaces(dim, normals, h);
}

inline void Polytope::validate() const {
    const double tol = kIncidenceTol * diameter_ * 10.0;
    for (const auto& f : facets_) {
        if (std::abs(norm(f.normal) - 1.0) > 1e-12) throw std::logic_error("non-unit facet normal");
        // subgradient identity: listed vertices attain the support number
        for (int id : f.vertex_ids) {
            double v = dot(f.normal, vertices_[static_cast<size_t>(id)]);
            if (std::abs(v - f.h) > tol) throw std::logic_error("facet vertex off its plane");
        }
        // support over all vertices equals the stored support number
        if (std::abs(support(f.normal) - f.h) > tol)
            throw std::logic_error("support number inconsistent with vertices");
    }
    for (const auto& z : vertices_) {
        for (const auto& f : facets_)
            if (dot(f.normal, z) > f.h + tol) throw std::logic_error("vertex violates a facet");
    }
    // closedness of the surface area measure; this is the round-trip check
    // that the facet list actually closes up around the vertex hull
    DiscreteMeasure S = surface_area_measure();
    Vec3 r = S.weighted_normal_sum();
    double total = S.total();
    for (int a = 0; a < 3; ++a)
        if (std::abs(r[static_cast<size_t>(a)]) > 1e-10 * std::max(total, 1.0))
            throw std::logic_error("surface area measure does not close up");
    if (volume() <= 0.0) throw std::logic_error("empty interior");
}

}  // namespace lpmink
