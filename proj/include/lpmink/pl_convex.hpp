#pragma once

// Piecewise-linear convex functions v(x) = max_j (<a_j, x> + b_j) on a
// bounded convex domain in dimension 1 or 2, their subgradients, and their
// Monge-Ampere measures in the Alexandrov sense.  For a PL function the
// measure is purely atomic: it sits at the vertices of the max-subdivision,
// with mass equal to the d-volume of the subgradient image there.
//
// Also hosts the sphere-to-hyperplane transfer: the radial projection
// Jacobian, the transferred density, and the restriction of a polytope
// support function to a tangent hyperplane.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "lpmink/geom.hpp"
#include "lpmink/polytope.hpp"

namespace lpmink {

struct AffinePiece {
    Vec2 a{0.0, 0.0};  // gradient (a[1] unused in dimension 1)
    double b = 0.0;    // offset
    double value(const Vec2& x) const { return a[0] * x[0] + a[1] * x[1] + b; }
};

// ---------------------------------------------------------------------------
// 2-d polygon helpers

inline double polygon_area(const std::vector<Vec2>& poly) {
    double s = 0.0;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % poly.size()];
        s += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * std::abs(s);
}

// Hull of a planar point set, CCW (monotone chain).  Collinear points on
// the hull boundary are dropped.
inline std::vector<Vec2> convex_hull_2d(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const size_t n = pts.size();
    if (n <= 2) return pts;
    double scale_ref = 0.0;
    for (const auto& p : pts) scale_ref = std::max({scale_ref, std::abs(p[0]), std::abs(p[1])});
    const double eps = 1e-12 * scale_ref * scale_ref;
    std::vector<Vec2> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross2(sub(hull[k - 1], hull[k - 2]), sub(pts[i], hull[k - 2])) <= eps) --k;
        hull[k++] = pts[i];
    }
    size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross2(sub(hull[k - 1], hull[k - 2]), sub(pts[i], hull[k - 2])) <= eps) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

// Clip a convex CCW polygon against the halfplane {x : <nrm, x> <= c}.
inline std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const Vec2& nrm, double c) {
    std::vector<Vec2> out;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % n];
        double dp = dot(nrm, p) - c, dq = dot(nrm, q) - c;
        if (dp <= 0.0) out.push_back(p);
        if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
            double t = dp / (dp - dq);
            out.push_back(add(p, scale(sub(q, p), t)));
        }
    }
    return out;
}

inline bool convex_polygon_contains(const std::vector<Vec2>& poly, const Vec2& x, double tol) {
    const size_t n = poly.size();
    if (n < 3) return false;
    for (size_t i = 0; i < n; ++i) {
        Vec2 e = sub(poly[(i + 1) % n], poly[i]);
        if (cross2(e, sub(x, poly[i])) < -tol * (norm(e) + 1.0)) return false;
    }
    return true;
}

inline double distance_to_polygon_boundary(const std::vector<Vec2>& poly, const Vec2& x) {
    double d = std::numeric_limits<double>::infinity();
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        Vec2 p = poly[i], q = poly[(i + 1) % n];
        Vec2 e = sub(q, p);
        double len2 = dot(e, e);
        double t = len2 > 0.0 ? std::clamp(dot(sub(x, p), e) / len2, 0.0, 1.0) : 0.0;
        d = std::min(d, dist(x, add(p, scale(e, t))));
    }
    return d;
}

// ---------------------------------------------------------------------------
// Domain: interval (dim 1, on the first coordinate axis) or convex polygon

struct PLDomain {
    int dim = 2;
    std::vector<Vec2> polygon;  // CCW, dim == 2
    double lo = 0.0, hi = 0.0;  // dim == 1

    static PLDomain interval(double lo, double hi) {
        if (!(hi > lo)) throw std::invalid_argument("empty interval domain");
        PLDomain d;
        d.dim = 1;
        d.lo = lo;
        d.hi = hi;
        return d;
    }
    static PLDomain convex_polygon(std::vector<Vec2> poly) {
        if (polygon_area(poly) <= 0.0) throw std::invalid_argument("domain polygon has empty interior");
        PLDomain d;
        d.dim = 2;
        d.polygon = std::move(poly);
        return d;
    }
    static PLDomain rectangle(double x0, double x1, double y0, double y1) {
        return convex_polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
    }

    double scale() const {
        if (dim == 1) return std::max({1.0, std::abs(lo), std::abs(hi)});
        double s = 1.0;
        for (const auto& p : polygon) s = std::max({s, std::abs(p[0]), std::abs(p[1])});
        return s;
    }
    bool contains(const Vec2& x, double tol = 0.0) const {
        if (dim == 1) return x[0] >= lo - tol && x[0] <= hi + tol;
        return convex_polygon_contains(polygon, x, tol);
    }
    double boundary_distance(const Vec2& x) const {
        if (dim == 1) return std::min(x[0] - lo, hi - x[0]);
        return distance_to_polygon_boundary(polygon, x);
    }
    double measure() const { return dim == 1 ? hi - lo : polygon_area(polygon); }
};

// ---------------------------------------------------------------------------
// PLConvexFunction

class PLConvexFunction {
  public:
    // Pieces never active on the domain are pruned on construction.
    PLConvexFunction(PLDomain domain, std::vector<AffinePiece> pieces)
        : domain_(std::move(domain)), pieces_(std::move(pieces)) {
        if (pieces_.empty()) throw std::invalid_argument("need at least one affine piece");
        if (domain_.dim == 1)
            for (auto& p : pieces_) p.a[1] = 0.0;
        dedupe_pieces();
        prune_inactive();
    }

    const PLDomain& domain() const { return domain_; }
    const std::vector<AffinePiece>& pieces() const { return pieces_; }

    double value(const Vec2& x) const {
        double m = -std::numeric_limits<double>::infinity();
        for (const auto& p : pieces_) m = std::max(m, p.value(x));
        return m;
    }

    std::vector<size_t> active_set(const Vec2& x, double tol_rel = 1e-9) const {
        double m = value(x);
        double tol = tol_rel * (1.0 + std::abs(m) + domain_.scale());
        std::vector<size_t> idx;
        for (size_t j = 0; j < pieces_.size(); ++j)
            if (pieces_[j].value(x) >= m - tol) idx.push_back(j);
        return idx;
    }

    // dv(x) = conv{a_j : j active at x}; vertices CCW (dim 2) or the
    // endpoints of an interval (dim 1).
    std::vector<Vec2> subgradient(const Vec2& x) const {
        if (!domain_.contains(x, 1e-9 * domain_.scale()))
            throw std::domain_error("subgradient: point outside the domain");
        std::vector<Vec2> g;
        for (size_t j : active_set(x)) g.push_back(pieces_[j].a);
        if (domain_.dim == 1) {
            double lo = g[0][0], hi = g[0][0];
            for (const auto& a : g) {
                lo = std::min(lo, a[0]);
                hi = std::max(hi, a[0]);
            }
            return lo == hi ? std::vector<Vec2>{{lo, 0.0}} : std::vector<Vec2>{{lo, 0.0}, {hi, 0.0}};
        }
        return g.size() <= 2 ? g : convex_hull_2d(g);
    }

    // d-volume of dv(x); nonzero only at vertices of the max-subdivision.
    double point_mass(const Vec2& x) const {
        std::vector<Vec2> g = subgradient(x);
        if (domain_.dim == 1) return g.size() < 2 ? 0.0 : g[1][0] - g[0][0];
        return g.size() < 3 ? 0.0 : polygon_area(g);
    }

    // Zero set S = {x in domain : v(x) = 0}, assuming v >= 0 on the domain.
    // Returned as polygon vertices with the affine dimension.
    struct ZeroSet {
        std::vector<Vec2> vertices;
        int dim = -1;        // -1 empty, 0 point, 1 segment, 2 polygon
        double measure = 0;  // H^d measure (domain dimension d)
    };
    ZeroSet zero_set() const {
        ZeroSet zs;
        double tol = 1e-9 * domain_.scale();
        if (domain_.dim == 1) {
            // intersection of {a_j t + b_j <= 0} with [lo, hi]
            double lo = domain_.lo, hi = domain_.hi;
            for (const auto& p : pieces_) {
                if (std::abs(p.a[0]) < 1e-14) {
                    if (p.b > tol) return zs;
                    continue;
                }
                double t = -p.b / p.a[0];
                if (p.a[0] > 0.0) hi = std::min(hi, t);
                else lo = std::max(lo, t);
            }
            if (lo > hi + tol) return zs;
            zs.vertices = {{lo, 0.0}, {hi, 0.0}};
            zs.dim = hi - lo > tol ? 1 : 0;
            zs.measure = zs.dim == 1 ? hi - lo : 0.0;
            return zs;
        }
        std::vector<Vec2> poly = domain_.polygon;
        for (const auto& p : pieces_) {
            if (poly.empty()) break;
            poly = clip_halfplane(poly, p.a, -p.b);
        }
        if (poly.empty()) return zs;
        zs.vertices = poly;
        double area = polygon_area(poly);
        if (area > tol * tol) {
            zs.dim = 2;
            zs.measure = area;
        } else {
            double ext = 0.0;
            for (const auto& a : poly)
                for (const auto& b : poly) ext = std::max(ext, dist(a, b));
            zs.dim = ext > tol ? 1 : 0;
            zs.measure = 0.0;  // H^2-null in dimension 2
        }
        return zs;
    }

    // Candidate vertex positions of the max-subdivision inside the closed
    // domain: pairwise intersections of bisector lines (dim 2) or bisector
    // points (dim 1), plus the domain corners and bisector/boundary cuts.
    std::vector<Vec2> arrangement_candidates(bool with_boundary = true) const;

  private:
    void dedupe_pieces() {
        std::vector<AffinePiece> keep;
        for (const auto& p : pieces_) {
            bool dup = false;
            for (const auto& q : keep)
                if (dist(p.a, q.a) <= 1e-12 && std::abs(p.b - q.b) <= 1e-12) dup = true;
            if (!dup) keep.push_back(p);
        }
        pieces_ = std::move(keep);
    }

    void prune_inactive() {
        // a piece is active somewhere iff it attains the max at some vertex
        // of its linearity cell; all such vertices are arrangement candidates
        std::vector<Vec2> cand = arrangement_candidates(true);
        double tol = 1e-9 * domain_.scale();
        std::vector<AffinePiece> keep;
        for (size_t j = 0; j < pieces_.size(); ++j) {
            bool active = false;
            for (const auto& x : cand) {
                double m = value(x);
                if (pieces_[j].value(x) >= m - tol * (1.0 + std::abs(m))) {
                    active = true;
                    break;
                }
            }
            if (active) keep.push_back(pieces_[j]);
        }
        if (!keep.empty()) pieces_ = std::move(keep);
    }

    PLDomain domain_;
    std::vector<AffinePiece> pieces_;
};

inline std::vector<Vec2> PLConvexFunction::arrangement_candidates(bool with_boundary) const {
    const double s = domain_.scale();
    const double in_tol = 1e-9 * s;
    std::vector<Vec2> cand;
    auto push = [&](const Vec2& x) {
        if (!domain_.contains(x, in_tol)) return;
        for (const auto& q : cand)
            if (dist(q, x) <= 1e-9 * s) return;
        cand.push_back(x);
    };
    if (domain_.dim == 1) {
        push({domain_.lo, 0.0});
        push({domain_.hi, 0.0});
        for (size_t i = 0; i < pieces_.size(); ++i)
            for (size_t j = i + 1; j < pieces_.size(); ++j) {
                double da = pieces_[i].a[0] - pieces_[j].a[0];
                if (std::abs(da) < 1e-13) continue;
                push({(pieces_[j].b - pieces_[i].b) / da, 0.0});
            }
        return cand;
    }
    // every interior subdivision vertex has >= 3 jointly active pieces, so
    // it shows up as the equal-value point of some piece triple; boundary
    // vertices are bisector/boundary cuts (2 active pieces) or corners
    auto active_here = [&](const Vec2& x, std::initializer_list<size_t> idx) {
        double m = value(x);
        double tol = 1e-9 * (1.0 + std::abs(m) + s);
        for (size_t j : idx)
            if (pieces_[j].value(x) < m - tol) return false;
        return true;
    };
    const size_t np = pieces_.size();
    for (size_t i = 0; i < np; ++i)
        for (size_t j = i + 1; j < np; ++j) {
            Vec2 nij = sub(pieces_[i].a, pieces_[j].a);
            if (norm(nij) < 1e-13) continue;
            double cij = pieces_[j].b - pieces_[i].b;
            for (size_t k = j + 1; k < np; ++k) {
                Vec2 nik = sub(pieces_[i].a, pieces_[k].a);
                if (norm(nik) < 1e-13) continue;
                double cik = pieces_[k].b - pieces_[i].b;
                double det = cross2(nij, nik);
                if (std::abs(det) < 1e-13 * (norm(nij) * norm(nik))) continue;
                Vec2 x{(cij * nik[1] - cik * nij[1]) / det, (nij[0] * cik - nik[0] * cij) / det};
                if (!domain_.contains(x, in_tol)) continue;
                if (active_here(x, {i, j, k})) push(x);
            }
        }
    if (with_boundary) {
        for (const auto& p : domain_.polygon) push(p);
        const size_t nb = domain_.polygon.size();
        for (size_t i = 0; i < np; ++i)
            for (size_t j = i + 1; j < np; ++j) {
                Vec2 nij = sub(pieces_[i].a, pieces_[j].a);
                if (norm(nij) < 1e-13) continue;
                double cij = pieces_[j].b - pieces_[i].b;
                for (size_t bi = 0; bi < nb; ++bi) {
                    Vec2 p = domain_.polygon[bi], q = domain_.polygon[(bi + 1) % nb];
                    Vec2 e = sub(q, p);
                    double den = dot(nij, e);
                    if (std::abs(den) < 1e-13 * (norm(nij) * norm(e) + 1e-300)) continue;
                    double t = (cij - dot(nij, p)) / den;
                    if (t < -1e-9 || t > 1.0 + 1e-9) continue;
                    Vec2 x = add(p, scale(e, t));
                    if (active_here(x, {i, j})) push(x);
                }
            }
    }
    return cand;
}

// ---------------------------------------------------------------------------
// Monge-Ampere measure report

struct MAtom {
    Vec2 x;                        // subdivision vertex
    double mass = 0.0;             // d-volume of the subgradient image
    bool interior = false;         // strictly inside the domain
    std::vector<Vec2> image_hull;  // subgradient polytope (dim 2) / interval
};

struct MAReport {
    std::vector<MAtom> atoms;
    double total_mass = 0.0;           // over interior atoms
    PLConvexFunction::ZeroSet zero_set;
};

inline MAReport ma_report(const PLConvexFunction& v) {
    MAReport rep;
    const double s = v.domain().scale();
    for (const auto& x : v.arrangement_candidates(true)) {
        double m = v.point_mass(x);
        if (m <= 0.0) continue;
        MAtom atom;
        atom.x = x;
        atom.mass = m;
        atom.interior = v.domain().boundary_distance(x) > 1e-9 * s;
        atom.image_hull = v.subgradient(x);
        rep.atoms.push_back(std::move(atom));
    }
    for (const auto& a : rep.atoms)
        if (a.interior) rep.total_mass += a.mass;
    rep.zero_set = v.zero_set();
    return rep;
}

// mu_v(omega) for omega given as a finite list of points.
inline double ma_measure(const PLConvexFunction& v, const std::vector<Vec2>& points) {
    double s = 0.0;
    for (const auto& x : points) {
        if (!v.domain().contains(x, 1e-9 * v.domain().scale()))
            throw std::domain_error("ma_measure: region point outside the domain");
        s += v.point_mass(x);
    }
    return s;
}

// mu_v(omega) for omega a convex polygon inside the domain (boundary atoms
// of omega count as inside).
inline double ma_measure(const PLConvexFunction& v, const PLDomain& region) {
    double tol = 1e-9 * v.domain().scale();
    if (region.dim != v.domain().dim) throw std::domain_error("ma_measure: region dimension mismatch");
    // region must sit inside the domain
    if (region.dim == 1) {
        if (region.lo < v.domain().lo - tol || region.hi > v.domain().hi + tol)
            throw std::domain_error("ma_measure: region not contained in the domain");
    } else {
        for (const auto& p : region.polygon)
            if (!v.domain().contains(p, tol))
                throw std::domain_error("ma_measure: region not contained in the domain");
    }
    double s = 0.0;
    for (const auto& a : ma_report(v).atoms)
        if (region.contains(a.x, tol)) s += a.mass;
    return s;
}

// ---------------------------------------------------------------------------
// Alexandrov-sense verification of v^{1-p} d(mu_v) = g dH^d

struct AlexandrovReport {
    bool zero_set_negligible = false;  // H^d(S) = 0
    double zero_set_atomic_mass = 0.0; // mu_v mass sitting on S (reported separately)
    std::vector<double> cell_residuals;
    double max_residual = 0.0;
    size_t cells_checked = 0;
    size_t cells_skipped = 0;  // touching S or straddling the domain boundary
    bool pass = false;
};

namespace detail {

// adaptive midpoint quadrature of f over an axis-aligned cell
inline double adaptive_cell_integral(const std::function<double(const Vec2&)>& f, double x0, double x1,
                                     double y0, double y1, double var_tol, int depth) {
    double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    double mid = f({cx, cy});
    double spread = 0.0;
    for (const Vec2& c : {Vec2{x0, y0}, Vec2{x1, y0}, Vec2{x1, y1}, Vec2{x0, y1}})
        spread = std::max(spread, std::abs(f(c) - mid));
    double area = (x1 - x0) * (y1 - y0);
    if (depth <= 0 || spread <= var_tol * (std::abs(mid) + 1e-300)) return mid * area;
    return adaptive_cell_integral(f, x0, cx, y0, cy, var_tol, depth - 1) +
           adaptive_cell_integral(f, cx, x1, y0, cy, var_tol, depth - 1) +
           adaptive_cell_integral(f, x0, cx, cy, y1, var_tol, depth - 1) +
           adaptive_cell_integral(f, cx, x1, cy, y1, var_tol, depth - 1);
}

}  // namespace detail

// Compares the atomic Monge-Ampere mass against int g v^{p-1} on a caller
// supplied square mesh (cells of side `mesh`, aligned to the domain
// bounding box).  Cells touching the zero set S are excluded per the
// restriction of the density identity to {v > 0}.
inline AlexandrovReport check_alexandrov(const PLConvexFunction& v,
                                         const std::function<double(const Vec2&)>& g, double p,
                                         double tol, double mesh) {
    if (p >= 1.0) throw std::invalid_argument("check_alexandrov: exponent must satisfy p < 1");
    if (v.domain().dim != 2) throw std::invalid_argument("check_alexandrov: 2-d domains only");
    AlexandrovReport rep;
    auto zs = v.zero_set();
    rep.zero_set_negligible = zs.dim < 2;

    MAReport ma = ma_report(v);
    double tol_geo = 1e-9 * v.domain().scale();
    auto in_zero = [&](const Vec2& x) {
        if (zs.dim < 0) return false;
        if (zs.vertices.size() >= 3) return convex_polygon_contains(zs.vertices, x, tol_geo);
        for (const auto& z : zs.vertices)
            if (dist(z, x) <= tol_geo) return true;
        if (zs.vertices.size() == 2) {
            Vec2 e = sub(zs.vertices[1], zs.vertices[0]);
            double len2 = dot(e, e);
            if (len2 > 0.0) {
                double t = std::clamp(dot(sub(x, zs.vertices[0]), e) / len2, 0.0, 1.0);
                if (dist(x, add(zs.vertices[0], scale(e, t))) <= tol_geo) return true;
            }
        }
        return false;
    };
    for (const auto& a : ma.atoms)
        if (in_zero(a.x)) rep.zero_set_atomic_mass += a.mass;

    // bounding box of the domain
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& q : v.domain().polygon) {
        x0 = std::min(x0, q[0]);
        x1 = std::max(x1, q[0]);
        y0 = std::min(y0, q[1]);
        y1 = std::max(y1, q[1]);
    }
    auto vvalue = [&](const Vec2& x) { return v.value(x); };
    for (double cx = x0; cx < x1 - 1e-12; cx += mesh) {
        for (double cy = y0; cy < y1 - 1e-12; cy += mesh) {
            double cx1 = std::min(cx + mesh, x1), cy1 = std::min(cy + mesh, y1);
            std::vector<Vec2> corners{{cx, cy}, {cx1, cy}, {cx1, cy1}, {cx, cy1}};
            bool inside = true, touches_zero = false;
            for (const auto& c : corners) {
                if (!v.domain().contains(c, tol_geo)) inside = false;
                if (in_zero(c) || vvalue(c) <= tol_geo) touches_zero = true;
            }
            if (!inside || touches_zero) {
                ++rep.cells_skipped;
                continue;
            }
            // atomic mass in the half-open cell
            double mu = 0.0;
            for (const auto& a : ma.atoms)
                if (a.x[0] >= cx && a.x[0] < cx1 && a.x[1] >= cy && a.x[1] < cy1) mu += a.mass;
            auto integrand = [&](const Vec2& q) {
                return g(q) * std::pow(std::max(vvalue(q), 1e-300), p - 1.0);
            };
            double integral =
                detail::adaptive_cell_integral(integrand, cx, cx1, cy, cy1, tol / 10.0, 8);
            double denom = std::max(std::abs(integral), std::max(mu, 1e-14));
            rep.cell_residuals.push_back(std::abs(mu - integral) / denom);
            ++rep.cells_checked;
        }
    }
    for (double r : rep.cell_residuals) rep.max_residual = std::max(rep.max_residual, r);
    rep.pass = rep.max_residual <= tol && rep.zero_set_negligible;
    return rep;
}

// ---------------------------------------------------------------------------
// Sphere-to-hyperplane transfer

// Jacobian of the radial projection x -> (x + e)/sqrt(1 + |x|^2) from the
// tangent hyperplane at e to the sphere: (1 + |x|^2)^(-n/2).
inline double radial_jacobian(double radius, int n) {
    return std::pow(1.0 + radius * radius, -0.5 * static_cast<double>(n));
}
inline double radial_jacobian(const Vec3& x, int n) { return radial_jacobian(norm(x), n); }

// Transferred right-hand side g(y) = (1+|y|^2)^{-(n+p)/2} f((e+y)/sqrt(1+|y|^2)).
inline double transfer_density(const std::function<double(const Vec3&)>& f, int n, double p,
                               const Vec3& e, const Vec3& y) {
    if (std::abs(norm(e) - 1.0) > 1e-12) throw std::domain_error("transfer_density: e must be unit");
    if (std::abs(dot(e, y)) > 1e-12 * (1.0 + norm(y)))
        throw std::domain_error("transfer_density: y must be orthogonal to e");
    double r2 = dot(y, y);
    Vec3 u = scale(add(e, y), 1.0 / std::sqrt(1.0 + r2));
    return std::pow(1.0 + r2, -0.5 * (static_cast<double>(n) + p)) * f(u);
}

// Restriction v(y) = h_P(y + e) of a support function to the tangent
// hyperplane at e, expressed in an orthonormal frame of e-perp.
struct RestrictedSupport {
    PLConvexFunction v;
    Vec3 e, t1, t2;  // v coordinates: y = y1 t1 + y2 t2 (t2 unused in dim 2)

    Vec3 lift(const Vec2& y) const { return add(scale(t1, y[0]), scale(t2, y[1])); }
    Vec2 project(const Vec3& x) const { return {dot(x, t1), dot(x, t2)}; }
};

inline RestrictedSupport restrict_support(const Polytope& P, const Vec3& e, const PLDomain& domain) {
    if (std::abs(norm(e) - 1.0) > 1e-12) throw std::domain_error("restrict_support: e must be unit");
    if (!P.contains({0, 0, 0})) throw std::domain_error("restrict_support: origin outside the body");
    std::vector<AffinePiece> pieces;
    if (P.dim() == 3) {
        if (domain.dim != 2) throw std::invalid_argument("restrict_support: need a 2-d domain");
        auto [t1, t2] = orthonormal_basis(e);
        for (const auto& z : P.vertices())
            pieces.push_back({{dot(z, t1), dot(z, t2)}, dot(z, e)});
        return {PLConvexFunction(domain, std::move(pieces)), e, t1, t2};
    }
    if (domain.dim != 1) throw std::invalid_argument("restrict_support: need a 1-d domain");
    if (e[2] != 0.0) throw std::domain_error("restrict_support: 2-d e must have zero z");
    Vec3 t1{-e[1], e[0], 0.0};
    for (const auto& z : P.vertices()) pieces.push_back({{dot(z, t1), 0.0}, dot(z, e)});
    return {PLConvexFunction(domain, std::move(pieces)), e, t1, {0, 0, 0}};
}

}  // namespace lpmink
