#pragma once

// Two sharp closed-form constructions for the singular Monge-Ampere
// equation v^{1-p} det D2(v) = g with p < 1, plus the dimension-bound and
// smoothness predicates that go with them.
//
//  * line_vanishing (Ex32): v(x1, x2) = |x2| + |x2|^alpha (1 + beta x1^2)
//    with alpha = (p + n - 1)/2, a nonnegative convex solution vanishing on
//    a line, witnessing sharpness of the bound p >= -n + 1 + 2r at r = 1.
//  * flat_face (Ex42): the rotationally symmetric profile
//    v(z) = z + ((q - 1)/q^(n-1+p)) z^(n-1+p), q = (p+n-1)/(p+n-2),
//    the restricted support function of a body whose boundary contains the
//    origin in the relative interior of an (n-1)-face.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "lpmink/geom.hpp"
#include "lpmink/polytope.hpp"

namespace lpmink {

// p >= -n + 1 + 2r is necessary for an r-dimensional zero set.
inline double dim_bound(int n, int r) {
    if (r < 1 || r > n - 1) throw std::domain_error("dim_bound: need 1 <= r <= n-1");
    return static_cast<double>(-n + 1 + 2 * r);
}

inline bool admissible(int n, int r, double p) { return p >= dim_bound(n, r); }

// Smoothness of the solution body: automatic for n in {2,3}, and for
// n > 3 when p < 4 - n.
inline bool smoothness_predicate(int n, double p) {
    if (p >= 1.0) throw std::invalid_argument("smoothness_predicate: requires p < 1");
    return n == 2 || n == 3 || p < 4.0 - static_cast<double>(n);
}

// Strict upper bound on dim N(K,o) when the origin is on the boundary.
inline double nko_bound(int n) { return 0.5 * (static_cast<double>(n) + 1.0); }

// ---------------------------------------------------------------------------
// line-vanishing construction

struct Ex32Params {
    int n;        // ambient dimension of the Monge-Ampere equation
    double p;     // exponent, p > -n + 3 (strict)
    double beta;  // perturbation size, 0 < beta < beta_threshold

    // association fixed so that 2*alpha - ((n-1)+p) is exactly zero
    double alpha() const { return ((static_cast<double>(n) - 1.0) + p) / 2.0; }

    // convexity threshold: the cross-term determinant stays positive on
    // |x1| <= 1 iff beta < (alpha-1)/(1+alpha)
    static double beta_threshold(double alpha) { return (alpha - 1.0) / (1.0 + alpha); }
    double beta_threshold() const { return beta_threshold(alpha()); }

    void validate() const {
        if (n < 2) throw std::invalid_argument("need n >= 2");
        if (!(p > static_cast<double>(-n + 3)))
            throw std::invalid_argument("need p > -n + 3 (alpha > 1)");
        if (!(beta > 0.0)) throw std::invalid_argument("need beta > 0");
        if (!(beta < beta_threshold()))
            throw std::invalid_argument("beta above the convexity threshold");
    }
};

struct Ex32Eval {
    double value;      // v at (x1, |x2| = r)
    double v11;        // d2v/dx1^2           = f g''
    double v1n;        // d2v/dx1 dxn         = f' g'
    double vnn;        // d2v/dxn^2           = f'' g
    double radial;     // d2v/dxi^2, 1<i<n    = (1 + f' g)/r
    double block_det;  // v11*vnn - v1n^2 = 2 a b r^(2(a-1)) (a-1-(1+a) b x1^2)
    double det;        // det D2(v) = block_det * radial^(n-2)
    double residual;   // v^(1-p) det D2(v)
};

// Evaluate at the representative point (x1, 0, ..., 0, r); the function is
// invariant under rotations of x2, so this covers every point.
inline Ex32Eval ex32_eval(const Ex32Params& prm, double x1, double r) {
    prm.validate();
    if (!(r > 0.0)) throw std::domain_error("ex32_eval: Hessian is singular at r = 0");
    const double a = prm.alpha();
    const double g = 1.0 + prm.beta * x1 * x1;
    const double gp = 2.0 * prm.beta * x1;
    const double gpp = 2.0 * prm.beta;
    const double f = std::pow(r, a);
    const double fp = a * std::pow(r, a - 1.0);
    const double fpp = a * (a - 1.0) * std::pow(r, a - 2.0);

    Ex32Eval e;
    e.value = r + f * g;
    e.v11 = f * gpp;
    e.v1n = fp * gp;
    e.vnn = fpp * g;
    e.radial = (1.0 + fp * g) / r;
    e.block_det = 2.0 * a * prm.beta * std::pow(r, 2.0 * (a - 1.0)) *
                  (a - 1.0 - (1.0 + a) * prm.beta * x1 * x1);
    e.det = e.block_det * std::pow(e.radial, static_cast<double>(prm.n - 2));
    e.residual = std::pow(e.value, 1.0 - prm.p) * e.det;
    return e;
}

// v in the full n ambient coordinates (x1, x2 in R^(n-1)); used by the
// finite-difference and rotation-invariance oracles.
inline double ex32_value_full(const Ex32Params& prm, std::span<const double> x) {
    const double a = prm.alpha();
    double r2 = 0.0;
    for (size_t i = 1; i < x.size(); ++i) r2 += x[i] * x[i];
    double r = std::sqrt(r2);
    return r + std::pow(r, a) * (1.0 + prm.beta * x[0] * x[0]);
}

// Full n x n Hessian at the representative point (x1, 0, ..., 0, r), in
// coordinates ordered (x1, x2_1, ..., x2_(n-2), x2_(n-1) = r direction).
inline std::vector<std::vector<double>> ex32_hessian(const Ex32Params& prm, double x1, double r) {
    Ex32Eval e = ex32_eval(prm, x1, r);
    const size_t n = static_cast<size_t>(prm.n);
    std::vector<std::vector<double>> H(n, std::vector<double>(n, 0.0));
    H[0][0] = e.v11;
    H[0][n - 1] = H[n - 1][0] = e.v1n;
    H[n - 1][n - 1] = e.vnn;
    for (size_t i = 1; i + 1 < n; ++i) H[i][i] = e.radial;
    return H;
}

struct Ex32Verify {
    double residual_inf;  // c1
    double residual_sup;  // c2
    bool convex;          // all Hessian eigenvalues positive on the grid
    double order_defect;  // 2 alpha - (n - 1) - p, identically zero
};

// Grid sweep of the residual over [-1,1] x [r_min, 1]; the convexity flag
// checks the 2x2 cross block (trace and determinant) plus the radial
// eigenvalue at every grid node.
inline Ex32Verify ex32_verify(const Ex32Params& prm, int nx, int nr, double r_min = 1e-4) {
    if (nx < 2 || nr < 2) throw std::invalid_argument("ex32_verify: grid too small");
    // deliberately no beta-threshold rejection here: an oversized beta is
    // reported through the convexity flag, not thrown
    if (prm.n < 2 || !(prm.p > static_cast<double>(-prm.n + 3)) || !(prm.beta > 0.0))
        throw std::invalid_argument("ex32_verify: invalid parameters");
    Ex32Verify out;
    out.residual_inf = std::numeric_limits<double>::infinity();
    out.residual_sup = -std::numeric_limits<double>::infinity();
    out.convex = true;
    const double a = prm.alpha();
    out.order_defect = 2.0 * a - ((static_cast<double>(prm.n) - 1.0) + prm.p);
    for (int i = 0; i < nx; ++i) {
        double x1 = -1.0 + 2.0 * i / (nx - 1);
        for (int j = 0; j < nr; ++j) {
            double r = r_min + (1.0 - r_min) * j / (nr - 1);
            const double g = 1.0 + prm.beta * x1 * x1;
            const double f = std::pow(r, a);
            const double fp = a * std::pow(r, a - 1.0);
            const double fpp = a * (a - 1.0) * std::pow(r, a - 2.0);
            double v11 = f * 2.0 * prm.beta;
            double v1n = fp * 2.0 * prm.beta * x1;
            double vnn = fpp * g;
            double radial = (1.0 + fp * g) / r;
            double bdet = v11 * vnn - v1n * v1n;
            if (!(bdet > 0.0) || !(v11 + vnn > 0.0) || !(radial > 0.0)) out.convex = false;
            double value = r + f * g;
            double res = std::pow(value, 1.0 - prm.p) * bdet *
                         std::pow(radial, static_cast<double>(prm.n - 2));
            out.residual_inf = std::min(out.residual_inf, res);
            out.residual_sup = std::max(out.residual_sup, res);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// flat-face construction

struct Ex42Params {
    int n;     // ambient dimension of the body; the profile lives on R^(n-1)
    double p;  // exponent in (-n+2, 1), strict

    double q() const {
        return ((static_cast<double>(n) - 1.0) + p) / ((static_cast<double>(n) - 2.0) + p);
    }
    double profile_exponent() const { return (static_cast<double>(n) - 1.0) + p; }  // > 1
    double coeff() const { return (q() - 1.0) / std::pow(q(), profile_exponent()); }

    void validate() const {
        if (n < 2) throw std::invalid_argument("need n >= 2");
        if (!(p > static_cast<double>(-n + 2)) || !(p < 1.0))
            throw std::invalid_argument("need p in (-n+2, 1)");
        if (!(q() > 1.0)) throw std::logic_error("q must exceed 1");
    }
};

struct Ex42Eval {
    double value;     // v(z) = z + C z^m
    double v11;       // profile second derivative C m (m-1) z^(m-2)
    double vrad;      // transverse entries 1/z + C m z^(m-2)
    double det;       // v11 * vrad^(n-2), the (n-1)-dim Hessian determinant
    double residual;  // v^(1-p) det
};

inline double ex42_value(const Ex42Params& prm, double z) {
    prm.validate();
    if (z < 0.0) throw std::domain_error("ex42_value: z must be nonnegative");
    if (z == 0.0) return 0.0;
    return z + prm.coeff() * std::pow(z, prm.profile_exponent());
}

inline Ex42Eval ex42_eval(const Ex42Params& prm, double z) {
    prm.validate();
    if (!(z > 0.0)) throw std::domain_error("ex42_eval: derivatives need z > 0");
    const double m = prm.profile_exponent();
    const double C = prm.coeff();
    Ex42Eval e;
    e.value = z + C * std::pow(z, m);
    e.v11 = C * m * (m - 1.0) * std::pow(z, m - 2.0);
    e.vrad = 1.0 / z + C * m * std::pow(z, m - 2.0);
    e.det = e.v11 * std::pow(e.vrad, static_cast<double>(prm.n - 2));
    e.residual = std::pow(e.value, 1.0 - prm.p) * e.det;
    return e;
}

// Limit of the residual as z -> 0+, by Richardson extrapolation over
// z = 1e-3 .. 1e-6.  The limit is computed, never assumed.
inline double ex42_residual_limit(const Ex42Params& prm) {
    double z = 1e-3;
    std::vector<double> r;
    for (int k = 0; k < 4; ++k, z *= 0.1) r.push_back(ex42_eval(prm, z).residual);
    // one extrapolation pass assuming a power-law correction estimated from
    // the last three samples
    double d1 = r[1] - r[2], d2 = r[2] - r[3];
    if (std::abs(d1) < 1e-300 || std::abs(d2) < 1e-300) return r[3];
    double rho = d2 / d1;  // contraction factor per decade
    return r[3] + d2 * rho / (1.0 - rho);
}

// Polytopal inscription of the flat-face body in R^3: bottom face is the
// inscribed k-gon of the unit disk at height 0 (outer normal (0,0,-1)),
// side bands follow the radius profile r(z) = 1 + z^(1/q) up to height 1,
// and a convex apex cap closes the body.  The origin sits in the relative
// interior of the bottom face.
inline Polytope ex42_body(const Ex42Params& prm, int sectors = 24) {
    prm.validate();
    if (prm.n != 3) throw std::invalid_argument("ex42_body: polytope construction is 3-d only");
    if (sectors < 8) throw std::invalid_argument("ex42_body: mesh too coarse");
    const double q = prm.q();
    const std::vector<double> heights{0.0, 0.15, 0.5, 1.0};
    auto radius = [&](double z) { return 1.0 + std::pow(z, 1.0 / q); };
    const Vec3 apex{0.0, 0.0, 1.5};

    auto ring_point = [&](double z, int j) {
        double th = 2.0 * M_PI * j / sectors;
        double r = radius(z);
        return Vec3{r * std::cos(th), r * std::sin(th), z};
    };

    std::vector<Vec3> normals;
    std::vector<double> h;
    const Vec3 inner{0.0, 0.0, 0.2};  // interior reference for orientation
    auto push_plane = [&](const Vec3& p1, const Vec3& p2, const Vec3& p3) {
        Vec3 nrm = cross(sub(p2, p1), sub(p3, p1));
        if (norm(nrm) < 1e-14) return;
        nrm = normalized(nrm);
        double off = dot(nrm, p1);
        if (dot(nrm, inner) > off) {
            nrm = scale(nrm, -1.0);
            off = -off;
        }
        for (size_t i = 0; i < normals.size(); ++i)
            if (angle_between(normals[i], nrm) < 1e-9) return;
        normals.push_back(nrm);
        h.push_back(off);
    };

    normals.push_back({0.0, 0.0, -1.0});
    h.push_back(0.0);
    for (size_t level = 0; level + 1 < heights.size(); ++level)
        for (int j = 0; j < sectors; ++j)
            push_plane(ring_point(heights[level], j), ring_point(heights[level], j + 1),
                       ring_point(heights[level + 1], j + 1));
    for (int j = 0; j < sectors; ++j)
        push_plane(ring_point(heights.back(), j), ring_point(heights.back(), j + 1), apex);

    Polytope body = Polytope::from_halfspaces(3, normals, h);
    // the origin must be strictly inside the bottom face
    Face bottom = body.face({0.0, 0.0, -1.0});
    if (bottom.dim != 2) throw std::runtime_error("ex42_body: bottom face degenerated");
    return body;
}

}  // namespace lpmink
