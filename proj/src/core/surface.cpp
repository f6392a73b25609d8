#include "core/surface.hpp"

#include <algorithm>
#include <cmath>

namespace slab {

double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

namespace {

// Degree-2 chart jet for building fixtures: value with first and second
// derivatives in (u, v), propagated through arithmetic.
struct J {
    double v = 0, du = 0, dv = 0, duu = 0, duv = 0, dvv = 0;
};

J jconst(double c) { return {c, 0, 0, 0, 0, 0}; }
J jvar_u(double u) { return {u, 1, 0, 0, 0, 0}; }
J jvar_v(double v) { return {v, 0, 1, 0, 0, 0}; }

J operator+(const J& a, const J& b) {
    return {a.v + b.v, a.du + b.du, a.dv + b.dv, a.duu + b.duu, a.duv + b.duv,
            a.dvv + b.dvv};
}
J operator-(const J& a, const J& b) {
    return {a.v - b.v, a.du - b.du, a.dv - b.dv, a.duu - b.duu, a.duv - b.duv,
            a.dvv - b.dvv};
}
J operator-(const J& a) { return {-a.v, -a.du, -a.dv, -a.duu, -a.duv, -a.dvv}; }
J operator*(const J& a, const J& b) {
    return {a.v * b.v,
            a.du * b.v + a.v * b.du,
            a.dv * b.v + a.v * b.dv,
            a.duu * b.v + 2 * a.du * b.du + a.v * b.duu,
            a.duv * b.v + a.du * b.dv + a.dv * b.du + a.v * b.duv,
            a.dvv * b.v + 2 * a.dv * b.dv + a.v * b.dvv};
}
J operator*(double c, const J& a) {
    return {c * a.v, c * a.du, c * a.dv, c * a.duu, c * a.duv, c * a.dvv};
}
J operator+(const J& a, double c) { return a + jconst(c); }
J operator+(double c, const J& a) { return a + jconst(c); }
J operator-(double c, const J& a) { return jconst(c) - a; }

// Composition with a scalar function given f, f', f'' at a.v.
J chain(const J& a, double f0, double f1, double f2) {
    return {f0,
            f1 * a.du,
            f1 * a.dv,
            f2 * a.du * a.du + f1 * a.duu,
            f2 * a.du * a.dv + f1 * a.duv,
            f2 * a.dv * a.dv + f1 * a.dvv};
}

J jinv(const J& a) { return chain(a, 1.0 / a.v, -1.0 / (a.v * a.v), 2.0 / (a.v * a.v * a.v)); }
J operator/(const J& a, const J& b) { return a * jinv(b); }
J jsqrt(const J& a) {
    const double s = std::sqrt(a.v);
    return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}
J jsin(const J& a) { return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
J jcos(const J& a) { return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }

SurfaceJet pack(const J& x, const J& y, const J& z) {
    SurfaceJet out;
    out.X = {x.v, y.v, z.v};
    out.Xu = {x.du, y.du, z.du};
    out.Xv = {x.dv, y.dv, z.dv};
    out.Xuu = {x.duu, y.duu, z.duu};
    out.Xuv = {x.duv, y.duv, z.duv};
    out.Xvv = {x.dvv, y.dvv, z.dvv};
    return out;
}

}  // namespace

ParametricSurface make_plane() {
    ParametricSurface s;
    s.name = "plane";
    s.jet = [](double u, double v) {
        return pack(jvar_u(u), jvar_v(v), jconst(0.0));
    };
    return s;
}

ParametricSurface make_sphere(double R) {
    if (!(R > 0.0)) throw DomainError("make_sphere: R must be positive");
    ParametricSurface s;
    s.name = "sphere";
    s.u_min = s.v_min = -0.8;
    s.u_max = s.v_max = 0.8;
    // Stereographic chart from the north pole; the cross-product normal in
    // chart order points outward.
    s.jet = [R](double u, double v) {
        const J ju = jvar_u(u), jv = jvar_v(v);
        const J rho2 = ju * ju + jv * jv;
        const J s1 = rho2 + 1.0;
        const J inv = jinv(s1);
        const J x = 2.0 * R * (ju * inv);
        const J y = 2.0 * R * (jv * inv);
        const J z = R * (2.0 * inv - jconst(1.0));
        return pack(x, y, z);
    };
    return s;
}

ParametricSurface make_cylinder(double R) {
    if (!(R > 0.0)) throw DomainError("make_cylinder: R must be positive");
    ParametricSurface s;
    s.name = "cylinder";
    s.u_min = -2.0;
    s.u_max = 2.0;
    s.jet = [R](double u, double v) {
        const J phi = (1.0 / R) * jvar_u(u);
        return pack(R * jcos(phi), R * jsin(phi), jvar_v(v));
    };
    return s;
}

ParametricSurface make_torus(double R, double r) {
    if (!(R > r && r > 0.0)) throw DomainError("make_torus: need R > r > 0");
    ParametricSurface s;
    s.name = "torus";
    s.u_min = s.v_min = 0.0;
    s.u_max = s.v_max = 6.283185307179586;
    s.jet = [R, r](double u, double v) {
        const J ju = jvar_u(u), jv = jvar_v(v);
        const J w = R + r * jcos(jv);
        return pack(w * jcos(ju), w * jsin(ju), r * jsin(jv));
    };
    return s;
}

namespace {

// Confocal chart of the ellipsoid x^2/p + y^2/q + z^2/r = 1 (p > q > r are
// the squared semi-axes). With lambda in (-q, -r), mu in (-p, -q):
//   x^2 = p(p+lambda)(p+mu)/((p-q)(p-r)),  etc.,
// and ds^2 = (lambda - mu)(du^2 + dv^2) after u = int sqrt(A(lambda)),
// v = int sqrt(B(mu)), A = lambda/(4 prod(p+lambda)), B = -mu/(4 prod(p+mu)).
struct ConfocalChart {
    double p, q, r;
    double lam_lo, lam_hi, mu_lo, mu_hi;
    double lam_ref, mu_ref;

    double A(double lam) const {
        return lam / (4.0 * (p + lam) * (q + lam) * (r + lam));
    }
    double Aprime(double lam) const {
        const double P = (p + lam) * (q + lam) * (r + lam);
        const double Pp = (q + lam) * (r + lam) + (p + lam) * (r + lam) +
                          (p + lam) * (q + lam);
        return (P - lam * Pp) / (4.0 * P * P);
    }
    double B(double mu) const {
        return -mu / (4.0 * (p + mu) * (q + mu) * (r + mu));
    }
    double Bprime(double mu) const {
        const double P = (p + mu) * (q + mu) * (r + mu);
        const double Pp = (q + mu) * (r + mu) + (p + mu) * (r + mu) +
                          (p + mu) * (q + mu);
        return -(P - mu * Pp) / (4.0 * P * P);
    }

    double u_of_lambda(double lam) const {
        auto f = [&](double t) { return std::sqrt(A(t)); };
        return integrate_adaptive(f, lam_ref, lam, 1e-13).value;
    }
    double v_of_mu(double mu) const {
        auto f = [&](double t) { return std::sqrt(B(t)); };
        return integrate_adaptive(f, mu_ref, mu, 1e-13).value;
    }

    double lambda_of_u(double u) const {
        double lo = lam_lo, hi = lam_hi;
        double lam = 0.5 * (lo + hi);
        for (int it = 0; it < 100; ++it) {
            const double g = u_of_lambda(lam) - u;
            if (std::abs(g) < 1e-14) break;
            if (g > 0)
                hi = lam;
            else
                lo = lam;
            double step = g / std::sqrt(A(lam));
            double next = lam - step;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - lam) < 1e-16 * std::abs(lam)) { lam = next; break; }
            lam = next;
        }
        return lam;
    }
    double mu_of_v(double v) const {
        double lo = mu_lo, hi = mu_hi;
        double mu = 0.5 * (lo + hi);
        for (int it = 0; it < 100; ++it) {
            const double g = v_of_mu(mu) - v;
            if (std::abs(g) < 1e-14) break;
            if (g > 0)
                hi = mu;
            else
                lo = mu;
            double step = g / std::sqrt(B(mu));
            double next = mu - step;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - mu) < 1e-16 * std::abs(mu)) { mu = next; break; }
            mu = next;
        }
        return mu;
    }
};

}  // namespace

ParametricSurface make_ellipsoid(double a, double b, double c) {
    if (!(a > 0 && b > 0 && c > 0)) throw DomainError("make_ellipsoid: axes must be positive");
    double sq[3] = {a * a, b * b, c * c};
    std::sort(sq, sq + 3);
    ConfocalChart ch;
    ch.r = sq[0];
    ch.q = sq[1];
    ch.p = sq[2];
    if (!(ch.p > ch.q && ch.q > ch.r))
        throw DomainError("make_ellipsoid: axes must be pairwise distinct");
    const double m1 = 0.1 * (ch.q - ch.r);
    const double m2 = 0.1 * (ch.p - ch.q);
    ch.lam_lo = -ch.q + m1;
    ch.lam_hi = -ch.r - m1;
    ch.mu_lo = -ch.p + m2;
    ch.mu_hi = -ch.q - m2;
    ch.lam_ref = 0.5 * (ch.lam_lo + ch.lam_hi);
    ch.mu_ref = 0.5 * (ch.mu_lo + ch.mu_hi);

    ParametricSurface s;
    s.name = "ellipsoid";
    s.u_min = ch.u_of_lambda(ch.lam_lo);
    s.u_max = ch.u_of_lambda(ch.lam_hi);
    s.v_min = ch.v_of_mu(ch.mu_lo);
    s.v_max = ch.v_of_mu(ch.mu_hi);
    s.jet = [ch](double u, double v) {
        const double lam = ch.lambda_of_u(u);
        const double mu = ch.mu_of_v(v);
        const double Al = ch.A(lam);
        const double Bm = ch.B(mu);
        // lambda(u): dlam/du = A^{-1/2}, d2lam/du2 = -A'/(2A^2).
        J jl{lam, 1.0 / std::sqrt(Al), 0.0, -ch.Aprime(lam) / (2.0 * Al * Al), 0.0, 0.0};
        J jm{mu, 0.0, 1.0 / std::sqrt(Bm), 0.0, 0.0, -ch.Bprime(mu) / (2.0 * Bm * Bm)};
        const double p = ch.p, q = ch.q, r = ch.r;
        const J x = jsqrt((p / ((p - q) * (p - r))) * ((p + jl) * (p + jm)));
        const J y = jsqrt((q / ((q - p) * (q - r))) * ((q + jl) * (q + jm)));
        const J z = jsqrt((r / ((r - p) * (r - q))) * ((r + jl) * (r + jm)));
        return pack(x, y, z);
    };
    return s;
}

ParametricSurface make_swapped(const ParametricSurface& s) {
    ParametricSurface out;
    out.name = s.name + "_swapped";
    out.u_min = s.v_min;
    out.u_max = s.v_max;
    out.v_min = s.u_min;
    out.v_max = s.u_max;
    out.jet = [inner = s.jet](double u, double v) {
        SurfaceJet j = inner(v, u);
        std::swap(j.Xu, j.Xv);
        std::swap(j.Xuu, j.Xvv);
        return j;
    };
    return out;
}

ParametricSurface make_named_surface(const std::string& name,
                                     const std::vector<double>& params) {
    if (name == "plane") return make_plane();
    if (name == "sphere") {
        if (params.size() != 1) throw DomainError("sphere fixture needs 1 parameter (R)");
        return make_sphere(params[0]);
    }
    if (name == "cylinder") {
        if (params.size() != 1) throw DomainError("cylinder fixture needs 1 parameter (R)");
        return make_cylinder(params[0]);
    }
    if (name == "torus") {
        if (params.size() != 2) throw DomainError("torus fixture needs 2 parameters (R, r)");
        return make_torus(params[0], params[1]);
    }
    if (name == "ellipsoid") {
        if (params.size() != 3)
            throw DomainError("ellipsoid fixture needs 3 parameters (a, b, c)");
        return make_ellipsoid(params[0], params[1], params[2]);
    }
    throw DomainError("unknown surface fixture: " + name);
}

WeightSpec make_poly_weight(double c0, double c1, double c2) {
    WeightSpec w;
    w.F = [=](double t) { return c0 + c1 * t + c2 * t * t; };
    w.F1 = [=](double t) { return c1 + 2.0 * c2 * t; };
    w.F2 = [=](double) { return 2.0 * c2; };
    return w;
}

ShapeSample shape_sample(const ParametricSurface& s, double u, double v) {
    const SurfaceJet j = s.jet(u, v);
    ShapeSample out;
    out.g11 = dot(j.Xu, j.Xu);
    out.g12 = dot(j.Xu, j.Xv);
    out.g22 = dot(j.Xv, j.Xv);
    const double det = out.g11 * out.g22 - out.g12 * out.g12;
    if (!(det > 1e-12 * (out.g11 + out.g22) * (out.g11 + out.g22)))
        throw DegenerateError("shape_sample: chart is not an immersion at this point");
    Vec3 n = cross(j.Xu, j.Xv);
    const double nn = std::sqrt(dot(n, n));
    out.nu = {n[0] / nn, n[1] / nn, n[2] / nn};
    out.h11 = dot(j.Xuu, out.nu);
    out.h12 = dot(j.Xuv, out.nu);
    out.h22 = dot(j.Xvv, out.nu);
    out.H = (out.g22 * out.h11 - 2.0 * out.g12 * out.h12 + out.g11 * out.h22) / det;
    out.K = (out.h11 * out.h22 - out.h12 * out.h12) / det;
    out.phi_norm = std::sqrt(std::max(0.0, 0.5 * (out.H * out.H - 4.0 * out.K)));
    out.isothermal =
        std::abs(out.g11 - out.g22) + 2.0 * std::abs(out.g12) < 1e-8 * (out.g11 + out.g22);
    if (out.isothermal) out.alpha = 0.5 * (out.g11 + out.g22);
    return out;
}

double shrinker_residual(const ParametricSurface& s, double u, double v) {
    const SurfaceJet j = s.jet(u, v);
    const ShapeSample ss = shape_sample(s, u, v);
    return ss.H + 0.5 * dot(j.X, ss.nu);
}

double lambda_residual(const ParametricSurface& s, double u, double v, double lambda) {
    const SurfaceJet j = s.jet(u, v);
    const ShapeSample ss = shape_sample(s, u, v);
    return lambda - ss.H - 0.5 * dot(j.X, ss.nu);
}

double weighted_mean_curvature(const ParametricSurface& s, const WeightSpec& w,
                               double u, double v) {
    const SurfaceJet j = s.jet(u, v);
    const ShapeSample ss = shape_sample(s, u, v);
    return ss.H + 2.0 * w.F1(dot(j.X, j.X)) * dot(j.X, ss.nu);
}

HopfSample hopf_differential(const ParametricSurface& s, const WeightSpec& w,
                             double u, double v) {
    const SurfaceJet j = s.jet(u, v);
    const ShapeSample ss = shape_sample(s, u, v);
    if (!ss.isothermal)
        throw DomainError("hopf_differential: chart is not isothermal at this point");
    HopfSample out;
    out.P = 0.25 * Complex(ss.h11 - ss.h22, -2.0 * ss.h12);
    out.f_val = w.F(dot(j.X, j.X));
    out.Q = std::exp(-0.5 * out.f_val) * out.P;
    return out;
}

double qzbar_identity_residual(const ParametricSurface& s, const WeightSpec& w,
                               double u, double v, double fd_step) {
    if (!(fd_step > 0.0)) throw DomainError("qzbar_identity_residual: fd_step must be positive");
    const double h = fd_step;

    auto Q_at = [&](double uu, double vv) { return hopf_differential(s, w, uu, vv).Q; };
    const Complex Qu = (Q_at(u + h, v) - Q_at(u - h, v)) / (2.0 * h);
    const Complex Qv = (Q_at(u, v + h) - Q_at(u, v - h)) / (2.0 * h);
    const Complex lhs = 0.5 * (Qu + Complex(0, 1) * Qv);

    const SurfaceJet j = s.jet(u, v);
    const ShapeSample ss = shape_sample(s, u, v);
    if (!ss.isothermal)
        throw DomainError("qzbar_identity_residual: chart is not isothermal at this point");
    const double t = dot(j.X, j.X);
    const double F1 = w.F1(t), F2 = w.F2(t);
    const double Hf = ss.H + 2.0 * F1 * dot(j.X, ss.nu);

    auto Hf_at = [&](double uu, double vv) { return weighted_mean_curvature(s, w, uu, vv); };
    const double Hfu = (Hf_at(u + h, v) - Hf_at(u - h, v)) / (2.0 * h);
    const double Hfv = (Hf_at(u, v + h) - Hf_at(u, v - h)) / (2.0 * h);
    const Complex Hf_z = 0.5 * Complex(Hfu, -Hfv);

    // <X, X_z> with X_z = (X_u - i X_v)/2.
    const Complex sigma = 0.5 * Complex(dot(j.X, j.Xu), -dot(j.X, j.Xv));
    const double Xnu = dot(j.X, ss.nu);
    const Complex rhs = 0.25 * ss.alpha * std::exp(-0.5 * w.F(t)) *
                        (Hf_z + (F1 * Hf - 2.0 * (2.0 * F2 + F1 * F1) * Xnu) * sigma);
    return std::abs(lhs - rhs);
}

double sphere_radius_for_weight(const WeightSpec& w) {
    auto g = [&](double t) { return w.F1(t) * t - 1.0; };
    double lo = 1e-8;
    double hi = lo;
    double glo = g(lo);
    bool found = false;
    for (int it = 0; it < 120; ++it) {
        hi = lo * 2.0;
        const double ghi = g(hi);
        if (glo == 0.0 || (glo > 0) != (ghi > 0)) {
            found = true;
            break;
        }
        lo = hi;
        glo = ghi;
        if (lo > 1e16) break;
    }
    if (!found)
        throw NoSolutionError("sphere_radius_for_weight: F1(t)*t - 1 has no sign change");
    const double t = bisect(g, lo, hi, 1e-14);
    return std::sqrt(t);
}

double lambda_sphere_radius(double lambda) {
    return std::sqrt(lambda * lambda + 4.0) - lambda;
}

}  // namespace slab
