#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "core/numerics.hpp"

namespace slab {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);

// Position with first and second derivatives of a chart point.
struct SurfaceJet {
    Vec3 X{}, Xu{}, Xv{}, Xuu{}, Xuv{}, Xvv{};
};

struct ParametricSurface {
    std::string name;
    std::function<SurfaceJet(double u, double v)> jet;
    double u_min = -1.0, u_max = 1.0, v_min = -1.0, v_max = 1.0;
};

// Fixture charts. Conformal ones: sphere (stereographic from the north pole,
// outward normal), cylinder (flat chart), ellipsoid (confocal-coordinate
// conformal chart on a patch in the positive octant). The torus chart is
// deliberately non-isothermal. The plane is its own flat chart.
ParametricSurface make_plane();
ParametricSurface make_sphere(double R);
ParametricSurface make_cylinder(double R);
ParametricSurface make_torus(double R, double r);
ParametricSurface make_ellipsoid(double a, double b, double c);
// Chart-order flip (u,v) -> (v,u); reverses the normal.
ParametricSurface make_swapped(const ParametricSurface& s);

ParametricSurface make_named_surface(const std::string& name,
                                     const std::vector<double>& params);

// Radial weight f(X) = F(|X|^2) with its first two derivatives.
struct WeightSpec {
    std::function<double(double)> F, F1, F2;
};

WeightSpec make_poly_weight(double c0, double c1, double c2);

struct ShapeSample {
    double g11 = 0, g12 = 0, g22 = 0;
    double h11 = 0, h12 = 0, h22 = 0;
    double H = 0;  // trace of the shape operator
    double K = 0;  // determinant
    double phi_norm = 0;  // sqrt((H^2 - 4K)/2)
    Vec3 nu{};
    bool isothermal = false;
    double alpha = 0;  // conformal factor when isothermal
};

ShapeSample shape_sample(const ParametricSurface& s, double u, double v);

double shrinker_residual(const ParametricSurface& s, double u, double v);
double lambda_residual(const ParametricSurface& s, double u, double v, double lambda);
double weighted_mean_curvature(const ParametricSurface& s, const WeightSpec& w,
                               double u, double v);

struct HopfSample {
    Complex P{};
    Complex Q{};
    double f_val = 0;
};

HopfSample hopf_differential(const ParametricSurface& s, const WeightSpec& w,
                             double u, double v);

// |d(Q)/dzbar - closed form| where the closed form is
//   (alpha/4) e^{-F/2} [ d(H_f)/dz + (F1 H_f - 2(2F2 + F1^2)<X,nu>) <X,X_z> ],
// the radial-weight form of the Q-differential derivative identity. The
// d(H_f)/dz term drops only when H_f is constant.
double qzbar_identity_residual(const ParametricSurface& s, const WeightSpec& w,
                               double u, double v, double fd_step);

double sphere_radius_for_weight(const WeightSpec& w);
double lambda_sphere_radius(double lambda);

}  // namespace slab
