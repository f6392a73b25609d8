#pragma once

#include <cstdint>
#include <vector>

#include "core/field.hpp"
#include "core/numerics.hpp"

namespace slab {

struct DiscDomain {
    Complex center{0.0, 0.0};
    double radius = 1.0;
    int grid_n = 64;  // radial cells; angular count is 2*grid_n
};

// K_q = integral over the plane of dA / |w(w-1)|^q, 1 < q < 2, evaluated by
// the decomposition: polar discs of radius eps at 0 and 1, the remainder of
// D_2(0) split along Re w = 1/2 into two polar patches, the exterior ring
// 2 <= |w| <= rho_max, and an analytic tail beyond rho_max.
double kq_constant(double q, double tol);

// Contribution of the disc of radius eps centered at 0 (or, symmetrically in
// the integrand's two poles, at 1). Near the center it behaves like
// 2*pi*eps^(2-q)/(2-q).
double kq_disc_contribution(double q, double eps);

// Independent stratified importance-sampling estimate of the same constant.
double kq_constant_mc(double q, std::int64_t samples, std::uint64_t seed);

// Two-sided evaluation of the adapted Cauchy integral representation
//   2*pi*i * h(xi) * xi^{-k} = contour integral of h/(z^k (z-xi)) over |z|=R
//                            + area integral of h_zbar/(z^k (z-xi)) dz^dzbar.
struct CauchyPompeiuResult {
    Complex lhs;
    Complex boundary;
    Complex area;
    double residual = 0.0;  // |lhs - boundary - area|
};

CauchyPompeiuResult cauchy_pompeiu_eval(const FieldOnDisc& field, int k, Complex xi,
                                        const DiscDomain& domain);
double cauchy_pompeiu_residual(const FieldOnDisc& field, int k, Complex xi,
                               const DiscDomain& domain);

// min over a polar grid of phi(z)*G(|h(z)|) - |h_zbar(z)|; >= 0 certifies the
// weak-holomorphy hypothesis on the grid.
double weak_bound_margin(const FieldOnDisc& field, const GrowthBound& bound,
                         const DiscDomain& domain);

struct ZeroOrderReport {
    double order_loglog = 0.0;
    int order_winding = 0;
    double fit_residual = 0.0;
    std::vector<double> radii_used;
};

ZeroOrderReport zero_order_loglog(const FieldOnDisc& field, Complex z0,
                                  const std::vector<double>& radii);

int zero_order_winding(const FieldOnDisc& field, Complex z0, double r);

// Poincare index of the line field Im(P dz^2) = 0: minus half the winding.
double direction_field_index(const FieldOnDisc& P_field, Complex z0, double r);

}  // namespace slab
