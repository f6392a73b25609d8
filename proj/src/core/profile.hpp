#pragma once

#include <string>
#include <vector>

#include "core/numerics.hpp"
#include "core/ode.hpp"

namespace slab {

// Profile equation for a rotational self-shrinker written as a graph
// (x, gamma(x)) over the distance x to the rotation axis:
//   gamma'' = (1 + gamma'^2) * [ (x/2 - 1/x) gamma' - gamma/2 ].
// The unit normal convention is N = (gamma', -1)/sqrt(1+gamma'^2), under
// which -2H = <X, N>.

struct ProfileState {
    double x = 0.0;
    double gamma = 0.0;
    double gamma_p = 0.0;
};

struct ArcState {
    double s = 0.0;
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;  // tangent angle: (x', y') = (cos theta, sin theta)
};

struct CurvatureSample {
    double k1 = 0.0;         // rotational principal curvature
    double k2 = 0.0;         // profile principal curvature
    double H = 0.0;          // k1 + k2
    double phi_norm = 0.0;   // |k1 - k2| / sqrt(2)
    double x_norm_sq = 0.0;  // |X|^2
    double tangency_defect = 0.0;  // |X|^2 - <X,N>^2 = (x + gamma*gamma')^2/(1+gamma'^2)
    double F_val = 0.0;      // x*gamma - (x^2 - 4)*gamma'
};

struct ProfileEvent {
    std::string kind;  // vertical_tangent | axis_cross_x | height_zero | max_reached
    double location = 0.0;
};

struct ProfileCurve {
    std::string chart;  // "graph" | "arclength"
    double b = 0.0;
    bool axis_start = false;
    std::vector<ProfileState> samples;      // graph chart
    std::vector<ArcState> arc_samples;      // arclength chart
    std::vector<ProfileEvent> events;

    // graph-chart evaluation machinery
    double x0 = 0.0;                 // series/integrator switch point
    std::vector<double> even_coeffs; // series on [0, x0]
    OdeSolution sol;
    double x_max = 0.0;

    ProfileState eval(double x) const;  // graph chart only
};

// Even-power series gamma = sum a_k x^{2k} solving the profile equation with
// gamma(0) = b, gamma'(0) = 0; coefficients are obtained by matching powers
// in x*gamma'' = (1+gamma'^2)[(x^2/2 - 1)gamma' - x*gamma/2].
// Returns (a_0, a_2, ..., a_order) as coefficients of x^0, x^2, ..., x^order.
std::vector<double> series_coefficients(double b, int order);

double series_eval(const std::vector<double>& even_coeffs, double x);
double series_eval_deriv(const std::vector<double>& even_coeffs, double x);

// Series evaluation inside the trust radius 5e-2.
ProfileState taylor_profile(double b, double x, int order);

// Log-log slope of |gamma'' - rhs| versus x on [1e-3, 1e-1] for the truncated
// series; a degree-n truncation leaves an O(x^{n-1}) residual.
double series_residual_slope(double b, int order);

ProfileCurve integrate_graph(double b, double x_end, double tol);

struct ArcOptions {
    double axis_eps = 1e-3;     // axis-approach threshold on x
    double x_stop = 0.0;        // stop when x rises through this (0 = off)
    bool stop_height_zero = false;
    double escape_radius = 0.0; // stop when |X| exceeds this (0 = off)
};

ProfileCurve integrate_arclength(const ArcState& start, double s_end, double tol,
                                 const ArcOptions& arc = {});

CurvatureSample curvature_sample(const ProfileState& state);

struct UmbilicScan {
    bool totally_umbilic = false;
    std::vector<double> locations;
};

UmbilicScan umbilic_scan(const ProfileCurve& curve);

double ratio_field(const CurvatureSample& sample);

struct AxisLimitReport {
    double limit = 0.0;            // Richardson limit of x * ratio as x -> 0+
    double rel_spread = 0.0;
    double series_predicted = 0.0; // sqrt(2)|b||c1|/|c3| from the series
    double closed_form_reference = 0.0;  // 32*sqrt(2)|1-b^2/4|/(1+b^2/4)
};

AxisLimitReport axis_ratio_limit(double b);

double lp_integral(double b, double p, double delta, double eps);
double lp_integral(const ProfileCurve& curve, double p, double delta, double eps);

// Divergence exponent s of lp_integral(delta) = A*delta^s + B as delta -> 0+,
// fitted over a geometric delta sweep. Expected s = 2 - p.
double lp_exponent_fit(double b, double p);

struct AxisOrderReport {
    double order_phi_sq = 0.0;       // log-log order of |Phi|^2 at the axis
    double order_defect_h_sq = 0.0;  // log-log order of (|X|^2-4H^2) H^2
    double criterion = 0.0;          // difference of the two orders
};

AxisOrderReport zero_order_report_axis(double b);

struct ShootRow {
    double b = 0.0;
    std::string classification;
    double s_final = 0.0;
    double x = 0.0, y = 0.0, theta = 0.0;
};

std::vector<ShootRow> shoot_profile(double b_lo, double b_hi, int n);

// Max |y_arc(x) - gamma_graph(x)| over x in [0.05, 1] after a round trip
// through the arclength chart.
double chart_consistency_dev(double b);

}  // namespace slab
