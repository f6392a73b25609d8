#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "core/ode.hpp"
#include "core/profile.hpp"

using namespace slab;

namespace {

// gamma'' for the profile equation, written independently of the library's
// internal right-hand side.
double profile_rhs(double x, double g, double gp) {
    return (1.0 + gp * gp) * ((x / 2.0 - 1.0 / x) * gp - g / 2.0);
}

double sphere_gamma(double x) { return std::sqrt(4.0 - x * x); }
double sphere_gamma_p(double x) { return -x / std::sqrt(4.0 - x * x); }

}  // namespace

TEST_CASE("leading series coefficients") {
    for (double b : {0.5, 1.0, 2.0, 3.0}) {
        const std::vector<double> a = series_coefficients(b, 8);
        CHECK(a[0] == b);
        CHECK(std::abs(a[1] - (-b / 8.0)) < 1e-12);
    }
}

TEST_CASE("b = 2 series reproduces the sphere binomial expansion") {
    // sqrt(4-x^2) = 2 * sum_k C(1/2,k) (-x^2/4)^k
    const std::vector<double> a = series_coefficients(2.0, 12);
    double binom = 1.0;  // C(1/2, k) running product
    for (int k = 0; k < static_cast<int>(a.size()); ++k) {
        const double expect = 2.0 * binom * std::pow(-0.25, k);
        CHECK(std::abs(a[k] - expect) < 1e-12);
        binom *= (0.5 - k) / (k + 1.0);
    }
}

TEST_CASE("the x^4 coefficient follows the recursion, not the published form") {
    // the recursion gives a4 = -(b/256)(1 + b^2/4); the alternative closed
    // form -(b/256)(3 + b^2/4) contradicts the exact b = 2 sphere
    for (double b : {0.5, 1.0, 2.0, 3.0}) {
        const std::vector<double> a = series_coefficients(b, 8);
        CHECK(std::abs(a[2] - (-(b / 256.0) * (1.0 + b * b / 4.0))) < 1e-12);
    }
    const std::vector<double> s = series_coefficients(2.0, 8);
    CHECK(std::abs(s[2] - (-1.0 / 64.0)) < 1e-14);  // sphere x^4 coefficient
}

TEST_CASE("truncated series leaves a high-order equation residual") {
    CHECK(series_residual_slope(1.0, 8) > 6.8);
    CHECK(series_residual_slope(0.5, 10) > 8.8);
}

TEST_CASE("taylor evaluation near the axis") {
    const ProfileState st = taylor_profile(2.0, 0.04, 10);
    CHECK(std::abs(st.gamma - sphere_gamma(0.04)) < 1e-10);
    CHECK(std::abs(st.gamma_p - sphere_gamma_p(0.04)) < 1e-9);
    CHECK_THROWS_AS(taylor_profile(1.0, 0.2, 10), DomainError);  // trust radius
}

TEST_CASE("series agrees with a direct integration started off-axis") {
    const double b = 1.0;
    const std::vector<double> a = series_coefficients(b, 12);
    const double x_start = 1e-4, x_stop = 0.04;
    OdeOptions opts;
    opts.abs_tol = opts.rel_tol = 1e-13;
    const OdeSolution sol = integrate_ode(
        [](double x, const std::vector<double>& y, std::vector<double>& dy) {
            dy[0] = y[1];
            dy[1] = profile_rhs(x, y[0], y[1]);
        },
        x_start, {series_eval(a, x_start), series_eval_deriv(a, x_start)},
        x_stop, opts);
    std::vector<double> yf(2);
    sol.eval(x_stop, yf);
    CHECK(std::abs(yf[0] - series_eval(a, x_stop)) < 1e-9);
    CHECK(std::abs(yf[1] - series_eval_deriv(a, x_stop)) < 1e-8);
}

TEST_CASE("b = 2 integrates to the round sphere") {
    const ProfileCurve c = integrate_graph(2.0, 1.9, 1e-10);
    for (double x : {0.2, 0.7, 1.2, 1.7, 1.9}) {
        const ProfileState st = c.eval(x);
        CHECK(std::abs(st.gamma - sphere_gamma(x)) < 1e-8);
        CHECK(std::abs(st.gamma_p - sphere_gamma_p(x)) < 1e-7);
    }
}

TEST_CASE("b = 0 integrates to the flat plane") {
    const ProfileCurve c = integrate_graph(0.0, 1.0, 1e-12);
    for (double x : {0.1, 0.5, 1.0}) {
        CHECK(std::abs(c.eval(x).gamma) < 1e-12);
        CHECK(std::abs(c.eval(x).gamma_p) < 1e-12);
    }
}

TEST_CASE("tolerance controls the integration error") {
    const ProfileCurve lo = integrate_graph(1.0, 1.5, 1e-6);
    const ProfileCurve hi = integrate_graph(1.0, 1.5, 1e-11);
    double dev = 0.0;
    for (double x = 0.1; x <= 1.5; x += 0.1)
        dev = std::max(dev, std::abs(lo.eval(x).gamma - hi.eval(x).gamma));
    CHECK(dev < 1e-5);
    CHECK(dev > 0.0);
}

TEST_CASE("vertical tangent event on the sphere equator") {
    const ProfileCurve c = integrate_graph(2.0, 3.0, 1e-10);
    bool found = false;
    for (const ProfileEvent& e : c.events) {
        if (e.kind == "vertical_tangent") {
            found = true;
            CHECK(std::abs(e.location - 2.0) < 1e-4);
        }
    }
    CHECK(found);
}

TEST_CASE("arclength chart reproduces the sphere circle") {
    ArcState start;
    start.x = 2.0 * std::sin(0.1);
    start.y = 2.0 * std::cos(0.1);
    start.theta = -0.1;
    const ProfileCurve c = integrate_arclength(start, 2.0, 1e-11);
    for (const ArcState& st : c.arc_samples) {
        const double phase = 0.1 + st.s / 2.0;
        CHECK(std::abs(st.x - 2.0 * std::sin(phase)) < 1e-8);
        CHECK(std::abs(st.y - 2.0 * std::cos(phase)) < 1e-8);
        CHECK(std::abs(st.theta + phase) < 1e-8);
    }
}

TEST_CASE("arclength chart keeps the plane flat") {
    ArcState start;
    start.x = 0.5;
    const ProfileCurve c = integrate_arclength(start, 1.0, 1e-12);
    for (const ArcState& st : c.arc_samples) {
        CHECK(std::abs(st.y) < 1e-12);
        CHECK(std::abs(st.theta) < 1e-12);
    }
}

TEST_CASE("graph and arclength charts agree") {
    for (double b : {0.5, 1.0, 3.0}) {
        CHECK(chart_consistency_dev(b) < 1e-8);
    }
}

TEST_CASE("sphere curvatures") {
    for (double x : {0.3, 1.0, 1.7}) {
        const CurvatureSample cs =
            curvature_sample({x, sphere_gamma(x), sphere_gamma_p(x)});
        CHECK(std::abs(cs.k1 - 0.5) < 1e-12);
        CHECK(std::abs(cs.k2 - 0.5) < 1e-12);
        CHECK(std::abs(cs.H - 1.0) < 1e-12);
        CHECK(cs.phi_norm < 1e-12);
        CHECK(cs.tangency_defect < 1e-12);
        CHECK(std::abs(cs.F_val) < 1e-12);
    }
}

TEST_CASE("curvature identities on a generic profile") {
    const ProfileCurve c = integrate_graph(1.0, 1.2, 1e-10);
    for (double x : {0.2, 0.6, 1.0}) {
        const CurvatureSample cs = curvature_sample(c.eval(x));
        CHECK(std::abs(cs.phi_norm - std::abs(cs.k1 - cs.k2) / std::sqrt(2.0)) <
              1e-12);
        CHECK(std::abs(cs.H - (cs.k1 + cs.k2)) < 1e-12);
        CHECK(cs.tangency_defect > 0.0);
    }
    // mean curvature stays bounded away from zero near the axis
    CHECK(std::abs(curvature_sample(c.eval(0.001)).H - 0.5) < 1e-2);
}

TEST_CASE("umbilic scan distinguishes round and generic profiles") {
    const ProfileCurve sphere = integrate_graph(2.0, 1.0, 1e-10);
    CHECK(umbilic_scan(sphere).totally_umbilic);

    const ProfileCurve plane = integrate_graph(0.0, 1.0, 1e-10);
    CHECK(umbilic_scan(plane).totally_umbilic);

    const ProfileCurve gen = integrate_graph(1.0, 1.0, 1e-10);
    CHECK_FALSE(umbilic_scan(gen).totally_umbilic);
}

TEST_CASE("axis limit of x times the curvature ratio") {
    for (double b : {0.5, 1.0, 3.0}) {
        const AxisLimitReport r = axis_ratio_limit(b);
        // the b-dependence cancels: sqrt(2) b |c1| / |c3| = 16 sqrt(2)
        CHECK(std::abs(r.series_predicted - 16.0 * std::sqrt(2.0)) <
              1e-10 * r.series_predicted);
        CHECK(std::abs(r.limit - r.series_predicted) <
              1e-4 * r.series_predicted);
        CHECK(r.rel_spread < 1e-6);
    }
    CHECK_THROWS_AS(axis_ratio_limit(2.0), DomainError);
    CHECK_THROWS_AS(axis_ratio_limit(0.0), DomainError);
}

TEST_CASE("x times ratio stabilizes near the axis") {
    const ProfileCurve c = integrate_graph(1.0, 0.2, 1e-12);
    const double limit = axis_ratio_limit(1.0).limit;
    for (int j = 4; j <= 8; ++j) {
        const double x = 0.1 * std::pow(2.0, -j);
        const double v = x * ratio_field(curvature_sample(c.eval(x)));
        CHECK(std::abs(v - limit) < 0.05 * limit);
    }
}

TEST_CASE("L^p integral of the ratio field diverges like delta^(2-p)") {
    CHECK(std::abs(lp_exponent_fit(1.0, 2.5) - (-0.5)) < 0.05);
    CHECK(std::abs(lp_exponent_fit(1.0, 3.0) - (-1.0)) < 0.05);
    CHECK(std::abs(lp_exponent_fit(3.0, 3.0) - (-1.0)) < 0.05);
}

TEST_CASE("L^p integral input validation") {
    CHECK_THROWS_AS(lp_integral(1.0, 2.0, 1e-3, 0.04), DomainError);
    CHECK_THROWS_AS(lp_integral(1.0, 3.0, 0.05, 0.04), DomainError);
    CHECK(lp_integral(1.0, 3.0, 1e-3, 0.04) > 0.0);
}

TEST_CASE("vanishing orders at the axis") {
    for (double b : {1.0, 3.0}) {
        const AxisOrderReport r = zero_order_report_axis(b);
        CHECK(std::abs(r.order_phi_sq - 4.0) < 0.1);
        CHECK(std::abs(r.order_defect_h_sq - 2.0) < 0.1);
        CHECK(std::abs(r.criterion - 2.0) < 0.2);
    }
}

TEST_CASE("shooting classifications") {
    const std::vector<ShootRow> sphere = shoot_profile(2.0, 2.0, 2);
    REQUIRE(sphere.size() == 2);
    CHECK(sphere[0].classification == "closed");

    // generic b spirals around the cylinder fixed point until the budget runs
    // out; only the sphere closes up
    const std::vector<ShootRow> lo = shoot_profile(0.1, 0.1, 2);
    CHECK(lo[0].classification == "budget_h0");
    CHECK(lo[0].classification != sphere[0].classification);
    CHECK(lo[0].s_final == 60.0);

    CHECK(shoot_profile(1.0, 2.0, 0).empty());
    CHECK(shoot_profile(3.0, 1.0, 5).empty());
    CHECK_THROWS_AS(shoot_profile(1.0, 2.0, 1), DomainError);
}
