#include "core/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace slab {

namespace {

constexpr double kSeriesSwitch = 1e-2;  // series/integrator handoff
constexpr double kTrustRadius = 5e-2;   // taylor_profile validity
constexpr double kVerticalTangent = 1e3;
constexpr int kInternalOrder = 12;      // series order used by the curve code

using Poly = std::vector<double>;  // coefficients by ascending power

Poly poly_mul(const Poly& a, const Poly& b, size_t trunc) {
    Poly out(std::min(trunc + 1, a.size() + b.size() - 1), 0.0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (size_t j = 0; j < b.size() && i + j <= trunc; ++j) {
            if (i + j < out.size()) out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

Poly poly_deriv(const Poly& a) {
    if (a.size() <= 1) return {0.0};
    Poly out(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) out[i - 1] = i * a[i];
    return out;
}

double poly_coeff(const Poly& a, size_t i) { return i < a.size() ? a[i] : 0.0; }

// Coefficient of x^j in (1+gamma'^2)[(x^2/2 - 1)gamma' - (x/2)gamma].
double rhs_coeff(const Poly& c, size_t j) {
    const size_t trunc = j + 1;
    const Poly d = poly_deriv(c);
    Poly t(trunc + 1, 0.0);
    for (size_t i = 0; i < t.size(); ++i) {
        double v = -poly_coeff(d, i);                       // -gamma'
        if (i >= 2) v += 0.5 * poly_coeff(d, i - 2);        // (x^2/2) gamma'
        if (i >= 1) v -= 0.5 * poly_coeff(c, i - 1);        // -(x/2) gamma
        t[i] = v;
    }
    const Poly d2 = poly_mul(d, d, trunc);
    Poly one_d2(d2);
    if (one_d2.empty()) one_d2.push_back(0.0);
    one_d2[0] += 1.0;
    const Poly rhs = poly_mul(one_d2, t, trunc);
    return poly_coeff(rhs, j);
}

Poly full_series(double b, int degree) {
    Poly c(degree + 1, 0.0);
    c[0] = b;
    // Matching x^j in x*gamma'' = RHS determines c_{j+1}. The right side is
    // affine in the candidate coefficient (the only nonlinear route would go
    // through gamma'^2 against c_1 = 0), so two evaluations pin it down.
    for (int j = 0; j + 1 <= degree; ++j) {
        c[j + 1] = 0.0;
        const double r0 = rhs_coeff(c, j);
        c[j + 1] = 1.0;
        const double r1 = rhs_coeff(c, j);
        const double denom = static_cast<double>(j + 1) * j - (r1 - r0);
        c[j + 1] = r0 / denom;
    }
    return c;
}

std::vector<double> even_part(const Poly& c) {
    std::vector<double> a;
    for (size_t i = 0; i < c.size(); i += 2) a.push_back(c[i]);
    return a;
}

void graph_rhs(double x, const std::vector<double>& y, std::vector<double>& dy) {
    const double gp = y[1];
    dy[0] = gp;
    dy[1] = (1.0 + gp * gp) * ((0.5 * x - 1.0 / x) * gp - 0.5 * y[0]);
}

}  // namespace

std::vector<double> series_coefficients(double b, int order) {
    if (order < 4 || order % 2 != 0)
        throw DomainError("series_coefficients: order must be an even integer >= 4");
    return even_part(full_series(b, order));
}

double series_eval(const std::vector<double>& even_coeffs, double x) {
    const double u = x * x;
    double v = 0.0;
    for (size_t i = even_coeffs.size(); i-- > 0;) v = v * u + even_coeffs[i];
    return v;
}

double series_eval_deriv(const std::vector<double>& even_coeffs, double x) {
    const double u = x * x;
    double v = 0.0;
    for (size_t i = even_coeffs.size(); i-- > 1;) {
        v = v * u + 2.0 * static_cast<double>(i) * even_coeffs[i];
    }
    return v * x;
}

ProfileState taylor_profile(double b, double x, int order) {
    if (std::abs(x) > kTrustRadius * (1.0 + 1e-12))
        throw DomainError("taylor_profile: |x| beyond the series trust radius; use the integrator");
    const std::vector<double> a = series_coefficients(b, order);
    return {x, series_eval(a, x), series_eval_deriv(a, x)};
}

double series_residual_slope(double b, int order) {
    const std::vector<double> a = series_coefficients(b, order);
    std::vector<double> lx, lr;
    // window chosen above the double-precision floor: the truncation residual
    // is O(x^{order-1}) and would drown in roundoff below x ~ 0.03
    const int n = 12;
    for (int j = 0; j < n; ++j) {
        const double x = 0.4 * std::pow(0.25, j / (n - 1.0));
        const double g = series_eval(a, x);
        const double gp = series_eval_deriv(a, x);
        double gpp = 0.0;
        for (size_t k = 1; k < a.size(); ++k) {
            const double m = 2.0 * static_cast<double>(k);
            gpp += m * (m - 1.0) * a[k] * std::pow(x, m - 2.0);
        }
        const double rhs = (1.0 + gp * gp) * ((0.5 * x - 1.0 / x) * gp - 0.5 * g);
        const double res = std::abs(gpp - rhs);
        if (res < 1e-300) continue;
        lx.push_back(std::log(x));
        lr.push_back(std::log(res));
    }
    if (lx.size() < 3)
        throw DegenerateError("series_residual_slope: residual vanishes identically");
    return fit_line(lx, lr).slope;
}

ProfileState ProfileCurve::eval(double x) const {
    if (chart != "graph") throw DomainError("ProfileCurve::eval: graph chart only");
    if (x < 0.0) throw DomainError("ProfileCurve::eval: x must be nonnegative");
    if (x <= x0) return {x, series_eval(even_coeffs, x), series_eval_deriv(even_coeffs, x)};
    if (x > x_max * (1.0 + 1e-12))
        throw DomainError("ProfileCurve::eval: x beyond the integrated range");
    std::vector<double> y;
    sol.eval(std::min(x, x_max), y);
    return {x, y[0], y[1]};
}

ProfileCurve integrate_graph(double b, double x_end, double tol) {
    if (!(x_end > kSeriesSwitch))
        throw DomainError("integrate_graph: x_end must exceed the series switch point");
    if (!(tol > 0.0)) throw DomainError("integrate_graph: tol must be positive");

    ProfileCurve curve;
    curve.chart = "graph";
    curve.b = b;
    curve.axis_start = true;
    curve.x0 = kSeriesSwitch;
    curve.even_coeffs = series_coefficients(b, kInternalOrder);

    std::vector<double> y0 = {series_eval(curve.even_coeffs, curve.x0),
                              series_eval_deriv(curve.even_coeffs, curve.x0)};

    OdeOptions opts;
    opts.abs_tol = tol;
    opts.rel_tol = tol;
    opts.initial_step = 1e-3;
    opts.max_step = 0.05;

    std::vector<OdeEvent> events;
    events.push_back({1, [](double, const std::vector<double>& y) {
                          return kVerticalTangent - std::abs(y[1]);
                      }});
    events.push_back({2, [](double, const std::vector<double>& y) { return y[0]; }});

    curve.sol = integrate_ode(graph_rhs, curve.x0, y0, x_end, opts, events);
    curve.x_max = curve.sol.ts.back();

    curve.samples.push_back({0.0, b, 0.0});
    for (double xs : {0.0025, 0.005, 0.0075}) {
        curve.samples.push_back(
            {xs, series_eval(curve.even_coeffs, xs), series_eval_deriv(curve.even_coeffs, xs)});
    }
    for (size_t i = 0; i < curve.sol.ts.size(); ++i) {
        curve.samples.push_back(
            {curve.sol.ts[i], curve.sol.ys[i][0], curve.sol.ys[i][1]});
    }

    if (curve.sol.event_id == 1)
        curve.events.push_back({"vertical_tangent", curve.sol.event_t});
    else if (curve.sol.event_id == 2)
        curve.events.push_back({"height_zero", curve.sol.event_t});
    if (curve.sol.step_underflow)
        curve.events.push_back({"max_reached", curve.x_max});
    return curve;
}

ProfileCurve integrate_arclength(const ArcState& start, double s_end, double tol,
                                 const ArcOptions& arc) {
    if (!(start.x > 0.0)) throw DomainError("integrate_arclength: start.x must be positive");
    if (!(tol > 0.0)) throw DomainError("integrate_arclength: tol must be positive");

    auto rhs = [](double, const std::vector<double>& y, std::vector<double>& dy) {
        const double x = y[0], h = y[1], th = y[2];
        const double st = std::sin(th), ct = std::cos(th);
        dy[0] = ct;
        dy[1] = st;
        dy[2] = 0.5 * (x * st - h * ct) - st / x;
    };

    OdeOptions opts;
    opts.abs_tol = tol;
    opts.rel_tol = tol;
    opts.initial_step = 1e-3;
    opts.max_step = 0.05;

    std::vector<OdeEvent> events;
    events.push_back({1, [eps = arc.axis_eps](double, const std::vector<double>& y) {
                          return y[0] - eps;
                      }});
    if (arc.x_stop > 0.0) {
        events.push_back({2, [xs = arc.x_stop](double, const std::vector<double>& y) {
                              return y[0] - xs;
                          }});
    }
    if (arc.stop_height_zero) {
        events.push_back({3, [](double, const std::vector<double>& y) { return y[1]; }});
    }
    if (arc.escape_radius > 0.0) {
        events.push_back({4, [r2 = arc.escape_radius * arc.escape_radius](
                                 double, const std::vector<double>& y) {
                              return y[0] * y[0] + y[1] * y[1] - r2;
                          }});
    }

    OdeSolution sol = integrate_ode(rhs, start.s, {start.x, start.y, start.theta},
                                    start.s + s_end, opts, events);

    ProfileCurve curve;
    curve.chart = "arclength";
    curve.b = std::numeric_limits<double>::quiet_NaN();
    for (size_t i = 0; i < sol.ts.size(); ++i) {
        curve.arc_samples.push_back(
            {sol.ts[i], sol.ys[i][0], sol.ys[i][1], sol.ys[i][2]});
    }
    if (sol.event_id == 1) curve.events.push_back({"axis_cross_x", sol.event_t});
    if (sol.event_id == 2 || sol.event_id == 4)
        curve.events.push_back({"max_reached", sol.event_t});
    if (sol.event_id == 3) curve.events.push_back({"height_zero", sol.event_t});
    if (sol.step_underflow) curve.events.push_back({"max_reached", sol.ts.back()});
    curve.sol = std::move(sol);
    return curve;
}

CurvatureSample curvature_sample(const ProfileState& state) {
    const double x = state.x, g = state.gamma, gp = state.gamma_p;
    if (!(x > 0.0))
        throw DomainError("curvature_sample: x must be positive (use the series at the axis)");
    const double w2 = 1.0 + gp * gp;
    const double w = std::sqrt(w2);
    CurvatureSample cs;
    cs.k1 = -gp / (x * w);
    // gamma'' comes from the profile equation, never from differencing.
    cs.k2 = -((0.5 * x - 1.0 / x) * gp - 0.5 * g) / w;
    cs.H = cs.k1 + cs.k2;
    cs.phi_norm = std::abs((x * x - 4.0) * gp - x * g) / (2.0 * std::sqrt(2.0) * x * w);
    cs.x_norm_sq = x * x + g * g;
    const double tang = x + g * gp;
    cs.tangency_defect = tang * tang / w2;
    cs.F_val = x * g - (x * x - 4.0) * gp;
    return cs;
}

UmbilicScan umbilic_scan(const ProfileCurve& curve) {
    if (curve.chart != "graph") throw DomainError("umbilic_scan: graph chart only");
    std::vector<double> xs;
    for (double x = 1e-3; x < curve.x0; x += 2e-3) xs.push_back(x);
    for (const ProfileState& st : curve.samples) {
        if (st.x > 0.0) xs.push_back(st.x);
    }
    std::sort(xs.begin(), xs.end());

    auto F_at = [&](double x) {
        const ProfileState st = curve.eval(x);
        return x * st.gamma - (x * x - 4.0) * st.gamma_p;
    };

    double fmax = 0.0, scale = 0.0;
    std::vector<double> fv(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        const ProfileState st = curve.eval(xs[i]);
        fv[i] = xs[i] * st.gamma - (xs[i] * xs[i] - 4.0) * st.gamma_p;
        fmax = std::max(fmax, std::abs(fv[i]));
        scale = std::max(scale,
                         std::abs(xs[i] * st.gamma) + std::abs((xs[i] * xs[i] - 4.0) * st.gamma_p));
    }

    UmbilicScan out;
    if (fmax <= 1e-6 * std::max(scale, 1e-30)) {
        out.totally_umbilic = true;
        return out;
    }
    if (curve.axis_start) out.locations.push_back(0.0);
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        if (fv[i] == 0.0) {
            out.locations.push_back(xs[i]);
        } else if ((fv[i] > 0) != (fv[i + 1] > 0)) {
            out.locations.push_back(bisect(F_at, xs[i], xs[i + 1], 1e-12));
        }
    }
    return out;
}

double ratio_field(const CurvatureSample& sample) {
    if (!(sample.phi_norm > 0.0))
        throw DomainError("ratio_field: umbilic point (phi_norm = 0)");
    return std::sqrt(sample.tangency_defect * sample.H * sample.H) / sample.phi_norm;
}

namespace {

void check_non_special_b(double b, const char* who) {
    if (std::abs(b) < 1e-12)
        throw DomainError(std::string(who) + ": b = 0 is the totally umbilic plane");
    if (std::abs(b - 2.0) < 1e-12)
        throw DomainError(std::string(who) + ": b = 2 is the totally umbilic sphere");
}

}  // namespace

AxisLimitReport axis_ratio_limit(double b) {
    check_non_special_b(b, "axis_ratio_limit");
    const Poly c = full_series(b, kInternalOrder);
    const std::vector<double> a = even_part(c);

    // Linear coefficient of x + gamma*gamma' and cubic coefficient of F.
    const Poly d = poly_deriv(c);
    const Poly gg = poly_mul(c, d, 4);
    const double c1 = 1.0 + poly_coeff(gg, 1);
    // F = x*gamma - (x^2-4)*gamma'
    const double c3 = poly_coeff(c, 2) - poly_coeff(d, 1) + 4.0 * poly_coeff(d, 3);
    if (std::abs(c3) < 1e-300)
        throw DomainError("axis_ratio_limit: degenerate cubic coefficient");

    AxisLimitReport rep;
    rep.series_predicted = std::sqrt(2.0) * std::abs(b) * std::abs(c1) / std::abs(c3);
    const double bsq = b * b / 4.0;
    rep.closed_form_reference = 32.0 * std::sqrt(2.0) * std::abs(1.0 - bsq) / (1.0 + bsq);

    std::vector<double> vals;
    for (int j = 0; j <= 8; ++j) {
        const double x = 0.1 * std::pow(2.0, -j);
        const ProfileState st{x, series_eval(a, x), series_eval_deriv(a, x)};
        vals.push_back(x * ratio_field(curvature_sample(st)));
    }
    const RichardsonResult r = richardson_limit(vals, 2.0, 2.0);
    rep.limit = r.limit;
    rep.rel_spread = r.rel_spread;
    if (!(rep.rel_spread < 1e-6))
        throw ConvergenceError("axis_ratio_limit: extrapolation did not settle", r.limit);
    return rep;
}

double lp_integral(const ProfileCurve& curve, double p, double delta, double eps) {
    if (!(p > 2.0)) throw DomainError("lp_integral: p must exceed 2");
    if (!(delta > 0.0 && delta < eps)) throw DomainError("lp_integral: need 0 < delta < eps");
    if (eps > curve.x_max * (1.0 + 1e-12))
        throw DomainError("lp_integral: eps beyond the integrated range");
    // The integrand behaves like x^{1-p} near the axis; integrating in
    // s = log x turns that into a tame exponential e^{(2-p)s}. Inside the
    // series trust radius the series is used directly: the ratio field is a
    // quotient of O(x^2) cancellations and dense-output interpolation noise
    // would otherwise dominate it.
    auto state_at = [&](double x) {
        if (curve.axis_start && x <= kTrustRadius)
            return ProfileState{x, series_eval(curve.even_coeffs, x),
                                series_eval_deriv(curve.even_coeffs, x)};
        return curve.eval(x);
    };
    auto integrand = [&](double s) {
        const double x = std::exp(s);
        const ProfileState st = state_at(x);
        const CurvatureSample cs = curvature_sample(st);
        return std::pow(ratio_field(cs), p) * x * x *
               std::sqrt(1.0 + st.gamma_p * st.gamma_p);
    };
    // Integrate octave by octave with a per-piece relative tolerance: the
    // integrand magnitude spans many decades over [delta, eps] and a single
    // absolute tolerance either stalls the recursion or chases roundoff.
    const double ln2 = std::numbers::ln2;
    double total = 0.0;
    double lo = std::log(delta);
    const double hi = std::log(eps);
    while (lo < hi) {
        const double up = std::min(lo + ln2, hi);
        // relative 1e-6 per piece: the ratio field is an O(x^2)/O(x^2)
        // cancellation whose roundoff noise sits near 1e-16/x^2 relative,
        // well above 1e-9 at the smallest offsets the sweeps reach
        const double scale = std::abs(integrand(lo)) * (up - lo) + 1e-300;
        const QuadResult q = integrate_adaptive(integrand, lo, up, 1e-6 * scale, 36);
        if (!q.converged)
            throw ConvergenceError("lp_integral: quadrature failed",
                                   2.0 * std::numbers::pi * (total + q.value));
        total += q.value;
        lo = up;
    }
    return 2.0 * std::numbers::pi * total;
}

double lp_integral(double b, double p, double delta, double eps) {
    const ProfileCurve curve = integrate_graph(b, std::max(eps * 1.02, 0.05), 1e-10);
    return lp_integral(curve, p, delta, eps);
}

double lp_exponent_fit(double b, double p) {
    if (!(p > 2.0)) throw DomainError("lp_integral: p must exceed 2");
    check_non_special_b(b, "lp_exponent_fit");
    const double eps = 0.04;
    const ProfileCurve curve = integrate_graph(b, 0.05, 1e-10);
    std::vector<double> ds, is;
    for (int j = 1; j <= 10; ++j) {
        const double d = eps * std::pow(2.0, -j);
        ds.push_back(d);
        is.push_back(lp_integral(curve, p, d, eps));
    }
    const double s0 = 2.0 - p;
    return fit_power_law_with_offset(ds, is, s0 - 1.5, std::min(-0.05, s0 + 1.5));
}

AxisOrderReport zero_order_report_axis(double b) {
    check_non_special_b(b, "zero_order_report");
    const std::vector<double> a = series_coefficients(b, kInternalOrder);
    std::vector<double> lx, lphi, ldef;
    const int n = 8;
    for (int j = 0; j < n; ++j) {
        const double x = 0.05 * std::pow(0.1, j / 7.0);
        const ProfileState st{x, series_eval(a, x), series_eval_deriv(a, x)};
        const CurvatureSample cs = curvature_sample(st);
        lx.push_back(std::log(x));
        lphi.push_back(std::log(cs.phi_norm * cs.phi_norm));
        ldef.push_back(std::log(cs.tangency_defect * cs.H * cs.H));
    }
    AxisOrderReport rep;
    rep.order_phi_sq = fit_line(lx, lphi).slope;
    rep.order_defect_h_sq = fit_line(lx, ldef).slope;
    rep.criterion = rep.order_phi_sq - rep.order_defect_h_sq;
    return rep;
}

std::vector<ShootRow> shoot_profile(double b_lo, double b_hi, int n) {
    std::vector<ShootRow> rows;
    if (n <= 0 || b_lo > b_hi) return rows;
    if (n < 2) throw DomainError("shoot_profile: n must be >= 2");
    for (int i = 0; i < n; ++i) {
        const double b = b_lo + (b_hi - b_lo) * i / (n - 1);
        const std::vector<double> a = series_coefficients(b, kInternalOrder);
        const double x0 = kSeriesSwitch;
        const ArcState start{0.0, x0, series_eval(a, x0),
                             std::atan(series_eval_deriv(a, x0))};
        ArcOptions arc;
        arc.axis_eps = 1e-3;
        arc.escape_radius = 10.0;
        const ProfileCurve curve = integrate_arclength(start, 60.0, 1e-10, arc);

        bool crossed_h0 = false;
        for (size_t j = 0; j + 1 < curve.arc_samples.size(); ++j) {
            if ((curve.arc_samples[j].y > 0) != (curve.arc_samples[j + 1].y > 0))
                crossed_h0 = true;
        }
        const ArcState& last = curve.arc_samples.back();
        ShootRow row;
        row.b = b;
        row.s_final = last.s;
        row.x = last.x;
        row.y = last.y;
        row.theta = last.theta;
        if (curve.sol.event_id == 1) {
            row.classification =
                std::abs(std::sin(last.theta)) < 0.1 ? "closed" : "axis_return";
        } else if (curve.sol.event_id == 4) {
            row.classification = crossed_h0 ? "escape_h0" : "escape";
        } else {
            row.classification = crossed_h0 ? "budget_h0" : "budget";
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

double chart_consistency_dev(double b) {
    const ProfileCurve graph = integrate_graph(b, 1.05, 1e-12);
    const ProfileState st = graph.eval(0.05);
    const ArcState start{0.0, st.x, st.gamma, std::atan(st.gamma_p)};
    ArcOptions arc;
    arc.axis_eps = 1e-4;
    arc.x_stop = 1.0;
    const ProfileCurve arc_curve = integrate_arclength(start, 5.0, 1e-12, arc);

    double dev = 0.0;
    for (const ArcState& as : arc_curve.arc_samples) {
        if (as.x < 0.05 || as.x > 1.0) continue;
        dev = std::max(dev, std::abs(as.y - graph.eval(as.x).gamma));
    }
    // Compare the terminal x = 1 state as well via the event location.
    if (arc_curve.sol.event_id == 2) {
        dev = std::max(dev, std::abs(arc_curve.sol.event_y[1] - graph.eval(1.0).gamma));
    }
    return dev;
}

}  // namespace slab
