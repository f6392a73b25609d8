#include "core/ode.hpp"

#include <algorithm>
#include <cmath>

#include "core/numerics.hpp"

namespace slab {

namespace {

// Dormand-Prince RK5(4)7M coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

void DenseSegment::eval(double t, std::vector<double>& y) const {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    y.resize(y0.size());
    for (size_t i = 0; i < y0.size(); ++i) {
        y[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
    }
}

void OdeSolution::eval(double t, std::vector<double>& y) const {
    if (dense.empty()) throw DomainError("OdeSolution::eval: empty solution");
    // Binary search for the segment containing t.
    size_t lo = 0, hi = dense.size() - 1;
    if (t <= dense.front().t0) {
        dense.front().eval(std::max(t, dense.front().t0), y);
        return;
    }
    if (t >= dense.back().t1) {
        dense.back().eval(std::min(t, dense.back().t1), y);
        return;
    }
    while (lo < hi) {
        const size_t mid = (lo + hi) / 2;
        if (dense[mid].t1 < t)
            lo = mid + 1;
        else
            hi = mid;
    }
    dense[lo].eval(t, y);
}

OdeSolution integrate_ode(const OdeRhs& rhs, double t0, std::vector<double> y0,
                          double t_end, const OdeOptions& opts,
                          const std::vector<OdeEvent>& events) {
    const size_t n = y0.size();
    OdeSolution sol;
    if (t_end <= t0) throw DomainError("integrate_ode: t_end must exceed t0");

    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
    std::vector<double> ytmp(n), y5(n), yerr(n);

    double t = t0;
    std::vector<double> y = std::move(y0);
    rhs(t, y, k1);

    sol.ts.push_back(t);
    sol.ys.push_back(y);

    double h = std::min(opts.initial_step, t_end - t0);
    double err_prev = 1.0;
    const double order_exp = 1.0 / 5.0;

    std::vector<double> ev_start(events.size());
    for (size_t e = 0; e < events.size(); ++e) ev_start[e] = events[e].indicator(t, y);

    for (long step = 0; step < opts.max_steps && t < t_end; ++step) {
        h = std::min(h, t_end - t);
        if (h < opts.min_step) {
            sol.step_underflow = true;
            break;
        }
        // Stages.
        for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, ytmp, k2);
        for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, ytmp, k3);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, ytmp, k4);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, ytmp, k5);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        rhs(t + h, ytmp, k6);
        for (size_t i = 0; i < n; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                b6 * k6[i]);
        rhs(t + h, y5, k7);
        for (size_t i = 0; i < n; ++i)
            yerr[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                           e6 * k6[i] + e7 * k7[i]);

        double err = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double sc =
                opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            const double r = yerr[i] / sc;
            err += r * r;
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0 || h <= opts.min_step * 2.0) {
            // Accept.
            DenseSegment seg;
            seg.t0 = t;
            seg.t1 = t + h;
            seg.y0 = y;
            seg.y1 = y5;
            seg.f0 = k1;
            seg.f1 = k7;
            sol.dense.push_back(seg);

            t += h;
            y = y5;
            k1 = k7;  // FSAL
            sol.ts.push_back(t);
            sol.ys.push_back(y);

            // Events on the accepted step.
            bool fired = false;
            for (size_t e = 0; e < events.size(); ++e) {
                const double v1 = events[e].indicator(t, y);
                const double v0 = ev_start[e];
                if (v0 != 0.0 && ((v0 > 0) != (v1 > 0) || v1 == 0.0)) {
                    // Bisection on dense output.
                    const DenseSegment& s = sol.dense.back();
                    double ta = s.t0, tb = t;
                    std::vector<double> yi;
                    double va = v0;
                    while (tb - ta > opts.event_tol * std::max(1.0, std::abs(tb))) {
                        const double tm = 0.5 * (ta + tb);
                        s.eval(tm, yi);
                        const double vm = events[e].indicator(tm, yi);
                        if (vm == 0.0 || (vm > 0) == (va > 0)) {
                            ta = tm;
                            va = vm;
                            if (vm == 0.0) break;
                        } else {
                            tb = tm;
                        }
                    }
                    sol.event_id = events[e].id;
                    sol.event_t = 0.5 * (ta + tb);
                    s.eval(sol.event_t, sol.event_y);
                    fired = true;
                    break;
                }
                ev_start[e] = v1;
            }
            if (fired) return sol;

            // PI controller.
            const double err_clamped = std::max(err, 1e-10);
            double fac = 0.9 * std::pow(err_clamped, -0.7 * order_exp) *
                         std::pow(err_prev, 0.4 * order_exp);
            fac = std::clamp(fac, 0.2, 5.0);
            h = std::min(h * fac, opts.max_step);
            err_prev = err_clamped;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -order_exp));
        }
    }
    return sol;
}

}  // namespace slab
