#include "core/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace slab {

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t n = xs.size();
    if (n < 2 || ys.size() != n) throw DomainError("fit_line: need >= 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw DomainError("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss += r * r;
    }
    fit.residual_norm = std::sqrt(ss);
    return fit;
}

namespace {

double offset_model_sse(const std::vector<double>& xs, const std::vector<double>& ys,
                        double s) {
    // Linear LSQ for y = A * x^s + B.
    const size_t n = xs.size();
    double su = 0, sy = 0, suu = 0, suy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double u = std::pow(xs[i], s);
        su += u;
        sy += ys[i];
        suu += u * u;
        suy += u * ys[i];
    }
    const double denom = n * suu - su * su;
    if (std::abs(denom) < 1e-300) return 1e300;
    const double A = (n * suy - su * sy) / denom;
    const double B = (sy - A * su) / n;
    double sse = 0;
    for (size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (A * std::pow(xs[i], s) + B);
        sse += r * r;
    }
    return sse;
}

}  // namespace

double fit_power_law_with_offset(const std::vector<double>& xs,
                                 const std::vector<double>& ys,
                                 double s_lo, double s_hi) {
    if (xs.size() < 3) throw DomainError("fit_power_law_with_offset: need >= 3 points");
    // Golden section search on the SSE.
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = s_lo, b = s_hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = offset_model_sse(xs, ys, c);
    double fd = offset_model_sse(xs, ys, d);
    for (int it = 0; it < 200 && (b - a) > 1e-10; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = offset_model_sse(xs, ys, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = offset_model_sse(xs, ys, d);
        }
    }
    return 0.5 * (a + b);
}

RichardsonResult richardson_limit(const std::vector<double>& values, double ratio,
                                  double power) {
    const size_t n = values.size();
    if (n < 2) throw DomainError("richardson_limit: need >= 2 values");
    std::vector<std::vector<double>> tab(n);
    tab[0] = values;  // tab[m][j] uses values j..j+m
    double prev = values.back();
    double last = prev;
    for (size_t m = 1; m < n; ++m) {
        tab[m].resize(n - m);
        const double f = std::pow(ratio, power * static_cast<double>(m));
        for (size_t j = 0; j + m < n; ++j) {
            tab[m][j] = (f * tab[m - 1][j + 1] - tab[m - 1][j]) / (f - 1.0);
        }
        prev = last;
        last = tab[m][0];
    }
    RichardsonResult r;
    r.limit = last;
    const double scale = std::max(std::abs(last), 1e-300);
    r.rel_spread = std::abs(last - prev) / scale;
    return r;
}

double bisect(const std::function<double(double)>& f, double a, double b,
              double rel_tol) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0) == (fb > 0)) throw DomainError("bisect: no sign change in bracket");
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0) == (fa > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        if (std::abs(b - a) <= rel_tol * std::max(std::abs(a), std::abs(b)) ||
            std::abs(b - a) < 1e-300) {
            break;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace slab
