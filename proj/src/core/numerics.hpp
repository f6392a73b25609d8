#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace slab {

using Complex = std::complex<double>;

// Thrown when an input violates an operation's precondition.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an iterative scheme fails to meet its tolerance. Carries the
// best estimate obtained before giving up.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double best)
        : std::runtime_error(msg), best_estimate(best) {}
    double best_estimate;
};

// Thrown when sampled data is too degenerate to proceed (e.g. |h| ~ 0 on a
// winding circle).
class DegenerateError : public std::runtime_error {
public:
    explicit DegenerateError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a root solve finds no bracket in its scan range.
class NoSolutionError : public std::runtime_error {
public:
    explicit NoSolutionError(const std::string& msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature.

namespace detail {

template <typename T, typename F>
T simpson_step(const F& f, double a, double b, T fa, T fm, T fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename T, typename F>
T adaptive_simpson_rec(const F& f, double a, double b, T fa, T fm, T fb, T whole,
                       double tol, int depth, bool* ok) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const T flm = f(lm);
    const T frm = f(rm);
    const T left = simpson_step<T>(f, a, m, fa, flm, fm);
    const T right = simpson_step<T>(f, m, b, fm, frm, fb);
    const T delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth <= 0) {
        if (depth <= 0 && std::abs(delta) > 15.0 * tol) *ok = false;
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec<T>(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, ok) +
           adaptive_simpson_rec<T>(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, ok);
}

}  // namespace detail

struct QuadResult {
    double value = 0.0;
    bool converged = true;
};

// Integrates f over [a, b] to absolute tolerance tol.
template <typename F>
QuadResult integrate_adaptive(const F& f, double a, double b, double tol,
                              int max_depth = 48) {
    if (a == b) return {0.0, true};
    bool ok = true;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = detail::simpson_step<double>(f, a, b, fa, fm, fb);
    const double v = detail::adaptive_simpson_rec<double>(f, a, b, fa, fm, fb, whole,
                                                          tol, max_depth, &ok);
    return {v, ok};
}

struct QuadResultC {
    Complex value{0.0, 0.0};
    bool converged = true;
};

template <typename F>
QuadResultC integrate_adaptive_complex(const F& f, double a, double b, double tol,
                                       int max_depth = 48) {
    if (a == b) return {Complex(0.0), true};
    bool ok = true;
    const Complex fa = f(a);
    const Complex fb = f(b);
    const Complex fm = f(0.5 * (a + b));
    const Complex whole = detail::simpson_step<Complex>(f, a, b, fa, fm, fb);
    const Complex v = detail::adaptive_simpson_rec<Complex>(f, a, b, fa, fm, fb, whole,
                                                            tol, max_depth, &ok);
    return {v, ok};
}

// Integrates rho^{1-q} * g(rho) over [0, upper] for q in (1, 2). The power
// factor is removed analytically by the substitution rho = t^{1/(2-q)}, which
// turns the integrand into (2-q)^{-1} g(t^{1/(2-q)}) on [0, upper^{2-q}].
template <typename G>
QuadResult integrate_radial_power(const G& g, double q, double upper, double tol) {
    const double e = 2.0 - q;
    const double m = 1.0 / e;
    const double T = std::pow(upper, e);
    auto integrand = [&](double t) { return m * g(std::pow(t, m)); };
    return integrate_adaptive(integrand, 0.0, T, tol);
}

// ---------------------------------------------------------------------------
// Least squares line fit (for log-log slope estimation).

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_norm = 0.0;  // L2 norm of the fit residuals
};

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

// Fits y = A * x^s + B over the data by 1-D search in s with linear least
// squares for (A, B) at each candidate. Used for divergence-exponent
// estimation where the integral carries a finite offset.
double fit_power_law_with_offset(const std::vector<double>& xs,
                                 const std::vector<double>& ys,
                                 double s_lo, double s_hi);

// ---------------------------------------------------------------------------
// Richardson extrapolation of T(x) = A + c1*x^p + c2*x^{2p} + ... sampled on a
// geometric sequence x_j = x0 * ratio^{-j}. Returns the extrapolated limit;
// rel_spread reports the relative change in the last diagonal step.
struct RichardsonResult {
    double limit = 0.0;
    double rel_spread = 0.0;
};

RichardsonResult richardson_limit(const std::vector<double>& values, double ratio,
                                  double power);

// ---------------------------------------------------------------------------
// Bisection root solve of f on [a, b] (f(a), f(b) of opposite sign).
double bisect(const std::function<double(double)>& f, double a, double b,
              double rel_tol);

// Deterministic 64-bit RNG (splitmix-seeded xoshiro-style via std::mt19937_64
// would do, but we keep the uniform mapping explicit for byte reproducibility).
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    uint64_t next_u64() {
        // splitmix64
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    uint64_t state_;
};

}  // namespace slab
