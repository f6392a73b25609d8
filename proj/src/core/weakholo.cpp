#include "core/weakholo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace slab {

namespace {

constexpr double kPi = std::numbers::pi;

// Angular integral of |rho*e^{i theta} - 1|^{-q} around the origin; by the
// w -> conj(w) symmetry only [0, pi] is integrated.
double theta_integral_origin(double q, double rho, double tol) {
    auto f = [&](double th) {
        const double d2 = rho * rho - 2.0 * rho * std::cos(th) + 1.0;
        return std::pow(d2, -0.5 * q);
    };
    const QuadResult r = integrate_adaptive(f, 0.0, kPi, tol);
    return 2.0 * r.value;
}

// Radial integral of rho^{1-q} * g(rho) over [lo, hi] with the power factor
// removed by t = rho^(2-q).
template <typename G>
QuadResult radial_power_segment(const G& g, double q, double lo, double hi,
                                double tol) {
    const double e = 2.0 - q;
    const double m = 1.0 / e;
    auto integrand = [&](double t) { return m * g(std::pow(t, m)); };
    return integrate_adaptive(integrand, std::pow(lo, e), std::pow(hi, e), tol);
}

}  // namespace

double kq_disc_contribution(double q, double eps) {
    if (!(q > 1.0 && q < 2.0)) throw DomainError("kq: q must lie in (1,2)");
    if (!(eps > 0.0 && eps < 0.5)) throw DomainError("kq: eps must lie in (0, 1/2)");
    const double tol = 1e-10;
    auto g = [&](double rho) { return theta_integral_origin(q, rho, tol); };
    return radial_power_segment(g, q, 0.0, eps, tol).value;
}

double kq_constant(double q, double tol) {
    if (!(q > 1.0 && q < 2.0)) throw DomainError("kq: q must lie in (1,2)");
    if (!(tol > 0.0)) throw DomainError("kq: tol must be positive");
    const double eps = 0.1;
    const double rho_max = 200.0;
    const double piece_tol = tol / 8.0;
    const double inner_tol = piece_tol / 32.0;
    bool ok = true;

    // Discs of radius eps at the two poles; w -> 1-w swaps them, so the two
    // contributions are equal.
    auto g0 = [&](double rho) { return theta_integral_origin(q, rho, inner_tol); };
    const QuadResult disc = radial_power_segment(g0, q, 0.0, eps, piece_tol);
    ok = ok && disc.converged;

    // Rest of D_2(0) with Re w <= 1/2: polar at the origin.
    auto ray_a = [&](double th) {
        const double c = std::cos(th);
        const double cap = (c > 0.25) ? 1.0 / (2.0 * c) : 2.0;
        auto g = [&](double rho) {
            const double d2 = rho * rho - 2.0 * rho * c + 1.0;
            return std::pow(d2, -0.5 * q);
        };
        return radial_power_segment(g, q, eps, cap, inner_tol).value;
    };
    const QuadResult part_a = integrate_adaptive(ray_a, 0.0, kPi, piece_tol / 2.0);
    ok = ok && part_a.converged;

    // Rest of D_2(0) with Re w >= 1/2: polar at w = 1.
    auto ray_b = [&](double th) {
        const double c = std::cos(th);
        double cap = -c + std::sqrt(c * c + 3.0);  // |1 + rho e^{i th}| = 2
        if (c < 0.0) cap = std::min(cap, -1.0 / (2.0 * c));
        auto g = [&](double rho) {
            const double d2 = rho * rho + 2.0 * rho * c + 1.0;
            return std::pow(d2, -0.5 * q);
        };
        return radial_power_segment(g, q, eps, cap, inner_tol).value;
    };
    const QuadResult part_b = integrate_adaptive(ray_b, 0.0, kPi, piece_tol / 2.0);
    ok = ok && part_b.converged;

    // Exterior ring 2 <= |w| <= rho_max.
    auto ext = [&](double rho) {
        return std::pow(rho, 1.0 - q) * theta_integral_origin(q, rho, inner_tol);
    };
    const QuadResult exterior = integrate_adaptive(ext, 2.0, rho_max, piece_tol);
    ok = ok && exterior.converged;

    // Tail beyond rho_max: the angular integral equals
    // 2*pi*rho^{-q}(1 + O(rho^{-2})), leaving 2*pi*rho_max^{2-2q}/(2q-2).
    const double tail = 2.0 * kPi * std::pow(rho_max, 2.0 - 2.0 * q) / (2.0 * q - 2.0);

    const double total = 2.0 * disc.value + 2.0 * part_a.value + 2.0 * part_b.value +
                         exterior.value + tail;
    if (!ok) throw ConvergenceError("kq_constant: subdivision budget exhausted", total);
    return total;
}

double kq_constant_mc(double q, std::int64_t samples, std::uint64_t seed) {
    if (!(q > 1.0 && q < 2.0)) throw DomainError("kq: q must lie in (1,2)");
    if (samples < 3) throw DomainError("kq_constant_mc: too few samples");
    const double e = 2.0 - q;
    Rng rng(seed);
    const std::int64_t n = samples / 3;

    // Stratum A: |w| <= 2 with Re w < 1/2, radial importance rho^{1-q} at 0.
    double sum_a = 0.0;
    const double w_a = 2.0 * kPi * std::pow(2.0, e) / e;
    for (std::int64_t i = 0; i < n; ++i) {
        const double rho = 2.0 * std::pow(rng.uniform(), 1.0 / e);
        const double th = 2.0 * kPi * rng.uniform();
        const double re = rho * std::cos(th);
        if (re < 0.5) {
            const double im = rho * std::sin(th);
            const double d2 = (re - 1.0) * (re - 1.0) + im * im;
            sum_a += w_a * std::pow(d2, -0.5 * q);
        }
    }

    // Stratum B: Re w >= 1/2 with |w| <= 2, radial importance at 1 (that
    // region lies inside |w-1| <= 2 < 3).
    double sum_b = 0.0;
    const double w_b = 2.0 * kPi * std::pow(3.0, e) / e;
    for (std::int64_t i = 0; i < n; ++i) {
        const double rho = 3.0 * std::pow(rng.uniform(), 1.0 / e);
        const double th = 2.0 * kPi * rng.uniform();
        const double re = 1.0 + rho * std::cos(th);
        const double im = rho * std::sin(th);
        if (re >= 0.5 && re * re + im * im <= 4.0) {
            sum_b += w_b * std::pow(re * re + im * im, -0.5 * q);
        }
    }

    // Stratum E: |w| >= 2, radial importance rho^{1-2q}.
    double sum_e = 0.0;
    const double w_e = 2.0 * kPi / ((2.0 * q - 2.0) * std::pow(2.0, 2.0 * q - 2.0));
    for (std::int64_t i = 0; i < n; ++i) {
        const double u = rng.uniform();
        const double rho = 2.0 * std::pow(1.0 - u, 1.0 / (2.0 - 2.0 * q));
        const double th = 2.0 * kPi * rng.uniform();
        const double re = rho * std::cos(th);
        const double im = rho * std::sin(th);
        const double d2 = (re - 1.0) * (re - 1.0) + im * im;
        sum_e += w_e * std::pow(rho, q) * std::pow(d2, -0.5 * q);
    }

    const double nd = static_cast<double>(n);
    return sum_a / nd + sum_b / nd + sum_e / nd;
}

CauchyPompeiuResult cauchy_pompeiu_eval(const FieldOnDisc& field, int k, Complex xi,
                                        const DiscDomain& domain) {
    if (k < 1) throw DomainError("cauchy_pompeiu: k must be a positive integer");
    if (xi == Complex(0.0)) throw DomainError("cauchy_pompeiu: xi must be nonzero");
    if (std::abs(domain.center) != 0.0)
        throw DomainError("cauchy_pompeiu: domain must be centered at the origin");
    const double R = domain.radius;
    if (!(std::abs(xi) < R)) throw DomainError("cauchy_pompeiu: xi must lie inside the disc");
    if (domain.grid_n < 16) throw DomainError("cauchy_pompeiu: grid_n must be >= 16");

    // Sampled check that h(z)/z^{k-1} stays bounded toward the origin.
    double m1 = 0.0, m2 = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double th = 2.0 * kPi * (j + 0.5) / 8.0;
        const Complex dir = std::polar(1.0, th);
        m1 = std::max(m1, std::abs(field.eval(1e-3 * dir)) / std::pow(1e-3, k - 1));
        m2 = std::max(m2, std::abs(field.eval(1e-4 * dir)) / std::pow(1e-4, k - 1));
    }
    if (m2 > 2.0 * m1 + 1e-12)
        throw DomainError("cauchy_pompeiu: h/z^{k-1} does not vanish at the origin");

    CauchyPompeiuResult out;
    out.lhs = 2.0 * kPi * Complex(0, 1) * field.eval(xi) * std::pow(xi, -k);

    // Boundary term: trapezoid on the circle (spectral for these integrands,
    // which are analytic in an annulus around |z| = R).
    const int nb = std::max(512, 8 * domain.grid_n);
    Complex bsum = 0.0;
    for (int j = 0; j < nb; ++j) {
        const double th = 2.0 * kPi * j / nb;
        const Complex z = std::polar(R, th);
        const Complex dz = Complex(0, 1) * z;  // times d theta
        bsum += field.eval(z) / (std::pow(z, k) * (z - xi)) * dz;
    }
    out.boundary = bsum * (2.0 * kPi / nb);

    // Area term over dz^dzbar = -2i dA. Write N(z) = h_zbar(z)/z^k and split
    // off the full first-order local model at xi,
    //   s(z) = [N(xi) + N_zbar(xi)(zbar - xibar)] / (z - xi),
    // using the exact disc integrals
    //   integral over D_R of dA/(z-xi)              = -pi*conj(xi),
    //   integral over D_R of (zbar-xibar)/(z-xi) dA =  pi*conj(xi)^2/2.
    // Subtracting only the constant N(xi) leaves a remainder whose gradient
    // jumps at xi (the zbar direction is not captured), which degrades the
    // midpoint rule to first order; with the zbar term the remainder is
    // Lipschitz at xi and the grid refines at second order. The remainder is
    // sampled on a midpoint polar grid at the origin whose Jacobian absorbs
    // the z^{-k} singularity there.
    const Complex c = field.eval_zbar(xi) / std::pow(xi, k);
    // N_zbar(xi) = (d/dzbar h_zbar)(xi) / xi^k, by central differences on the
    // zbar-derivative: d/dzbar = (d/dx + i d/dy) / 2. Its accuracy only
    // affects how smooth the remainder is, not the value of the identity.
    const double hd = 1e-4;
    const Complex nz =
        (field.eval_zbar(xi + hd) - field.eval_zbar(xi - hd) +
         Complex(0, 1) * (field.eval_zbar(xi + Complex(0, hd)) -
                          field.eval_zbar(xi - Complex(0, hd)))) /
        (4.0 * hd) / std::pow(xi, k);
    const int nr = domain.grid_n;
    const int nt = 2 * domain.grid_n;
    const double dr = R / nr;
    const double dt = 2.0 * kPi / nt;
    Complex asum = 0.0;
    for (int ir = 0; ir < nr; ++ir) {
        const double rho = (ir + 0.5) * dr;
        for (int it = 0; it < nt; ++it) {
            const Complex z = std::polar(rho, (it + 0.5) * dt);
            const Complex f = field.eval_zbar(z) / (std::pow(z, k) * (z - xi));
            const Complex s =
                (c + nz * (std::conj(z) - std::conj(xi))) / (z - xi);
            asum += (f - s) * rho;
        }
    }
    asum *= dr * dt;
    const Complex exact = c * (-kPi * std::conj(xi)) +
                          nz * (kPi * std::conj(xi) * std::conj(xi) / 2.0);
    out.area = Complex(0, -2.0) * (exact + asum);

    out.residual = std::abs(out.lhs - out.boundary - out.area);
    return out;
}

double cauchy_pompeiu_residual(const FieldOnDisc& field, int k, Complex xi,
                               const DiscDomain& domain) {
    return cauchy_pompeiu_eval(field, k, xi, domain).residual;
}

double weak_bound_margin(const FieldOnDisc& field, const GrowthBound& bound,
                         const DiscDomain& domain) {
    const int nr = std::max(16, domain.grid_n);
    const int nt = 2 * nr;
    double margin = std::numeric_limits<double>::infinity();
    for (int ir = 0; ir < nr; ++ir) {
        const double rho = (ir + 0.5) * domain.radius / nr;
        for (int it = 0; it < nt; ++it) {
            const Complex z = domain.center + std::polar(rho, (it + 0.5) * 2.0 * kPi / nt);
            const double lhs = std::abs(field.eval_zbar(z));
            const double rhs = bound.phi(z) * bound.G(std::abs(field.eval(z)));
            margin = std::min(margin, rhs - lhs);
        }
    }
    return margin;
}

ZeroOrderReport zero_order_loglog(const FieldOnDisc& field, Complex z0,
                                  const std::vector<double>& radii) {
    if (radii.size() < 2) throw DomainError("zero_order_loglog: need >= 2 radii");
    for (double r : radii) {
        if (!(r > 0.0))
            throw DomainError("zero_order_loglog: radii must be positive");
    }
    for (size_t i = 1; i < radii.size(); ++i) {
        if (!(radii[i] < radii[i - 1]))
            throw DomainError(
                "zero_order_loglog: radii must be strictly decreasing");
    }
    ZeroOrderReport rep;
    rep.radii_used = radii;
    const int n = 512;
    std::vector<double> lx, ly;
    for (double r : radii) {
        double mean = 0.0;
        for (int j = 0; j < n; ++j) {
            const Complex z = z0 + std::polar(r, 2.0 * kPi * j / n);
            mean += std::abs(field.eval(z));
        }
        mean /= n;
        if (mean < 1e-290) {
            rep.order_loglog = std::numeric_limits<double>::infinity();
            return rep;
        }
        lx.push_back(std::log(r));
        ly.push_back(std::log(mean));
    }
    const LineFit fit = fit_line(lx, ly);
    rep.order_loglog = fit.slope;
    rep.fit_residual = fit.residual_norm;
    rep.order_winding = zero_order_winding(field, z0, radii.front());
    return rep;
}

int zero_order_winding(const FieldOnDisc& field, Complex z0, double r) {
    if (!(r > 0.0)) throw DomainError("zero_order_winding: r must be positive");
    int n = 64;
    const int n_cap = 1 << 20;
    while (true) {
        std::vector<Complex> vals(n);
        double hmax = 0.0;
        for (int j = 0; j < n; ++j) {
            vals[j] = field.eval(z0 + std::polar(r, 2.0 * kPi * j / n));
            hmax = std::max(hmax, std::abs(vals[j]));
        }
        if (hmax < 1e-300)
            throw DegenerateError("zero_order_winding: field vanishes on the circle");
        bool aliased = false;
        double total = 0.0;
        for (int j = 0; j < n; ++j) {
            const Complex a = vals[j];
            const Complex b = vals[(j + 1) % n];
            if (std::abs(a) < 1e-12 * hmax || std::abs(b) < 1e-12 * hmax)
                throw DegenerateError(
                    "zero_order_winding: near-zero sample; use a smaller radius");
            const double inc = std::arg(b / a);
            if (std::abs(inc) >= 0.5 * kPi) {
                aliased = true;
                break;
            }
            total += inc;
        }
        if (!aliased) return static_cast<int>(std::lround(total / (2.0 * kPi)));
        if (n >= n_cap)
            throw DegenerateError("zero_order_winding: phase rotates too fast");
        n *= 2;
    }
}

double direction_field_index(const FieldOnDisc& P_field, Complex z0, double r) {
    return -0.5 * zero_order_winding(P_field, z0, r);
}

}  // namespace slab
