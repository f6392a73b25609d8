#include "shrinkerlab.h"

#include <cstring>
#include <string>

#include "core/field.hpp"
#include "core/profile.hpp"
#include "core/surface.hpp"
#include "core/weakholo.hpp"

namespace {

thread_local std::string g_last_error;

slab_status fail(slab_status st, const std::string& msg) {
    g_last_error = msg;
    return st;
}

template <typename Fn>
slab_status wrap(Fn&& fn) {
    try {
        fn();
        return SLAB_OK;
    } catch (const slab::ConvergenceError& e) {
        return fail(SLAB_ERR_CONVERGENCE, e.what());
    } catch (const slab::DegenerateError& e) {
        return fail(SLAB_ERR_DEGENERATE, e.what());
    } catch (const slab::NoSolutionError& e) {
        return fail(SLAB_ERR_NO_SOLUTION, e.what());
    } catch (const slab::DomainError& e) {
        const std::string msg = e.what();
        if (msg.rfind("unknown", 0) == 0) return fail(SLAB_ERR_UNKNOWN_NAME, msg);
        return fail(SLAB_ERR_DOMAIN, msg);
    } catch (const std::exception& e) {
        return fail(SLAB_ERR_BAD_ARGUMENT, e.what());
    }
}

slab::WeightSpec to_weight(slab_weight w) {
    return slab::make_poly_weight(w.c0, w.c1, w.c2);
}

slab::Complex cplx(double re, double im) { return {re, im}; }

}  // namespace

struct slab_field {
    slab::FieldOnDisc field;
};

struct slab_profile {
    slab::ProfileCurve curve;
};

struct slab_surface {
    slab::ParametricSurface surface;
};

extern "C" {

const char* slab_version(void) { return "0.1.0"; }

const char* slab_last_error(void) { return g_last_error.c_str(); }

slab_status slab_field_create(const char* name, slab_field** out) {
    if (!name || !out) return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    return wrap([&] { *out = new slab_field{slab::make_named_field(name)}; });
}

void slab_field_destroy(slab_field* field) { delete field; }

slab_status slab_kq_constant(double q, double tol, double* out) {
    if (!out) return fail(SLAB_ERR_BAD_ARGUMENT, "null output");
    return wrap([&] { *out = slab::kq_constant(q, tol); });
}

slab_status slab_kq_constant_mc(double q, long long samples, unsigned long long seed,
                                double* out) {
    if (!out) return fail(SLAB_ERR_BAD_ARGUMENT, "null output");
    return wrap([&] { *out = slab::kq_constant_mc(q, samples, seed); });
}

slab_status slab_kq_disc_contribution(double q, double eps, double* out) {
    if (!out) return fail(SLAB_ERR_BAD_ARGUMENT, "null output");
    return wrap([&] { *out = slab::kq_disc_contribution(q, eps); });
}

slab_status slab_cauchy_pompeiu(const slab_field* field, int k, double xi_re,
                                double xi_im, double radius, int grid_n,
                                slab_cp_result* out) {
    if (!field || !out) return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    return wrap([&] {
        slab::DiscDomain dom;
        dom.radius = radius;
        dom.grid_n = grid_n;
        const slab::CauchyPompeiuResult r =
            slab::cauchy_pompeiu_eval(field->field, k, cplx(xi_re, xi_im), dom);
        out->lhs_re = r.lhs.real();
        out->lhs_im = r.lhs.imag();
        out->boundary_re = r.boundary.real();
        out->boundary_im = r.boundary.imag();
        out->area_re = r.area.real();
        out->area_im = r.area.imag();
        out->residual = r.residual;
    });
}

slab_status slab_weak_bound_margin(const slab_field* field, double phi_const,
                                   double g_slope, double center_re, double center_im,
                                   double radius, int grid_n, double* out) {
    if (!field || !out) return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    return wrap([&] {
        slab::GrowthBound bound;
        bound.phi = [phi_const](slab::Complex) { return phi_const; };
        bound.G = [g_slope](double t) { return g_slope * t; };
        slab::DiscDomain dom;
        dom.center = cplx(center_re, center_im);
        dom.radius = radius;
        dom.grid_n = grid_n;
        *out = slab::weak_bound_margin(field->field, bound, dom);
    });
}

slab_status slab_zero_order_loglog(const slab_field* field, double z0_re, double z0_im,
                                   const double* radii, int n_radii,
                                   slab_zero_order_report* out) {
    if (!field || !radii || !out || n_radii < 2)
        return fail(SLAB_ERR_BAD_ARGUMENT, "bad arguments");
    return wrap([&] {
        const std::vector<double> rs(radii, radii + n_radii);
        const slab::ZeroOrderReport r =
            slab::zero_order_loglog(field->field, cplx(z0_re, z0_im), rs);
        out->order_loglog = r.order_loglog;
        out->order_winding = r.order_winding;
        out->fit_residual = r.fit_residual;
    });
}

slab_status slab_zero_order_winding(const slab_field* field, double z0_re,
                                    double z0_im, double r, int* out) {
    if (!field || !out) return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    return wrap([&] {
        *out = slab::zero_order_winding(field->field, cplx(z0_re, z0_im), r);
    });
}

slab_status slab_direction_field_index(const slab_field* field, double z0_re,
                                       double z0_im, double r, double* out) {
    if (!field || !out) return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    return wrap([&] {
        *out = slab::direction_field_index(field->field, cplx(z0_re, z0_im), r);
    });
}

slab_status slab_series_coefficients(double b, int order, double* out, int cap,
                                     int* n_out) {
    if (!out || !n_out) return fail(SLAB_ERR_BAD_ARGUMENT, "null output");
    return wrap([&] {
        const std::vector<double> a = slab::series_coefficients(b, order);
        if (static_cast<int>(a.size()) > cap)
            throw slab::DomainError("series_coefficients: output buffer too small");
        for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
        *n_out = static_cast<int>(a.size());
    });
}

slab_status slab_series_residual_slope(double b, int order, double* out) {
    if (!out) return fail(SLAB_ERR_BAD_ARGUMENT, "null output");
    return wrap([&] { *out = slab::series_residual_slope(b, order); });
}

slab_status slab_taylor_profile(double b, double x, int order, double* gamma,
                                double* gamma_p) {
    if (!gamma || !gamma_p) return fail(SLAB_ERR_BAD_ARGUMENT, "null output");
    return wrap([&] {
        const slab::ProfileState st = slab::taylor_profile(b, x, order);
        *gamma = st.gamma;
        *gamma_p = st.gamma_p;
    });
}

slab_status slab_profile_create(double b, double x_end, double tol,
                                slab_profile** out) {
    if (!out) return fail(SLAB_ERR_BAD_ARGUMENT, "null output");
    return wrap([&] {
        *out = new slab_profile{slab::integrate_graph(b, x_end, tol)};
    });
}

void slab_profile_destroy(slab_profile* profile) { delete profile; }

namespace {

void fill_row(const slab::ProfileState& st, slab_profile_row* out) {
    out->x = st.x;
    out->gamma = st.gamma;
    out->gamma_p = st.gamma_p;
    if (st.x > 0.0) {
        const slab::CurvatureSample cs = slab::curvature_sample(st);
        out->k1 = cs.k1;
        out->k2 = cs.k2;
        out->H = cs.H;
        out->phi_norm = cs.phi_norm;
        out->defect = cs.tangency_defect;
        out->F_val = cs.F_val;
    } else {
        out->k1 = out->k2 = out->H = out->phi_norm = out->defect = out->F_val = 0.0;
    }
}

}  // namespace

slab_status slab_profile_row_count(const slab_profile* profile, int* out) {
    if (!profile || !out) return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    *out = static_cast<int>(profile->curve.samples.size());
    return SLAB_OK;
}

slab_status slab_profile_get_row(const slab_profile* profile, int i,
                                 slab_profile_row* out) {
    if (!profile || !out) return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    if (i < 0 || i >= static_cast<int>(profile->curve.samples.size()))
        return fail(SLAB_ERR_BAD_ARGUMENT, "row index out of range");
    return wrap([&] { fill_row(profile->curve.samples[i], out); });
}

slab_status slab_profile_eval(const slab_profile* profile, double x,
                              slab_profile_row* out) {
    if (!profile || !out) return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    return wrap([&] { fill_row(profile->curve.eval(x), out); });
}

slab_status slab_profile_event_count(const slab_profile* profile, int* out) {
    if (!profile || !out) return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    *out = static_cast<int>(profile->curve.events.size());
    return SLAB_OK;
}

slab_status slab_profile_event(const slab_profile* profile, int i, char* kind_buf,
                               int kind_cap, double* location) {
    if (!profile || !kind_buf || !location || kind_cap < 1)
        return fail(SLAB_ERR_BAD_ARGUMENT, "bad arguments");
    if (i < 0 || i >= static_cast<int>(profile->curve.events.size()))
        return fail(SLAB_ERR_BAD_ARGUMENT, "event index out of range");
    const slab::ProfileEvent& ev = profile->curve.events[i];
    std::strncpy(kind_buf, ev.kind.c_str(), kind_cap - 1);
    kind_buf[kind_cap - 1] = '\0';
    *location = ev.location;
    return SLAB_OK;
}

slab_status slab_profile_umbilics(const slab_profile* profile, double* out, int cap,
                                  int* n_out, int* totally_umbilic) {
    if (!profile || !out || !n_out || !totally_umbilic)
        return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    return wrap([&] {
        const slab::UmbilicScan scan = slab::umbilic_scan(profile->curve);
        *totally_umbilic = scan.totally_umbilic ? 1 : 0;
        if (static_cast<int>(scan.locations.size()) > cap)
            throw slab::DomainError("umbilics: output buffer too small");
        for (size_t i = 0; i < scan.locations.size(); ++i) out[i] = scan.locations[i];
        *n_out = static_cast<int>(scan.locations.size());
    });
}

slab_status slab_axis_ratio_limit(double b, slab_axis_limit_report* out) {
    if (!out) return fail(SLAB_ERR_BAD_ARGUMENT, "null output");
    return wrap([&] {
        const slab::AxisLimitReport r = slab::axis_ratio_limit(b);
        out->limit = r.limit;
        out->rel_spread = r.rel_spread;
        out->series_predicted = r.series_predicted;
        out->closed_form_reference = r.closed_form_reference;
    });
}

slab_status slab_lp_integral(double b, double p, double delta, double eps,
                             double* out) {
    if (!out) return fail(SLAB_ERR_BAD_ARGUMENT, "null output");
    return wrap([&] { *out = slab::lp_integral(b, p, delta, eps); });
}

slab_status slab_lp_exponent(double b, double p, double* out) {
    if (!out) return fail(SLAB_ERR_BAD_ARGUMENT, "null output");
    return wrap([&] { *out = slab::lp_exponent_fit(b, p); });
}

slab_status slab_axis_order(double b, slab_axis_order_report* out) {
    if (!out) return fail(SLAB_ERR_BAD_ARGUMENT, "null output");
    return wrap([&] {
        const slab::AxisOrderReport r = slab::zero_order_report_axis(b);
        out->order_phi_sq = r.order_phi_sq;
        out->order_defect_h_sq = r.order_defect_h_sq;
        out->criterion = r.criterion;
    });
}

slab_status slab_chart_consistency(double b, double* max_dev) {
    if (!max_dev) return fail(SLAB_ERR_BAD_ARGUMENT, "null output");
    return wrap([&] { *max_dev = slab::chart_consistency_dev(b); });
}

slab_status slab_shoot_profile(double b_lo, double b_hi, int n, slab_shoot_row* out,
                               int cap, int* n_out) {
    if (!out || !n_out) return fail(SLAB_ERR_BAD_ARGUMENT, "null output");
    return wrap([&] {
        const std::vector<slab::ShootRow> rows = slab::shoot_profile(b_lo, b_hi, n);
        if (static_cast<int>(rows.size()) > cap)
            throw slab::DomainError("shoot_profile: output buffer too small");
        for (size_t i = 0; i < rows.size(); ++i) {
            out[i].b = rows[i].b;
            out[i].s_final = rows[i].s_final;
            out[i].x = rows[i].x;
            out[i].y = rows[i].y;
            out[i].theta = rows[i].theta;
            std::strncpy(out[i].classification, rows[i].classification.c_str(),
                         sizeof(out[i].classification) - 1);
            out[i].classification[sizeof(out[i].classification) - 1] = '\0';
        }
        *n_out = static_cast<int>(rows.size());
    });
}

slab_status slab_surface_create(const char* name, const double* params, int n_params,
                                slab_surface** out) {
    if (!name || !out || (n_params > 0 && !params))
        return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    return wrap([&] {
        const std::vector<double> ps(params, params + n_params);
        *out = new slab_surface{slab::make_named_surface(name, ps)};
    });
}

void slab_surface_destroy(slab_surface* surface) { delete surface; }

slab_status slab_surface_domain(const slab_surface* surface, double* u_min,
                                double* u_max, double* v_min, double* v_max) {
    if (!surface || !u_min || !u_max || !v_min || !v_max)
        return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    *u_min = surface->surface.u_min;
    *u_max = surface->surface.u_max;
    *v_min = surface->surface.v_min;
    *v_max = surface->surface.v_max;
    return SLAB_OK;
}

slab_status slab_shape_sample_at(const slab_surface* surface, double u, double v,
                                 slab_shape_sample* out) {
    if (!surface || !out) return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    return wrap([&] {
        const slab::ShapeSample ss = slab::shape_sample(surface->surface, u, v);
        out->g11 = ss.g11;
        out->g12 = ss.g12;
        out->g22 = ss.g22;
        out->h11 = ss.h11;
        out->h12 = ss.h12;
        out->h22 = ss.h22;
        out->H = ss.H;
        out->K = ss.K;
        out->phi_norm = ss.phi_norm;
        out->nu[0] = ss.nu[0];
        out->nu[1] = ss.nu[1];
        out->nu[2] = ss.nu[2];
        out->isothermal = ss.isothermal ? 1 : 0;
        out->alpha = ss.alpha;
    });
}

slab_status slab_shrinker_residual(const slab_surface* surface, double u, double v,
                                   double* out) {
    if (!surface || !out) return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    return wrap([&] { *out = slab::shrinker_residual(surface->surface, u, v); });
}

slab_status slab_lambda_residual(const slab_surface* surface, double u, double v,
                                 double lambda, double* out) {
    if (!surface || !out) return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    return wrap([&] { *out = slab::lambda_residual(surface->surface, u, v, lambda); });
}

slab_status slab_weighted_mean_curvature(const slab_surface* surface,
                                         slab_weight weight, double u, double v,
                                         double* out) {
    if (!surface || !out) return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    return wrap([&] {
        *out = slab::weighted_mean_curvature(surface->surface, to_weight(weight), u, v);
    });
}

slab_status slab_hopf_differential(const slab_surface* surface, slab_weight weight,
                                   double u, double v, slab_hopf_sample* out) {
    if (!surface || !out) return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    return wrap([&] {
        const slab::HopfSample hs =
            slab::hopf_differential(surface->surface, to_weight(weight), u, v);
        out->P_re = hs.P.real();
        out->P_im = hs.P.imag();
        out->Q_re = hs.Q.real();
        out->Q_im = hs.Q.imag();
        out->f_val = hs.f_val;
    });
}

slab_status slab_qzbar_residual(const slab_surface* surface, slab_weight weight,
                                double u, double v, double fd_step, double* out) {
    if (!surface || !out) return fail(SLAB_ERR_BAD_ARGUMENT, "null argument");
    return wrap([&] {
        *out = slab::qzbar_identity_residual(surface->surface, to_weight(weight), u, v,
                                             fd_step);
    });
}

slab_status slab_sphere_radius_for_weight(slab_weight weight, double* out) {
    if (!out) return fail(SLAB_ERR_BAD_ARGUMENT, "null output");
    return wrap([&] { *out = slab::sphere_radius_for_weight(to_weight(weight)); });
}

double slab_lambda_sphere_radius(double lambda) {
    return slab::lambda_sphere_radius(lambda);
}

}  // extern "C"
