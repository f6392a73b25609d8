/* C interface for the shrinker laboratory: rotational self-shrinker profile
 * diagnostics, singular quadrature / weak-holomorphy estimators, and
 * quadratic-differential identities on parametric surfaces.
 *
 * All functions return a slab_status; on failure slab_last_error() holds a
 * message for the current thread. Handles are opaque and freed with the
 * matching destroy call.
 */
#ifndef SHRINKERLAB_H
#define SHRINKERLAB_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    SLAB_OK = 0,
    SLAB_ERR_BAD_ARGUMENT = 1,
    SLAB_ERR_DOMAIN = 2,
    SLAB_ERR_CONVERGENCE = 3,
    SLAB_ERR_DEGENERATE = 4,
    SLAB_ERR_NO_SOLUTION = 5,
    SLAB_ERR_UNKNOWN_NAME = 6
} slab_status;

const char* slab_version(void);
const char* slab_last_error(void);

/* ---------------- complex-analysis kernel ---------------- */

typedef struct slab_field slab_field;

slab_status slab_field_create(const char* name, slab_field** out);
void slab_field_destroy(slab_field* field);

slab_status slab_kq_constant(double q, double tol, double* out);
slab_status slab_kq_constant_mc(double q, long long samples, unsigned long long seed,
                                double* out);
slab_status slab_kq_disc_contribution(double q, double eps, double* out);

typedef struct {
    double lhs_re, lhs_im;
    double boundary_re, boundary_im;
    double area_re, area_im;
    double residual;
} slab_cp_result;

/* Adapted Cauchy integral identity on the disc |z| < radius. */
slab_status slab_cauchy_pompeiu(const slab_field* field, int k, double xi_re,
                                double xi_im, double radius, int grid_n,
                                slab_cp_result* out);

/* min over a polar grid of phi_const * (g_slope*|h|) - |dh/dzbar|. */
slab_status slab_weak_bound_margin(const slab_field* field, double phi_const,
                                   double g_slope, double center_re, double center_im,
                                   double radius, int grid_n, double* out);

typedef struct {
    double order_loglog;
    int order_winding;
    double fit_residual;
} slab_zero_order_report;

slab_status slab_zero_order_loglog(const slab_field* field, double z0_re, double z0_im,
                                   const double* radii, int n_radii,
                                   slab_zero_order_report* out);
slab_status slab_zero_order_winding(const slab_field* field, double z0_re,
                                    double z0_im, double r, int* out);
slab_status slab_direction_field_index(const slab_field* field, double z0_re,
                                       double z0_im, double r, double* out);

/* ---------------- rotational profile lab ---------------- */

typedef struct slab_profile slab_profile;

/* Even series coefficients (a_0, a_2, ..., a_order); n_out = order/2 + 1. */
slab_status slab_series_coefficients(double b, int order, double* out, int cap,
                                     int* n_out);
slab_status slab_series_residual_slope(double b, int order, double* out);
slab_status slab_taylor_profile(double b, double x, int order, double* gamma,
                                double* gamma_p);

slab_status slab_profile_create(double b, double x_end, double tol,
                                slab_profile** out);
void slab_profile_destroy(slab_profile* profile);

typedef struct {
    double x, gamma, gamma_p;
    double k1, k2, H, phi_norm, defect, F_val;
} slab_profile_row;

slab_status slab_profile_row_count(const slab_profile* profile, int* out);
slab_status slab_profile_get_row(const slab_profile* profile, int i,
                                 slab_profile_row* out);
slab_status slab_profile_eval(const slab_profile* profile, double x,
                              slab_profile_row* out);
slab_status slab_profile_event_count(const slab_profile* profile, int* out);
slab_status slab_profile_event(const slab_profile* profile, int i, char* kind_buf,
                               int kind_cap, double* location);
slab_status slab_profile_umbilics(const slab_profile* profile, double* out, int cap,
                                  int* n_out, int* totally_umbilic);

typedef struct {
    double limit;
    double rel_spread;
    double series_predicted;
    double closed_form_reference;
} slab_axis_limit_report;

slab_status slab_axis_ratio_limit(double b, slab_axis_limit_report* out);
slab_status slab_lp_integral(double b, double p, double delta, double eps,
                             double* out);
/* Fitted divergence exponent of the L^p integral as delta -> 0 (expect 2-p). */
slab_status slab_lp_exponent(double b, double p, double* out);

typedef struct {
    double order_phi_sq;
    double order_defect_h_sq;
    double criterion;
} slab_axis_order_report;

slab_status slab_axis_order(double b, slab_axis_order_report* out);
slab_status slab_chart_consistency(double b, double* max_dev);

typedef struct {
    double b, s_final, x, y, theta;
    char classification[32];
} slab_shoot_row;

slab_status slab_shoot_profile(double b_lo, double b_hi, int n, slab_shoot_row* out,
                               int cap, int* n_out);

/* ---------------- surface geometry ---------------- */

typedef struct slab_surface slab_surface;

/* Fixtures: "plane" (), "sphere" (R), "cylinder" (R), "torus" (R, r),
 * "ellipsoid" (a, b, c). */
slab_status slab_surface_create(const char* name, const double* params, int n_params,
                                slab_surface** out);
void slab_surface_destroy(slab_surface* surface);
slab_status slab_surface_domain(const slab_surface* surface, double* u_min,
                                double* u_max, double* v_min, double* v_max);

typedef struct {
    double g11, g12, g22;
    double h11, h12, h22;
    double H, K, phi_norm;
    double nu[3];
    int isothermal;
    double alpha;
} slab_shape_sample;

slab_status slab_shape_sample_at(const slab_surface* surface, double u, double v,
                                 slab_shape_sample* out);
slab_status slab_shrinker_residual(const slab_surface* surface, double u, double v,
                                   double* out);
slab_status slab_lambda_residual(const slab_surface* surface, double u, double v,
                                 double lambda, double* out);

/* Radial weight F(t) = c0 + c1*t + c2*t^2 of t = |X|^2. */
typedef struct {
    double c0, c1, c2;
} slab_weight;

slab_status slab_weighted_mean_curvature(const slab_surface* surface,
                                         slab_weight weight, double u, double v,
                                         double* out);

typedef struct {
    double P_re, P_im;
    double Q_re, Q_im;
    double f_val;
} slab_hopf_sample;

slab_status slab_hopf_differential(const slab_surface* surface, slab_weight weight,
                                   double u, double v, slab_hopf_sample* out);
slab_status slab_qzbar_residual(const slab_surface* surface, slab_weight weight,
                                double u, double v, double fd_step, double* out);
slab_status slab_sphere_radius_for_weight(slab_weight weight, double* out);
double slab_lambda_sphere_radius(double lambda);

#ifdef __cplusplus
}
#endif

#endif /* SHRINKERLAB_H */
