/*
 * vdprg - classical and quantum dynamics of a two-coordinate oscillator with
 * a non-Hermitian amplitude-dependent coupling:
 *
 *   H = p_x p_y + omega^2 x y - i [ mu1 (1-x^2) y p_y + mu2 (1-y^2) x p_x ]
 *
 * The library provides the complexified equations of motion, an adaptive
 * trajectory integrator, the divergent first-order perturbative solution,
 * the resummed (secular-free) closed forms and their flow equations, orbit
 * classification, and the truncated-basis spectrum with the PT-transition
 * diagnostic F (fraction of complex eigenvalues).
 *
 * Every entry point returns a status code; results travel through out
 * parameters. Heavy objects (trajectories, spectra) are opaque handles with
 * explicit _free functions. All functions are thread-safe; handles must not
 * be freed while in use by another thread.
 */

#ifndef VDPRG_H
#define VDPRG_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vdprg_status {
    VDPRG_OK = 0,
    VDPRG_ERR_INVALID_ARGUMENT = 1,
    VDPRG_ERR_STEP_UNDERFLOW = 2,
    VDPRG_ERR_NONFINITE = 3,
    VDPRG_ERR_OUT_OF_RANGE = 4,
    VDPRG_ERR_SINGULAR_SYSTEM = 5,
    VDPRG_ERR_MANIFOLD_VIOLATION = 6,
    VDPRG_ERR_RESONANT_DENOMINATOR = 7,
    VDPRG_ERR_NONREAL_STATE = 8,
    VDPRG_ERR_NO_CONVERGENCE = 9,
    VDPRG_ERR_BAD_BRACKET = 10,
    VDPRG_ERR_TOO_SHORT = 11,
    VDPRG_ERR_INTERNAL = 12
} vdprg_status;

/* Stable name for a status code, e.g. "manifold_violation". */
const char* vdprg_status_name(vdprg_status status);

const char* vdprg_version(void);

typedef struct vdprg_complex {
    double re;
    double im;
} vdprg_complex;

typedef struct vdprg_params {
    double omega; /* > 0 */
    double mu1;
    double mu2;
} vdprg_params;

/* Initial data with the velocity-zero convention:
 * x(t0) = a0, y(t0) = b0, xdot(t0) = ydot(t0) = 0. */
typedef struct vdprg_initial {
    double t0;
    double a0;
    double b0;
} vdprg_initial;

typedef struct vdprg_state {
    double t;
    vdprg_complex x, y, vx, vy;
} vdprg_state;

typedef struct vdprg_integrator_config {
    double rel_tol;      /* > 0 */
    double abs_tol;      /* > 0 */
    double max_step;     /* > 0 */
    double initial_step; /* 0 = automatic */
    double t_end;        /* > t0 */
    int fixed_rk4;       /* nonzero: fixed-step RK4 debug fallback */
    double fixed_step;
} vdprg_integrator_config;

/* Defaults: rel_tol = abs_tol = 1e-10, max_step = 0.1, t_end = 100. */
void vdprg_integrator_config_default(vdprg_integrator_config* cfg);

/* ---- model ---------------------------------------------------------- */

/* Second derivatives (xddot, yddot) of the equations of motion. */
vdprg_status vdprg_eom_rhs(const vdprg_params* params, const vdprg_state* state,
                           vdprg_complex* ax, vdprg_complex* ay);

/* Canonical momenta recovered from the velocities:
 * p_y = vx + i mu2 (1-y^2) x, p_x = vy + i mu1 (1-x^2) y. */
vdprg_status vdprg_momenta(const vdprg_params* params, const vdprg_state* state,
                           vdprg_complex* px, vdprg_complex* py);

/* H along a trajectory state (momenta recovered internally). */
vdprg_status vdprg_hamiltonian(const vdprg_params* params,
                               const vdprg_state* state, vdprg_complex* h);

/* H at the PT image of a real state; fails with NONREAL_STATE if any
 * component has a nonzero imaginary part. */
vdprg_status vdprg_pt_image(const vdprg_params* params, const vdprg_state* state,
                            vdprg_complex* h);

/* H and its PT image at an explicit real phase-space point (x,y,px,py). */
vdprg_status vdprg_hamiltonian_point(const vdprg_params* params, double x,
                                     double y, double px, double py,
                                     vdprg_complex* h);
vdprg_status vdprg_pt_image_point(const vdprg_params* params, double x, double y,
                                  double px, double py, vdprg_complex* h);

/* ---- toy resummation example ---------------------------------------- */

/* ydot + eps y = 0: exact decay, divergent first-order truncation, and the
 * resummed result (identical to exact). */
vdprg_status vdprg_toy_rg(double t, double t0, double a, double eps,
                          double* exact, double* perturbative, double* rg);

/* ---- perturbative and resummed closed forms -------------------------- */

/* First-order perturbative solution (positions and velocities). Diverges
 * linearly in t unless the secular coefficients vanish. */
vdprg_status vdprg_perturbative(const vdprg_params* params,
                                const vdprg_initial* init, double t,
                                vdprg_state* out);

/* Coefficients of the (t-t0) cos(omega (t-t0)) secular terms. */
vdprg_status vdprg_secular_coefficient(const vdprg_params* params,
                                       const vdprg_initial* init,
                                       vdprg_complex* cx, vdprg_complex* cy);

/* Constant-amplitude resummed branch (no secular terms). */
vdprg_status vdprg_rg_center(const vdprg_params* params,
                             const vdprg_initial* init, double t,
                             vdprg_state* out);

/* Limit-torus resummed branch; requires b0 = sign*sqrt(mu1/mu2)*a0 (within
 * 1e-12 relative), mu2 != 0 and (mu1-mu2)^2 != 4 omega^2. */
vdprg_status vdprg_rg_limit(const vdprg_params* params, const vdprg_initial* init,
                            int sign, double t, vdprg_state* out);

/* Modulation and carrier frequencies of the limit-torus branch. */
vdprg_status vdprg_alpha_beta(const vdprg_params* params, double* alpha,
                              double* beta);

/* Renormalized amplitudes A(tau), B(tau) and phase shift theta(tau) on the
 * limit-torus manifold (branch sign inferred from init). */
vdprg_status vdprg_amplitude_flow(const vdprg_params* params,
                                  const vdprg_initial* init, double tau,
                                  vdprg_complex* a, vdprg_complex* b,
                                  double* theta);

/* Flow-equation derivatives at (A, B). With freeze_theta nonzero, dtheta is
 * pinned to zero and the remaining homogeneous pair is solved (the
 * constant-amplitude branch); otherwise all four relations must be
 * consistent or SINGULAR_SYSTEM is returned. */
vdprg_status vdprg_flow_rhs(const vdprg_params* params, vdprg_complex a,
                            vdprg_complex b, double theta, int freeze_theta,
                            vdprg_complex* da, vdprg_complex* db,
                            vdprg_complex* dtheta);

/* ---- trajectories ---------------------------------------------------- */

typedef struct vdprg_trajectory vdprg_trajectory;

/* Adaptive embedded-pair integration of the equations of motion; mixed
 * absolute/relative error control over all 8 real state components. */
vdprg_status vdprg_integrate(const vdprg_params* params,
                             const vdprg_initial* init,
                             const vdprg_integrator_config* cfg,
                             vdprg_trajectory** out);

/* Wrap externally produced samples (strictly increasing t). */
vdprg_status vdprg_trajectory_from_samples(const vdprg_state* samples, size_t n,
                                           vdprg_trajectory** out);

void vdprg_trajectory_free(vdprg_trajectory* traj);

size_t vdprg_trajectory_sample_count(const vdprg_trajectory* traj);
vdprg_status vdprg_trajectory_sample(const vdprg_trajectory* traj, size_t index,
                                     vdprg_state* out);
vdprg_status vdprg_trajectory_span(const vdprg_trajectory* traj, double* t_begin,
                                   double* t_end);
vdprg_status vdprg_trajectory_steps(const vdprg_trajectory* traj,
                                    size_t* accepted, size_t* rejected);

/* Interpolated state at t (dense output for integrated trajectories, cubic
 * Hermite for sample-built ones). */
vdprg_status vdprg_trajectory_at(const vdprg_trajectory* traj, double t,
                                 vdprg_state* out);

/* ---- comparison and classification ----------------------------------- */

typedef struct vdprg_error_report {
    double sup_error;
    double l2_error;
    double t_start;
    double t_end;
} vdprg_error_report;

/* Sup and L2 norms of the 4-component complex difference over n_samples
 * uniform points of [t_start, t_end]. */
vdprg_status vdprg_trajectory_error(const vdprg_trajectory* a,
                                    const vdprg_trajectory* b, double t_start,
                                    double t_end, size_t n_samples,
                                    vdprg_error_report* out);

typedef enum vdprg_component {
    VDPRG_COMPONENT_X = 0,
    VDPRG_COMPONENT_Y = 1
} vdprg_component;

typedef enum vdprg_orbit_class {
    VDPRG_ORBIT_CENTER = 0,
    VDPRG_ORBIT_BAND = 1,
    VDPRG_ORBIT_DIVERGENT = 2
} vdprg_orbit_class;

const char* vdprg_orbit_class_name(vdprg_orbit_class cls);

/* Envelope peaks of |Re component|: pass peaks = NULL to query the count.
 * Requires at least three oscillation periods (TOO_SHORT otherwise). */
vdprg_status vdprg_envelope(const vdprg_trajectory* traj,
                            vdprg_component component, double* t_peaks,
                            double* peaks, size_t capacity, size_t* count);

/* Center / Band / Divergent classification from the envelope drift. */
vdprg_status vdprg_classify_orbit(const vdprg_trajectory* traj,
                                  vdprg_component component, double center_tol,
                                  vdprg_orbit_class* cls,
                                  double* envelope_drift);

/* ---- quantum spectrum ------------------------------------------------ */

typedef struct vdprg_spectrum vdprg_spectrum;

/* Eigenvalues of the Weyl-ordered Hamiltonian in the n_max^2 tensor basis,
 * sorted by (Re, Im). */
vdprg_status vdprg_spectrum_compute(const vdprg_params* params, int n_max,
                                    vdprg_spectrum** out);

void vdprg_spectrum_free(vdprg_spectrum* spec);

size_t vdprg_spectrum_size(const vdprg_spectrum* spec);
vdprg_status vdprg_spectrum_get(const vdprg_spectrum* spec, size_t index,
                                vdprg_complex* out);

/* Fraction of eigenvalues with |Im E| > im_tol * max(1, |E|) among the
 * interior_fraction smallest in |E|. */
vdprg_status vdprg_fraction_complex(const vdprg_spectrum* spec, double im_tol,
                                    double interior_fraction, double* f);

/* F along mu1 = mu2 = mu for each of the n strictly increasing couplings;
 * f and f_unfiltered must hold n doubles (f_unfiltered may be NULL). */
vdprg_status vdprg_sweep_mu(const vdprg_params* params_template, int n_max,
                            const double* mu_values, size_t n, double im_tol,
                            double interior_fraction, double* f,
                            double* f_unfiltered);

/* F against mu1/mu2 at fixed mu1 (mu2 = mu1 / ratio). */
vdprg_status vdprg_sweep_ratio(double mu1, double omega, int n_max,
                               const double* ratios, size_t n, double im_tol,
                               double interior_fraction, double* f,
                               double* f_unfiltered);

/* Bisection estimate of the PT-transition coupling; requires F(mu_lo) = 0
 * and F(mu_hi) > 0 (BAD_BRACKET otherwise). Resolved to |bracket| < 1e-3. */
vdprg_status vdprg_critical_mu(const vdprg_params* params_template, int n_max,
                               double mu_lo, double mu_hi, double im_tol,
                               double interior_fraction, double* mu_c);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* VDPRG_H */
