// C bindings over the C++ core. Exceptions are mapped to status codes at
// the boundary; no exception escapes a C entry point.

#include "vdprg.h"

#include <new>
#include <vector>

#include "compare.hpp"
#include "integrate.hpp"
#include "model.hpp"
#include "perturbation.hpp"
#include "quantum.hpp"
#include "rg.hpp"
#include "types.hpp"

struct vdprg_trajectory {
    vdprg::Trajectory impl;
};

struct vdprg_spectrum {
    vdprg::Spectrum impl;
};

namespace {

using vdprg::Complex;

vdprg::ModelParams to_params(const vdprg_params& p)
{
    return {p.omega, p.mu1, p.mu2};
}

vdprg::InitialData to_initial(const vdprg_initial& i)
{
    return {i.t0, i.a0, i.b0};
}

vdprg::PhaseState to_state(const vdprg_state& s)
{
    vdprg::PhaseState out;
    out.t = s.t;
    out.x = {s.x.re, s.x.im};
    out.y = {s.y.re, s.y.im};
    out.vx = {s.vx.re, s.vx.im};
    out.vy = {s.vy.re, s.vy.im};
    return out;
}

vdprg_complex from_complex(Complex c)
{
    return {c.real(), c.imag()};
}

vdprg_state from_state(const vdprg::PhaseState& s)
{
    vdprg_state out;
    out.t = s.t;
    out.x = from_complex(s.x);
    out.y = from_complex(s.y);
    out.vx = from_complex(s.vx);
    out.vy = from_complex(s.vy);
    return out;
}

vdprg::Component to_component(vdprg_component c)
{
    return c == VDPRG_COMPONENT_Y ? vdprg::Component::Y : vdprg::Component::X;
}

template <typename Fn>
vdprg_status guarded(Fn&& fn)
{
    try {
        fn();
        return VDPRG_OK;
    } catch (const vdprg::StepUnderflow&) {
        return VDPRG_ERR_STEP_UNDERFLOW;
    } catch (const vdprg::NonFinite&) {
        return VDPRG_ERR_NONFINITE;
    } catch (const vdprg::OutOfRange&) {
        return VDPRG_ERR_OUT_OF_RANGE;
    } catch (const vdprg::SingularSystem&) {
        return VDPRG_ERR_SINGULAR_SYSTEM;
    } catch (const vdprg::ManifoldViolation&) {
        return VDPRG_ERR_MANIFOLD_VIOLATION;
    } catch (const vdprg::ResonantDenominator&) {
        return VDPRG_ERR_RESONANT_DENOMINATOR;
    } catch (const vdprg::NonRealState&) {
        return VDPRG_ERR_NONREAL_STATE;
    } catch (const vdprg::NoConvergence&) {
        return VDPRG_ERR_NO_CONVERGENCE;
    } catch (const vdprg::BadBracket&) {
        return VDPRG_ERR_BAD_BRACKET;
    } catch (const vdprg::TooShort&) {
        return VDPRG_ERR_TOO_SHORT;
    } catch (const vdprg::InvalidArgument&) {
        return VDPRG_ERR_INVALID_ARGUMENT;
    } catch (const std::bad_alloc&) {
        return VDPRG_ERR_INTERNAL;
    } catch (...) {
        return VDPRG_ERR_INTERNAL;
    }
}

} // namespace

extern "C" {

const char* vdprg_status_name(vdprg_status status)
{
    switch (status) {
    case VDPRG_OK: return "ok";
    case VDPRG_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case VDPRG_ERR_STEP_UNDERFLOW: return "step_underflow";
    case VDPRG_ERR_NONFINITE: return "nonfinite";
    case VDPRG_ERR_OUT_OF_RANGE: return "out_of_range";
    case VDPRG_ERR_SINGULAR_SYSTEM: return "singular_system";
    case VDPRG_ERR_MANIFOLD_VIOLATION: return "manifold_violation";
    case VDPRG_ERR_RESONANT_DENOMINATOR: return "resonant_denominator";
    case VDPRG_ERR_NONREAL_STATE: return "nonreal_state";
    case VDPRG_ERR_NO_CONVERGENCE: return "no_convergence";
    case VDPRG_ERR_BAD_BRACKET: return "bad_bracket";
    case VDPRG_ERR_TOO_SHORT: return "too_short";
    case VDPRG_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* vdprg_version(void)
{
    return "0.1.0";
}

void vdprg_integrator_config_default(vdprg_integrator_config* cfg)
{
    if (!cfg)
        return;
    cfg->rel_tol = 1e-10;
    cfg->abs_tol = 1e-10;
    cfg->max_step = 0.1;
    cfg->initial_step = 0.0;
    cfg->t_end = 100.0;
    cfg->fixed_rk4 = 0;
    cfg->fixed_step = 1e-3;
}

vdprg_status vdprg_eom_rhs(const vdprg_params* params, const vdprg_state* state,
                           vdprg_complex* ax, vdprg_complex* ay)
{
    if (!params || !state || !ax || !ay)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto p = to_params(*params);
        vdprg::validate(p);
        auto [a, b] = vdprg::eom_rhs(to_state(*state), p);
        *ax = from_complex(a);
        *ay = from_complex(b);
    });
}

vdprg_status vdprg_momenta(const vdprg_params* params, const vdprg_state* state,
                           vdprg_complex* px, vdprg_complex* py)
{
    if (!params || !state || !px || !py)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto p = to_params(*params);
        vdprg::validate(p);
        const auto m = vdprg::momenta_from_velocities(to_state(*state), p);
        *px = from_complex(m.px);
        *py = from_complex(m.py);
    });
}

vdprg_status vdprg_hamiltonian(const vdprg_params* params,
                               const vdprg_state* state, vdprg_complex* h)
{
    if (!params || !state || !h)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto p = to_params(*params);
        vdprg::validate(p);
        *h = from_complex(vdprg::hamiltonian_value(to_state(*state), p));
    });
}

vdprg_status vdprg_pt_image(const vdprg_params* params, const vdprg_state* state,
                            vdprg_complex* h)
{
    if (!params || !state || !h)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto p = to_params(*params);
        vdprg::validate(p);
        *h = from_complex(vdprg::pt_image_value(to_state(*state), p));
    });
}

vdprg_status vdprg_hamiltonian_point(const vdprg_params* params, double x,
                                     double y, double px, double py,
                                     vdprg_complex* h)
{
    if (!params || !h)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto p = to_params(*params);
        vdprg::validate(p);
        *h = from_complex(vdprg::hamiltonian_point(x, y, px, py, p));
    });
}

vdprg_status vdprg_pt_image_point(const vdprg_params* params, double x, double y,
                                  double px, double py, vdprg_complex* h)
{
    if (!params || !h)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto p = to_params(*params);
        vdprg::validate(p);
        *h = from_complex(vdprg::pt_image_point(x, y, px, py, p));
    });
}

vdprg_status vdprg_toy_rg(double t, double t0, double a, double eps,
                          double* exact, double* perturbative, double* rg)
{
    if (!exact || !perturbative || !rg)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto v = vdprg::toy_rg(t, t0, a, eps);
        *exact = v.exact;
        *perturbative = v.perturbative;
        *rg = v.rg;
    });
}

vdprg_status vdprg_perturbative(const vdprg_params* params,
                                const vdprg_initial* init, double t,
                                vdprg_state* out)
{
    if (!params || !init || !out)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = from_state(
            vdprg::perturbative_state(t, to_initial(*init), to_params(*params)));
    });
}

vdprg_status vdprg_secular_coefficient(const vdprg_params* params,
                                       const vdprg_initial* init,
                                       vdprg_complex* cx, vdprg_complex* cy)
{
    if (!params || !init || !cx || !cy)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        auto [a, b] =
            vdprg::secular_coefficient(to_initial(*init), to_params(*params));
        *cx = from_complex(a);
        *cy = from_complex(b);
    });
}

vdprg_status vdprg_rg_center(const vdprg_params* params,
                             const vdprg_initial* init, double t,
                             vdprg_state* out)
{
    if (!params || !init || !out)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = from_state(
            vdprg::rg_center_state(t, to_initial(*init), to_params(*params)));
    });
}

vdprg_status vdprg_rg_limit(const vdprg_params* params, const vdprg_initial* init,
                            int sign, double t, vdprg_state* out)
{
    if (!params || !init || !out)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *out = from_state(
            vdprg::rg_limit_state(t, to_initial(*init), to_params(*params), sign));
    });
}

vdprg_status vdprg_alpha_beta(const vdprg_params* params, double* alpha,
                              double* beta)
{
    if (!params || !alpha || !beta)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        auto [a, b] = vdprg::alpha_beta(to_params(*params));
        *alpha = a;
        *beta = b;
    });
}

vdprg_status vdprg_amplitude_flow(const vdprg_params* params,
                                  const vdprg_initial* init, double tau,
                                  vdprg_complex* a, vdprg_complex* b,
                                  double* theta)
{
    if (!params || !init || !a || !b || !theta)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto fp =
            vdprg::amplitude_flow(tau, to_initial(*init), to_params(*params));
        *a = from_complex(fp.A);
        *b = from_complex(fp.B);
        *theta = fp.theta;
    });
}

vdprg_status vdprg_flow_rhs(const vdprg_params* params, vdprg_complex a,
                            vdprg_complex b, double theta, int freeze_theta,
                            vdprg_complex* da, vdprg_complex* db,
                            vdprg_complex* dtheta)
{
    if (!params || !da || !db || !dtheta)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto mode = freeze_theta ? vdprg::FlowMode::ThetaFrozen
                                       : vdprg::FlowMode::Full;
        const auto rates =
            vdprg::flow_rhs(Complex{a.re, a.im}, Complex{b.re, b.im}, theta,
                            to_params(*params), mode);
        *da = from_complex(rates.dA);
        *db = from_complex(rates.dB);
        *dtheta = from_complex(rates.dTheta);
    });
}

vdprg_status vdprg_integrate(const vdprg_params* params,
                             const vdprg_initial* init,
                             const vdprg_integrator_config* cfg,
                             vdprg_trajectory** out)
{
    if (!params || !init || !cfg || !out)
        return VDPRG_ERR_INVALID_ARGUMENT;
    *out = nullptr;
    return guarded([&] {
        vdprg::IntegratorConfig c;
        c.rel_tol = cfg->rel_tol;
        c.abs_tol = cfg->abs_tol;
        c.max_step = cfg->max_step;
        c.initial_step = cfg->initial_step;
        c.t_end = cfg->t_end;
        c.fixed_rk4 = cfg->fixed_rk4 != 0;
        c.fixed_step = cfg->fixed_step;
        auto traj = vdprg::integrate(to_initial(*init), to_params(*params), c);
        *out = new vdprg_trajectory{std::move(traj)};
    });
}

vdprg_status vdprg_trajectory_from_samples(const vdprg_state* samples, size_t n,
                                           vdprg_trajectory** out)
{
    if (!samples || !out)
        return VDPRG_ERR_INVALID_ARGUMENT;
    *out = nullptr;
    return guarded([&] {
        std::vector<vdprg::PhaseState> converted;
        converted.reserve(n);
        for (size_t i = 0; i < n; ++i)
            converted.push_back(to_state(samples[i]));
        *out = new vdprg_trajectory{
            vdprg::Trajectory::from_samples(std::move(converted))};
    });
}

void vdprg_trajectory_free(vdprg_trajectory* traj)
{
    delete traj;
}

size_t vdprg_trajectory_sample_count(const vdprg_trajectory* traj)
{
    return traj ? traj->impl.samples().size() : 0;
}

vdprg_status vdprg_trajectory_sample(const vdprg_trajectory* traj, size_t index,
                                     vdprg_state* out)
{
    if (!traj || !out)
        return VDPRG_ERR_INVALID_ARGUMENT;
    if (index >= traj->impl.samples().size())
        return VDPRG_ERR_OUT_OF_RANGE;
    *out = from_state(traj->impl.samples()[index]);
    return VDPRG_OK;
}

vdprg_status vdprg_trajectory_span(const vdprg_trajectory* traj, double* t_begin,
                                   double* t_end)
{
    if (!traj || !t_begin || !t_end)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *t_begin = traj->impl.t_begin();
        *t_end = traj->impl.t_end();
    });
}

vdprg_status vdprg_trajectory_steps(const vdprg_trajectory* traj,
                                    size_t* accepted, size_t* rejected)
{
    if (!traj || !accepted || !rejected)
        return VDPRG_ERR_INVALID_ARGUMENT;
    *accepted = traj->impl.accepted_steps();
    *rejected = traj->impl.rejected_steps();
    return VDPRG_OK;
}

vdprg_status vdprg_trajectory_at(const vdprg_trajectory* traj, double t,
                                 vdprg_state* out)
{
    if (!traj || !out)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] { *out = from_state(traj->impl.sample_at(t)); });
}

vdprg_status vdprg_trajectory_error(const vdprg_trajectory* a,
                                    const vdprg_trajectory* b, double t_start,
                                    double t_end, size_t n_samples,
                                    vdprg_error_report* out)
{
    if (!a || !b || !out)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto report = vdprg::trajectory_error(
            vdprg::as_solution(a->impl), vdprg::as_solution(b->impl),
            {t_start, t_end}, n_samples);
        out->sup_error = report.sup_error;
        out->l2_error = report.l2_error;
        out->t_start = report.window.t_start;
        out->t_end = report.window.t_end;
    });
}

const char* vdprg_orbit_class_name(vdprg_orbit_class cls)
{
    switch (cls) {
    case VDPRG_ORBIT_CENTER: return "Center";
    case VDPRG_ORBIT_BAND: return "Band";
    case VDPRG_ORBIT_DIVERGENT: return "Divergent";
    }
    return "unknown";
}

vdprg_status vdprg_envelope(const vdprg_trajectory* traj,
                            vdprg_component component, double* t_peaks,
                            double* peaks, size_t capacity, size_t* count)
{
    if (!traj || !count)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto found = vdprg::envelope(traj->impl, to_component(component));
        *count = found.size();
        if (t_peaks && peaks) {
            const size_t n = std::min(capacity, found.size());
            for (size_t i = 0; i < n; ++i) {
                t_peaks[i] = found[i].t;
                peaks[i] = found[i].value;
            }
        }
    });
}

vdprg_status vdprg_classify_orbit(const vdprg_trajectory* traj,
                                  vdprg_component component, double center_tol,
                                  vdprg_orbit_class* cls, double* envelope_drift)
{
    if (!traj || !cls)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto result =
            vdprg::classify_orbit(traj->impl, to_component(component), center_tol);
        switch (result.tag) {
        case vdprg::OrbitTag::Center: *cls = VDPRG_ORBIT_CENTER; break;
        case vdprg::OrbitTag::Band: *cls = VDPRG_ORBIT_BAND; break;
        case vdprg::OrbitTag::Divergent: *cls = VDPRG_ORBIT_DIVERGENT; break;
        }
        if (envelope_drift)
            *envelope_drift = result.envelope_drift;
    });
}

vdprg_status vdprg_spectrum_compute(const vdprg_params* params, int n_max,
                                    vdprg_spectrum** out)
{
    if (!params || !out)
        return VDPRG_ERR_INVALID_ARGUMENT;
    *out = nullptr;
    return guarded([&] {
        const auto p = to_params(*params);
        vdprg::validate(p);
        const vdprg::BasisConfig cfg{n_max, p.omega};
        auto spec = vdprg::eigenvalues(vdprg::build_hamiltonian(p, cfg));
        *out = new vdprg_spectrum{std::move(spec)};
    });
}

void vdprg_spectrum_free(vdprg_spectrum* spec)
{
    delete spec;
}

size_t vdprg_spectrum_size(const vdprg_spectrum* spec)
{
    return spec ? spec->impl.eigenvalues.size() : 0;
}

vdprg_status vdprg_spectrum_get(const vdprg_spectrum* spec, size_t index,
                                vdprg_complex* out)
{
    if (!spec || !out)
        return VDPRG_ERR_INVALID_ARGUMENT;
    if (index >= spec->impl.eigenvalues.size())
        return VDPRG_ERR_OUT_OF_RANGE;
    *out = from_complex(spec->impl.eigenvalues[index]);
    return VDPRG_OK;
}

vdprg_status vdprg_fraction_complex(const vdprg_spectrum* spec, double im_tol,
                                    double interior_fraction, double* f)
{
    if (!spec || !f)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        *f = vdprg::fraction_complex(spec->impl, im_tol, interior_fraction).f;
    });
}

vdprg_status vdprg_sweep_mu(const vdprg_params* params_template, int n_max,
                            const double* mu_values, size_t n, double im_tol,
                            double interior_fraction, double* f,
                            double* f_unfiltered)
{
    if (!params_template || !mu_values || !f || n == 0)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto p = to_params(*params_template);
        const vdprg::BasisConfig cfg{n_max, p.omega};
        const vdprg::SweepTolerances tol{im_tol, interior_fraction};
        const auto result = vdprg::sweep_mu(
            std::vector<double>(mu_values, mu_values + n), p, cfg, tol);
        for (size_t i = 0; i < n; ++i) {
            f[i] = result.points[i].f;
            if (f_unfiltered)
                f_unfiltered[i] = result.points[i].f_unfiltered;
        }
    });
}

vdprg_status vdprg_sweep_ratio(double mu1, double omega, int n_max,
                               const double* ratios, size_t n, double im_tol,
                               double interior_fraction, double* f,
                               double* f_unfiltered)
{
    if (!ratios || !f || n == 0)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const vdprg::BasisConfig cfg{n_max, omega};
        const vdprg::SweepTolerances tol{im_tol, interior_fraction};
        const auto result = vdprg::sweep_ratio(
            mu1, std::vector<double>(ratios, ratios + n), cfg, tol);
        for (size_t i = 0; i < n; ++i) {
            f[i] = result.points[i].f;
            if (f_unfiltered)
                f_unfiltered[i] = result.points[i].f_unfiltered;
        }
    });
}

vdprg_status vdprg_critical_mu(const vdprg_params* params_template, int n_max,
                               double mu_lo, double mu_hi, double im_tol,
                               double interior_fraction, double* mu_c)
{
    if (!params_template || !mu_c)
        return VDPRG_ERR_INVALID_ARGUMENT;
    return guarded([&] {
        const auto p = to_params(*params_template);
        const vdprg::BasisConfig cfg{n_max, p.omega};
        const vdprg::SweepTolerances tol{im_tol, interior_fraction};
        *mu_c = vdprg::critical_mu(p, cfg, {mu_lo, mu_hi}, tol);
    });
}

} // extern "C"
