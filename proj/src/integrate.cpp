#include "integrate.hpp"

#include <algorithm>
#include <cmath>

#include "model.hpp"

namespace vdprg {

namespace {

using Vec4 = std::array<Complex, 4>;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;

// Difference between the 5th and embedded 4th order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// Dense-output coefficients (Hairer, Norsett, Wanner).
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

Vec4 rhs(double /*t*/, const Vec4& u, const ModelParams& p)
{
    PhaseState s;
    s.x = u[0];
    s.y = u[1];
    s.vx = u[2];
    s.vy = u[3];
    auto [ax, ay] = eom_rhs(s, p);
    return {u[2], u[3], ax, ay};
}

bool finite(const Vec4& u)
{
    for (const Complex& c : u)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            return false;
    return true;
}

PhaseState to_state(double t, const Vec4& u)
{
    PhaseState s;
    s.t = t;
    s.x = u[0];
    s.y = u[1];
    s.vx = u[2];
    s.vy = u[3];
    return s;
}

// RMS of the componentwise errors scaled by abs_tol + rel_tol * |u|,
// taken over the 8 real components.
double error_norm(const Vec4& err, const Vec4& u0, const Vec4& u1,
                  double abs_tol, double rel_tol)
{
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        const double sc_re = abs_tol
            + rel_tol * std::max(std::abs(u0[i].real()), std::abs(u1[i].real()));
        const double sc_im = abs_tol
            + rel_tol * std::max(std::abs(u0[i].imag()), std::abs(u1[i].imag()));
        const double er = err[i].real() / sc_re;
        const double ei = err[i].imag() / sc_im;
        sum += er * er + ei * ei;
    }
    return std::sqrt(sum / 8.0);
}

Vec4 axpy(const Vec4& base, double h,
          std::initializer_list<std::pair<double, const Vec4*>> terms)
{
    Vec4 out = base;
    for (const auto& [w, k] : terms)
        for (int i = 0; i < 4; ++i)
            out[i] += h * w * (*k)[i];
    return out;
}

double initial_step_guess(const Vec4& u0, const Vec4& f0, double span,
                          double abs_tol, double rel_tol)
{
    double du = 0.0, df = 0.0;
    for (int i = 0; i < 4; ++i) {
        du = std::max({du, std::abs(u0[i].real()), std::abs(u0[i].imag())});
        df = std::max({df, std::abs(f0[i].real()), std::abs(f0[i].imag())});
    }
    const double tol = abs_tol + rel_tol * std::max(du, 1.0);
    double h = (df > 0.0) ? 0.01 * std::max(du, 1.0) / df : 1e-3 * span;
    h = std::min(h, std::pow(tol, 0.2));
    return std::max(h, 1e-8 * span);
}

void validate(const IntegratorConfig& cfg, double t0)
{
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
        throw InvalidArgument("tolerances must be positive");
    if (!(cfg.t_end > t0))
        throw InvalidArgument("t_end must exceed the initial time");
    if (!(cfg.max_step > 0.0))
        throw InvalidArgument("max_step must be positive");
    if (cfg.fixed_rk4 && !(cfg.fixed_step > 0.0))
        throw InvalidArgument("fixed_step must be positive");
}

} // namespace

double Trajectory::t_begin() const
{
    if (samples_.empty())
        throw OutOfRange("empty trajectory");
    return samples_.front().t;
}

double Trajectory::t_end() const
{
    if (samples_.empty())
        throw OutOfRange("empty trajectory");
    return samples_.back().t;
}

std::size_t Trajectory::locate(double t) const
{
    if (samples_.empty() || t < t_begin() || t > t_end())
        throw OutOfRange("time outside trajectory span");
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double v, const PhaseState& s) { return v < s.t; });
    std::size_t i = static_cast<std::size_t>(it - samples_.begin());
    if (i == 0)
        return 0;
    return i - 1;
}

PhaseState Trajectory::sample_at(double t) const
{
    const std::size_t i = locate(t);
    if (t == samples_[i].t)
        return samples_[i];
    if (i + 1 < samples_.size() && t == samples_[i + 1].t)
        return samples_[i + 1];

    if (!dense_.empty()) {
        const DenseStep& d = dense_[std::min(i, dense_.size() - 1)];
        const double th = (t - d.t0) / d.h;
        const double th1 = 1.0 - th;
        Vec4 u;
        for (int k = 0; k < 4; ++k)
            u[k] = d.r1[k]
                 + th * (d.r2[k] + th1 * (d.r3[k] + th * (d.r4[k] + th1 * d.r5[k])));
        return to_state(t, u);
    }

    // Cubic Hermite on positions; velocities from the polynomial derivative,
    // which reproduces the stored node velocities exactly.
    const PhaseState& s0 = samples_[i];
    const PhaseState& s1 = samples_[i + 1];
    const double h = s1.t - s0.t;
    const double th = (t - s0.t) / h;
    const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
    const double h10 = th * (1 - th) * (1 - th);
    const double h01 = th * th * (3 - 2 * th);
    const double h11 = th * th * (th - 1);
    // Derivatives of the basis functions with respect to t.
    const double g00 = 6 * th * (th - 1) / h;
    const double g10 = (3 * th * th - 4 * th + 1);
    const double g01 = -g00;
    const double g11 = (3 * th * th - 2 * th);

    PhaseState out;
    out.t = t;
    out.x = h00 * s0.x + h10 * h * s0.vx + h01 * s1.x + h11 * h * s1.vx;
    out.y = h00 * s0.y + h10 * h * s0.vy + h01 * s1.y + h11 * h * s1.vy;
    out.vx = g00 * s0.x + g10 * s0.vx + g01 * s1.x + g11 * s1.vx;
    out.vy = g00 * s0.y + g10 * s0.vy + g01 * s1.y + g11 * s1.vy;
    return out;
}

Trajectory Trajectory::from_samples(std::vector<PhaseState> samples)
{
    if (samples.size() < 2)
        throw InvalidArgument("need at least two samples");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].t > samples[i - 1].t))
            throw InvalidArgument("sample times must be strictly increasing");
    Trajectory traj;
    traj.samples_ = std::move(samples);
    traj.accepted_ = traj.samples_.size() - 1;
    return traj;
}

Trajectory integrate(const InitialData& init, const ModelParams& params,
                     const IntegratorConfig& cfg)
{
    return integrate_state(initial_state(init), params, cfg);
}

Trajectory integrate_state(const PhaseState& init, const ModelParams& params,
                           const IntegratorConfig& cfg)
{
    validate(params);
    validate(cfg, init.t);
    if (!is_finite(init))
        throw InvalidArgument("initial state must be finite");

    Trajectory traj;
    traj.samples_.push_back(init);

    const double t0 = init.t;
    const double span = cfg.t_end - t0;

    double t = t0;
    Vec4 u = {init.x, init.y, init.vx, init.vy};

    if (cfg.fixed_rk4) {
        const double h0 = std::min(cfg.fixed_step, cfg.max_step);
        const auto n_steps = static_cast<std::size_t>(std::ceil(span / h0));
        const double h = span / static_cast<double>(n_steps);
        for (std::size_t n = 0; n < n_steps; ++n) {
            const Vec4 k1 = rhs(t, u, params);
            const Vec4 k2 = rhs(t + h / 2, axpy(u, h, {{0.5, &k1}}), params);
            const Vec4 k3 = rhs(t + h / 2, axpy(u, h, {{0.5, &k2}}), params);
            const Vec4 k4 = rhs(t + h, axpy(u, h, {{1.0, &k3}}), params);
            for (int i = 0; i < 4; ++i)
                u[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            t = t0 + (static_cast<double>(n) + 1.0) * h;
            if (!finite(u))
                throw NonFinite("state overflow during fixed-step integration");
            traj.samples_.push_back(to_state(t, u));
            ++traj.accepted_;
        }
        return traj;
    }

    Vec4 k1 = rhs(t, u, params);
    double h = cfg.initial_step > 0.0
                   ? cfg.initial_step
                   : initial_step_guess(u, k1, span, cfg.abs_tol, cfg.rel_tol);
    h = std::min(h, cfg.max_step);

    const double h_min = 1e-14 * span;

    while (t < cfg.t_end) {
        if (h < h_min)
            throw StepUnderflow("step size underflow");

        // Land exactly on t_end; the final sliver may be arbitrarily small.
        const bool last = t + h >= cfg.t_end;
        const double hs = last ? cfg.t_end - t : h;

        const Vec4 k2 = rhs(t + c2 * hs, axpy(u, hs, {{a21, &k1}}), params);
        const Vec4 k3 = rhs(t + c3 * hs, axpy(u, hs, {{a31, &k1}, {a32, &k2}}), params);
        const Vec4 k4 = rhs(t + c4 * hs,
                            axpy(u, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}), params);
        const Vec4 k5 = rhs(t + c5 * hs,
                            axpy(u, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}),
                            params);
        const Vec4 k6 = rhs(t + hs,
                            axpy(u, hs,
                                 {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}),
                            params);
        const Vec4 u1 = axpy(u, hs,
                             {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
        const Vec4 k7 = rhs(t + hs, u1, params);

        Vec4 err;
        for (int i = 0; i < 4; ++i)
            err[i] = hs
                     * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i]
                        + e6 * k6[i] + e7 * k7[i]);

        if (!finite(u1) || !finite(k7))
            throw NonFinite("state overflow during integration");

        const double err_norm = error_norm(err, u, u1, cfg.abs_tol, cfg.rel_tol);

        if (err_norm <= 1.0) {
            Trajectory::DenseStep d;
            d.t0 = t;
            d.h = hs;
            for (int i = 0; i < 4; ++i) {
                const Complex ydiff = u1[i] - u[i];
                const Complex bspl = hs * k1[i] - ydiff;
                d.r1[i] = u[i];
                d.r2[i] = ydiff;
                d.r3[i] = bspl;
                d.r4[i] = ydiff - hs * k7[i] - bspl;
                d.r5[i] = hs
                          * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i]
                             + d6 * k6[i] + d7 * k7[i]);
            }
            traj.dense_.push_back(d);

            t = last ? cfg.t_end : t + hs;
            u = u1;
            k1 = k7; // FSAL
            traj.samples_.push_back(to_state(t, u));
            ++traj.accepted_;

            const double fac = (err_norm == 0.0)
                                   ? 5.0
                                   : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
            h = std::min(hs * fac, cfg.max_step);
        } else {
            ++traj.rejected_;
            h = hs * std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 0.9);
        }
    }

    return traj;
}

} // namespace vdprg
