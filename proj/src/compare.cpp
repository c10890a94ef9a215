#include "compare.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace vdprg {

namespace {

double component_re(const PhaseState& s, Component c)
{
    switch (c) {
    case Component::X: return s.x.real();
    case Component::Y: return s.y.real();
    case Component::Vx: return s.vx.real();
    case Component::Vy: return s.vy.real();
    }
    return 0.0;
}

double state_distance(const PhaseState& a, const PhaseState& b)
{
    const double dx = std::abs(a.x - b.x);
    const double dy = std::abs(a.y - b.y);
    const double dvx = std::abs(a.vx - b.vx);
    const double dvy = std::abs(a.vy - b.vy);
    return std::sqrt(dx * dx + dy * dy + dvx * dvx + dvy * dvy);
}

// Vertex of the parabola through three (t, f) points.
Peak parabola_peak(double t0, double f0, double t1, double f1, double t2, double f2)
{
    const double d1 = (f1 - f0) / (t1 - t0);
    const double d2 = (f2 - f1) / (t2 - t1);
    const double curv = (d2 - d1) / (t2 - t0);
    if (curv == 0.0)
        return {t1, f1};
    const double tv = 0.5 * (t0 + t1) - 0.5 * d1 / curv;
    const double fv = f0 + d1 * (tv - t0) + curv * (tv - t0) * (tv - t1);
    return {tv, fv};
}

} // namespace

TimeSolution as_solution(const Trajectory& traj)
{
    auto owned = std::make_shared<Trajectory>(traj);
    return [owned](double t) { return owned->sample_at(t); };
}

ErrorReport trajectory_error(const TimeSolution& a, const TimeSolution& b,
                             Window window, std::size_t n_samples)
{
    if (n_samples < 2)
        throw InvalidArgument("n_samples must be at least 2");
    if (!(window.t_end > window.t_start))
        throw InvalidArgument("window must have positive width");

    double sup = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = window.t_start
                         + (window.t_end - window.t_start) * static_cast<double>(i)
                               / static_cast<double>(n_samples - 1);
        const double d = state_distance(a(t), b(t));
        sup = std::max(sup, d);
        sum_sq += d * d;
    }

    ErrorReport report;
    report.sup_error = sup;
    report.l2_error = std::sqrt(sum_sq / static_cast<double>(n_samples));
    report.window = window;
    return report;
}

std::vector<Peak> envelope(const Trajectory& traj, Component component)
{
    const auto& samples = traj.samples();
    if (samples.size() < 8)
        throw TooShort("trajectory has too few samples");

    // Estimate the oscillation period from zero crossings of Re(component).
    std::size_t crossings = 0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double f0 = component_re(samples[i - 1], component);
        const double f1 = component_re(samples[i], component);
        if ((f0 < 0.0 && f1 >= 0.0) || (f0 > 0.0 && f1 <= 0.0))
            ++crossings;
    }
    if (crossings < 6)
        throw TooShort("trajectory spans fewer than three oscillation periods");

    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
        const double f0 = std::abs(component_re(samples[i - 1], component));
        const double f1 = std::abs(component_re(samples[i], component));
        const double f2 = std::abs(component_re(samples[i + 1], component));
        if (f1 >= f0 && f1 > f2) {
            peaks.push_back(parabola_peak(samples[i - 1].t, f0, samples[i].t, f1,
                                          samples[i + 1].t, f2));
        }
    }
    return peaks;
}

OrbitClass classify_orbit(const Trajectory& traj, Component component,
                          double center_tol)
{
    const std::vector<Peak> peaks = envelope(traj, component);
    if (peaks.size() < 3)
        throw TooShort("too few envelope peaks to classify");

    const double span = peaks.back().t - peaks.front().t;
    const double period =
        2.0 * span / static_cast<double>(peaks.size() - 1); // two peaks per period

    double max_peak = 0.0;
    for (const Peak& p : peaks)
        max_peak = std::max(max_peak, p.value);

    double drift = 0.0;
    for (std::size_t i = 1; i < peaks.size(); ++i) {
        const double dt = peaks[i].t - peaks[i - 1].t;
        if (dt <= 0.0)
            continue;
        const double ref = std::max(std::abs(peaks[i - 1].value), 1e-12 * max_peak);
        const double rate =
            std::abs(peaks[i].value - peaks[i - 1].value) / ref * (period / dt);
        drift = std::max(drift, rate);
    }

    OrbitClass result;
    result.envelope_drift = drift;
    if (max_peak >= 2.0 * peaks.front().value && peaks.front().value > 0.0)
        result.tag = OrbitTag::Divergent;
    else if (drift < center_tol)
        result.tag = OrbitTag::Center;
    else
        result.tag = OrbitTag::Band;
    return result;
}

const char* to_string(OrbitTag tag)
{
    switch (tag) {
    case OrbitTag::Center: return "Center";
    case OrbitTag::Band: return "Band";
    case OrbitTag::Divergent: return "Divergent";
    }
    return "unknown";
}

} // namespace vdprg
