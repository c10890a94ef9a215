#ifndef VDPRG_COMPARE_HPP
#define VDPRG_COMPARE_HPP

#include <functional>
#include <vector>

#include "integrate.hpp"
#include "types.hpp"

namespace vdprg {

// Any time-indexed solution: numerical trajectories (via sample_at) or the
// closed forms.
using TimeSolution = std::function<PhaseState(double)>;

TimeSolution as_solution(const Trajectory& traj);

struct Window {
    double t_start = 0.0;
    double t_end = 0.0;
};

struct ErrorReport {
    double sup_error = 0.0;
    double l2_error = 0.0; // RMS over the sample grid
    Window window;
};

// Sup and L2 norms of the 4-component complex difference over n_samples
// uniform points of the window.
ErrorReport trajectory_error(const TimeSolution& a, const TimeSolution& b,
                             Window window, std::size_t n_samples);

enum class Component { X, Y, Vx, Vy };

struct Peak {
    double t = 0.0;
    double value = 0.0;
};

// Local maxima of |Re(component)| located by quadratic interpolation through
// sample triples. Requires the trajectory to span at least three oscillation
// periods (estimated from zero crossings).
std::vector<Peak> envelope(const Trajectory& traj, Component component);

enum class OrbitTag { Center, Band, Divergent };

struct OrbitClass {
    OrbitTag tag = OrbitTag::Center;
    double envelope_drift = 0.0; // max relative peak drift per period
};

OrbitClass classify_orbit(const Trajectory& traj, Component component,
                          double center_tol = 1e-3);

const char* to_string(OrbitTag tag);

} // namespace vdprg

#endif
