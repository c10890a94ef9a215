#ifndef VDPRG_INTEGRATE_HPP
#define VDPRG_INTEGRATE_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "types.hpp"

namespace vdprg {

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double max_step = 0.1;
    double initial_step = 0.0; // 0 = choose automatically
    double t_end = 100.0;
    bool fixed_rk4 = false;    // debug fallback; uses fixed_step
    double fixed_step = 1e-3;
};

// Sampled orbit with per-step interpolation data. Instances produced by
// integrate() carry 5th-order dense output; instances built from raw samples
// interpolate with cubic Hermite polynomials on the stored velocities.
class Trajectory {
public:
    const std::vector<PhaseState>& samples() const { return samples_; }
    std::size_t accepted_steps() const { return accepted_; }
    std::size_t rejected_steps() const { return rejected_; }
    double t_begin() const;
    double t_end() const;

    // Interpolated state at t inside [t_begin, t_end]. Throws OutOfRange.
    PhaseState sample_at(double t) const;

    static Trajectory from_samples(std::vector<PhaseState> samples);

private:
    friend Trajectory integrate_state(const PhaseState&, const ModelParams&,
                                      const IntegratorConfig&);

    using Vec4 = std::array<Complex, 4>; // (x, y, vx, vy)

    struct DenseStep {
        double t0 = 0.0;
        double h = 0.0;
        Vec4 r1{}, r2{}, r3{}, r4{}, r5{};
    };

    std::size_t locate(double t) const;

    std::vector<PhaseState> samples_;
    std::vector<DenseStep> dense_;
    std::size_t accepted_ = 0;
    std::size_t rejected_ = 0;
};

// Adaptive integration of the equations of motion from the velocity-zero
// initial conditions. Error control acts on all 8 real components with a
// mixed absolute/relative norm.
Trajectory integrate(const InitialData& init, const ModelParams& params,
                     const IntegratorConfig& cfg);

// Same, starting from an arbitrary phase-space state.
Trajectory integrate_state(const PhaseState& init, const ModelParams& params,
                           const IntegratorConfig& cfg);

} // namespace vdprg

#endif
