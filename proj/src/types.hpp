#ifndef VDPRG_TYPES_HPP
#define VDPRG_TYPES_HPP

#include <complex>

#include "errors.hpp"

namespace vdprg {

using Complex = std::complex<double>;

// Couplings of the two-coordinate oscillator
//   H = p_x p_y + omega^2 x y - i [ mu1 (1 - x^2) y p_y + mu2 (1 - y^2) x p_x ].
// All quantities are dimensionless; omega defaults to 1.
struct ModelParams {
    double omega = 1.0;
    double mu1 = 0.0;
    double mu2 = 0.0;
};

void validate(const ModelParams& p);

// Complexified phase-space point in position/velocity coordinates.
struct PhaseState {
    double t = 0.0;
    Complex x{};
    Complex y{};
    Complex vx{};
    Complex vy{};
};

bool is_finite(const PhaseState& s);

struct MomentumState {
    Complex px{};
    Complex py{};
};

// Initial data with the velocity-zero convention x(t0)=A0, y(t0)=B0,
// xdot(t0)=ydot(t0)=0.
struct InitialData {
    double t0 = 0.0;
    double a0 = 1.0;
    double b0 = 1.0;
};

PhaseState initial_state(const InitialData& init);

} // namespace vdprg

#endif
