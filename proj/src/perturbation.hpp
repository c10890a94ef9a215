#ifndef VDPRG_PERTURBATION_HPP
#define VDPRG_PERTURBATION_HPP

#include <utility>

#include "types.hpp"

namespace vdprg {

// First-order expansion components at a given time. The full solution is
//   x = x00 + (mu1/2) x10 + (mu2/2) x01   (same pattern for y).
struct PerturbativeTerms {
    Complex x00{}, x10{}, x01{};
    Complex y00{}, y10{}, y01{};
};

// x00 = A0 cos(omega (t - t0)), y00 = B0 cos(omega (t - t0)).
std::pair<Complex, Complex> zeroth_order(double t, const InitialData& init,
                                         const ModelParams& params);

PerturbativeTerms first_order_terms(double t, const InitialData& init,
                                    const ModelParams& params);

std::pair<Complex, Complex> perturbative_solution(double t, const InitialData& init,
                                                  const ModelParams& params);

// Positions and analytic velocities of the first-order solution.
PhaseState perturbative_state(double t, const InitialData& init,
                              const ModelParams& params);

// Coefficients of the (t - t0) cos(omega (t - t0)) secular terms:
//   cx = -(i mu1 A0 / 8)(-4 + A0^2) + (i mu2 A0 / 8)(-4 + B0^2)
//   cy = +(i mu1 B0 / 8)(-4 + A0^2) - (i mu2 B0 / 8)(-4 + B0^2)
std::pair<Complex, Complex> secular_coefficient(const InitialData& init,
                                                const ModelParams& params);

} // namespace vdprg

#endif
