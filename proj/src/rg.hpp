#ifndef VDPRG_RG_HPP
#define VDPRG_RG_HPP

#include <utility>

#include "types.hpp"

namespace vdprg {

// First-order coefficients of the renormalization constants Z_A, Z_B, Z_theta.
// c10, c01 are carried for completeness but fixed to zero; the resummed
// solutions close without them.
struct RenormConstants {
    Complex a10{}, a01{};
    Complex b10{}, b01{};
    Complex c10{}, c01{};
};

RenormConstants renorm_constants(double tau, double t0, Complex A, Complex B);

enum class RGBranchTag { Center, LimitTorus };

struct RGBranch {
    RGBranchTag tag = RGBranchTag::Center;
    int sign = +1; // LimitTorus only: B0 = sign * sqrt(mu1/mu2) * A0
};

// Resummed solution descriptor with the derived frequencies
//   alpha = 2 omega^2 (mu1 - mu2) / (4 omega^2 - (mu1 - mu2)^2)
//   beta  = 4 omega^3 / (4 omega^2 - (mu1 - mu2)^2).
struct RGSolution {
    ModelParams params;
    InitialData init;
    RGBranch branch;
    double alpha = 0.0;
    double beta = 0.0;
};

RGSolution make_rg_solution(const InitialData& init, const ModelParams& params,
                            RGBranch branch);

std::pair<double, double> alpha_beta(const ModelParams& params);

// Derivatives (dA/dtau, dB/dtau, dtheta/dtau) obtained by solving the four
// flow relations as a linear system. Full mode requires a consistent,
// full-rank system; ThetaFrozen imposes dtheta = 0 and solves the remaining
// homogeneous pair, which selects the constant-amplitude branch.
enum class FlowMode { Full, ThetaFrozen };

struct FlowRates {
    Complex dA{}, dB{}, dTheta{};
};

FlowRates flow_rhs(Complex A, Complex B, double theta, const ModelParams& params,
                   FlowMode mode = FlowMode::Full);

// Closed-form renormalized amplitudes and phase shift on the limit-torus
// manifold; the branch sign is inferred from init. |A(tau)| is constant.
struct FlowPoint {
    Complex A{}, B{};
    double theta = 0.0;
};

FlowPoint amplitude_flow(double tau, const InitialData& init,
                         const ModelParams& params);

// Constant-amplitude resummed solution (no secular terms, bounded
// first-order corrections only).
std::pair<Complex, Complex> rg_solution_center(double t, const InitialData& init,
                                               const ModelParams& params);
PhaseState rg_center_state(double t, const InitialData& init,
                           const ModelParams& params);

// Resummed solution on the manifold B0 = sign * sqrt(mu1/mu2) * A0; the
// amplitude phase of x rotates as exp(+i alpha (t-t0)) and that of y as
// exp(-i alpha (t-t0)).
std::pair<Complex, Complex> rg_solution_limit(double t, const InitialData& init,
                                              const ModelParams& params, int sign);
PhaseState rg_limit_state(double t, const InitialData& init,
                          const ModelParams& params, int sign);

// Single-variable resummation example: ydot + eps y = 0. The perturbative
// truncation diverges linearly while the resummed result equals the exact
// decay law.
struct ToyValues {
    double exact = 0.0;
    double perturbative = 0.0;
    double rg = 0.0;
};

ToyValues toy_rg(double t, double t0, double A, double eps);

} // namespace vdprg

#endif
