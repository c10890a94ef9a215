#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "integrate.hpp"
#include "model.hpp"
#include "rg.hpp"

using namespace vdprg;
using namespace vdprg::test;

namespace {

constexpr Complex I{0.0, 1.0};
const ModelParams kFig1{1.0, 0.01, 0.02};

double state_distance(const PhaseState& a, const PhaseState& b)
{
    return std::sqrt(std::norm(a.x - b.x) + std::norm(a.y - b.y)
                     + std::norm(a.vx - b.vx) + std::norm(a.vy - b.vy));
}

InitialData manifold_init(const ModelParams& p, int sign, double a0 = 1.0)
{
    return {0.0, a0, sign * std::sqrt(p.mu1 / p.mu2) * a0};
}

// The resummed solution written in terms of an explicit reference time tau:
// the renormalized amplitudes replace the initial data and the leftover
// secular pieces are proportional to (t - tau). Used to check that the
// assembled expression is independent of tau to second order.
Complex x_resummed_at_tau(double t, double tau, const InitialData& init,
                          const ModelParams& p)
{
    const FlowPoint fp = amplitude_flow(tau, init, p);
    const double w = p.omega;
    const Complex A = fp.A;
    const Complex B = fp.B;
    const double phase = w * (t + fp.theta);
    const double co = std::cos(phase);
    const double si = std::sin(phase);
    const double co2 = std::cos(2.0 * phase);
    const Complex bra_a = 8.0 - 3.0 * A * A + A * A * co2;
    const Complex bra_b = 8.0 - 3.0 * B * B + B * B * co2;

    return A * co
           - I * p.mu1 * A / 8.0 * (-4.0 + A * A) * (t - tau) * co
           - I * p.mu1 * A / (16.0 * w) * bra_a * si
           + I * p.mu2 * A / 8.0 * (-4.0 + B * B) * (t - tau) * co
           + I * p.mu2 * A / (16.0 * w) * bra_b * si;
}

} // namespace

TEST_CASE("renorm constants vanish at coincident times")
{
    const RenormConstants z = renorm_constants(1.7, 1.7, Complex{0.9, 0.1}, 1.2);
    CHECK(std::abs(z.a10) == 0.0);
    CHECK(std::abs(z.a01) == 0.0);
    CHECK(std::abs(z.b10) == 0.0);
    CHECK(std::abs(z.b01) == 0.0);
}

TEST_CASE("renorm constants vanish at the amplitude-2 fixed point")
{
    const RenormConstants z = renorm_constants(3.0, 1.0, 2.0, 0.5);
    CHECK(std::abs(z.a10) == 0.0);
    CHECK(std::abs(z.b10) == 0.0);
    CHECK(std::abs(z.a01) > 0.0);
}

TEST_CASE("renorm constants: antisymmetry and zero theta coefficients")
{
    for (int i = 0; i < 25; ++i) {
        const double tau = uniform(-3.0, 3.0);
        const double t0 = uniform(-3.0, 3.0);
        const Complex A = random_complex(2.0);
        const Complex B = random_complex(2.0);
        const RenormConstants z = renorm_constants(tau, t0, A, B);
        CHECK(near(z.a10, -z.b10, 1e-15 * (1.0 + std::abs(z.a10))));
        CHECK(near(z.a01, -z.b01, 1e-15 * (1.0 + std::abs(z.a01))));
        CHECK(std::abs(z.c10) == 0.0);
        CHECK(std::abs(z.c01) == 0.0);
    }
}

TEST_CASE("resummed form is independent of the reference time to O(mu^2)")
{
    auto tau_spread = [](const ModelParams& p) {
        const InitialData init = manifold_init(p, +1);
        double worst = 0.0;
        for (double t : {10.0, 25.0, 50.0}) {
            const Complex at_t0 = x_resummed_at_tau(t, init.t0, init, p);
            const Complex at_mid = x_resummed_at_tau(t, 0.5 * t, init, p);
            const Complex at_t = x_resummed_at_tau(t, t, init, p);
            worst = std::max({worst, std::abs(at_t0 - at_t), std::abs(at_mid - at_t)});
        }
        return worst;
    };
    const double spread1 = tau_spread(kFig1);
    const double spread2 = tau_spread({1.0, 0.005, 0.01});
    CHECK(spread1 < 0.05);
    CHECK(spread1 / spread2 > 4.0 * 0.6);
    CHECK(spread1 / spread2 < 4.0 * 1.4);
}

TEST_CASE("flow_rhs: equal couplings on the diagonal give a fixed point")
{
    const ModelParams p{1.0, 0.01, 0.01};
    const FlowRates r = flow_rhs(1.0, 1.0, 0.0, p);
    CHECK(std::abs(r.dA) < 1e-14);
    CHECK(std::abs(r.dB) < 1e-14);
    CHECK(std::abs(r.dTheta) < 1e-14);
}

TEST_CASE("flow_rhs matches the reduced manifold equations")
{
    const ModelParams p = kFig1;
    const double d = p.mu1 - p.mu2;
    const Complex A{0.83, 0.21};
    const Complex B = std::sqrt(p.mu1 / p.mu2) * A;
    const FlowRates r = flow_rhs(A, B, 0.4, p);

    const Complex expected_dA =
        I * d / 2.0 * A / (1.0 - d * d / (4.0 * p.omega * p.omega));
    const double expected_dTheta =
        d * d / (4.0 * p.omega * p.omega - d * d);
    CHECK(close(r.dA, expected_dA, 1e-10));
    CHECK(close(r.dB, std::sqrt(p.mu1 / p.mu2) * expected_dA, 1e-10));
    CHECK(std::abs(r.dTheta.imag()) < 1e-12);
    CHECK(std::abs(r.dTheta.real() - expected_dTheta) < 1e-12);
}

TEST_CASE("flow_rhs: theta-frozen mode returns the constant-amplitude branch")
{
    const FlowRates r = flow_rhs(1.0, 1.0, 0.0, kFig1, FlowMode::ThetaFrozen);
    CHECK(std::abs(r.dA) == 0.0);
    CHECK(std::abs(r.dB) == 0.0);
    CHECK(std::abs(r.dTheta) == 0.0);
}

TEST_CASE("flow_rhs: generic off-manifold point is inconsistent")
{
    CHECK_THROWS_AS(flow_rhs(1.0, 1.0, 0.0, kFig1), SingularSystem);
}

TEST_CASE("alpha_beta: values and resonance guard")
{
    {
        const ModelParams p{1.3, 0.07, 0.07};
        auto [alpha, beta] = alpha_beta(p);
        CHECK(alpha == 0.0);
        CHECK(beta == doctest::Approx(1.3).epsilon(1e-15));
    }
    {
        auto [alpha, beta] = alpha_beta(kFig1);
        CHECK(alpha == doctest::Approx(-0.02 / 3.9999).epsilon(1e-14));
        CHECK(beta == doctest::Approx(4.0 / 3.9999).epsilon(1e-14));
    }
    CHECK_THROWS_AS(alpha_beta(ModelParams{1.0, 2.5, 0.5}), ResonantDenominator);
}

TEST_CASE("make_rg_solution carries the derived frequencies and validates")
{
    const RGSolution sol =
        make_rg_solution(manifold_init(kFig1, +1), kFig1,
                         {RGBranchTag::LimitTorus, +1});
    CHECK(sol.alpha == doctest::Approx(-0.02 / 3.9999));
    CHECK(sol.beta == doctest::Approx(4.0 / 3.9999));
    CHECK_THROWS_AS(make_rg_solution({0.0, 1.0, 1.0}, kFig1,
                                     RGBranch{RGBranchTag::LimitTorus, +1}),
                    ManifoldViolation);
}

TEST_CASE("center branch: harmonic limit and initial data")
{
    const ModelParams p{1.0, 0.0, 0.0};
    const InitialData init{0.0, 0.9, 1.3};
    for (double t : {0.0, 2.3, 40.0}) {
        auto [x, y] = rg_solution_center(t, init, p);
        CHECK(near(x, Complex{0.9 * std::cos(t), 0.0}, 1e-14));
        CHECK(near(y, Complex{1.3 * std::cos(t), 0.0}, 1e-14));
    }
    auto [x0, y0] = rg_solution_center(0.0, init, kFig1);
    CHECK(near(x0, Complex{0.9, 0.0}, 1e-14));
    CHECK(near(y0, Complex{1.3, 0.0}, 1e-14));
}

TEST_CASE("center branch: imaginary parts vanish identically on the PT diagonal")
{
    const ModelParams p{1.0, 0.01, 0.01};
    const InitialData init{0.0, 1.0, 1.0};
    for (double t = 0.0; t <= 200.0; t += 0.7) {
        const PhaseState s = rg_center_state(t, init, p);
        CHECK(s.x.imag() == 0.0);
        CHECK(s.y.imag() == 0.0);
    }
}

TEST_CASE("center branch tracks numerics to second order on the PT diagonal")
{
    auto sup_error = [](double mu) {
        const ModelParams p{1.0, mu, mu};
        const InitialData init{0.0, 1.0, 1.0};
        IntegratorConfig cfg;
        cfg.t_end = 100.0;
        const Trajectory traj = integrate(init, p, cfg);
        double sup = 0.0;
        for (double t = 0.0; t <= 100.0; t += 0.05)
            sup = std::max(sup,
                           state_distance(traj.sample_at(t), rg_center_state(t, init, p)));
        return sup;
    };
    const double e1 = sup_error(0.01);
    const double e2 = sup_error(0.005);
    CHECK(e1 < 2e-3);
    CHECK(e1 / e2 > 4.0 * 0.7);
    CHECK(e1 / e2 < 4.0 * 1.3);
}

TEST_CASE("limit branch: equal couplings give the exact real cosine")
{
    const ModelParams p{1.0, 0.03, 0.03};
    const InitialData init{0.0, 1.2, 1.2};
    for (double t : {0.0, 1.1, 31.0}) {
        const PhaseState s = rg_limit_state(t, init, p, +1);
        CHECK(s.x.imag() == 0.0);
        CHECK(s.y.imag() == 0.0);
        CHECK(near(s.x, Complex{1.2 * std::cos(t), 0.0}, 1e-13));
        CHECK(near(s.y, s.x, 1e-13));
    }
}

TEST_CASE("limit branch: initial data and the velocity-zero convention")
{
    for (int sign : {+1, -1}) {
        const InitialData init = manifold_init(kFig1, sign);
        const PhaseState s = rg_limit_state(0.0, init, kFig1, sign);
        CHECK(near(s.x, Complex{1.0, 0.0}, 1e-15));
        CHECK(near(s.y, Complex{init.b0, 0.0}, 1e-15));
        CHECK(std::abs(s.vx) < 1e-14);
        CHECK(std::abs(s.vy) < 1e-14);
    }
}

TEST_CASE("limit branch: analytic velocities match numerical differentiation")
{
    const InitialData init = manifold_init(kFig1, +1);
    for (double t : {0.8, 13.4, 72.0}) {
        const double h = 1e-5;
        const PhaseState sp = rg_limit_state(t + h, init, kFig1, +1);
        const PhaseState sm = rg_limit_state(t - h, init, kFig1, +1);
        const PhaseState s = rg_limit_state(t, init, kFig1, +1);
        CHECK(std::abs((sp.x - sm.x) / (2.0 * h) - s.vx) < 1e-8);
        CHECK(std::abs((sp.y - sm.y) / (2.0 * h) - s.vy) < 1e-8);
    }
}

TEST_CASE("limit branch preconditions")
{
    CHECK_THROWS_AS(rg_limit_state(1.0, {0.0, 1.0, 1.0}, kFig1, +1),
                    ManifoldViolation);
    CHECK_THROWS_AS(rg_limit_state(1.0, {0.0, 1.0, 0.5}, ModelParams{1.0, 2.5, 0.5}, +1),
                    ResonantDenominator);
    CHECK_THROWS_AS(rg_limit_state(1.0, {0.0, 1.0, 0.0}, ModelParams{1.0, 0.1, 0.0}, +1),
                    InvalidArgument);
    CHECK_THROWS_AS(rg_limit_state(1.0, {0.0, 1.0, 1.0}, ModelParams{1.0, -0.1, 0.1}, +1),
                    InvalidArgument);
}

TEST_CASE("limit branch vs numerics: second-order accuracy on both sign branches")
{
    auto sup_error = [](const ModelParams& p, int sign) {
        const InitialData init = manifold_init(p, sign);
        IntegratorConfig cfg;
        cfg.t_end = 100.0;
        const Trajectory traj = integrate(init, p, cfg);
        double sup = 0.0;
        for (double t = 0.0; t <= 100.0; t += 0.05)
            sup = std::max(sup, state_distance(traj.sample_at(t),
                                               rg_limit_state(t, init, p, sign)));
        return sup;
    };
    const double e_plus = sup_error(kFig1, +1);
    const double e_minus = sup_error(kFig1, -1);
    const double e_half = sup_error({1.0, 0.005, 0.01}, +1);

    // The genuine first-order mismatch is O(mu^2 t^2) from slow amplitude
    // exchange; about 0.14 at these couplings over [0, 100].
    CHECK(e_plus < 0.25);
    CHECK(e_minus < 0.25);
    CHECK(e_plus / e_half > 4.0 * 0.65);
    CHECK(e_plus / e_half < 4.0 * 1.35);
}

TEST_CASE("secular-free: resummed solutions stay bounded over very long times")
{
    const InitialData init_limit = manifold_init(kFig1, +1);
    const InitialData init_center{0.0, 1.0, 1.0};
    const ModelParams p_center{1.0, 0.05, 0.05};
    double worst = 0.0;
    for (double t = 0.0; t <= 1e4; t += 7.3) {
        worst = std::max(worst, std::abs(rg_limit_state(t, init_limit, kFig1, +1).x));
        worst = std::max(worst, std::abs(rg_center_state(t, init_center, p_center).x));
    }
    CHECK(worst <= 2.0 * (1.0 + 1.0));
}

TEST_CASE("branch consistency: center and limit agree at mu1 = mu2, B0 = A0")
{
    const ModelParams p{1.0, 0.01, 0.01};
    const InitialData init{0.0, 1.0, 1.0};
    for (double t = 0.0; t <= 100.0; t += 0.37) {
        const PhaseState c = rg_center_state(t, init, p);
        const PhaseState l = rg_limit_state(t, init, p, +1);
        CHECK(std::abs(c.x - l.x) < 1e-13);
        CHECK(std::abs(c.y - l.y) < 1e-13);
    }
}

TEST_CASE("residual of the resummed forms in the equations of motion is O(mu^2)")
{
    auto residual_sup = [](const ModelParams& p) {
        const InitialData init = manifold_init(p, +1);
        const double h = 1e-3;
        double sup = 0.0;
        for (double t = 1.0; t <= 60.0; t += 1.7) {
            const PhaseState sp = rg_limit_state(t + h, init, p, +1);
            const PhaseState sm = rg_limit_state(t - h, init, p, +1);
            const PhaseState s = rg_limit_state(t, init, p, +1);
            const Complex xdd = (sp.x - 2.0 * s.x + sm.x) / (h * h);
            const Complex ydd = (sp.y - 2.0 * s.y + sm.y) / (h * h);
            auto [ax, ay] = eom_rhs(s, p);
            sup = std::max({sup, std::abs(xdd - ax), std::abs(ydd - ay)});
        }
        return sup;
    };
    const double r1 = residual_sup({1.0, 0.02, 0.04});
    const double r2 = residual_sup({1.0, 0.01, 0.02});
    CHECK(r1 / r2 > 4.0 * 0.6);
    CHECK(r1 / r2 < 4.0 * 1.4);
}

TEST_CASE("amplitude_flow: equal couplings freeze the amplitudes")
{
    const ModelParams p{1.0, 0.04, 0.04};
    const InitialData init{0.5, 1.1, 1.1};
    for (double tau : {0.5, 3.0, 250.0}) {
        const FlowPoint fp = amplitude_flow(tau, init, p);
        CHECK(near(fp.A, Complex{1.1, 0.0}, 1e-14));
        CHECK(near(fp.B, Complex{1.1, 0.0}, 1e-14));
        CHECK(fp.theta == doctest::Approx(-0.5).epsilon(1e-12));
    }
}

TEST_CASE("amplitude_flow: initial point and negative branch inference")
{
    const InitialData init = manifold_init(kFig1, -1);
    const FlowPoint fp = amplitude_flow(init.t0, init, kFig1);
    CHECK(near(fp.A, Complex{1.0, 0.0}, 1e-14));
    CHECK(near(fp.B, Complex{init.b0, 0.0}, 1e-14));
    CHECK(fp.theta == doctest::Approx(-init.t0));
}

TEST_CASE("amplitude_flow: modulus is constant")
{
    const InitialData init = manifold_init(kFig1, +1);
    for (double tau = 0.0; tau <= 500.0; tau += 11.0) {
        const FlowPoint fp = amplitude_flow(tau, init, kFig1);
        CHECK(std::abs(std::abs(fp.A) - 1.0) < 1e-12);
    }
}

TEST_CASE("integrating the flow equations reproduces the closed forms")
{
    const ModelParams p = kFig1;
    const InitialData init = manifold_init(p, +1);
    Complex A = init.a0;
    Complex B = init.b0;
    Complex theta = -init.t0;
    const double h = 0.05;
    double worst_a = 0.0, worst_th = 0.0;
    for (double tau = 0.0; tau < 100.0 - 1e-9; tau += h) {
        auto f = [&](Complex a, Complex b) { return flow_rhs(a, b, 0.0, p); };
        const FlowRates k1 = f(A, B);
        const FlowRates k2 = f(A + 0.5 * h * k1.dA, B + 0.5 * h * k1.dB);
        const FlowRates k3 = f(A + 0.5 * h * k2.dA, B + 0.5 * h * k2.dB);
        const FlowRates k4 = f(A + h * k3.dA, B + h * k3.dB);
        A += h / 6.0 * (k1.dA + 2.0 * k2.dA + 2.0 * k3.dA + k4.dA);
        B += h / 6.0 * (k1.dB + 2.0 * k2.dB + 2.0 * k3.dB + k4.dB);
        theta += h / 6.0 * (k1.dTheta + 2.0 * k2.dTheta + 2.0 * k3.dTheta + k4.dTheta);

        const FlowPoint fp = amplitude_flow(tau + h, init, p);
        worst_a = std::max(worst_a, std::abs(A - fp.A));
        worst_th = std::max(worst_th, std::abs(theta - Complex(fp.theta, 0.0)));
    }
    CHECK(worst_a < 1e-8);
    CHECK(worst_th < 1e-8);
}

TEST_CASE("toy resummation example")
{
    {
        const ToyValues v = toy_rg(0.0, 0.0, 1.4, 0.3);
        CHECK(v.exact == 1.4);
        CHECK(v.perturbative == 1.4);
        CHECK(v.rg == 1.4);
    }
    {
        const ToyValues v = toy_rg(50.0, 0.0, 1.0, 0.1);
        CHECK(v.exact == doctest::Approx(std::exp(-5.0)).epsilon(1e-15));
        CHECK(v.rg == v.exact);
        CHECK(v.perturbative == doctest::Approx(-4.0).epsilon(1e-15));
    }
    {
        const ToyValues v = toy_rg(123.0, 0.0, 0.8, 0.0);
        CHECK(v.exact == 0.8);
        CHECK(v.perturbative == 0.8);
        CHECK(v.rg == 0.8);
    }
}
