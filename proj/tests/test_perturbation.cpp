#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "integrate.hpp"
#include "perturbation.hpp"

using namespace vdprg;
using namespace vdprg::test;

namespace {

constexpr Complex I{0.0, 1.0};
const ModelParams kFig1{1.0, 0.01, 0.02};
const InitialData kUnit{0.0, 1.0, 1.0};

// Second central difference of a scalar function of time.
template <typename Fn>
Complex second_diff(Fn&& f, double t, double h)
{
    return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
}

} // namespace

TEST_CASE("zeroth order: initial condition and quarter period")
{
    const InitialData init{0.5, 1.0, -0.3};
    const ModelParams p{1.0, 0.2, 0.4};
    auto [x0, y0] = zeroth_order(init.t0, init, p);
    CHECK(near(x0, Complex{1.0, 0.0}, 1e-15));
    CHECK(near(y0, Complex{-0.3, 0.0}, 1e-15));

    auto [xq, yq] = zeroth_order(init.t0 + M_PI / 2.0, init, p);
    CHECK(std::abs(xq) < 1e-12);
    CHECK(std::abs(yq) < 1e-12);
}

TEST_CASE("zeroth order satisfies the harmonic equation under differencing")
{
    const InitialData init{0.0, 1.3, 0.8};
    const ModelParams p{1.7, 0.0, 0.0};
    auto x00 = [&](double t) { return zeroth_order(t, init, p).first; };
    for (double t : {0.3, 1.9, 7.2}) {
        const Complex res_h = second_diff(x00, t, 1e-3)
                              + p.omega * p.omega * x00(t);
        const Complex res_h2 = second_diff(x00, t, 5e-4)
                               + p.omega * p.omega * x00(t);
        // Residual is pure finite-difference error, shrinking as h^2.
        CHECK(std::abs(res_h) < 1e-5);
        CHECK(std::abs(res_h2) < 0.3 * std::abs(res_h));
    }
}

TEST_CASE("first-order terms vanish at t0")
{
    const InitialData init{2.0, 0.9, 1.4};
    const PerturbativeTerms terms = first_order_terms(init.t0, init, kFig1);
    CHECK(std::abs(terms.x10) < 1e-14);
    CHECK(std::abs(terms.x01) < 1e-14);
    CHECK(std::abs(terms.y10) < 1e-14);
    CHECK(std::abs(terms.y01) < 1e-14);
}

TEST_CASE("amplitude 2 kills the secular prefactor of x10")
{
    const InitialData init{0.0, 2.0, 0.7};
    for (double t : {10.0, 100.0, 1000.0, 10000.0}) {
        const PerturbativeTerms terms = first_order_terms(t, init, kFig1);
        CHECK(std::abs(terms.x10) <= 2.01); // bounded for all t
    }
}

TEST_CASE("first-order terms satisfy their forced oscillator equations")
{
    const InitialData init{0.0, 1.1, 0.6};
    const ModelParams p{1.0, 0.3, 0.5};
    const double w2 = p.omega * p.omega;

    auto x00 = [&](double t) { return zeroth_order(t, init, p).first; };
    auto y00 = [&](double t) { return zeroth_order(t, init, p).second; };
    auto dx00 = [&](double t) {
        return -init.a0 * p.omega * std::sin(p.omega * (t - init.t0));
    };
    auto dy00 = [&](double t) {
        return -init.b0 * p.omega * std::sin(p.omega * (t - init.t0));
    };

    struct Case {
        std::function<Complex(double)> f;
        std::function<Complex(double)> forcing;
    };
    const std::vector<Case> cases = {
        {[&](double t) { return first_order_terms(t, init, p).x10; },
         [&](double t) { return 2.0 * I * (1.0 - x00(t) * x00(t)) * dx00(t); }},
        {[&](double t) { return first_order_terms(t, init, p).x01; },
         [&](double t) { return -2.0 * I * (1.0 - y00(t) * y00(t)) * dx00(t); }},
        {[&](double t) { return first_order_terms(t, init, p).y10; },
         [&](double t) { return -2.0 * I * (1.0 - x00(t) * x00(t)) * dy00(t); }},
        {[&](double t) { return first_order_terms(t, init, p).y01; },
         [&](double t) { return 2.0 * I * (1.0 - y00(t) * y00(t)) * dy00(t); }},
    };

    for (const Case& c : cases) {
        for (double t : {0.7, 3.1, 12.4}) {
            auto residual = [&](double h) {
                return std::abs(second_diff(c.f, t, h) + w2 * c.f(t)
                                - c.forcing(t));
            };
            const double r1 = residual(2e-3);
            const double r2 = residual(1e-3);
            CHECK(r1 < 1e-4);
            // O(h^2) refinement: quartering within a generous band.
            CHECK(r2 < 0.4 * r1);
        }
    }
}

TEST_CASE("perturbative solution reduces to zeroth order at mu = 0")
{
    const ModelParams p{1.0, 0.0, 0.0};
    const InitialData init{0.0, 1.2, -0.4};
    for (double t : {0.0, 1.0, 17.0}) {
        auto [x, y] = perturbative_solution(t, init, p);
        auto [x0, y0] = zeroth_order(t, init, p);
        CHECK(near(x, x0, 1e-15));
        CHECK(near(y, y0, 1e-15));
    }
}

TEST_CASE("perturbative solution satisfies the initial conditions")
{
    const InitialData init{1.5, 0.8, 1.1};
    auto [x, y] = perturbative_solution(init.t0, init, kFig1);
    CHECK(near(x, Complex{0.8, 0.0}, 1e-14));
    CHECK(near(y, Complex{1.1, 0.0}, 1e-14));

    // velocity-zero convention via the analytic state
    const PhaseState s = perturbative_state(init.t0, init, kFig1);
    CHECK(std::abs(s.vx) < 1e-14);
    CHECK(std::abs(s.vy) < 1e-14);
}

TEST_CASE("analytic velocities match numerical differentiation")
{
    const InitialData init{0.0, 1.0, 0.7};
    const ModelParams p{1.2, 0.05, 0.03};
    for (double t : {0.9, 4.2, 9.7}) {
        const double h = 1e-5;
        const PhaseState sp = perturbative_state(t + h, init, p);
        const PhaseState sm = perturbative_state(t - h, init, p);
        const PhaseState s = perturbative_state(t, init, p);
        CHECK(std::abs((sp.x - sm.x) / (2.0 * h) - s.vx) < 1e-8);
        CHECK(std::abs((sp.y - sm.y) / (2.0 * h) - s.vy) < 1e-8);
    }
}

TEST_CASE("secular coefficient: cancellations and reference value")
{
    {
        const ModelParams p{1.0, 0.03, 0.03};
        auto [cx, cy] = secular_coefficient({0.0, 1.0, 1.0}, p);
        CHECK(std::abs(cx) < 1e-16);
        CHECK(std::abs(cy) < 1e-16);
    }
    {
        auto [cx, cy] = secular_coefficient({0.0, 2.0, 2.0}, kFig1);
        CHECK(std::abs(cx) < 1e-16);
        CHECK(std::abs(cy) < 1e-16);
    }
    {
        const ModelParams p{1.0, 0.01, 0.0};
        auto [cx, cy] = secular_coefficient({0.0, 1.0, 1.0}, p);
        CHECK(near(cx, Complex{0.0, 0.00375}, 1e-18));
        CHECK(near(cy, Complex{0.0, -0.00375}, 1e-18));
    }
}

TEST_CASE("order consistency: short-window error scales as mu^2")
{
    const InitialData init{0.0, 1.0, 1.0};
    auto short_window_error = [&](double m1, double m2) {
        const ModelParams p{1.0, m1, m2};
        IntegratorConfig cfg;
        cfg.t_end = 2.0 * M_PI + 0.1;
        const Trajectory traj = integrate(init, p, cfg);
        double sup = 0.0;
        for (double t = 0.0; t <= 2.0 * M_PI; t += 0.01) {
            auto [x, y] = perturbative_solution(t, init, p);
            sup = std::max(sup, std::abs(x - traj.sample_at(t).x));
        }
        return sup;
    };
    const double e1 = short_window_error(0.01, 0.02);
    const double e2 = short_window_error(0.005, 0.01);
    CHECK(e1 / e2 > 4.0 * 0.7);
    CHECK(e1 / e2 < 4.0 * 1.3);
}

TEST_CASE("secular growth: the error against numerics keeps growing")
{
    // The generic (A0 = B0 = 1) orbit is numerically integrable to t ~ 260
    // at these couplings before the amplitude exchange turns unstable; the
    // first-order error already grows several-fold across that span.
    const InitialData init{0.0, 1.0, 1.0};
    IntegratorConfig cfg;
    cfg.t_end = 250.0;
    const Trajectory traj = integrate(init, kFig1, cfg);

    auto err = [&](double t) {
        auto [x, y] = perturbative_solution(t, init, kFig1);
        return std::abs(x - traj.sample_at(t).x);
    };
    double early = 0.0, late = 0.0;
    for (double t = 97.0; t <= 103.0; t += 0.01)
        early = std::max(early, err(t));
    for (double t = 244.0; t <= 250.0; t += 0.01)
        late = std::max(late, err(t));
    CHECK(late > 5.0 * early);
}
