#include "perturbation.hpp"

#include <cmath>

namespace vdprg {

namespace {

constexpr Complex I{0.0, 1.0};

// First-order bracket u(t) = 2 a dt w cos(w dt) + (b + c cos(2 w dt)) sin(w dt)
// with a = -4 + q^2, b = 8 - 3 q^2, c = q^2 for the relevant amplitude q.
// Each x_ij / y_ij is (sign i q0 / 8 w) * u.
struct Bracket {
    double value;
    double deriv;
};

Bracket bracket(double dt, double w, double q2)
{
    const double a = -4.0 + q2;
    const double b = 8.0 - 3.0 * q2;
    const double c = q2;
    const double s = std::sin(w * dt);
    const double co = std::cos(w * dt);
    const double s2 = std::sin(2.0 * w * dt);
    const double co2 = std::cos(2.0 * w * dt);

    Bracket out;
    out.value = 2.0 * a * dt * w * co + (b + c * co2) * s;
    out.deriv = 2.0 * a * w * co - 2.0 * a * dt * w * w * s
                - 2.0 * c * w * s2 * s + (b + c * co2) * w * co;
    return out;
}

} // namespace

std::pair<Complex, Complex> zeroth_order(double t, const InitialData& init,
                                         const ModelParams& params)
{
    validate(params);
    const double co = std::cos(params.omega * (t - init.t0));
    return {init.a0 * co, init.b0 * co};
}

PerturbativeTerms first_order_terms(double t, const InitialData& init,
                                    const ModelParams& params)
{
    validate(params);
    const double w = params.omega;
    const double dt = t - init.t0;
    const double a2 = init.a0 * init.a0;
    const double b2 = init.b0 * init.b0;

    const Bracket ua = bracket(dt, w, a2);
    const Bracket ub = bracket(dt, w, b2);
    const double co = std::cos(w * dt);

    PerturbativeTerms terms;
    terms.x00 = init.a0 * co;
    terms.y00 = init.b0 * co;
    terms.x10 = -I * init.a0 / (8.0 * w) * ua.value;
    terms.x01 = I * init.a0 / (8.0 * w) * ub.value;
    terms.y10 = I * init.b0 / (8.0 * w) * ua.value;
    terms.y01 = -I * init.b0 / (8.0 * w) * ub.value;
    return terms;
}

std::pair<Complex, Complex> perturbative_solution(double t, const InitialData& init,
                                                  const ModelParams& params)
{
    const PerturbativeTerms terms = first_order_terms(t, init, params);
    const Complex x = terms.x00 + 0.5 * params.mu1 * terms.x10
                      + 0.5 * params.mu2 * terms.x01;
    const Complex y = terms.y00 + 0.5 * params.mu1 * terms.y10
                      + 0.5 * params.mu2 * terms.y01;
    return {x, y};
}

PhaseState perturbative_state(double t, const InitialData& init,
                              const ModelParams& params)
{
    validate(params);
    const double w = params.omega;
    const double dt = t - init.t0;
    const Bracket ua = bracket(dt, w, init.a0 * init.a0);
    const Bracket ub = bracket(dt, w, init.b0 * init.b0);
    const double co = std::cos(w * dt);
    const double si = std::sin(w * dt);

    const Complex fa = -I * init.a0 / (8.0 * w);
    const Complex fb = I * init.a0 / (8.0 * w);
    const Complex ga = I * init.b0 / (8.0 * w);
    const Complex gb = -I * init.b0 / (8.0 * w);

    PhaseState s;
    s.t = t;
    s.x = init.a0 * co + 0.5 * params.mu1 * fa * ua.value
          + 0.5 * params.mu2 * fb * ub.value;
    s.y = init.b0 * co + 0.5 * params.mu1 * ga * ua.value
          + 0.5 * params.mu2 * gb * ub.value;
    s.vx = -init.a0 * w * si + 0.5 * params.mu1 * fa * ua.deriv
           + 0.5 * params.mu2 * fb * ub.deriv;
    s.vy = -init.b0 * w * si + 0.5 * params.mu1 * ga * ua.deriv
           + 0.5 * params.mu2 * gb * ub.deriv;
    return s;
}

std::pair<Complex, Complex> secular_coefficient(const InitialData& init,
                                                const ModelParams& params)
{
    validate(params);
    const double a = -4.0 + init.a0 * init.a0;
    const double b = -4.0 + init.b0 * init.b0;
    const Complex cx = -I * params.mu1 * init.a0 / 8.0 * a
                       + I * params.mu2 * init.a0 / 8.0 * b;
    const Complex cy = I * params.mu1 * init.b0 / 8.0 * a
                       - I * params.mu2 * init.b0 / 8.0 * b;
    return {cx, cy};
}

} // namespace vdprg
