#include "rg.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace vdprg {

namespace {

constexpr Complex I{0.0, 1.0};

double resonant_denominator(const ModelParams& p)
{
    const double d = p.mu1 - p.mu2;
    const double denom = 4.0 * p.omega * p.omega - d * d;
    if (std::abs(denom) <= 1e-12 * 4.0 * p.omega * p.omega)
        throw ResonantDenominator("(mu1 - mu2)^2 == 4 omega^2");
    return denom;
}

double manifold_ratio(const ModelParams& p)
{
    if (p.mu2 == 0.0)
        throw InvalidArgument("limit-torus branch requires mu2 != 0");
    const double r = p.mu1 / p.mu2;
    if (r < 0.0)
        throw InvalidArgument("limit-torus branch requires mu1/mu2 >= 0");
    return std::sqrt(r);
}

void check_manifold(const InitialData& init, double ratio, int sign)
{
    if (sign != 1 && sign != -1)
        throw InvalidArgument("sign must be +1 or -1");
    const double want = sign * ratio * init.a0;
    const double scale =
        std::max({std::abs(want), std::abs(init.b0), 1e-300});
    if (std::abs(init.b0 - want) > 1e-12 * scale)
        throw ManifoldViolation("B0 must equal sign*sqrt(mu1/mu2)*A0");
}

// Bounded part of the first-order bracket: (8 - 3 q^2 + q^2 cos 2W) sin W
// and its time derivative.
struct Bounded {
    double value;
    double deriv;
};

Bounded bounded_bracket(double dt, double w, double q2)
{
    const double b = 8.0 - 3.0 * q2;
    const double W = w * dt;
    Bounded out;
    out.value = (b + q2 * std::cos(2.0 * W)) * std::sin(W);
    out.deriv = w
                * (-2.0 * q2 * std::sin(2.0 * W) * std::sin(W)
                   + (b + q2 * std::cos(2.0 * W)) * std::cos(W));
    return out;
}

} // namespace

RenormConstants renorm_constants(double tau, double t0, Complex A, Complex B)
{
    const double dt = tau - t0;
    RenormConstants z;
    z.a10 = I / 4.0 * (-4.0 + A * A) * dt;
    z.a01 = -I / 4.0 * (-4.0 + B * B) * dt;
    z.b10 = -I / 4.0 * (-4.0 + A * A) * dt;
    z.b01 = I / 4.0 * (-4.0 + B * B) * dt;
    z.c10 = 0.0;
    z.c01 = 0.0;
    return z;
}

std::pair<double, double> alpha_beta(const ModelParams& params)
{
    validate(params);
    const double denom = resonant_denominator(params);
    const double d = params.mu1 - params.mu2;
    const double w = params.omega;
    return {2.0 * w * w * d / denom, 4.0 * w * w * w / denom};
}

RGSolution make_rg_solution(const InitialData& init, const ModelParams& params,
                            RGBranch branch)
{
    RGSolution sol;
    sol.params = params;
    sol.init = init;
    sol.branch = branch;
    auto [alpha, beta] = alpha_beta(params);
    sol.alpha = alpha;
    sol.beta = beta;
    if (branch.tag == RGBranchTag::LimitTorus)
        check_manifold(init, manifold_ratio(params), branch.sign);
    return sol;
}

FlowRates flow_rhs(Complex A, Complex B, double /*theta*/,
                   const ModelParams& params, FlowMode mode)
{
    validate(params);
    const double w2 = params.omega * params.omega;
    const double mu1 = params.mu1;
    const double mu2 = params.mu2;
    const Complex A2 = A * A;
    const Complex B2 = B * B;

    // fe2 coefficients (shared by both modes).
    const Complex k2 = -I * (mu1 - mu2) / (2.0 * w2)
                       + 21.0 * I * mu1 * A2 / (32.0 * w2)
                       - 7.0 * I * mu2 * B2 / (32.0 * w2);
    const Complex k3 = -7.0 * I * mu2 * A * B / (16.0 * w2);
    // fe3 coefficients.
    const Complex m1 = 3.0 * mu1 * A2 - mu2 * B2;
    const Complex m2 = -2.0 * mu2 * A * B;

    const auto scaled_residual_ok = [](double residual, double scale) {
        return residual <= 1e-9 * std::max(scale, 1e-300);
    };

    if (mode == FlowMode::ThetaFrozen) {
        Eigen::Matrix2cd M;
        M << k2, k3, m1, m2;
        Eigen::ColPivHouseholderQR<Eigen::Matrix2cd> qr(M);
        qr.setThreshold(1e-12);
        if (qr.rank() < 2)
            throw SingularSystem("flow equations degenerate with dtheta = 0");
        const Eigen::Vector2cd v = qr.solve(Eigen::Vector2cd::Zero());
        return {v(0), v(1), 0.0};
    }

    const Complex k1 = -I * A * (mu1 - mu2) / 2.0
                       + 7.0 * I * mu1 * A * A2 / 32.0
                       - 7.0 * I * mu2 * A * B2 / 32.0;
    const Complex r1 =
        -I / 8.0 * A * (mu1 * (-4.0 + A2) - mu2 * (-4.0 + B2));
    const Complex k4 = mu1 * A * A2 - mu2 * A * B2;

    Eigen::Matrix<Complex, 4, 3> M;
    M << Complex(1.0), Complex(0.0), k1,
         k2, k3, Complex(-1.0) * A,
         m1, m2, Complex(0.0),
         Complex(0.0), Complex(0.0), k4;
    Eigen::Vector4cd r;
    r << r1, Complex(0.0), Complex(0.0), Complex(0.0);

    Eigen::ColPivHouseholderQR<Eigen::Matrix<Complex, 4, 3>> qr(M);
    qr.setThreshold(1e-12);
    if (qr.rank() < 3)
        throw SingularSystem("flow equations rank deficient at this point");
    const Eigen::Vector3cd v = qr.solve(r);
    const double residual = (M * v - r).norm();
    const double scale = r.norm() + M.norm() * v.norm();
    if (!scaled_residual_ok(residual, scale))
        throw SingularSystem("flow equations inconsistent at this point");
    return {v(0), v(1), v(2)};
}

FlowPoint amplitude_flow(double tau, const InitialData& init,
                         const ModelParams& params)
{
    validate(params);
    const double denom = resonant_denominator(params);
    const double ratio = manifold_ratio(params);

    int sign = +1;
    if (init.a0 != 0.0 && ratio != 0.0)
        sign = (init.b0 / (ratio * init.a0) >= 0.0) ? +1 : -1;
    check_manifold(init, ratio, sign);

    const double d = params.mu1 - params.mu2;
    const double w2 = params.omega * params.omega;
    const double nu = 2.0 * d * w2 / denom; // equals alpha
    const Complex rot = std::exp(I * nu * (tau - init.t0));

    FlowPoint out;
    out.A = init.a0 * rot;
    out.B = sign * ratio * init.a0 * rot;
    out.theta = (d * d * tau - 4.0 * w2 * init.t0) / denom;
    return out;
}

std::pair<Complex, Complex> rg_solution_center(double t, const InitialData& init,
                                               const ModelParams& params)
{
    const PhaseState s = rg_center_state(t, init, params);
    return {s.x, s.y};
}

PhaseState rg_center_state(double t, const InitialData& init,
                           const ModelParams& params)
{
    validate(params);
    const double w = params.omega;
    const double dt = t - init.t0;
    const Bounded ua = bounded_bracket(dt, w, init.a0 * init.a0);
    const Bounded ub = bounded_bracket(dt, w, init.b0 * init.b0);
    const double co = std::cos(w * dt);
    const double si = std::sin(w * dt);

    const Complex fx1 = -I * params.mu1 * init.a0 / (16.0 * w);
    const Complex fx2 = I * params.mu2 * init.a0 / (16.0 * w);
    const Complex fy1 = I * params.mu1 * init.b0 / (16.0 * w);
    const Complex fy2 = -I * params.mu2 * init.b0 / (16.0 * w);

    PhaseState s;
    s.t = t;
    s.x = init.a0 * co + fx1 * ua.value + fx2 * ub.value;
    s.y = init.b0 * co + fy1 * ua.value + fy2 * ub.value;
    s.vx = -init.a0 * w * si + fx1 * ua.deriv + fx2 * ub.deriv;
    s.vy = -init.b0 * w * si + fy1 * ua.deriv + fy2 * ub.deriv;
    return s;
}

std::pair<Complex, Complex> rg_solution_limit(double t, const InitialData& init,
                                              const ModelParams& params, int sign)
{
    const PhaseState s = rg_limit_state(t, init, params, sign);
    return {s.x, s.y};
}

PhaseState rg_limit_state(double t, const InitialData& init,
                          const ModelParams& params, int sign)
{
    validate(params);
    const double denom = resonant_denominator(params);
    const double ratio = manifold_ratio(params);
    check_manifold(init, ratio, sign);

    const double w = params.omega;
    const double d = params.mu1 - params.mu2;
    const double alpha = 2.0 * w * w * d / denom;
    const double beta = 4.0 * w * w * w / denom;
    const double g = d / (2.0 * w);

    const double dt = t - init.t0;
    const double cb = std::cos(beta * dt);
    const double sb = std::sin(beta * dt);
    const Complex rot = std::exp(I * alpha * dt);
    const Complex rot_conj = std::conj(rot);

    const Complex carrier_x = cb - I * g * sb;
    const Complex carrier_dx = -beta * sb - I * g * beta * cb;
    const Complex carrier_y = cb + I * g * sb;
    const Complex carrier_dy = -beta * sb + I * g * beta * cb;

    const double b_amp = sign * ratio * init.a0;

    PhaseState s;
    s.t = t;
    s.x = init.a0 * rot * carrier_x;
    s.vx = init.a0 * rot * (I * alpha * carrier_x + carrier_dx);
    s.y = b_amp * rot_conj * carrier_y;
    s.vy = b_amp * rot_conj * (-I * alpha * carrier_y + carrier_dy);
    return s;
}

ToyValues toy_rg(double t, double t0, double A, double eps)
{
    const double dt = t - t0;
    ToyValues out;
    out.exact = A * std::exp(-eps * dt);
    out.perturbative = A * (1.0 - eps * dt);
    out.rg = A * std::exp(-eps * dt);
    return out;
}

} // namespace vdprg
