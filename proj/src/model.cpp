#include "model.hpp"

#include <cmath>

namespace vdprg {

namespace {
constexpr Complex I{0.0, 1.0};
}

void validate(const ModelParams& p)
{
    if (!(p.omega > 0.0) || !std::isfinite(p.omega))
        throw InvalidArgument("omega must be positive and finite");
    if (!std::isfinite(p.mu1) || !std::isfinite(p.mu2))
        throw InvalidArgument("mu1, mu2 must be finite");
}

bool is_finite(const PhaseState& s)
{
    auto ok = [](Complex c) {
        return std::isfinite(c.real()) && std::isfinite(c.imag());
    };
    return std::isfinite(s.t) && ok(s.x) && ok(s.y) && ok(s.vx) && ok(s.vy);
}

PhaseState initial_state(const InitialData& init)
{
    if (!std::isfinite(init.t0) || !std::isfinite(init.a0) || !std::isfinite(init.b0))
        throw InvalidArgument("initial data must be finite");
    PhaseState s;
    s.t = init.t0;
    s.x = init.a0;
    s.y = init.b0;
    s.vx = 0.0;
    s.vy = 0.0;
    return s;
}

std::pair<Complex, Complex> eom_rhs(const PhaseState& s, const ModelParams& p)
{
    const double w2 = p.omega * p.omega;
    const Complex one_m_x2 = 1.0 - s.x * s.x;
    const Complex one_m_y2 = 1.0 - s.y * s.y;

    Complex ax = -w2 * s.x + I * p.mu1 * one_m_x2 * s.vx
                 - I * p.mu2 * one_m_y2 * s.vx
                 - p.mu1 * p.mu2
                       * (s.x * one_m_x2 * one_m_y2
                          - 2.0 * s.x * s.y * s.y * one_m_x2);

    Complex ay = -w2 * s.y - I * p.mu1 * one_m_x2 * s.vy
                 + I * p.mu2 * one_m_y2 * s.vy
                 - p.mu1 * p.mu2
                       * (s.y * one_m_x2 * one_m_y2
                          - 2.0 * s.x * s.x * s.y * one_m_y2);

    return {ax, ay};
}

MomentumState momenta_from_velocities(const PhaseState& s, const ModelParams& p)
{
    MomentumState m;
    m.py = s.vx + I * p.mu2 * (1.0 - s.y * s.y) * s.x;
    m.px = s.vy + I * p.mu1 * (1.0 - s.x * s.x) * s.y;
    return m;
}

Complex hamiltonian_point(Complex x, Complex y, Complex px, Complex py,
                          const ModelParams& p)
{
    return px * py + p.omega * p.omega * x * y
           - I * (p.mu1 * (1.0 - x * x) * y * py
                  + p.mu2 * (1.0 - y * y) * x * px);
}

Complex hamiltonian_value(const PhaseState& s, const ModelParams& p)
{
    const MomentumState m = momenta_from_velocities(s, p);
    return hamiltonian_point(s.x, s.y, m.px, m.py, p);
}

namespace {

// H with (x,y,px,py) -> (y,x,-py,-px) and the explicit i conjugated:
//   H_PT = px py + omega^2 x y - i [ mu1 (1-y^2) x px + mu2 (1-x^2) y py ].
Complex pt_image_impl(Complex x, Complex y, Complex px, Complex py,
                      const ModelParams& p)
{
    return px * py + p.omega * p.omega * x * y
           - I * (p.mu1 * (1.0 - y * y) * x * px
                  + p.mu2 * (1.0 - x * x) * y * py);
}

} // namespace

Complex pt_image_point(double x, double y, double px, double py,
                       const ModelParams& p)
{
    return pt_image_impl(x, y, px, py, p);
}

Complex pt_image_value(const PhaseState& s, const ModelParams& p)
{
    if (s.x.imag() != 0.0 || s.y.imag() != 0.0 || s.vx.imag() != 0.0
        || s.vy.imag() != 0.0)
        throw NonRealState("PT image requires a real phase-space point");
    const MomentumState m = momenta_from_velocities(s, p);
    return pt_image_impl(s.x, s.y, m.px, m.py, p);
}

} // namespace vdprg
