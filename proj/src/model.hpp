#ifndef VDPRG_MODEL_HPP
#define VDPRG_MODEL_HPP

#include <utility>

#include "types.hpp"

namespace vdprg {

// Second derivatives (xddot, yddot) of the classical equations of motion,
// including the mu1*mu2 cross terms.
std::pair<Complex, Complex> eom_rhs(const PhaseState& s, const ModelParams& p);

// Inverts Hamilton's velocity equations:
//   p_y = xdot + i mu2 (1 - y^2) x,  p_x = ydot + i mu1 (1 - x^2) y.
MomentumState momenta_from_velocities(const PhaseState& s, const ModelParams& p);

// H evaluated at an explicit phase-space point (x, y, p_x, p_y).
Complex hamiltonian_point(Complex x, Complex y, Complex px, Complex py,
                          const ModelParams& p);

// H along a trajectory state, with momenta recovered from the velocities.
Complex hamiltonian_value(const PhaseState& s, const ModelParams& p);

// H at the PT image of a real phase-space point: (x,y,px,py) -> (y,x,-py,-px)
// with i -> -i in the explicit non-Hermitian coefficient.
Complex pt_image_point(double x, double y, double px, double py,
                       const ModelParams& p);

// PT image for a state given in velocity coordinates. All four components
// must be exactly real; momenta are recovered first and the transformation
// flips only the explicit coefficient's i. Throws NonRealState otherwise.
Complex pt_image_value(const PhaseState& s, const ModelParams& p);

} // namespace vdprg

#endif
