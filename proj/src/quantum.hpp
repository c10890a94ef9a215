#ifndef VDPRG_QUANTUM_HPP
#define VDPRG_QUANTUM_HPP

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "types.hpp"

namespace vdprg {

// Truncated tensor-product oscillator basis: n_max levels per coordinate,
// states ordered row-major by (n_x, n_y), total dimension n_max^2.
struct BasisConfig {
    int n_max = 12;
    double omega = 1.0;
};

void validate(const BasisConfig& cfg);

using OperatorMatrix = Eigen::MatrixXcd;

// 1d ladder-representation position and momentum matrices:
//   X[n][n+1] = X[n+1][n] = sqrt((n+1)/(2 omega))
//   P[n][n+1] = -P[n+1][n] = -i sqrt(omega (n+1)/2)
std::pair<OperatorMatrix, OperatorMatrix>
position_momentum_matrices(const BasisConfig& cfg);

// Weyl-ordered Hamiltonian
//   H = P (x) P + omega^2 X (x) X
//       - i [ (mu1/2) (1-X^2) (x) (YPy + PyY) + (mu2/2) (XPx + PxX) (x) (1-Y^2) ]
// with the x factor on the first tensor slot. In this basis every entry is
// real.
OperatorMatrix build_hamiltonian(const ModelParams& params, const BasisConfig& cfg);

struct Spectrum {
    std::vector<Complex> eigenvalues; // sorted by (Re, Im)
    double max_residual = 0.0;        // only meaningful with eigenvectors
    bool has_residual = false;
};

// Dense eigensolve after a Parlett-Reinsch balancing pass. Real matrices are
// routed through the real Schur form, which keeps complex eigenvalues in
// exactly conjugate pairs. with_vectors additionally computes eigenvectors
// and the worst relative residual ||Hv - lambda v|| / ||v||.
Spectrum eigenvalues(const OperatorMatrix& H, bool with_vectors = false);

struct FractionReport {
    double f = 0.0;
    double im_tol = 1e-6;
    double interior_fraction = 0.5;
    std::size_t retained = 0;
    std::size_t complex_count = 0;
};

// Fraction of eigenvalues with |Im E| > im_tol * max(1, |E|), computed on the
// interior_fraction of eigenvalues smallest in |E| (edge eigenvalues are
// truncation artifacts).
FractionReport fraction_complex(const Spectrum& spec, double im_tol = 1e-6,
                                double interior_fraction = 0.5);

struct SweepPoint {
    double coupling = 0.0;
    double f = 0.0;            // interior-filtered
    double f_unfiltered = 0.0; // all eigenvalues
};

struct SweepResult {
    std::vector<SweepPoint> points;
    BasisConfig basis;
};

struct SweepTolerances {
    double im_tol = 1e-6;
    double interior_fraction = 0.5;
};

// F along mu1 = mu2 = mu. Points are computed independently (in parallel)
// and gathered in input order.
SweepResult sweep_mu(const std::vector<double>& mu_values,
                     const ModelParams& params_template, const BasisConfig& cfg,
                     const SweepTolerances& tol = {});

// F against the ratio mu1/mu2 at fixed mu1 (mu2 = mu1 / ratio).
SweepResult sweep_ratio(double mu1, const std::vector<double>& ratios,
                        const BasisConfig& cfg, const SweepTolerances& tol = {});

// Bisection of the F = 0 -> F > 0 transition down to |bracket| < xtol.
double critical_mu(const std::function<double(double)>& f_of_mu, double mu_lo,
                   double mu_hi, double xtol = 1e-3);
double critical_mu(const ModelParams& params_template, const BasisConfig& cfg,
                   std::pair<double, double> bracket,
                   const SweepTolerances& tol = {});

} // namespace vdprg

#endif
