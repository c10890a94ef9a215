#include "quantum.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace vdprg {

namespace {

constexpr Complex I{0.0, 1.0};

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b)
{
    const Eigen::Index ra = a.rows(), ca = a.cols();
    const Eigen::Index rb = b.rows(), cb = b.cols();
    OperatorMatrix out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i)
        for (Eigen::Index j = 0; j < ca; ++j)
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

// Parlett-Reinsch balancing: diagonal similarity with powers of 2, so the
// eigenvalues are untouched down to the last bit.
void balance(OperatorMatrix& m)
{
    const Eigen::Index n = m.rows();
    bool converged = false;
    while (!converged) {
        converged = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double row = 0.0, col = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i)
                    continue;
                row += std::abs(m(i, j));
                col += std::abs(m(j, i));
            }
            if (row == 0.0 || col == 0.0)
                continue;
            double f = 1.0;
            const double s = row + col;
            while (col < row / 2.0) {
                col *= 2.0;
                row /= 2.0;
                f *= 2.0;
            }
            while (col > row * 2.0) {
                col /= 2.0;
                row *= 2.0;
                f /= 2.0;
            }
            if (row + col < 0.95 * s) {
                converged = false;
                m.row(i) /= f;
                m.col(i) *= f;
            }
        }
    }
}

void sort_spectrum(std::vector<Complex>& ev)
{
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
        if (a.real() != b.real())
            return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

double evaluate_f(const ModelParams& params, const BasisConfig& cfg,
                  const SweepTolerances& tol, double* f_unfiltered)
{
    const OperatorMatrix H = build_hamiltonian(params, cfg);
    const Spectrum spec = eigenvalues(H);
    if (f_unfiltered)
        *f_unfiltered = fraction_complex(spec, tol.im_tol, 1.0).f;
    return fraction_complex(spec, tol.im_tol, tol.interior_fraction).f;
}

} // namespace

void validate(const BasisConfig& cfg)
{
    if (cfg.n_max < 2)
        throw InvalidArgument("n_max must be at least 2");
    if (!(cfg.omega > 0.0))
        throw InvalidArgument("basis omega must be positive");
}

std::pair<OperatorMatrix, OperatorMatrix>
position_momentum_matrices(const BasisConfig& cfg)
{
    validate(cfg);
    const int n = cfg.n_max;
    OperatorMatrix x = OperatorMatrix::Zero(n, n);
    OperatorMatrix p = OperatorMatrix::Zero(n, n);
    for (int k = 0; k + 1 < n; ++k) {
        const double xe = std::sqrt((k + 1) / (2.0 * cfg.omega));
        const double pe = std::sqrt(cfg.omega * (k + 1) / 2.0);
        x(k, k + 1) = xe;
        x(k + 1, k) = xe;
        p(k, k + 1) = -I * pe;
        p(k + 1, k) = I * pe;
    }
    return {x, p};
}

OperatorMatrix build_hamiltonian(const ModelParams& params, const BasisConfig& cfg)
{
    validate(params);
    validate(cfg);
    auto [x, p] = position_momentum_matrices(cfg);
    const OperatorMatrix id = OperatorMatrix::Identity(cfg.n_max, cfg.n_max);
    const OperatorMatrix one_m_x2 = id - x * x;
    const OperatorMatrix weyl_xp = x * p + p * x;

    OperatorMatrix h = kron(p, p) + params.omega * params.omega * kron(x, x);
    h -= I * (0.5 * params.mu1) * kron(one_m_x2, weyl_xp);
    h -= I * (0.5 * params.mu2) * kron(weyl_xp, one_m_x2);
    return h;
}

Spectrum eigenvalues(const OperatorMatrix& H, bool with_vectors)
{
    if (H.rows() != H.cols() || H.rows() == 0)
        throw InvalidArgument("matrix must be square and non-empty");
    if (H.rows() > 4096)
        throw InvalidArgument("dense eigensolve limited to dim <= 4096");

    Spectrum spec;

    if (with_vectors) {
        Eigen::ComplexEigenSolver<OperatorMatrix> solver(H, true);
        if (solver.info() != Eigen::Success)
            throw NoConvergence("eigensolver exceeded its iteration budget");
        const auto& vals = solver.eigenvalues();
        const auto& vecs = solver.eigenvectors();
        double worst = 0.0;
        for (Eigen::Index k = 0; k < vals.size(); ++k) {
            const double res =
                (H * vecs.col(k) - vals(k) * vecs.col(k)).norm() / vecs.col(k).norm();
            worst = std::max(worst, res);
        }
        if (worst > 1e-8 * H.norm())
            throw NoConvergence("eigenvector residuals exceed 1e-8 * |H|");
        spec.eigenvalues.assign(vals.data(), vals.data() + vals.size());
        spec.max_residual = worst;
        spec.has_residual = true;
        sort_spectrum(spec.eigenvalues);
        return spec;
    }

    OperatorMatrix work = H;
    balance(work);

    const bool real_matrix = work.imag().cwiseAbs().maxCoeff() == 0.0;
    bool solved = false;
    if (real_matrix) {
        // Real Schur keeps complex eigenvalues in exactly conjugate pairs.
        Eigen::EigenSolver<Eigen::MatrixXd> solver(work.real(), false);
        if (solver.info() == Eigen::Success) {
            const auto& vals = solver.eigenvalues();
            spec.eigenvalues.assign(vals.data(), vals.data() + vals.size());
            solved = true;
        }
        // Francis double shifts occasionally stall on tightly clustered
        // non-normal spectra; the single-shift complex iteration below is an
        // independent second attempt.
    }
    if (!solved) {
        Eigen::ComplexSchur<OperatorMatrix> schur(work, false);
        if (schur.info() != Eigen::Success)
            throw NoConvergence("eigensolver exceeded its iteration budget");
        spec.eigenvalues.reserve(static_cast<std::size_t>(work.rows()));
        for (Eigen::Index k = 0; k < work.rows(); ++k)
            spec.eigenvalues.push_back(schur.matrixT()(k, k));
    }
    sort_spectrum(spec.eigenvalues);
    return spec;
}

FractionReport fraction_complex(const Spectrum& spec, double im_tol,
                                double interior_fraction)
{
    if (!(interior_fraction > 0.0) || interior_fraction > 1.0)
        throw InvalidArgument("interior_fraction must lie in (0, 1]");
    if (spec.eigenvalues.empty())
        throw InvalidArgument("empty spectrum");

    std::vector<Complex> ev = spec.eigenvalues;
    std::sort(ev.begin(), ev.end(),
              [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });

    const auto total = static_cast<double>(ev.size());
    auto keep = static_cast<std::size_t>(std::llround(interior_fraction * total));
    keep = std::clamp<std::size_t>(keep, 1, ev.size());

    std::size_t complex_count = 0;
    for (std::size_t i = 0; i < keep; ++i)
        if (std::abs(ev[i].imag()) > im_tol * std::max(1.0, std::abs(ev[i])))
            ++complex_count;

    FractionReport report;
    report.f = static_cast<double>(complex_count) / static_cast<double>(keep);
    report.im_tol = im_tol;
    report.interior_fraction = interior_fraction;
    report.retained = keep;
    report.complex_count = complex_count;
    return report;
}

SweepResult sweep_mu(const std::vector<double>& mu_values,
                     const ModelParams& params_template, const BasisConfig& cfg,
                     const SweepTolerances& tol)
{
    validate(cfg);
    for (std::size_t i = 1; i < mu_values.size(); ++i)
        if (!(mu_values[i] > mu_values[i - 1]))
            throw InvalidArgument("sweep couplings must be strictly increasing");

    std::vector<std::future<SweepPoint>> jobs;
    jobs.reserve(mu_values.size());
    for (const double mu : mu_values) {
        jobs.push_back(std::async(std::launch::async, [&, mu] {
            ModelParams p = params_template;
            p.mu1 = mu;
            p.mu2 = mu;
            SweepPoint pt;
            pt.coupling = mu;
            pt.f = evaluate_f(p, cfg, tol, &pt.f_unfiltered);
            return pt;
        }));
    }

    SweepResult result;
    result.basis = cfg;
    for (auto& job : jobs)
        result.points.push_back(job.get());
    return result;
}

SweepResult sweep_ratio(double mu1, const std::vector<double>& ratios,
                        const BasisConfig& cfg, const SweepTolerances& tol)
{
    validate(cfg);
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        if (!(ratios[i] > 0.0))
            throw InvalidArgument("ratios must be positive");
        if (i > 0 && !(ratios[i] > ratios[i - 1]))
            throw InvalidArgument("ratios must be strictly increasing");
    }

    std::vector<std::future<SweepPoint>> jobs;
    jobs.reserve(ratios.size());
    for (const double ratio : ratios) {
        jobs.push_back(std::async(std::launch::async, [&, ratio] {
            ModelParams p;
            p.omega = cfg.omega;
            p.mu1 = mu1;
            p.mu2 = mu1 / ratio;
            SweepPoint pt;
            pt.coupling = ratio;
            pt.f = evaluate_f(p, cfg, tol, &pt.f_unfiltered);
            return pt;
        }));
    }

    SweepResult result;
    result.basis = cfg;
    for (auto& job : jobs)
        result.points.push_back(job.get());
    return result;
}

double critical_mu(const std::function<double(double)>& f_of_mu, double mu_lo,
                   double mu_hi, double xtol)
{
    if (!(mu_hi > mu_lo))
        throw BadBracket("bracket must satisfy mu_lo < mu_hi");
    if (f_of_mu(mu_lo) != 0.0)
        throw BadBracket("F(mu_lo) must be zero");
    if (!(f_of_mu(mu_hi) > 0.0))
        throw BadBracket("F(mu_hi) must be positive");

    double lo = mu_lo, hi = mu_hi;
    while (hi - lo >= xtol) {
        const double mid = 0.5 * (lo + hi);
        if (f_of_mu(mid) > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double critical_mu(const ModelParams& params_template, const BasisConfig& cfg,
                   std::pair<double, double> bracket, const SweepTolerances& tol)
{
    return critical_mu(
        [&](double mu) {
            ModelParams p = params_template;
            p.mu1 = mu;
            p.mu2 = mu;
            return evaluate_f(p, cfg, tol, nullptr);
        },
        bracket.first, bracket.second);
}

} // namespace vdprg
