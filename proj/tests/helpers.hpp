#ifndef VDPRG_TEST_HELPERS_HPP
#define VDPRG_TEST_HELPERS_HPP

#include <cmath>
#include <complex>
#include <random>

#include "types.hpp"

namespace vdprg::test {

inline std::mt19937& rng()
{
    static std::mt19937 gen(20240915u);
    return gen;
}

inline double uniform(double lo, double hi)
{
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(rng());
}

inline Complex random_complex(double scale = 1.0)
{
    return {uniform(-scale, scale), uniform(-scale, scale)};
}

inline PhaseState random_state(double scale = 1.0)
{
    PhaseState s;
    s.t = uniform(-2.0, 2.0);
    s.x = random_complex(scale);
    s.y = random_complex(scale);
    s.vx = random_complex(scale);
    s.vy = random_complex(scale);
    return s;
}

inline PhaseState random_real_state(double scale = 1.0)
{
    PhaseState s;
    s.t = uniform(-2.0, 2.0);
    s.x = uniform(-scale, scale);
    s.y = uniform(-scale, scale);
    s.vx = uniform(-scale, scale);
    s.vy = uniform(-scale, scale);
    return s;
}

inline bool near(Complex a, Complex b, double tol)
{
    return std::abs(a - b) <= tol;
}

// Mixed absolute/relative closeness.
inline bool close(Complex a, Complex b, double tol)
{
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
}

} // namespace vdprg::test

#endif
