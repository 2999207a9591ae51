// Independent test oracles: deliberately naive implementations used only
// to cross-check the library's fast paths.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "freefield/lattice.hpp"

namespace oracle {

// Direct O(N^2) discrete Fourier transform with the library's
// convention f_hat(k) = a^d sum_x f(x) exp(-i k.x).
inline std::vector<std::complex<double>> naive_dft(const freefield::ScalarField& f) {
    const auto& spec = f.spec;
    const std::int64_t N = spec.sites();
    std::vector<std::complex<double>> out(N);
    std::array<int, 3> ki{}, xi{};
    for (std::int64_t k = 0; k < N; ++k) {
        spec.unflatten(k, ki);
        std::complex<double> acc{0.0, 0.0};
        for (std::int64_t x = 0; x < N; ++x) {
            spec.unflatten(x, xi);
            double phase = 0.0;
            for (int ax = 0; ax < spec.d; ++ax)
                phase += spec.momentum(ki[ax]) * (xi[ax] * spec.a);
            acc += f.values[x] * std::complex<double>(std::cos(phase), -std::sin(phase));
        }
        out[k] = acc * spec.cell_volume();
    }
    return out;
}

// Recursive adaptive Simpson quadrature.
inline double adaptive_simpson_(const std::function<double(double)>& f, double a, double b,
                                double fa, double fm, double fb, double whole, double tol,
                                int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson_(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson_(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 40) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Error function by Maclaurin series; converges quickly for |x| < 6,
// which covers every envelope bound we evaluate.
inline double erf_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= -x2 / n;
        const double add = term / (2 * n + 1);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum))
            break;
    }
    return sum * 2.0 / std::sqrt(std::numbers::pi);
}

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v)
        s += x;
    return s / static_cast<double>(v.size());
}

// Standard error of the sample mean.
inline double sem(const std::vector<double>& v) {
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v)
        acc += (x - m) * (x - m);
    const auto n = static_cast<double>(v.size());
    return std::sqrt(acc / (n * (n - 1.0)));
}

// Periodic Gaussian bump of the given width centered at c along axis 0
// (centered at box middle on the other axes).
inline freefield::ScalarField make_bump(const freefield::LatticeSpec& spec, double center,
                                        double width, double amplitude = 1.0) {
    freefield::ScalarField f(spec);
    const double box = spec.box_length();
    std::array<int, 3> ix{};
    for (std::int64_t i = 0; i < spec.sites(); ++i) {
        spec.unflatten(i, ix);
        double r2 = 0.0;
        for (int ax = 0; ax < spec.d; ++ax) {
            const double c = ax == 0 ? center : box / 2.0;
            double dx = std::fmod(std::abs(ix[ax] * spec.a - c), box);
            dx = std::min(dx, box - dx);
            r2 += dx * dx;
        }
        f.values[i] = amplitude * std::exp(-r2 / (2.0 * width * width));
    }
    return f;
}

// Deterministic pseudo-random field, for property tests.
inline freefield::ScalarField make_random_field(const freefield::LatticeSpec& spec,
                                                unsigned seed) {
    freefield::ScalarField f(spec);
    std::uint64_t state = 0x853c49e6748fea9bull + seed;
    for (auto& v : f.values) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        v = static_cast<double>(state >> 11) * 0x1p-53 * 2.0 - 1.0;
    }
    return f;
}

} // namespace oracle
