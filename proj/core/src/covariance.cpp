#include "freefield/covariance.hpp"

#include <cmath>
#include <string>

namespace freefield {

MassCovariance::MassCovariance(double mass) : m(mass) {
    if (!(m > 0.0))
        throw Error("MassCovariance: mass must be strictly positive, got " + std::to_string(mass));
}

ScalarField apply_power(const MassCovariance& cov, const ScalarField& f, double p) {
    if (p == 0.0)
        return f;
    SpectralField F = forward_transform(f);
    const std::int64_t N = f.spec.sites();
    const double m2 = cov.m * cov.m;
    for (std::int64_t i = 0; i < N; ++i)
        F.modes[i] *= std::pow(m2 + f.spec.momentum_sq(i), p);
    return inverse_transform(F);
}

double covariance_form(const MassCovariance& cov, const ScalarField& f, const ScalarField& g) {
    check_same_spec(f.spec, g.spec);
    ScalarField cg = apply_power(cov, g, -0.5);
    for (auto& v : cg.values)
        v *= 0.5;
    return pair(f, cg);
}

ScalarField minlos_regularize(const MassCovariance& cov, const ScalarField& phi,
                              const MinlosParams& p) {
    ScalarField smoothed = p.beta == 0.0 ? phi : apply_power(cov, phi, -p.beta);
    if (p.alpha == 0.0)
        return smoothed;
    const LatticeSpec& spec = phi.spec;
    const std::int64_t N = spec.sites();
    std::array<int, 3> ix{};
    for (std::int64_t i = 0; i < N; ++i) {
        spec.unflatten(i, ix);
        double x2 = 0.0;
        for (int ax = 0; ax < spec.d; ++ax) {
            const double x = spec.centered_coordinate(ix[ax]);
            x2 += x * x;
        }
        smoothed.values[i] *= std::pow(1.0 + x2, -p.alpha);
    }
    return smoothed;
}

double expected_regularized_norm(const MassCovariance& cov, const LatticeSpec& spec,
                                 const MinlosParams& p) {
    // Site variance of the smoothed field: kernel of
    // (m^2-Lap)^{-beta} C_m (m^2-Lap)^{-beta} at coincident points.
    const std::int64_t N = spec.sites();
    const double m2 = cov.m * cov.m;
    double k0 = 0.0;
    for (std::int64_t i = 0; i < N; ++i) {
        const double k2 = spec.momentum_sq(i);
        k0 += cov.multiplier(k2) * std::pow(m2 + k2, -2.0 * p.beta);
    }
    k0 /= spec.volume();

    double weight = 0.0;
    std::array<int, 3> ix{};
    for (std::int64_t i = 0; i < N; ++i) {
        spec.unflatten(i, ix);
        double x2 = 0.0;
        for (int ax = 0; ax < spec.d; ++ax) {
            const double x = spec.centered_coordinate(ix[ax]);
            x2 += x * x;
        }
        weight += std::pow(1.0 + x2, -2.0 * p.alpha);
    }
    weight *= spec.cell_volume();

    return weight * k0;
}

} // namespace freefield
