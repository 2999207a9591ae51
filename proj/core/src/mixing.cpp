#include "freefield/mixing.hpp"

#include <cmath>

#include "freefield/sampler.hpp"

namespace freefield {

ScalarField translate(const ScalarField& f, double y) {
    SpectralField F = forward_transform(f);
    const LatticeSpec& spec = f.spec;
    const std::int64_t N = spec.sites();
    std::array<int, 3> ix{};
    for (std::int64_t i = 0; i < N; ++i) {
        spec.unflatten(i, ix);
        const double k1 = spec.momentum(ix[0]);
        F.modes[i] *= std::complex<double>(std::cos(k1 * y), -std::sin(k1 * y));
    }
    return inverse_transform(F);
}

double mixing_exponent(const MassCovariance& cov, const ScalarField& f,
                       const ScalarField& f_prime, double y) {
    check_same_spec(f.spec, f_prime.spec);
    return covariance_form(cov, f_prime, translate(f, y));
}

std::complex<double> mixing_correlation_analytic(const MassCovariance& cov, const ScalarField& f,
                                                 const ScalarField& f_prime, double y) {
    const double chi_f = characteristic_analytic(cov, f);
    const double chi_fp = characteristic_analytic(cov, f_prime);
    return chi_fp * chi_f * std::exp(mixing_exponent(cov, f, f_prime, y));
}

MixingCurve mixing_curve(const MassCovariance& cov, const ScalarField& f,
                         const ScalarField& f_prime, const std::vector<double>& shifts) {
    const double half_box = f.spec.box_length() / 2.0;
    for (double y : shifts)
        if (!(y > 0.0) || y > half_box)
            throw Error("mixing_curve: shifts must lie in (0, box/2]");

    MixingCurve curve;
    curve.product = characteristic_analytic(cov, f_prime) * characteristic_analytic(cov, f);
    for (double y : shifts) {
        curve.shifts.push_back(y);
        const double e = mixing_exponent(cov, f, f_prime, y);
        curve.exponents.push_back(e);
        curve.correlations.push_back(curve.product * std::exp(e));
    }
    return curve;
}

} // namespace freefield
