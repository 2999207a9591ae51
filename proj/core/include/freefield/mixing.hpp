#pragma once

#include <complex>
#include <vector>

#include "freefield/covariance.hpp"
#include "freefield/lattice.hpp"

namespace freefield {

/// Decay data of <exp(-i phi(f')), U(y) exp(-i phi(f))> along x1-shifts.
struct MixingCurve {
    std::vector<double> shifts;
    std::vector<double> exponents;
    std::vector<std::complex<double>> correlations;
    std::complex<double> product; ///< chi(f') * chi(f), the mixing limit
};

/// Periodic x1-translation by y: spectral phase f_hat(k) -> e^{-i k1 y} f_hat(k).
/// Exact for any real y; an isometry of the lattice L2 pairing.
ScalarField translate(const ScalarField& f, double y);

/// Exponent <f', C_m f_y> of the correlation's closed form.
double mixing_exponent(const MassCovariance& cov, const ScalarField& f,
                       const ScalarField& f_prime, double y);

/// chi(f') chi(f) exp(mixing_exponent), the closed form of the
/// translated two-point Weyl correlation (real-valued).
std::complex<double> mixing_correlation_analytic(const MassCovariance& cov, const ScalarField& f,
                                                 const ScalarField& f_prime, double y);

/// Evaluate exponent and correlation across shifts. Shifts must lie in
/// (0, box/2]; beyond half the box periodic wrap-around takes over.
MixingCurve mixing_curve(const MassCovariance& cov, const ScalarField& f,
                         const ScalarField& f_prime, const std::vector<double>& shifts);

} // namespace freefield
