#pragma once

#include "freefield/lattice.hpp"

namespace freefield {

/// Mass-m covariance C_m = (1/2)(m^2 - Laplacian)^(-1/2).
/// The spectral multiplier at momentum k is (1/2)(m^2 + |k|^2)^(-1/2),
/// positive and bounded by 1/(2m). Massless case is excluded.
struct MassCovariance {
    double m;

    explicit MassCovariance(double mass);

    /// Multiplier of C_m at squared momentum k2.
    double multiplier(double k2) const { return 0.5 / std::sqrt(m * m + k2); }
};

/// Exponents of the local-support regularizer (1+x^2)^(-alpha) (m^2-Lap)^(-beta).
struct MinlosParams {
    double alpha;
    double beta;

    /// True iff alpha > d/4 and beta > (d-1)/4, the regime in which the
    /// regularized field is square-integrable in the continuum limit.
    bool super_threshold(int d) const {
        return alpha > d / 4.0 && beta > (d - 1) / 4.0;
    }
};

/// Fourier multiplier (m^2 + |k|^2)^p applied to f; p = 0 is the identity
/// and apply_power(., p) inverts apply_power(., -p).
ScalarField apply_power(const MassCovariance& cov, const ScalarField& f, double p);

/// <f, C_m g>, a symmetric positive-definite bilinear form.
double covariance_form(const MassCovariance& cov, const ScalarField& f, const ScalarField& g);

/// (1+x^2)^(-alpha) (m^2-Lap)^(-beta) phi, with box-centered coordinates
/// in the spatial weight.
ScalarField minlos_regularize(const MassCovariance& cov, const ScalarField& phi,
                              const MinlosParams& p);

/// Exact lattice expectation of ||minlos_regularize(phi)||_{L2}^2 under
/// the Gaussian measure of covariance C_m.
double expected_regularized_norm(const MassCovariance& cov, const LatticeSpec& spec,
                                 const MinlosParams& p);

} // namespace freefield
