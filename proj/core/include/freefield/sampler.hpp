#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "freefield/covariance.hpp"
#include "freefield/lattice.hpp"

namespace freefield {

/// A batch of independent draws from the Gaussian measure of covariance C_m.
struct SampleBatch {
    MassCovariance cov;
    LatticeSpec spec;
    std::uint64_t seed;
    std::vector<ScalarField> fields;
};

/// Estimate with a jackknife standard error.
struct McEstimate {
    std::complex<double> value;
    double stderr_;
};

/// Draw `count` independent fields. Spectral coefficients are
/// phi_hat(k) = sqrt((n a)^d c_hat(k)) xi(k) with xi Hermitian-symmetric
/// unit Gaussians: self-conjugate modes (0 and Nyquist per axis) get a
/// real draw, conjugate pairs share one complex draw (u+iv)/sqrt(2).
/// Draw s, mode idx uses counters derived from (seed, s, idx) only, so
/// batches are bit-identical across serial and parallel schedules.
SampleBatch sample(const MassCovariance& cov, const LatticeSpec& spec,
                   std::uint64_t seed, int count, int workers = 0);

/// Field evaluated on a test function: phi(f) = pair(f, phi).
double field_eval(const ScalarField& phi, const ScalarField& f);

/// Dense position-space covariance kernel C(x, y), an independent oracle
/// for the spectral sampler. Guarded at n^d <= 4096 (throws TooLarge).
Eigen::MatrixXd dense_covariance(const MassCovariance& cov, const LatticeSpec& spec);

/// Closed form chi(f) = exp(-<f, C_m f>/2) of the measure's Fourier transform.
double characteristic_analytic(const MassCovariance& cov, const ScalarField& f);

/// Monte Carlo estimate (1/S) sum_s exp(i phi_s(f)). Throws EmptyBatch.
McEstimate characteristic_mc(const SampleBatch& batch, const ScalarField& f);

/// Vacuum expectation of the Weyl operator W(f, g), evaluated as
/// exp(-[<f,2C f> + <g,(2C)^{-1} g>]/4).
double weyl_expectation_analytic(const MassCovariance& cov, const ScalarField& f,
                                 const ScalarField& g);

/// Same quantity through the (m^2-Lap)^{±1/2} form; agrees with
/// weyl_expectation_analytic to roundoff.
double weyl_expectation_spectral(const MassCovariance& cov, const ScalarField& f,
                                 const ScalarField& g);

/// Density of the g-translated measure at phi:
/// exp(phi(C^{-1} g) - <g, C^{-1} g>/2).
double radon_nikodym(const MassCovariance& cov, const ScalarField& g, const ScalarField& phi);

} // namespace freefield
