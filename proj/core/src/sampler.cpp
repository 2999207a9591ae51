#include "freefield/sampler.hpp"

#include <cmath>

#include "freefield/parallel.hpp"
#include "freefield/rng.hpp"

namespace freefield {

SampleBatch sample(const MassCovariance& cov, const LatticeSpec& spec, std::uint64_t seed,
                   int count, int workers) {
    if (count < 1)
        throw Error("sample: count must be >= 1");

    const std::int64_t N = spec.sites();
    const double vol = spec.volume();

    // Per-mode amplitude sqrt((n a)^d c_hat(k)), precomputed once.
    std::vector<double> amp(N);
    for (std::int64_t i = 0; i < N; ++i)
        amp[i] = std::sqrt(vol * cov.multiplier(spec.momentum_sq(i)));

    SampleBatch batch{cov, spec, seed, {}};
    batch.fields.reserve(count);
    for (int s = 0; s < count; ++s)
        batch.fields.emplace_back(spec);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    parallel_for(
        count,
        [&](std::int64_t s) {
            CounterRng rng(seed, static_cast<std::uint64_t>(s));
            SpectralField F(spec);
            for (std::int64_t i = 0; i < N; ++i) {
                const std::int64_t j = spec.conjugate_index(i);
                if (i == j) {
                    // self-conjugate mode: real unit-variance draw
                    F.modes[i] = amp[i] * rng.normal(static_cast<std::uint64_t>(i));
                } else if (i < j) {
                    double u, v;
                    rng.normal_pair(static_cast<std::uint64_t>(i), u, v);
                    const std::complex<double> xi(u * inv_sqrt2, v * inv_sqrt2);
                    F.modes[i] = amp[i] * xi;
                    F.modes[j] = amp[i] * std::conj(xi);
                }
            }
            batch.fields[s] = inverse_transform(F);
        },
        workers);
    return batch;
}

double field_eval(const ScalarField& phi, const ScalarField& f) {
    return pair(f, phi);
}

Eigen::MatrixXd dense_covariance(const MassCovariance& cov, const LatticeSpec& spec) {
    const std::int64_t N = spec.sites();
    if (N > 4096)
        throw TooLarge("dense_covariance: n^d exceeds 4096");

    // Position-space kernel K(r) with multiplier c_hat(k).
    SpectralField C(spec);
    for (std::int64_t i = 0; i < N; ++i)
        C.modes[i] = cov.multiplier(spec.momentum_sq(i));
    ScalarField kernel = inverse_transform(C);

    Eigen::MatrixXd M(N, N);
    std::array<int, 3> xi{}, yi{};
    for (std::int64_t x = 0; x < N; ++x) {
        spec.unflatten(x, xi);
        for (std::int64_t y = 0; y < N; ++y) {
            spec.unflatten(y, yi);
            std::int64_t r = 0;
            for (int ax = 0; ax < spec.d; ++ax)
                r = r * spec.n + (xi[ax] - yi[ax] + spec.n) % spec.n;
            M(x, y) = kernel.values[r];
        }
    }
    return M;
}

double characteristic_analytic(const MassCovariance& cov, const ScalarField& f) {
    return std::exp(-0.5 * covariance_form(cov, f, f));
}

McEstimate characteristic_mc(const SampleBatch& batch, const ScalarField& f) {
    const std::size_t S = batch.fields.size();
    if (S == 0)
        throw EmptyBatch("characteristic_mc: empty batch");

    std::vector<std::complex<double>> z(S);
    for (std::size_t s = 0; s < S; ++s) {
        const double phase = field_eval(batch.fields[s], f);
        z[s] = {std::cos(phase), std::sin(phase)};
    }
    std::complex<double> mean{0.0, 0.0};
    for (const auto& v : z)
        mean += v;
    mean /= static_cast<double>(S);

    if (S == 1)
        return {mean, 0.0};

    // Jackknife of the sample mean: leave-one-out means deviate from the
    // full mean by (mean - z_s)/(S-1).
    double acc = 0.0;
    for (const auto& v : z)
        acc += std::norm(mean - v);
    const double se = std::sqrt(acc * (static_cast<double>(S) - 1) /
                                static_cast<double>(S)) /
                      (static_cast<double>(S) - 1);
    return {mean, se};
}

double weyl_expectation_analytic(const MassCovariance& cov, const ScalarField& f,
                                 const ScalarField& g) {
    // <f, 2C f> + <g, (2C)^{-1} g>, with (2C)^{-1} = (m^2-Lap)^{1/2}.
    const double qf = 2.0 * covariance_form(cov, f, f);
    const double qg = pair(g, apply_power(cov, g, 0.5));
    return std::exp(-(qf + qg) / 4.0);
}

double weyl_expectation_spectral(const MassCovariance& cov, const ScalarField& f,
                                 const ScalarField& g) {
    const double qf = pair(f, apply_power(cov, f, -0.5));
    const double qg = pair(g, apply_power(cov, g, 0.5));
    return std::exp(-(qf + qg) / 4.0);
}

double radon_nikodym(const MassCovariance& cov, const ScalarField& g, const ScalarField& phi) {
    ScalarField h = apply_power(cov, g, 0.5);
    for (auto& v : h.values)
        v *= 2.0; // C^{-1} g = 2 (m^2-Lap)^{1/2} g
    const double quad = pair(g, h);
    return std::exp(field_eval(phi, h) - 0.5 * quad);
}

} // namespace freefield
