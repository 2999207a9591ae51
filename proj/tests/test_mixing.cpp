#include "doctest.h"

#include <cmath>

#include "freefield/mixing.hpp"
#include "freefield/sampler.hpp"

#include "oracles.hpp"

using namespace freefield;

TEST_CASE("translate: identity at y = 0 and at the box length") {
    LatticeSpec spec(1, 64, 0.2);
    ScalarField f = oracle::make_bump(spec, 5.0, 0.8);

    ScalarField same = translate(f, 0.0);
    ScalarField wrapped = translate(f, spec.box_length());
    for (std::int64_t i = 0; i < spec.sites(); ++i) {
        CHECK(same.values[i] == doctest::Approx(f.values[i]).epsilon(1e-12));
        CHECK(wrapped.values[i] == doctest::Approx(f.values[i]).epsilon(1e-10));
    }
}

TEST_CASE("translate by a lattice step shifts sites") {
    LatticeSpec spec(1, 32, 0.5);
    ScalarField f = oracle::make_random_field(spec, 3);
    ScalarField shifted = translate(f, spec.a);
    for (int i = 0; i < spec.n; ++i)
        CHECK(shifted.values[(i + 1) % spec.n] == doctest::Approx(f.values[i]).epsilon(1e-10));
}

TEST_CASE("translate is an isometry for any real shift") {
    LatticeSpec spec(1, 64, 0.2);
    ScalarField f = oracle::make_bump(spec, 5.0, 0.8);
    const double norm = pair(f, f);
    for (double y : {0.37, 1.0, 4.9})
        CHECK(pair(translate(f, y), translate(f, y)) == doctest::Approx(norm).epsilon(1e-12));
}

TEST_CASE("mixing_exponent: positivity at y = 0 and decay at separation") {
    LatticeSpec spec(1, 1024, 0.1); // box 102.4
    MassCovariance cov(1.0);
    ScalarField f = oracle::make_bump(spec, 51.2, 1.0);

    const double at_zero = mixing_exponent(cov, f, f, 0.0);
    CHECK(at_zero > 0.0);
    CHECK(at_zero == doctest::Approx(covariance_form(cov, f, f)).epsilon(1e-12));

    const double far = mixing_exponent(cov, f, f, spec.box_length() / 2.0);
    CHECK(std::abs(far) * 10.0 < at_zero);
}

TEST_CASE("mixing_exponent symmetry under swapping arguments and shift sign") {
    LatticeSpec spec(1, 256, 0.2);
    MassCovariance cov(1.0);
    ScalarField f = oracle::make_bump(spec, 20.0, 1.0);
    ScalarField g = oracle::make_bump(spec, 30.0, 1.4);
    for (double y : {0.9, 3.3, 11.0})
        CHECK(mixing_exponent(cov, f, g, y) ==
              doctest::Approx(mixing_exponent(cov, g, f, -y)).epsilon(1e-12));
}

TEST_CASE("mixing_correlation_analytic: trivial limits") {
    LatticeSpec spec(1, 512, 0.2); // box 102.4
    MassCovariance cov(1.0);
    ScalarField zero(spec);
    CHECK(mixing_correlation_analytic(cov, zero, zero, 1.0) ==
          std::complex<double>(1.0, 0.0));

    ScalarField f = oracle::make_bump(spec, 51.2, 1.0);
    ScalarField fp = oracle::make_bump(spec, 51.2, 1.0);
    const auto far = mixing_correlation_analytic(cov, f, fp, spec.box_length() / 2.0);
    const double product = characteristic_analytic(cov, fp) * characteristic_analytic(cov, f);
    CHECK(far.real() == doctest::Approx(product).epsilon(1e-3));
}

TEST_CASE("mixing correlation agrees with Monte Carlo") {
    LatticeSpec spec(1, 256, 0.2);
    MassCovariance cov(1.0);
    ScalarField f = oracle::make_bump(spec, 25.6, 1.0);
    ScalarField fp = oracle::make_bump(spec, 25.6, 1.0);
    SampleBatch batch = sample(cov, spec, 64, 10000);

    for (double y : {2.0, 8.0, 20.0}) {
        ScalarField fy = translate(f, y);
        std::vector<double> re, im;
        for (const auto& phi : batch.fields) {
            // <e^{-i phi(f')}, U(y) e^{-i phi(f)}> integrand e^{-i phi(f_y - f')}
            const double phase = field_eval(phi, fp) - field_eval(phi, fy);
            re.push_back(std::cos(phase));
            im.push_back(std::sin(phase));
        }
        const std::complex<double> mc(oracle::mean(re), oracle::mean(im));
        const auto exact = mixing_correlation_analytic(cov, f, fp, y);
        const double se =
            std::sqrt(std::pow(oracle::sem(re), 2) + std::pow(oracle::sem(im), 2));
        CHECK(std::abs(mc - exact) < std::max(3.0 * se, 0.02));
    }
}

TEST_CASE("mixing_curve: shape, decay and shift validation") {
    LatticeSpec spec(1, 1024, 0.1);
    MassCovariance cov(1.0);
    ScalarField f = oracle::make_bump(spec, 51.2, 1.0);

    MixingCurve empty = mixing_curve(cov, f, f, {});
    CHECK(empty.shifts.empty());

    MixingCurve curve = mixing_curve(cov, f, f, {3.0, 10.0, 51.2});
    CHECK(curve.exponents.front() > curve.exponents.back());
    for (const auto& c : curve.correlations)
        CHECK(std::abs(c) <= 1.0 + 1e-12);

    CHECK_THROWS_AS(mixing_curve(cov, f, f, {0.0}), Error);
    CHECK_THROWS_AS(mixing_curve(cov, f, f, {60.0}), Error); // beyond box/2
}
