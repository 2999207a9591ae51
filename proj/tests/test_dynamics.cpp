#include "doctest.h"

#include <cmath>

#include "freefield/dynamics.hpp"

#include "oracles.hpp"

using namespace freefield;

namespace {

PhasePoint random_state(const LatticeSpec& spec, unsigned seed) {
    return {oracle::make_random_field(spec, seed), oracle::make_random_field(spec, seed + 1000)};
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (std::int64_t i = 0; i < a.spec.sites(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

} // namespace

TEST_CASE("evolve: t = 0 is the identity, zero stays zero") {
    LatticeSpec spec(1, 32, 0.2);
    MassCovariance cov(1.1);
    PhasePoint s = random_state(spec, 1);
    PhasePoint same = evolve(cov, s, 0.0);
    CHECK(max_abs_diff(same.phi, s.phi) < 1e-14);
    CHECK(max_abs_diff(same.pi, s.pi) < 1e-14);

    PhasePoint zero{ScalarField(spec), ScalarField(spec)};
    PhasePoint still = evolve(cov, zero, 3.7);
    for (double v : still.phi.values)
        CHECK(v == 0.0);
    for (double v : still.pi.values)
        CHECK(v == 0.0);
}

TEST_CASE("evolve: single mode half-period rotation") {
    LatticeSpec spec(1, 16, 0.5);
    MassCovariance cov(1.0);
    SpectralField F(spec);
    F.modes[2] = {1.0, 0.0};
    F.modes[14] = {1.0, 0.0};
    PhasePoint s{inverse_transform(F), ScalarField(spec)};
    const double omega = std::sqrt(cov.m * cov.m + spec.momentum_sq(2));
    PhasePoint half = evolve(cov, s, M_PI / omega);
    for (std::int64_t i = 0; i < spec.sites(); ++i) {
        CHECK(half.phi.values[i] == doctest::Approx(-s.phi.values[i]).epsilon(1e-12));
        CHECK(std::abs(half.pi.values[i]) < 1e-12);
    }
}

TEST_CASE("evolve group law") {
    LatticeSpec spec(1, 32, 0.25);
    MassCovariance cov(0.9);
    PhasePoint s = random_state(spec, 2);
    for (auto [t1, t2] : {std::pair{0.3, 0.7}, {2.0, -1.3}, {10.0, 5.5}}) {
        PhasePoint two = evolve(cov, evolve(cov, s, t1), t2);
        PhasePoint one = evolve(cov, s, t1 + t2);
        CHECK(max_abs_diff(two.phi, one.phi) < 1e-12);
        CHECK(max_abs_diff(two.pi, one.pi) < 1e-12);
    }
}

TEST_CASE("hamiltonian: zero state, constant field, conservation sweep") {
    LatticeSpec spec(1, 32, 0.25);
    MassCovariance cov(1.0);
    CHECK(hamiltonian(cov, {ScalarField(spec), ScalarField(spec)}) == 0.0);

    // single zero-mode phi_hat(0) = c
    const double c = 1.8;
    SpectralField F(spec);
    F.modes[0] = {c, 0.0};
    PhasePoint dc{inverse_transform(F), ScalarField(spec)};
    CHECK(hamiltonian(cov, dc) ==
          doctest::Approx(0.5 * cov.m * cov.m * c * c / spec.volume()).epsilon(1e-12));

    PhasePoint s = random_state(spec, 3);
    const double h0 = hamiltonian(cov, s);
    for (double t = 0.0; t <= 100.0; t += 7.3)
        CHECK(std::abs(hamiltonian(cov, evolve(cov, s, t)) - h0) <= 1e-12 * h0);
}

TEST_CASE("symplectic_form: antisymmetry and invariance") {
    LatticeSpec spec(1, 32, 0.25);
    MassCovariance cov(1.2);
    PhasePoint s1 = random_state(spec, 4);
    PhasePoint s2 = random_state(spec, 5);

    CHECK(symplectic_form(s1, s1) == 0.0);
    CHECK(symplectic_form(s1, s2) == doctest::Approx(-symplectic_form(s2, s1)).epsilon(1e-14));

    const double om = symplectic_form(s1, s2);
    for (double t : {0.1, 1.0, 10.0})
        CHECK(std::abs(symplectic_form(evolve(cov, s1, t), evolve(cov, s2, t)) - om) <=
              1e-12 * std::abs(om));

    LatticeSpec other(1, 16, 0.25);
    CHECK_THROWS_AS(symplectic_form(s1, random_state(other, 1)), SpecMismatch);
}

TEST_CASE("energy norms: zero field, constant field, combined conservation") {
    LatticeSpec spec(1, 32, 0.25);
    MassCovariance cov(1.3);
    CHECK(energy_norm(cov, ScalarField(spec), +1) == 0.0);

    ScalarField c(spec);
    for (auto& v : c.values)
        v = 2.0;
    CHECK(std::pow(energy_norm(cov, c, +1), 2) ==
          doctest::Approx(cov.m * 4.0 * spec.volume()).epsilon(1e-12));

    PhasePoint s = random_state(spec, 6);
    const double combined0 = std::pow(energy_norm(cov, s.phi, +1), 2) +
                             std::pow(energy_norm(cov, s.pi, -1), 2);
    for (double t : {0.5, 3.0, 42.0}) {
        PhasePoint st = evolve(cov, s, t);
        const double combined = std::pow(energy_norm(cov, st.phi, +1), 2) +
                                std::pow(energy_norm(cov, st.pi, -1), 2);
        CHECK(combined == doctest::Approx(combined0).epsilon(1e-12));
    }
}

TEST_CASE("test_function_flow: identity at t = 0 and duality with evolve") {
    LatticeSpec spec(1, 64, 0.2);
    MassCovariance cov(1.0);
    ScalarField f = oracle::make_bump(spec, 4.0, 0.9);
    ScalarField g = oracle::make_bump(spec, 8.0, 1.1);

    auto [f0, g0] = test_function_flow(cov, f, g, 0.0);
    CHECK(max_abs_diff(f0, f) < 1e-14);
    CHECK(max_abs_diff(g0, g) < 1e-14);

    PhasePoint s = random_state(spec, 7);
    for (double t : {0.4, 1.7, 9.0}) {
        auto [ft, gt] = test_function_flow(cov, f, g, t);
        PhasePoint st = evolve(cov, s, t);
        const double lhs = pair(ft, s.phi) + pair(gt, s.pi);
        const double rhs = pair(f, st.phi) + pair(g, st.pi);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("test_function_flow satisfies the wave equation at order 2") {
    LatticeSpec spec(1, 64, 0.2);
    MassCovariance cov(1.0);
    ScalarField f = oracle::make_bump(spec, 6.4, 1.0);
    ScalarField g(spec);
    const double t = 0.6;

    auto residual_norm = [&](double h) {
        auto [fm, gm] = test_function_flow(cov, f, g, t - h);
        auto [fc, gc] = test_function_flow(cov, f, g, t);
        auto [fp, gp] = test_function_flow(cov, f, g, t + h);
        ScalarField lap = apply_power(cov, fc, 1.0);
        double acc = 0.0;
        for (std::int64_t i = 0; i < spec.sites(); ++i) {
            const double second =
                (fp.values[i] - 2.0 * fc.values[i] + fm.values[i]) / (h * h);
            acc += std::pow(second + lap.values[i], 2);
        }
        return std::sqrt(acc);
    };

    const double r1 = residual_norm(0.02);
    const double r2 = residual_norm(0.01);
    const double order = std::log2(r1 / r2);
    CHECK(order > 1.9);
    CHECK(order < 2.1);
}
