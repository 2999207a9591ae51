#include "freefield/dynamics.hpp"

#include <cmath>

namespace freefield {

PhasePoint::PhasePoint(ScalarField phi_, ScalarField pi_)
    : phi(std::move(phi_)), pi(std::move(pi_)) {
    check_same_spec(phi.spec, pi.spec);
}

PhasePoint evolve(const MassCovariance& cov, const PhasePoint& state, double t) {
    const LatticeSpec& spec = state.phi.spec;
    SpectralField Fphi = forward_transform(state.phi);
    SpectralField Fpi = forward_transform(state.pi);
    const std::int64_t N = spec.sites();
    const double m2 = cov.m * cov.m;
    for (std::int64_t i = 0; i < N; ++i) {
        const double omega = std::sqrt(m2 + spec.momentum_sq(i));
        const double c = std::cos(omega * t);
        const double s = std::sin(omega * t);
        const auto p0 = Fphi.modes[i];
        const auto q0 = Fpi.modes[i];
        Fphi.modes[i] = c * p0 + (s / omega) * q0;
        Fpi.modes[i] = -omega * s * p0 + c * q0;
    }
    return {inverse_transform(Fphi), inverse_transform(Fpi)};
}

double hamiltonian(const MassCovariance& cov, const PhasePoint& state) {
    return 0.5 * (pair(state.pi, state.pi) +
                  pair(state.phi, apply_power(cov, state.phi, 1.0)));
}

double symplectic_form(const PhasePoint& s1, const PhasePoint& s2) {
    check_same_spec(s1.phi.spec, s2.phi.spec);
    return pair(s1.phi, s2.pi) - pair(s2.phi, s1.pi);
}

double energy_norm(const MassCovariance& cov, const ScalarField& f, int sign) {
    if (sign != 1 && sign != -1)
        throw Error("energy_norm: sign must be +1 or -1");
    return std::sqrt(pair(f, apply_power(cov, f, sign * 0.5)));
}

std::pair<ScalarField, ScalarField> test_function_flow(const MassCovariance& cov,
                                                       const ScalarField& f,
                                                       const ScalarField& g, double t) {
    check_same_spec(f.spec, g.spec);
    const LatticeSpec& spec = f.spec;
    SpectralField Ff = forward_transform(f);
    SpectralField Fg = forward_transform(g);
    const std::int64_t N = spec.sites();
    const double m2 = cov.m * cov.m;
    for (std::int64_t i = 0; i < N; ++i) {
        const double omega = std::sqrt(m2 + spec.momentum_sq(i));
        const double c = std::cos(omega * t);
        const double s = std::sin(omega * t);
        const auto f0 = Ff.modes[i];
        const auto g0 = Fg.modes[i];
        Ff.modes[i] = c * f0 - omega * s * g0;
        Fg.modes[i] = (s / omega) * f0 + c * g0;
    }
    return {inverse_transform(Ff), inverse_transform(Fg)};
}

} // namespace freefield
