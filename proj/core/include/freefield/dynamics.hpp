#pragma once

#include <utility>

#include "freefield/covariance.hpp"
#include "freefield/lattice.hpp"

namespace freefield {

/// A point (phi, pi) of classical phase space.
struct PhasePoint {
    ScalarField phi;
    ScalarField pi;

    PhasePoint(ScalarField phi_, ScalarField pi_);
};

/// Exact free evolution: per mode, with omega = sqrt(m^2 + |k|^2),
///   phi_t = cos(omega t) phi_0 + sin(omega t)/omega pi_0
///   pi_t  = -omega sin(omega t) phi_0 + cos(omega t) pi_0.
/// No time-stepping error; the group law holds to roundoff.
PhasePoint evolve(const MassCovariance& cov, const PhasePoint& state, double t);

/// H = (1/2)[ <pi, pi> + <phi, (m^2 - Lap) phi> ], conserved by evolve.
double hamiltonian(const MassCovariance& cov, const PhasePoint& state);

/// Omega(s1, s2) = <phi1, pi2> - <phi2, pi1>.
double symplectic_form(const PhasePoint& s1, const PhasePoint& s2);

/// H^{+} (sign=+1) or H^{-} (sign=-1) energy norm,
/// sqrt(<f, (m^2 - Lap)^{sign/2} f>).
double energy_norm(const MassCovariance& cov, const ScalarField& f, int sign);

/// Test-function flow S_m(t): f_t = cos(omega t) f - omega sin(omega t) g,
/// g_t = sin(omega t)/omega f + cos(omega t) g. Adjoint to evolve under
/// the pairing pair(f_t, phi) + pair(g_t, pi).
std::pair<ScalarField, ScalarField> test_function_flow(const MassCovariance& cov,
                                                       const ScalarField& f,
                                                       const ScalarField& g, double t);

} // namespace freefield
