#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "freefield/errors.hpp"

namespace freefield {

/// Periodic lattice discretizing a d-dimensional box of side n*a.
///
/// Sites are indexed row-major: axis 0 is slowest, axis d-1 fastest.
/// Site i along an axis sits at coordinate x = i*a; the momentum grid
/// per axis is k = (2*pi/(n*a))*q with q = i for i < n/2 and q = i - n
/// otherwise, so q ranges over [-n/2, n/2).
struct LatticeSpec {
    int d;    ///< spatial dimension, 1..3
    int n;    ///< points per axis, even, >= 2
    double a; ///< lattice spacing, > 0

    LatticeSpec(int d_, int n_, double a_);

    std::int64_t sites() const { return sites_; }
    double box_length() const { return n * a; }
    double cell_volume() const;
    /// (n*a)^d, the box volume.
    double volume() const;

    bool operator==(const LatticeSpec&) const = default;

    /// Decompose a flat index into per-axis indices (row-major).
    void unflatten(std::int64_t idx, std::array<int, 3>& out) const;
    /// Momentum component for per-axis index i.
    double momentum(int i) const;
    /// |k|^2 at flat index.
    double momentum_sq(std::int64_t idx) const;
    /// Flat index of the mode -k (per-axis negation mod n).
    std::int64_t conjugate_index(std::int64_t idx) const;
    /// Box-centered coordinate of per-axis site index i, in [-n*a/2, n*a/2).
    double centered_coordinate(int i) const;

  private:
    std::int64_t sites_;
};

/// Real lattice function; serves both as test function and sampled field.
struct ScalarField {
    LatticeSpec spec;
    std::vector<double> values;

    explicit ScalarField(const LatticeSpec& s) : spec(s), values(s.sites(), 0.0) {}
    ScalarField(const LatticeSpec& s, std::vector<double> v);
};

/// Complex mode array on the momentum grid, FFT index order.
struct SpectralField {
    LatticeSpec spec;
    std::vector<std::complex<double>> modes;

    explicit SpectralField(const LatticeSpec& s) : spec(s), modes(s.sites(), {0.0, 0.0}) {}
};

/// Discrete Fourier transform, f_hat(k) = a^d * sum_x f(x) exp(-i k.x).
SpectralField forward_transform(const ScalarField& f);

/// Exact inverse of forward_transform. Throws NonHermitianInput if the
/// input violates Hermitian symmetry beyond 1e-10 relative.
ScalarField inverse_transform(const SpectralField& F);

/// L2 pairing a^d * sum_x f(x) g(x). Throws SpecMismatch.
double pair(const ScalarField& f, const ScalarField& g);

void check_same_spec(const LatticeSpec& x, const LatticeSpec& y);

} // namespace freefield
