#pragma once

#include <stdexcept>
#include <string>

namespace freefield {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two fields living on different lattices were combined.
struct SpecMismatch : Error {
    using Error::Error;
};

/// A spectral field violated Hermitian symmetry beyond tolerance.
struct NonHermitianInput : Error {
    using Error::Error;
};

/// A dense-matrix guard (n^d limit) was exceeded.
struct TooLarge : Error {
    using Error::Error;
};

/// An estimator was asked to run on an empty sample batch.
struct EmptyBatch : Error {
    using Error::Error;
};

/// Cutoff-and-resolution doubling failed to stabilize within budget.
struct QuadratureNotConverged : Error {
    using Error::Error;
};

/// Eigenvalue check of a covariance matrix failed.
struct NotPositiveDefinite : Error {
    using Error::Error;
};

/// Cholesky factorization of a covariance matrix failed.
struct FactorizationFailed : Error {
    using Error::Error;
};

/// An estimator received degenerate (all-zero) input.
struct Degenerate : Error {
    using Error::Error;
};

} // namespace freefield
