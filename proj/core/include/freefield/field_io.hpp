#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "freefield/lattice.hpp"
#include "freefield/longrange.hpp"
#include "freefield/sampler.hpp"

namespace freefield {

/// Write a field as a one-line JSON header
/// {"d":..,"n":..,"a":..,"dtype":"f64le","layout":"row-major"}
/// followed by raw little-endian 64-bit floats.
void write_field(const std::filesystem::path& path, const ScalarField& f);

/// Read a field written by write_field; validates header and length.
ScalarField read_field(const std::filesystem::path& path);

/// Persist a batch as a directory: manifest.json plus one field file
/// per sample.
void write_batch(const std::filesystem::path& dir, const SampleBatch& batch);

SampleBatch read_batch(const std::filesystem::path& dir);

/// Persist a probe covariance matrix: one-line JSON header
/// {"m":..,"L":..,"d":..,"J":..,"quadrature_tol":..} followed by the
/// row-major float64 entries.
void write_cov_matrix(const std::filesystem::path& path, const CovMatrix& M);

CovMatrix read_cov_matrix(const std::filesystem::path& path);

} // namespace freefield
