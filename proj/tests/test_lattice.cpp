#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "freefield/field_io.hpp"
#include "freefield/lattice.hpp"

#include "oracles.hpp"

using namespace freefield;

TEST_CASE("LatticeSpec invariants") {
    LatticeSpec spec(2, 16, 0.5);
    CHECK(spec.sites() == 256);
    CHECK(spec.box_length() == doctest::Approx(8.0));
    CHECK(spec.cell_volume() == doctest::Approx(0.25));
    CHECK_THROWS_AS(LatticeSpec(1, 7, 0.1), Error);  // odd n
    CHECK_THROWS_AS(LatticeSpec(1, 8, -1.0), Error); // bad spacing
    CHECK_THROWS_AS(LatticeSpec(4, 8, 0.1), Error);  // d > 3

    // momentum grid: q in [-n/2, n/2)
    CHECK(spec.momentum(0) == 0.0);
    CHECK(spec.momentum(8) == doctest::Approx(-2.0 * M_PI * 8 / 8.0));
    CHECK(spec.momentum(15) == doctest::Approx(-2.0 * M_PI / 8.0));
}

TEST_CASE("forward_transform: constant field puts everything in the DC mode") {
    LatticeSpec spec(2, 8, 0.25);
    ScalarField f(spec);
    for (auto& v : f.values)
        v = 3.0;
    SpectralField F = forward_transform(f);
    CHECK(F.modes[0].real() == doctest::Approx(3.0 * spec.volume()).epsilon(1e-12));
    for (std::int64_t i = 1; i < spec.sites(); ++i)
        CHECK(std::abs(F.modes[i]) < 1e-10);
}

TEST_CASE("forward_transform of zero is zero") {
    LatticeSpec spec(1, 16, 0.1);
    SpectralField F = forward_transform(ScalarField(spec));
    for (const auto& z : F.modes)
        CHECK(std::abs(z) == 0.0);
}

TEST_CASE("transform matches the direct DFT oracle") {
    for (int d : {1, 2}) {
        LatticeSpec spec(d, 8, 0.3);
        ScalarField f = oracle::make_random_field(spec, 17 + d);
        SpectralField F = forward_transform(f);
        auto expected = oracle::naive_dft(f);
        double scale = 0.0;
        for (const auto& z : expected)
            scale = std::max(scale, std::abs(z));
        for (std::int64_t i = 0; i < spec.sites(); ++i)
            CHECK(std::abs(F.modes[i] - expected[i]) < 1e-12 * scale);
    }
}

TEST_CASE("round-trip identity over d and n") {
    for (int d : {1, 2, 3}) {
        for (int n : {8, 16, 64}) {
            if (d == 3 && n == 64)
                continue; // 64^3 round trip adds nothing at unit scope
            LatticeSpec spec(d, n, 0.2);
            ScalarField f = oracle::make_random_field(spec, 100 * d + n);
            ScalarField g = inverse_transform(forward_transform(f));
            for (std::int64_t i = 0; i < spec.sites(); ++i)
                CHECK(g.values[i] == doctest::Approx(f.values[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("single Hermitian mode pair inverts to a cosine") {
    LatticeSpec spec(1, 16, 0.5);
    SpectralField F(spec);
    F.modes[3] = {spec.volume() / 2.0, 0.0};
    F.modes[13] = {spec.volume() / 2.0, 0.0};
    ScalarField f = inverse_transform(F);
    const double k = spec.momentum(3);
    for (int i = 0; i < spec.n; ++i)
        CHECK(f.values[i] == doctest::Approx(std::cos(k * i * spec.a)).epsilon(1e-12));
}

TEST_CASE("inverse_transform rejects non-Hermitian input") {
    LatticeSpec spec(1, 8, 1.0);
    SpectralField F(spec);
    F.modes[1] = {1.0, 0.5};
    F.modes[7] = {1.0, 0.5}; // should be the conjugate
    CHECK_THROWS_AS(inverse_transform(F), NonHermitianInput);
}

TEST_CASE("pair: volume, zero, symmetry and bilinearity") {
    LatticeSpec spec(2, 8, 0.5);
    ScalarField one(spec), zero(spec);
    for (auto& v : one.values)
        v = 1.0;
    CHECK(pair(one, zero) == 0.0);
    CHECK(pair(one, one) == doctest::Approx(spec.volume()).epsilon(1e-14));

    ScalarField f = oracle::make_random_field(spec, 1);
    ScalarField g = oracle::make_random_field(spec, 2);
    ScalarField h = oracle::make_random_field(spec, 3);
    CHECK(pair(f, g) == doctest::Approx(pair(g, f)).epsilon(1e-14));
    ScalarField fg(spec);
    for (std::int64_t i = 0; i < spec.sites(); ++i)
        fg.values[i] = 2.0 * f.values[i] + 3.0 * g.values[i];
    CHECK(pair(fg, h) == doctest::Approx(2.0 * pair(f, h) + 3.0 * pair(g, h)).epsilon(1e-12));

    LatticeSpec other(2, 8, 0.25);
    CHECK_THROWS_AS(pair(f, ScalarField(other)), SpecMismatch);
}

TEST_CASE("Parseval identity") {
    LatticeSpec spec(2, 16, 0.3);
    ScalarField f = oracle::make_random_field(spec, 5);
    ScalarField g = oracle::make_random_field(spec, 6);
    SpectralField F = forward_transform(f), G = forward_transform(g);
    double spectral = 0.0;
    for (std::int64_t i = 0; i < spec.sites(); ++i)
        spectral += (F.modes[i] * std::conj(G.modes[i])).real();
    spectral /= spec.volume();
    CHECK(pair(f, g) == doctest::Approx(spectral).epsilon(1e-12));
}

TEST_CASE("field persistence round-trip and validation") {
    namespace fs = std::filesystem;
    const fs::path tmp = fs::temp_directory_path() / "ff_field_test.f64";
    LatticeSpec spec(2, 8, 0.125);
    ScalarField f = oracle::make_random_field(spec, 9);
    write_field(tmp, f);
    ScalarField g = read_field(tmp);
    CHECK(g.spec == spec);
    CHECK(g.values == f.values);

    // truncated payload must be rejected
    fs::resize_file(tmp, fs::file_size(tmp) - 16);
    CHECK_THROWS_AS(read_field(tmp), Error);
    fs::remove(tmp);
}
