#include "freefield/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include <fftw3.h>

#include "freefield/parallel.hpp"

namespace freefield {

LatticeSpec::LatticeSpec(int d_, int n_, double a_) : d(d_), n(n_), a(a_) {
    if (d < 1 || d > 3)
        throw Error("LatticeSpec: dimension must be 1..3, got " + std::to_string(d));
    if (n < 2 || n % 2 != 0)
        throw Error("LatticeSpec: n must be even and >= 2, got " + std::to_string(n));
    if (!(a > 0.0))
        throw Error("LatticeSpec: spacing must be positive");
    sites_ = 1;
    for (int i = 0; i < d; ++i)
        sites_ *= n;
}

double LatticeSpec::cell_volume() const {
    return std::pow(a, d);
}

double LatticeSpec::volume() const {
    return std::pow(n * a, d);
}

void LatticeSpec::unflatten(std::int64_t idx, std::array<int, 3>& out) const {
    for (int ax = d - 1; ax >= 0; --ax) {
        out[ax] = static_cast<int>(idx % n);
        idx /= n;
    }
}

double LatticeSpec::momentum(int i) const {
    const int q = i < n / 2 ? i : i - n;
    return 2.0 * std::numbers::pi * q / (n * a);
}

double LatticeSpec::momentum_sq(std::int64_t idx) const {
    std::array<int, 3> ix{};
    unflatten(idx, ix);
    double k2 = 0.0;
    for (int ax = 0; ax < d; ++ax) {
        const double k = momentum(ix[ax]);
        k2 += k * k;
    }
    return k2;
}

std::int64_t LatticeSpec::conjugate_index(std::int64_t idx) const {
    std::array<int, 3> ix{};
    unflatten(idx, ix);
    std::int64_t out = 0;
    for (int ax = 0; ax < d; ++ax) {
        const int neg = ix[ax] == 0 ? 0 : n - ix[ax];
        out = out * n + neg;
    }
    return out;
}

double LatticeSpec::centered_coordinate(int i) const {
    const int c = i < n / 2 ? i : i - n;
    return c * a;
}

ScalarField::ScalarField(const LatticeSpec& s, std::vector<double> v)
    : spec(s), values(std::move(v)) {
    if (static_cast<std::int64_t>(values.size()) != spec.sites())
        throw Error("ScalarField: value count does not match lattice");
    for (double x : values)
        if (!std::isfinite(x))
            throw Error("ScalarField: non-finite value");
}

void check_same_spec(const LatticeSpec& x, const LatticeSpec& y) {
    if (!(x == y))
        throw SpecMismatch("lattice specs differ");
}

namespace {

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

void run_dft(const LatticeSpec& spec, std::vector<std::complex<double>>& data, int sign) {
    int dims[3] = {spec.n, spec.n, spec.n};
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        plan = fftw_plan_dft(spec.d, dims, buf, buf, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(plan);
    }
}

} // namespace

SpectralField forward_transform(const ScalarField& f) {
    SpectralField out(f.spec);
    const std::int64_t N = f.spec.sites();
    for (std::int64_t i = 0; i < N; ++i)
        out.modes[i] = f.values[i];
    run_dft(f.spec, out.modes, FFTW_FORWARD);
    const double vol = f.spec.cell_volume();
    for (auto& z : out.modes)
        z *= vol;
    return out;
}

ScalarField inverse_transform(const SpectralField& F) {
    const std::int64_t N = F.spec.sites();

    double scale = 0.0;
    for (const auto& z : F.modes)
        scale = std::max(scale, std::abs(z));
    if (scale > 0.0) {
        for (std::int64_t i = 0; i < N; ++i) {
            const std::int64_t j = F.spec.conjugate_index(i);
            if (std::abs(F.modes[i] - std::conj(F.modes[j])) > 1e-10 * scale)
                throw NonHermitianInput("inverse_transform: Hermitian symmetry violated");
        }
    }

    std::vector<std::complex<double>> work = F.modes;
    run_dft(F.spec, work, FFTW_BACKWARD);

    ScalarField out(F.spec);
    const double norm = 1.0 / F.spec.volume();
    double imag_max = 0.0, real_max = 0.0;
    for (std::int64_t i = 0; i < N; ++i) {
        out.values[i] = work[i].real() * norm;
        imag_max = std::max(imag_max, std::abs(work[i].imag()) * norm);
        real_max = std::max(real_max, std::abs(out.values[i]));
    }
    if (imag_max > 1e-10 * std::max(real_max, 1e-300))
        throw NonHermitianInput("inverse_transform: imaginary residue too large");
    return out;
}

double pair(const ScalarField& f, const ScalarField& g) {
    check_same_spec(f.spec, g.spec);
    double s = 0.0;
    const std::int64_t N = f.spec.sites();
    for (std::int64_t i = 0; i < N; ++i)
        s += f.values[i] * g.values[i];
    return s * f.spec.cell_volume();
}

int default_workers() {
    if (const char* env = std::getenv("FREEFIELD_WORKERS")) {
        const int w = std::atoi(env);
        if (w >= 1)
            return w;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& body, int workers) {
    if (workers <= 0)
        workers = default_workers();
    if (workers == 1 || count <= 1) {
        for (std::int64_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    workers = static_cast<int>(std::min<std::int64_t>(workers, count));
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            for (std::int64_t i = w; i < count; i += workers)
                body(i);
        });
    }
    for (auto& t : threads)
        t.join();
}

} // namespace freefield
