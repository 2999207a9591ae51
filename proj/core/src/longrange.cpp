#include "freefield/longrange.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "freefield/parallel.hpp"
#include "freefield/rng.hpp"

namespace freefield {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc2(double k, double L) {
    if (k == 0.0)
        return L * L / 4.0; // removable singularity
    const double s = std::sin(k * L / 2.0);
    return s * s / (k * k);
}

double bessel_k0(double x) {
    if (x > 680.0) {
        // cyl_bessel_k underflows internally; leading asymptotic term
        return std::exp(-x) * std::sqrt(kPi / (2.0 * x)) * (1.0 - 1.0 / (8.0 * x));
    }
    return std::cyl_bessel_k(0.0, x);
}

// Composite Filon rule for int_a^b f(x) cos(omega x) dx. Subinterval
// width only needs to resolve f; the oscillation is integrated exactly
// against the quadratic interpolant.
double filon_cos(const std::function<double(double)>& f, double a, double b, int pairs,
                 double omega) {
    omega = std::abs(omega);
    const int n2 = 2 * pairs;
    const double h = (b - a) / n2;
    const double theta = omega * h;

    double alpha, beta, gamma;
    if (theta < 1e-2) {
        const double t2 = theta * theta;
        alpha = theta * t2 * (2.0 / 45.0 - t2 * (2.0 / 315.0 - t2 * (2.0 / 4725.0)));
        beta = 2.0 / 3.0 + t2 * (2.0 / 15.0 - t2 * (4.0 / 105.0 - t2 * (2.0 / 567.0)));
        gamma = 4.0 / 3.0 - t2 * (2.0 / 15.0 - t2 * (1.0 / 210.0 - t2 * (1.0 / 11340.0)));
    } else {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        const double t3 = theta * theta * theta;
        alpha = (theta * theta + theta * s * c - 2.0 * s * s) / t3;
        beta = 2.0 * (theta * (1.0 + c * c) - 2.0 * s * c) / t3;
        gamma = 4.0 * (s - theta * c) / t3;
    }

    double even = 0.0, odd = 0.0;
    for (int i = 0; i <= n2; ++i) {
        const double x = a + i * h;
        const double v = f(x) * std::cos(omega * x);
        if (i % 2 == 0)
            even += v;
        else
            odd += v;
    }
    const double fa = f(a), fb = f(b);
    even -= 0.5 * (fa * std::cos(omega * a) + fb * std::cos(omega * b));
    return h * (alpha * (fb * std::sin(omega * b) - fa * std::sin(omega * a)) + beta * even +
                gamma * odd);
}

// 16-point Gauss-Legendre on [-1, 1].
constexpr double kGlx[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                            0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                            0.9445750230732326, 0.9894009349916499};
constexpr double kGlw[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                            0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                            0.0622535239386479, 0.0271524594117541};

double gauss_panels(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        double acc = 0.0;
        for (int i = 0; i < 8; ++i) {
            const double dx = 0.5 * h * kGlx[i];
            acc += kGlw[i] * (f(mid + dx) + f(mid - dx));
        }
        total += acc * 0.5 * h;
    }
    return total;
}

// Momentum-space integral of Eq.-style probe covariance: over [0, K]^d
// with even-symmetry factor 2^d, Filon on the oscillatory axis and
// Gauss panels on the rest.
double momentum_value(double m, double L, int d, double omega, double K, int panels) {
    const double m2 = m * m;
    const double pref = 0.5 * std::pow(2.0 / kPi, d) * std::pow(L, -2.0 * d) * std::pow(2.0, d);

    std::function<double(int, double, double)> axis = [&](int ax, double kperp2,
                                                          double prod) -> double {
        if (ax == 0) {
            return filon_cos(
                [&](double k1) {
                    return prod * sinc2(k1, L) / std::sqrt(m2 + kperp2 + k1 * k1);
                },
                0.0, K, panels, omega);
        }
        return gauss_panels(
            [&](double k) { return axis(ax - 1, kperp2 + k * k, prod * sinc2(k, L)); }, 0.0, K,
            std::max(4, panels / 4));
    };
    return pref * axis(d - 1, 0.0, 1.0);
}

// Equivalent position-space form for disjoint probes in d = 1: the probe
// overlap is a tent of width 2L and the C_m kernel is K0(m r)/(2 pi),
//   M = 1/(2 pi L^2) int_{-L}^{L} (L - |u|) K0(m (s + u)) du,  s > L.
// Positive smooth integrand, so the exponentially small tail comes out
// at full relative accuracy instead of drowning in cancellation.
double position_value(double m, double L, double s, int panels) {
    auto f = [&](double u) { return (L - std::abs(u)) * bessel_k0(m * (s + u)); };
    const double v = gauss_panels(f, -L, 0.0, panels) + gauss_panels(f, 0.0, L, panels);
    return v / (2.0 * kPi * L * L);
}

double converge(const std::function<double(double, int)>& eval, const QuadratureSpec& quad,
                bool double_cutoff) {
    double K = quad.k_cut;
    int panels = quad.panels;
    double prev = eval(K, panels);
    for (int it = 0; it < quad.max_doublings; ++it) {
        if (double_cutoff)
            K *= 2.0;
        panels *= 2;
        const double next = eval(K, panels);
        const double scale = std::max({std::abs(next), std::abs(prev), 1e-300});
        if (std::abs(next - prev) <= quad.tol * scale)
            return next;
        prev = next;
    }
    throw QuadratureNotConverged("probe covariance quadrature did not stabilize");
}

double entry_value(double m, double L, int d, double delta_abs, const QuadratureSpec& quad) {
    if (d == 1 && delta_abs > 0.0) {
        const double s = delta_abs / m; // physical center separation, > L
        return converge([&](double, int p) { return position_value(m, L, s, p); }, quad,
                        /*double_cutoff=*/false);
    }
    const double omega = delta_abs / m;
    return converge([&](double K, int p) { return momentum_value(m, L, d, omega, K, p); }, quad,
                    /*double_cutoff=*/true);
}

} // namespace

ProbeFamily::ProbeFamily(double m_, double L_, int d_, int J_) : m(m_), L(L_), d(d_), J(J_) {
    if (!(m > 0.0))
        throw Error("ProbeFamily: mass must be positive");
    if (!(L > 0.0))
        throw Error("ProbeFamily: edge length must be positive");
    if (!(L < 3.0 / m))
        throw Error("ProbeFamily: disjoint hypercubes require L < 3/m");
    if (d < 1 || d > 3)
        throw Error("ProbeFamily: dimension must be 1..3");
    if (J < 1)
        throw Error("ProbeFamily: need at least one probe");
}

double covariance_entry(const MassCovariance& cov, const ProbeFamily& family, int j, int l,
                        const QuadratureSpec& quad) {
    if (j < 1 || j > family.J || l < 1 || l > family.J)
        throw Error("covariance_entry: probe index out of range");
    const double delta = std::abs(static_cast<double>(j) * j - static_cast<double>(l) * l);
    return entry_value(cov.m, family.L, family.d, delta, quad);
}

double lambda_L(const MassCovariance& cov, double L, int d, const QuadratureSpec& quad) {
    if (!(L > 0.0))
        throw Error("lambda_L: edge length must be positive");
    return entry_value(cov.m, L, d, 0.0, quad);
}

CovMatrix build_cov_matrix(const MassCovariance& cov, const ProbeFamily& family,
                           const QuadratureSpec& quad, int workers) {
    const int J = family.J;

    // Entries depend on j, l only through |j^2 - l^2|.
    std::map<std::int64_t, double> by_delta;
    for (int j = 1; j <= J; ++j)
        for (int l = j; l <= J; ++l)
            by_delta.emplace(static_cast<std::int64_t>(l) * l - static_cast<std::int64_t>(j) * j,
                             0.0);
    std::vector<std::int64_t> deltas;
    deltas.reserve(by_delta.size());
    for (const auto& [key, _] : by_delta)
        deltas.push_back(key);

    std::vector<double> vals(deltas.size());
    parallel_for(
        static_cast<std::int64_t>(deltas.size()),
        [&](std::int64_t i) {
            vals[i] = entry_value(cov.m, family.L, family.d,
                                  static_cast<double>(deltas[i]), quad);
        },
        workers);
    for (std::size_t i = 0; i < deltas.size(); ++i)
        by_delta[deltas[i]] = vals[i];

    Eigen::MatrixXd M(J, J);
    for (int j = 1; j <= J; ++j)
        for (int l = 1; l <= J; ++l) {
            const std::int64_t key = std::abs(static_cast<std::int64_t>(j) * j -
                                              static_cast<std::int64_t>(l) * l);
            M(j - 1, l - 1) = by_delta[key];
        }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
        throw NotPositiveDefinite(
            "build_cov_matrix: min eigenvalue <= 0, quadrature tolerance too loose?");

    return CovMatrix{family, std::move(M), by_delta[0], quad.tol};
}

double hs_offdiag_norm(const CovMatrix& M) {
    const int J = M.family.J;
    double s = 0.0;
    for (int j = 0; j < J; ++j)
        for (int l = 0; l < J; ++l)
            if (j != l)
                s += M.entries(j, l) * M.entries(j, l);
    return s;
}

double hs_tail_witness(const CovMatrix& M) {
    const int J = M.family.J;
    double sup = 0.0;
    for (int j = 1; j <= J; ++j)
        for (int l = 1; l <= J; ++l)
            if (j != l) {
                const double delta = std::abs(static_cast<double>(j) * j -
                                              static_cast<double>(l) * l);
                sup = std::max(sup, std::abs(M.entries(j - 1, l - 1)) * delta);
            }
    return sup;
}

std::vector<std::vector<double>> sample_probe_sequence(const CovMatrix& M, std::uint64_t seed,
                                                       int count) {
    const int J = M.family.J;
    Eigen::LLT<Eigen::MatrixXd> llt(M.entries);
    if (llt.info() != Eigen::Success)
        throw FactorizationFailed("sample_probe_sequence: Cholesky factorization failed");
    const Eigen::MatrixXd Lc = llt.matrixL();

    std::vector<std::vector<double>> out(count);
    for (int s = 0; s < count; ++s) {
        CounterRng rng(seed, static_cast<std::uint64_t>(s));
        Eigen::VectorXd z(J);
        for (int j = 0; j < J; ++j)
            z(j) = rng.normal(static_cast<std::uint64_t>(j));
        Eigen::VectorXd x = Lc * z;
        out[s].assign(x.data(), x.data() + J);
    }
    return out;
}

EnvelopeReport envelope_test(const std::vector<double>& x, const EnvelopeParams& p) {
    if (!(p.rho > 0.0))
        throw Error("envelope_test: rho must be positive");
    if (p.epsilon < 0.0)
        throw Error("envelope_test: epsilon must be nonnegative");
    if (p.n_min < 2)
        throw Error("envelope_test: n_min must be >= 2");

    EnvelopeReport report;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const int n = 2 + static_cast<int>(i);
        const double bound = std::sqrt(2.0 * (1.0 + p.epsilon) * p.rho * std::log(n));
        if (std::abs(x[i]) >= bound) {
            report.last_violation = n;
            if (n >= p.n_min)
                ++report.violation_count;
        }
    }
    report.member = !report.last_violation || *report.last_violation < p.n_min;
    return report;
}

double envelope_probability(const EnvelopeParams& p, int N, int N_max) {
    if (N < 2 || N > N_max)
        throw Error("envelope_probability: need 2 <= N <= N_max");
    double log_prod = 0.0;
    for (int n = N; n <= N_max; ++n)
        log_prod += std::log(std::erf(std::sqrt((1.0 + p.epsilon) * std::log(n))));
    return std::exp(log_prod);
}

MassVerdict discriminate_mass(const std::vector<double>& x, const std::vector<double>& candidates,
                              double L, int d, const QuadratureSpec& quad) {
    if (x.size() < 30)
        throw Error("discriminate_mass: need at least 30 entries");
    if (candidates.size() < 2)
        throw Error("discriminate_mass: need at least two candidate masses");
    for (std::size_t i = 0; i < candidates.size(); ++i)
        for (std::size_t j = i + 1; j < candidates.size(); ++j)
            if (candidates[i] == candidates[j])
                throw Error("discriminate_mass: candidate masses must be distinct");

    double lambda_hat = 0.0;
    for (double v : x)
        lambda_hat += v * v;
    lambda_hat /= static_cast<double>(x.size());
    if (lambda_hat == 0.0)
        throw Degenerate("discriminate_mass: all-zero sequence");

    // chi-square variance of the second-moment estimator
    const double se = lambda_hat * std::sqrt(2.0 / static_cast<double>(x.size()));

    MassVerdict verdict;
    verdict.lambda_hat = lambda_hat;
    verdict.stderr_ = se;
    std::vector<std::pair<double, double>> dist; // (|lambda_c - lambda_hat|, mass)
    for (double m : candidates) {
        const double lam = lambda_L(MassCovariance(m), L, d, quad);
        verdict.candidate_lambdas.push_back(lam);
        dist.emplace_back(std::abs(lam - lambda_hat), m);
    }
    std::sort(dist.begin(), dist.end());
    verdict.best_mass = dist[0].second;
    verdict.z_score = (dist[1].first - dist[0].first) / se;
    return verdict;
}

} // namespace freefield
