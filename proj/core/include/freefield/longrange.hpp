#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "freefield/covariance.hpp"

namespace freefield {

/// Family of disjoint hypercube probes of edge L centered at
/// x^j = (j^2/m, 0, ..., 0), j = 1..J. The probe function f_j is the
/// indicator of the cube divided by L^d. Disjointness requires L < 3/m
/// (nearest centers are 3/m apart); the constructor enforces it.
struct ProbeFamily {
    double m;
    double L;
    int d;
    int J;

    ProbeFamily(double m_, double L_, int d_, int J_);

    /// First coordinate of the j-th center (1-based).
    double center(int j) const { return static_cast<double>(j) * j / m; }
};

/// Deterministic tensorized quadrature controls for the probe-covariance
/// integral: start at cutoff k_cut and `panels` panels per axis, double
/// both until two successive values agree to `tol` relative.
struct QuadratureSpec {
    double k_cut = 32.0;
    int panels = 64;
    double tol = 1e-6;
    int max_doublings = 14;
};

/// J x J probe covariance matrix with its common diagonal value.
struct CovMatrix {
    ProbeFamily family;
    Eigen::MatrixXd entries;
    double lambda;
    double quadrature_tol;
};

/// Envelope bound parameters: |x_n| < sqrt(2 (1+epsilon) rho ln n).
struct EnvelopeParams {
    double rho;
    double epsilon;
    int n_min = 2;
};

/// Violations of the envelope bound over the observed range. Sequences
/// are indexed from n = 2 (ln 1 degenerates the bound); membership is
/// judged from n_min on.
struct EnvelopeReport {
    std::optional<int> last_violation; ///< largest n with |x_n| >= bound
    int violation_count = 0;           ///< violations at n >= n_min
    bool member = true;                ///< no violations at or beyond n_min
};

/// Mass-discrimination verdict.
struct MassVerdict {
    double best_mass;
    double lambda_hat;
    double stderr_;
    double z_score; ///< separation of best from runner-up, in stderr units
    std::vector<double> candidate_lambdas;
};

/// Probe covariance entry (M_m)_{jl} = <f_j, C_m f_l>, evaluated by
/// converged deterministic quadrature of the momentum-space integral
/// (or, for disjoint probes in d = 1, of its exact position-space form,
/// which resolves the exponentially small tail without cancellation).
/// Throws QuadratureNotConverged if doubling fails to stabilize.
double covariance_entry(const MassCovariance& cov, const ProbeFamily& family, int j, int l,
                        const QuadratureSpec& quad = {});

/// The common diagonal value lambda_m^L, strictly decreasing in m.
double lambda_L(const MassCovariance& cov, double L, int d = 1,
                const QuadratureSpec& quad = {});

/// Full matrix via covariance_entry; validates symmetry and positive
/// definiteness (throws NotPositiveDefinite).
CovMatrix build_cov_matrix(const MassCovariance& cov, const ProbeFamily& family,
                           const QuadratureSpec& quad = {}, int workers = 0);

/// Sum of squared off-diagonal entries, the Hilbert-Schmidt witness.
double hs_offdiag_norm(const CovMatrix& M);

/// Windowed tail witness sup_{j != l} |M_jl| |j^2 - l^2|.
double hs_tail_witness(const CovMatrix& M);

/// Gaussian vectors of covariance M via Cholesky; draw i is a pure
/// function of (seed, i). Throws FactorizationFailed.
std::vector<std::vector<double>> sample_probe_sequence(const CovMatrix& M, std::uint64_t seed,
                                                       int count);

/// Scan a sequence (x_n, n = 2, 3, ...) against the envelope bound.
EnvelopeReport envelope_test(const std::vector<double>& x, const EnvelopeParams& p);

/// Partial product Lambda_N = prod_{n=N}^{N_max} Erf(sqrt((1+eps) ln n)),
/// the probability of no envelope violation on [N, N_max] for
/// independent N(0, rho) entries.
double envelope_probability(const EnvelopeParams& p, int N, int N_max);

/// Classify a probe sequence by matching its second moment against
/// lambda_m^L over the candidate masses. Throws Degenerate on all-zero
/// input; requires at least 30 entries.
MassVerdict discriminate_mass(const std::vector<double>& x, const std::vector<double>& candidates,
                              double L, int d = 1, const QuadratureSpec& quad = {});

} // namespace freefield
