// Batch experiment driver: one subcommand per experiment, flat JSON
// config with flag overrides, a manifest beside every output, and
// CSV/JSON reports with floats at 17 significant digits.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "freefield/covariance.hpp"
#include "freefield/dynamics.hpp"
#include "freefield/field_io.hpp"
#include "freefield/lattice.hpp"
#include "freefield/longrange.hpp"
#include "freefield/mixing.hpp"
#include "freefield/rng.hpp"
#include "freefield/sampler.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace freefield;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCheckFailed = 4;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json load_config(const std::string& path) {
    if (path.empty())
        return json::object();
    std::ifstream in(path);
    if (!in)
        throw CLI::ValidationError("--config", "cannot open " + path);
    json cfg;
    in >> cfg;
    if (!cfg.is_object())
        throw CLI::ValidationError("--config", "config must be a flat JSON object");
    return cfg;
}

// Flag values win over config-file values: only options absent from the
// command line are filled in from the config.
template <class T>
void merge(const json& cfg, const CLI::App& sub, const std::string& key, T& var) {
    if (!cfg.contains(key))
        return;
    if (sub.get_option("--" + key)->count() == 0)
        var = cfg.at(key).get<T>();
}

struct RunContext {
    fs::path out;
    json config;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void finish(const std::string& command, std::uint64_t seed) const {
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json manifest = {{"command", command},
                         {"version", FREEFIELD_VERSION},
                         {"seed", seed},
                         {"wall_time_seconds", wall},
                         {"config", config}};
        std::ofstream mf(out / "run_manifest.json");
        mf << manifest.dump(2) << '\n';
    }
};

RunContext open_output(const std::string& out, const json& config) {
    fs::create_directories(out);
    return RunContext{fs::path(out), config};
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream f(path);
    f << j.dump(2) << '\n';
}

// Periodic Gaussian bump on axis 0 (box middle on the others), the
// standard smooth test function of the experiment suite.
ScalarField make_bump(const LatticeSpec& spec, double center, double width) {
    ScalarField f(spec);
    const double box = spec.box_length();
    std::array<int, 3> idx{};
    for (std::int64_t i = 0; i < spec.sites(); ++i) {
        f.spec.unflatten(i, idx);
        double r2 = 0.0;
        for (int ax = 0; ax < spec.d; ++ax) {
            const double c = ax == 0 ? center : box / 2.0;
            double dx = std::fmod(std::abs(idx[ax] * spec.a - c), box);
            dx = std::min(dx, box - dx);
            r2 += dx * dx;
        }
        f.values[i] = std::exp(-r2 / (2.0 * width * width));
    }
    return f;
}

// The fixed family of five test functions used by the verification
// subcommands: varying centers and widths across the box.
std::vector<ScalarField> test_family(const LatticeSpec& spec) {
    const double box = spec.box_length();
    std::vector<ScalarField> fam;
    fam.push_back(make_bump(spec, 0.25 * box, 0.05 * box));
    fam.push_back(make_bump(spec, 0.50 * box, 0.08 * box));
    fam.push_back(make_bump(spec, 0.70 * box, 0.12 * box));
    fam.push_back(make_bump(spec, 0.40 * box, 0.03 * box));
    ScalarField mix(spec);
    for (std::int64_t i = 0; i < spec.sites(); ++i)
        mix.values[i] = fam[0].values[i] - 0.5 * fam[2].values[i];
    fam.push_back(std::move(mix));
    return fam;
}

struct CommandResult {
    bool checks_passed = true;
};

// ---- subcommand bodies ----------------------------------------------

struct SampleOpts {
    int d = 1, n = 128;
    double a = 0.1, m = 1.0;
    std::uint64_t seed = 1;
    int count = 100, workers = 0;
    std::string out = "sample_out", config;
};

CommandResult run_sample(const SampleOpts& o, const json& cfg) {
    RunContext ctx = open_output(o.out, cfg);
    SampleBatch batch = sample(MassCovariance(o.m), LatticeSpec(o.d, o.n, o.a), o.seed,
                               o.count, o.workers);
    write_batch(ctx.out, batch);
    ctx.finish("sample", o.seed);
    return {};
}

struct BatchOpts {
    std::string batch, out = "report_out", config;
};

CommandResult run_verify_char(const BatchOpts& o, const json& cfg) {
    RunContext ctx = open_output(o.out, cfg);
    SampleBatch batch = read_batch(o.batch);
    json tests = json::array();
    bool all = true;
    int index = 0;
    for (const ScalarField& f : test_family(batch.spec)) {
        const double exact = characteristic_analytic(batch.cov, f);
        const McEstimate mc = characteristic_mc(batch, f);
        const double diff = std::abs(mc.value - std::complex<double>(exact, 0.0));
        const double tol = std::max(3.0 * mc.stderr_, 0.02);
        const bool pass = diff <= tol;
        all = all && pass;
        tests.push_back({{"test_function", index++},
                         {"analytic", exact},
                         {"mc_real", mc.value.real()},
                         {"mc_imag", mc.value.imag()},
                         {"abs_diff", diff},
                         {"stderr", mc.stderr_},
                         {"tolerance", tol},
                         {"pass", pass}});
    }
    write_json(ctx.out / "verify_char.json", {{"tests", tests}, {"pass", all}});
    ctx.finish("verify-char", batch.seed);
    return {all};
}

struct WeylOpts {
    int d = 1, n = 128;
    double a = 0.1, m = 1.0, tol = 1e-12;
    std::string out = "weyl_out", config;
};

CommandResult run_weyl(const WeylOpts& o, const json& cfg) {
    RunContext ctx = open_output(o.out, cfg);
    LatticeSpec spec(o.d, o.n, o.a);
    MassCovariance cov(o.m);
    auto fam = test_family(spec);
    json rows = json::array();
    bool all = true;
    for (std::size_t i = 0; i + 1 < fam.size(); ++i) {
        const double wa = weyl_expectation_analytic(cov, fam[i], fam[i + 1]);
        const double ws = weyl_expectation_spectral(cov, fam[i], fam[i + 1]);
        const double diff = std::abs(wa - ws);
        const bool pass = diff <= o.tol * std::max(1.0, std::abs(wa));
        all = all && pass;
        rows.push_back({{"f", i},
                        {"g", i + 1},
                        {"analytic", wa},
                        {"spectral", ws},
                        {"abs_diff", diff},
                        {"pass", pass}});
    }
    write_json(ctx.out / "weyl.json", {{"pairs", rows}, {"pass", all}});
    ctx.finish("weyl", 0);
    return {all};
}

CommandResult run_rn_check(const BatchOpts& o, const json& cfg) {
    RunContext ctx = open_output(o.out, cfg);
    SampleBatch batch = read_batch(o.batch);
    const double box = batch.spec.box_length();
    ScalarField g = make_bump(batch.spec, 0.5 * box, 0.07 * box);
    ScalarField f = make_bump(batch.spec, 0.3 * box, 0.05 * box);

    std::vector<double> rn;
    std::vector<std::complex<double>> rn_char;
    rn.reserve(batch.fields.size());
    for (const ScalarField& phi : batch.fields) {
        const double w = radon_nikodym(batch.cov, g, phi);
        rn.push_back(w);
        rn_char.push_back(w * std::exp(std::complex<double>(0.0, field_eval(phi, f))));
    }
    const double s = static_cast<double>(rn.size());
    double mean = 0.0;
    std::complex<double> cmean(0.0, 0.0);
    for (std::size_t i = 0; i < rn.size(); ++i) {
        mean += rn[i];
        cmean += rn_char[i];
    }
    mean /= s;
    cmean /= s;
    double var = 0.0, cvar = 0.0;
    for (std::size_t i = 0; i < rn.size(); ++i) {
        var += std::pow(rn[i] - mean, 2);
        cvar += std::norm(rn_char[i] - cmean);
    }
    const double se = std::sqrt(var / (s - 1.0) / s);
    const double cse = std::sqrt(cvar / (s - 1.0) / s);

    const double shift = pair(f, g);
    const std::complex<double> expected =
        characteristic_analytic(batch.cov, f) *
        std::exp(std::complex<double>(0.0, shift));

    const bool mean_ok = std::abs(mean - 1.0) <= 4.0 * se;
    const bool char_ok = std::abs(cmean - expected) <= std::max(3.0 * cse, 0.02);
    write_json(ctx.out / "rn_check.json",
               {{"rn_mean", mean},
                {"rn_stderr", se},
                {"mean_pass", mean_ok},
                {"translated_char_real", cmean.real()},
                {"translated_char_imag", cmean.imag()},
                {"translated_char_expected_real", expected.real()},
                {"translated_char_expected_imag", expected.imag()},
                {"translated_char_stderr", cse},
                {"translated_char_pass", char_ok},
                {"pass", mean_ok && char_ok}});
    ctx.finish("rn-check", batch.seed);
    return {mean_ok && char_ok};
}

struct EvolveOpts {
    int d = 1, n = 128;
    double a = 0.1, m = 1.0, t = 1.0;
    std::uint64_t seed = 1;
    std::string out = "evolve_out", config;
};

CommandResult run_evolve(const EvolveOpts& o, const json& cfg) {
    RunContext ctx = open_output(o.out, cfg);
    LatticeSpec spec(o.d, o.n, o.a);
    MassCovariance cov(o.m);
    SampleBatch init = sample(cov, spec, o.seed, 2);
    PhasePoint state{init.fields[0], init.fields[1]};
    const double h0 = hamiltonian(cov, state);
    PhasePoint evolved = evolve(cov, state, o.t);
    const double h1 = hamiltonian(cov, evolved);
    write_field(ctx.out / "phi_t.f64", evolved.phi);
    write_field(ctx.out / "pi_t.f64", evolved.pi);
    write_json(ctx.out / "evolve.json",
               {{"t", o.t},
                {"hamiltonian_initial", h0},
                {"hamiltonian_final", h1},
                {"relative_drift", std::abs(h1 - h0) / h0}});
    ctx.finish("evolve", o.seed);
    return {};
}

struct ConserveOpts {
    int d = 1, n = 128;
    double a = 0.1, m = 1.0, tmax = 100.0, tol = 1e-12;
    int steps = 20;
    std::uint64_t seed = 1;
    std::string out = "conserve_out", config;
};

CommandResult run_conserve(const ConserveOpts& o, const json& cfg) {
    RunContext ctx = open_output(o.out, cfg);
    LatticeSpec spec(o.d, o.n, o.a);
    MassCovariance cov(o.m);
    SampleBatch init = sample(cov, spec, o.seed, 4);
    PhasePoint s1{init.fields[0], init.fields[1]};
    PhasePoint s2{init.fields[2], init.fields[3]};

    const double h0 = hamiltonian(cov, s1);
    const double om0 = symplectic_form(s1, s2);
    const double e0 = std::pow(energy_norm(cov, s1.phi, +1), 2) +
                      std::pow(energy_norm(cov, s1.pi, -1), 2);

    std::ofstream csv(ctx.out / "conserve.csv");
    csv << "t,hamiltonian,hamiltonian_drift,symplectic,symplectic_drift,"
           "energy_norm_sq,energy_drift\n";
    double worst = 0.0;
    for (int i = 0; i <= o.steps; ++i) {
        const double t = o.tmax * i / o.steps;
        PhasePoint a1 = evolve(cov, s1, t);
        PhasePoint a2 = evolve(cov, s2, t);
        const double h = hamiltonian(cov, a1);
        const double om = symplectic_form(a1, a2);
        const double e = std::pow(energy_norm(cov, a1.phi, +1), 2) +
                         std::pow(energy_norm(cov, a1.pi, -1), 2);
        const double dh = std::abs(h - h0) / h0;
        const double dom = std::abs(om - om0) / std::abs(om0);
        const double de = std::abs(e - e0) / e0;
        worst = std::max({worst, dh, dom, de});
        csv << fmt17(t) << ',' << fmt17(h) << ',' << fmt17(dh) << ',' << fmt17(om)
            << ',' << fmt17(dom) << ',' << fmt17(e) << ',' << fmt17(de) << '\n';
    }
    const bool pass = worst <= o.tol;
    write_json(ctx.out / "conserve.json", {{"worst_drift", worst}, {"tolerance", o.tol},
                                           {"pass", pass}});
    ctx.finish("conserve", o.seed);
    return {pass};
}

struct CovmatOpts {
    int d = 1, J = 50, workers = 0;
    double m = 1.0, L = 1.0, tol = 1e-6;
    std::string out = "covmat_out", config;
};

CommandResult run_covmat(const CovmatOpts& o, const json& cfg) {
    RunContext ctx = open_output(o.out, cfg);
    QuadratureSpec quad;
    quad.tol = o.tol;
    CovMatrix M = build_cov_matrix(MassCovariance(o.m), ProbeFamily(o.m, o.L, o.d, o.J),
                                   quad, o.workers);
    write_cov_matrix(ctx.out / "covmat.bin", M);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.entries);
    write_json(ctx.out / "covmat.json",
               {{"lambda", M.lambda},
                {"min_eigenvalue", es.eigenvalues().minCoeff()},
                {"max_eigenvalue", es.eigenvalues().maxCoeff()},
                {"hs_offdiag_norm", hs_offdiag_norm(M)},
                {"hs_tail_witness", hs_tail_witness(M)}});
    ctx.finish("covmat", 0);
    return {};
}

struct LambdaOpts {
    int d = 1;
    double L = 1.0, tol = 1e-6;
    std::vector<double> masses{0.5, 1.0, 2.0};
    std::string out = "lambda_out", config;
};

CommandResult run_lambda(const LambdaOpts& o, const json& cfg) {
    RunContext ctx = open_output(o.out, cfg);
    QuadratureSpec quad;
    quad.tol = o.tol;
    std::ofstream csv(ctx.out / "lambda.csv");
    csv << "m,lambda\n";
    for (double m : o.masses)
        csv << fmt17(m) << ',' << fmt17(lambda_L(MassCovariance(m), o.L, o.d, quad)) << '\n';
    ctx.finish("lambda", 0);
    return {};
}

struct EnvelopeOpts {
    double rho = -1.0, eps = 1.0, m = 1.0, L = 1.0;
    int len = 10000, nmin = 100, trials = 1000;
    std::uint64_t seed = 1;
    std::string out = "envelope_out", config;
};

CommandResult run_envelope(const EnvelopeOpts& o, const json& cfg) {
    RunContext ctx = open_output(o.out, cfg);
    const double rho = o.rho > 0.0 ? o.rho : lambda_L(MassCovariance(o.m), o.L);
    EnvelopeParams p{rho, o.eps, o.nmin};

    auto draw = [&](int trial) {
        CounterRng rng(o.seed, static_cast<std::uint64_t>(trial));
        std::vector<double> x;
        x.reserve(o.len - 1);
        for (int n = 2; n <= o.len; ++n)
            x.push_back(std::sqrt(rho) * rng.normal(n));
        return x;
    };

    // per-n table for the first sequence
    {
        std::vector<double> x = draw(0);
        std::ofstream csv(ctx.out / "envelope.csv");
        csv << "n,bound,abs_x,violated\n";
        for (int n = 2; n <= o.len; ++n) {
            const double bound = std::sqrt(2.0 * (1.0 + o.eps) * rho * std::log(n));
            const double ax = std::abs(x[n - 2]);
            csv << n << ',' << fmt17(bound) << ',' << fmt17(ax) << ','
                << (ax >= bound ? 1 : 0) << '\n';
        }
    }

    int members = 0;
    for (int t = 0; t < o.trials; ++t)
        if (envelope_test(draw(t), p).member)
            ++members;
    const double frac = members / static_cast<double>(o.trials);
    const double expected = envelope_probability(p, o.nmin, o.len);
    const double se = std::sqrt(expected * (1.0 - expected) / o.trials);
    const bool pass = std::abs(frac - expected) <= std::max(3.0 * se, 1e-3);
    write_json(ctx.out / "envelope.json",
               {{"rho", rho},
                {"epsilon", o.eps},
                {"member_fraction", frac},
                {"expected_probability", expected},
                {"binomial_stderr", se},
                {"pass", pass}});
    ctx.finish("envelope", o.seed);
    return {pass};
}

struct DiscriminateOpts {
    int d = 1, J = 200, trials = 100;
    double m = 1.0, L = 1.0, tol = 1e-6;
    std::vector<double> candidates{0.5, 1.0};
    std::uint64_t seed = 1;
    std::string out = "discriminate_out", config;
};

CommandResult run_discriminate(const DiscriminateOpts& o, const json& cfg) {
    RunContext ctx = open_output(o.out, cfg);
    QuadratureSpec quad;
    quad.tol = o.tol;
    CovMatrix M = build_cov_matrix(MassCovariance(o.m), ProbeFamily(o.m, o.L, o.d, o.J), quad);
    auto seqs = sample_probe_sequence(M, o.seed, o.trials);

    int correct = 0;
    std::optional<MassVerdict> first;
    for (const auto& x : seqs) {
        MassVerdict v = discriminate_mass(x, o.candidates, o.L, o.d, quad);
        if (!first)
            first = v;
        if (v.best_mass == o.m)
            ++correct;
    }

    std::ofstream csv(ctx.out / "discriminate.csv");
    csv << "candidate_m,lambda,lambda_hat,z_score\n";
    for (std::size_t i = 0; i < o.candidates.size(); ++i)
        csv << fmt17(o.candidates[i]) << ',' << fmt17(first->candidate_lambdas[i]) << ','
            << fmt17(first->lambda_hat) << ',' << fmt17(first->z_score) << '\n';

    const double accuracy = correct / static_cast<double>(o.trials);
    write_json(ctx.out / "discriminate.json",
               {{"true_mass", o.m},
                {"trials", o.trials},
                {"correct", correct},
                {"accuracy", accuracy}});
    ctx.finish("discriminate", o.seed);
    return {};
}

struct MixingOpts {
    int d = 1, n = 2000;
    double a = 0.1, m = 1.0;
    std::vector<double> shifts{10.0, 30.0, 100.0};
    std::string out = "mixing_out", config;
};

CommandResult run_mixing(const MixingOpts& o, const json& cfg) {
    RunContext ctx = open_output(o.out, cfg);
    LatticeSpec spec(o.d, o.n, o.a);
    MassCovariance cov(o.m);
    const double box = spec.box_length();
    ScalarField f = make_bump(spec, 0.5 * box, 1.0 / o.m);
    ScalarField fp = make_bump(spec, 0.5 * box, 1.0 / o.m);
    MixingCurve curve = mixing_curve(cov, f, fp, o.shifts);

    std::ofstream csv(ctx.out / "mixing.csv");
    csv << "y,exponent,correlation_re,correlation_im,abs_diff_from_product\n";
    for (std::size_t i = 0; i < curve.shifts.size(); ++i)
        csv << fmt17(curve.shifts[i]) << ',' << fmt17(curve.exponents[i]) << ','
            << fmt17(curve.correlations[i].real()) << ','
            << fmt17(curve.correlations[i].imag()) << ','
            << fmt17(std::abs(curve.correlations[i] - curve.product)) << '\n';
    write_json(ctx.out / "mixing.json", {{"product_re", curve.product.real()},
                                         {"product_im", curve.product.imag()}});
    ctx.finish("mixing", 0);
    return {};
}

struct MinlosOpts {
    int d = 1, n = 256, count = 0;
    double a = 0.4, m = 1.0, alpha = 0.3, beta = 0.3;
    std::uint64_t seed = 1;
    std::string out = "minlos_out", config;
};

CommandResult run_minlos(const MinlosOpts& o, const json& cfg) {
    RunContext ctx = open_output(o.out, cfg);
    MassCovariance cov(o.m);
    MinlosParams p{o.alpha, o.beta};
    LatticeSpec coarse(o.d, o.n, o.a);
    LatticeSpec fine(o.d, 2 * o.n, o.a / 2.0); // same box, doubled resolution
    const double norm_coarse = expected_regularized_norm(cov, coarse, p);
    const double norm_fine = expected_regularized_norm(cov, fine, p);
    json report = {{"alpha", o.alpha},
                   {"beta", o.beta},
                   {"super_threshold", p.super_threshold(o.d)},
                   {"expected_norm_coarse", norm_coarse},
                   {"expected_norm_fine", norm_fine},
                   {"relative_change", (norm_fine - norm_coarse) / norm_coarse}};

    bool pass = true;
    if (o.count > 0) {
        SampleBatch batch = sample(cov, coarse, o.seed, o.count);
        std::vector<double> norms;
        norms.reserve(o.count);
        for (const ScalarField& phi : batch.fields) {
            ScalarField r = minlos_regularize(cov, phi, p);
            norms.push_back(pair(r, r));
        }
        double mean = 0.0;
        for (double v : norms)
            mean += v;
        mean /= norms.size();
        double var = 0.0;
        for (double v : norms)
            var += std::pow(v - mean, 2);
        const double se = std::sqrt(var / (norms.size() - 1.0) / norms.size());
        pass = std::abs(mean - norm_coarse) <= 3.0 * se;
        report["mc_mean"] = mean;
        report["mc_stderr"] = se;
        report["mc_pass"] = pass;
    }
    report["pass"] = pass;
    write_json(ctx.out / "minlos.json", report);
    ctx.finish("minlos", o.seed);
    return {pass};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian free-field laboratory"};
    app.require_subcommand(1);

    // Every subcommand takes --config (flat JSON, overridden by flags)
    // and writes its outputs plus a run manifest into --out.
    SampleOpts so;
    DiscriminateOpts diso;
    BatchOpts vco, rno;
    WeylOpts wo;
    EvolveOpts eo;
    ConserveOpts co;
    CovmatOpts cmo;
    LambdaOpts lo;
    EnvelopeOpts eno;
    MixingOpts mxo;
    MinlosOpts mno;

    auto* c_sample = app.add_subcommand("sample", "Draw a batch of fields");
    c_sample->add_option("--d", so.d);
    c_sample->add_option("--n", so.n);
    c_sample->add_option("--a", so.a);
    c_sample->add_option("--m", so.m);
    c_sample->add_option("--seed", so.seed);
    c_sample->add_option("--count", so.count);
    c_sample->add_option("--workers", so.workers);
    c_sample->add_option("--out", so.out);
    c_sample->add_option("--config", so.config);

    auto* c_vc = app.add_subcommand("verify-char", "Check MC characteristic vs closed form");
    c_vc->add_option("--batch", vco.batch)->required();
    c_vc->add_option("--out", vco.out);
    c_vc->add_option("--config", vco.config);

    auto* c_weyl = app.add_subcommand("weyl", "Compare the two Weyl expectation forms");
    c_weyl->add_option("--d", wo.d);
    c_weyl->add_option("--n", wo.n);
    c_weyl->add_option("--a", wo.a);
    c_weyl->add_option("--m", wo.m);
    c_weyl->add_option("--tol", wo.tol);
    c_weyl->add_option("--out", wo.out);
    c_weyl->add_option("--config", wo.config);

    auto* c_rn = app.add_subcommand("rn-check", "Radon-Nikodym mean-one and translation check");
    c_rn->add_option("--batch", rno.batch)->required();
    c_rn->add_option("--out", rno.out);
    c_rn->add_option("--config", rno.config);

    auto* c_evolve = app.add_subcommand("evolve", "Evolve a random phase point");
    c_evolve->add_option("--d", eo.d);
    c_evolve->add_option("--n", eo.n);
    c_evolve->add_option("--a", eo.a);
    c_evolve->add_option("--m", eo.m);
    c_evolve->add_option("--t", eo.t);
    c_evolve->add_option("--seed", eo.seed);
    c_evolve->add_option("--out", eo.out);
    c_evolve->add_option("--config", eo.config);

    auto* c_cons = app.add_subcommand("conserve", "Conservation sweep of the exact evolution");
    c_cons->add_option("--d", co.d);
    c_cons->add_option("--n", co.n);
    c_cons->add_option("--a", co.a);
    c_cons->add_option("--m", co.m);
    c_cons->add_option("--tmax", co.tmax);
    c_cons->add_option("--steps", co.steps);
    c_cons->add_option("--tol", co.tol);
    c_cons->add_option("--seed", co.seed);
    c_cons->add_option("--out", co.out);
    c_cons->add_option("--config", co.config);

    auto* c_cm = app.add_subcommand("covmat", "Probe covariance matrix and HS report");
    c_cm->add_option("--d", cmo.d);
    c_cm->add_option("--m", cmo.m);
    c_cm->add_option("--L", cmo.L);
    c_cm->add_option("--J", cmo.J);
    c_cm->add_option("--tol", cmo.tol);
    c_cm->add_option("--workers", cmo.workers);
    c_cm->add_option("--out", cmo.out);
    c_cm->add_option("--config", cmo.config);

    auto* c_lam = app.add_subcommand("lambda", "Cube-average variance per mass");
    c_lam->add_option("--d", lo.d);
    c_lam->add_option("--L", lo.L);
    c_lam->add_option("--tol", lo.tol);
    c_lam->add_option("--masses", lo.masses);
    c_lam->add_option("--out", lo.out);
    c_lam->add_option("--config", lo.config);

    auto* c_env = app.add_subcommand("envelope", "Envelope-law membership experiment");
    c_env->add_option("--rho", eno.rho);
    c_env->add_option("--eps", eno.eps);
    c_env->add_option("--m", eno.m);
    c_env->add_option("--L", eno.L);
    c_env->add_option("--len", eno.len);
    c_env->add_option("--nmin", eno.nmin);
    c_env->add_option("--trials", eno.trials);
    c_env->add_option("--seed", eno.seed);
    c_env->add_option("--out", eno.out);
    c_env->add_option("--config", eno.config);

    auto* c_dis = app.add_subcommand("discriminate", "Mass discrimination experiment");
    c_dis->add_option("--d", diso.d);
    c_dis->add_option("--m", diso.m);
    c_dis->add_option("--L", diso.L);
    c_dis->add_option("--J", diso.J);
    c_dis->add_option("--trials", diso.trials);
    c_dis->add_option("--tol", diso.tol);
    c_dis->add_option("--candidates", diso.candidates);
    c_dis->add_option("--seed", diso.seed);
    c_dis->add_option("--out", diso.out);
    c_dis->add_option("--config", diso.config);

    auto* c_mix = app.add_subcommand("mixing", "Translated-correlation decay curve");
    c_mix->add_option("--d", mxo.d);
    c_mix->add_option("--n", mxo.n);
    c_mix->add_option("--a", mxo.a);
    c_mix->add_option("--m", mxo.m);
    c_mix->add_option("--shifts", mxo.shifts);
    c_mix->add_option("--out", mxo.out);
    c_mix->add_option("--config", mxo.config);

    auto* c_min = app.add_subcommand("minlos", "Regularized-norm stability under refinement");
    c_min->add_option("--d", mno.d);
    c_min->add_option("--n", mno.n);
    c_min->add_option("--a", mno.a);
    c_min->add_option("--m", mno.m);
    c_min->add_option("--alpha", mno.alpha);
    c_min->add_option("--beta", mno.beta);
    c_min->add_option("--count", mno.count);
    c_min->add_option("--seed", mno.seed);
    c_min->add_option("--out", mno.out);
    c_min->add_option("--config", mno.config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        CommandResult result;
        if (*c_sample) {
            json cfg = load_config(so.config);
            merge(cfg, *c_sample, "d", so.d);
            merge(cfg, *c_sample, "n", so.n);
            merge(cfg, *c_sample, "a", so.a);
            merge(cfg, *c_sample, "m", so.m);
            merge(cfg, *c_sample, "seed", so.seed);
            merge(cfg, *c_sample, "count", so.count);
            merge(cfg, *c_sample, "workers", so.workers);
            merge(cfg, *c_sample, "out", so.out);
            result = run_sample(so, cfg);
        } else if (*c_vc) {
            json cfg = load_config(vco.config);
            merge(cfg, *c_vc, "batch", vco.batch);
            merge(cfg, *c_vc, "out", vco.out);
            result = run_verify_char(vco, cfg);
        } else if (*c_weyl) {
            json cfg = load_config(wo.config);
            merge(cfg, *c_weyl, "d", wo.d);
            merge(cfg, *c_weyl, "n", wo.n);
            merge(cfg, *c_weyl, "a", wo.a);
            merge(cfg, *c_weyl, "m", wo.m);
            merge(cfg, *c_weyl, "tol", wo.tol);
            merge(cfg, *c_weyl, "out", wo.out);
            result = run_weyl(wo, cfg);
        } else if (*c_rn) {
            json cfg = load_config(rno.config);
            merge(cfg, *c_rn, "batch", rno.batch);
            merge(cfg, *c_rn, "out", rno.out);
            result = run_rn_check(rno, cfg);
        } else if (*c_evolve) {
            json cfg = load_config(eo.config);
            merge(cfg, *c_evolve, "d", eo.d);
            merge(cfg, *c_evolve, "n", eo.n);
            merge(cfg, *c_evolve, "a", eo.a);
            merge(cfg, *c_evolve, "m", eo.m);
            merge(cfg, *c_evolve, "t", eo.t);
            merge(cfg, *c_evolve, "seed", eo.seed);
            merge(cfg, *c_evolve, "out", eo.out);
            result = run_evolve(eo, cfg);
        } else if (*c_cons) {
            json cfg = load_config(co.config);
            merge(cfg, *c_cons, "d", co.d);
            merge(cfg, *c_cons, "n", co.n);
            merge(cfg, *c_cons, "a", co.a);
            merge(cfg, *c_cons, "m", co.m);
            merge(cfg, *c_cons, "tmax", co.tmax);
            merge(cfg, *c_cons, "steps", co.steps);
            merge(cfg, *c_cons, "tol", co.tol);
            merge(cfg, *c_cons, "seed", co.seed);
            merge(cfg, *c_cons, "out", co.out);
            result = run_conserve(co, cfg);
        } else if (*c_cm) {
            json cfg = load_config(cmo.config);
            merge(cfg, *c_cm, "d", cmo.d);
            merge(cfg, *c_cm, "m", cmo.m);
            merge(cfg, *c_cm, "L", cmo.L);
            merge(cfg, *c_cm, "J", cmo.J);
            merge(cfg, *c_cm, "tol", cmo.tol);
            merge(cfg, *c_cm, "workers", cmo.workers);
            merge(cfg, *c_cm, "out", cmo.out);
            result = run_covmat(cmo, cfg);
        } else if (*c_lam) {
            json cfg = load_config(lo.config);
            merge(cfg, *c_lam, "d", lo.d);
            merge(cfg, *c_lam, "L", lo.L);
            merge(cfg, *c_lam, "tol", lo.tol);
            merge(cfg, *c_lam, "masses", lo.masses);
            merge(cfg, *c_lam, "out", lo.out);
            result = run_lambda(lo, cfg);
        } else if (*c_env) {
            json cfg = load_config(eno.config);
            merge(cfg, *c_env, "rho", eno.rho);
            merge(cfg, *c_env, "eps", eno.eps);
            merge(cfg, *c_env, "m", eno.m);
            merge(cfg, *c_env, "L", eno.L);
            merge(cfg, *c_env, "len", eno.len);
            merge(cfg, *c_env, "nmin", eno.nmin);
            merge(cfg, *c_env, "trials", eno.trials);
            merge(cfg, *c_env, "seed", eno.seed);
            merge(cfg, *c_env, "out", eno.out);
            result = run_envelope(eno, cfg);
        } else if (*c_dis) {
            json cfg = load_config(diso.config);
            merge(cfg, *c_dis, "d", diso.d);
            merge(cfg, *c_dis, "m", diso.m);
            merge(cfg, *c_dis, "L", diso.L);
            merge(cfg, *c_dis, "J", diso.J);
            merge(cfg, *c_dis, "trials", diso.trials);
            merge(cfg, *c_dis, "tol", diso.tol);
            merge(cfg, *c_dis, "candidates", diso.candidates);
            merge(cfg, *c_dis, "seed", diso.seed);
            merge(cfg, *c_dis, "out", diso.out);
            result = run_discriminate(diso, cfg);
        } else if (*c_mix) {
            json cfg = load_config(mxo.config);
            merge(cfg, *c_mix, "d", mxo.d);
            merge(cfg, *c_mix, "n", mxo.n);
            merge(cfg, *c_mix, "a", mxo.a);
            merge(cfg, *c_mix, "m", mxo.m);
            merge(cfg, *c_mix, "shifts", mxo.shifts);
            merge(cfg, *c_mix, "out", mxo.out);
            result = run_mixing(mxo, cfg);
        } else if (*c_min) {
            json cfg = load_config(mno.config);
            merge(cfg, *c_min, "d", mno.d);
            merge(cfg, *c_min, "n", mno.n);
            merge(cfg, *c_min, "a", mno.a);
            merge(cfg, *c_min, "m", mno.m);
            merge(cfg, *c_min, "alpha", mno.alpha);
            merge(cfg, *c_min, "beta", mno.beta);
            merge(cfg, *c_min, "count", mno.count);
            merge(cfg, *c_min, "seed", mno.seed);
            merge(cfg, *c_min, "out", mno.out);
            result = run_minlos(mno, cfg);
        }
        return result.checks_passed ? kExitOk : kExitCheckFailed;
    } catch (const CLI::Error& e) {
        std::cerr << json({{"error", "config"}, {"message", e.what()}}).dump() << '\n';
        return kExitConfig;
    } catch (const QuadratureNotConverged& e) {
        std::cerr << json({{"error", "numerical"}, {"message", e.what()}}).dump() << '\n';
        return kExitNumerical;
    } catch (const NotPositiveDefinite& e) {
        std::cerr << json({{"error", "numerical"}, {"message", e.what()}}).dump() << '\n';
        return kExitNumerical;
    } catch (const FactorizationFailed& e) {
        std::cerr << json({{"error", "numerical"}, {"message", e.what()}}).dump() << '\n';
        return kExitNumerical;
    } catch (const NonHermitianInput& e) {
        std::cerr << json({{"error", "numerical"}, {"message", e.what()}}).dump() << '\n';
        return kExitNumerical;
    } catch (const Degenerate& e) {
        std::cerr << json({{"error", "numerical"}, {"message", e.what()}}).dump() << '\n';
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << json({{"error", "config"}, {"message", e.what()}}).dump() << '\n';
        return kExitConfig;
    } catch (const json::exception& e) {
        std::cerr << json({{"error", "config"}, {"message", e.what()}}).dump() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << json({{"error", "internal"}, {"message", e.what()}}).dump() << '\n';
        return kExitNumerical;
    }
}
