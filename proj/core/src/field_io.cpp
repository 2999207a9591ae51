#include "freefield/field_io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

namespace freefield {

using nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "field persistence assumes a little-endian host");

void write_field(const std::filesystem::path& path, const ScalarField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("write_field: cannot open " + path.string());
    json header = {{"d", f.spec.d},
                   {"n", f.spec.n},
                   {"a", f.spec.a},
                   {"dtype", "f64le"},
                   {"layout", "row-major"}};
    out << header.dump() << '\n';
    out.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!out)
        throw Error("write_field: write failed for " + path.string());
}

ScalarField read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("read_field: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line))
        throw Error("read_field: missing header in " + path.string());
    const json header = json::parse(line);
    if (header.value("dtype", "") != "f64le" || header.value("layout", "") != "row-major")
        throw Error("read_field: unsupported encoding in " + path.string());
    LatticeSpec spec(header.at("d").get<int>(), header.at("n").get<int>(),
                     header.at("a").get<double>());
    std::vector<double> values(spec.sites());
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (in.gcount() != static_cast<std::streamsize>(values.size() * sizeof(double)))
        throw Error("read_field: payload shorter than n^d in " + path.string());
    return {spec, std::move(values)};
}

namespace {

std::string field_name(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "field_%05d.f64", index);
    return buf;
}

} // namespace

void write_batch(const std::filesystem::path& dir, const SampleBatch& batch) {
    std::filesystem::create_directories(dir);
    json manifest = {{"seed", batch.seed},
                     {"count", batch.fields.size()},
                     {"m", batch.cov.m},
                     {"lattice", {{"d", batch.spec.d}, {"n", batch.spec.n}, {"a", batch.spec.a}}}};
    std::ofstream mf(dir / "manifest.json");
    mf << manifest.dump(2) << '\n';
    for (std::size_t i = 0; i < batch.fields.size(); ++i)
        write_field(dir / field_name(static_cast<int>(i)), batch.fields[i]);
}

SampleBatch read_batch(const std::filesystem::path& dir) {
    std::ifstream mf(dir / "manifest.json");
    if (!mf)
        throw Error("read_batch: missing manifest in " + dir.string());
    json manifest;
    mf >> manifest;
    const auto lat = manifest.at("lattice");
    SampleBatch batch{MassCovariance(manifest.at("m").get<double>()),
                      LatticeSpec(lat.at("d").get<int>(), lat.at("n").get<int>(),
                                  lat.at("a").get<double>()),
                      manifest.at("seed").get<std::uint64_t>(),
                      {}};
    const int count = manifest.at("count").get<int>();
    batch.fields.reserve(count);
    for (int i = 0; i < count; ++i) {
        ScalarField f = read_field(dir / field_name(i));
        check_same_spec(f.spec, batch.spec);
        batch.fields.push_back(std::move(f));
    }
    return batch;
}

void write_cov_matrix(const std::filesystem::path& path, const CovMatrix& M) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("write_cov_matrix: cannot open " + path.string());
    json header = {{"m", M.family.m},
                   {"L", M.family.L},
                   {"d", M.family.d},
                   {"J", M.family.J},
                   {"quadrature_tol", M.quadrature_tol}};
    out << header.dump() << '\n';
    // Eigen stores column-major; emit row-major as documented
    for (int j = 0; j < M.family.J; ++j)
        for (int l = 0; l < M.family.J; ++l) {
            const double v = M.entries(j, l);
            out.write(reinterpret_cast<const char*>(&v), sizeof(double));
        }
    if (!out)
        throw Error("write_cov_matrix: write failed for " + path.string());
}

CovMatrix read_cov_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("read_cov_matrix: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line))
        throw Error("read_cov_matrix: missing header in " + path.string());
    const json header = json::parse(line);
    ProbeFamily fam(header.at("m").get<double>(), header.at("L").get<double>(),
                    header.at("d").get<int>(), header.at("J").get<int>());
    Eigen::MatrixXd entries(fam.J, fam.J);
    for (int j = 0; j < fam.J; ++j)
        for (int l = 0; l < fam.J; ++l) {
            double v;
            in.read(reinterpret_cast<char*>(&v), sizeof(double));
            entries(j, l) = v;
        }
    if (!in)
        throw Error("read_cov_matrix: payload shorter than J^2 in " + path.string());
    return CovMatrix{fam, std::move(entries), entries.size() ? entries(0, 0) : 0.0,
                     header.at("quadrature_tol").get<double>()};
}

} // namespace freefield
