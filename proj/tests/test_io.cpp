#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "mfiv/io.hpp"
#include "mfiv/simulate.hpp"

using namespace mfiv;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name)
        : path((std::filesystem::temp_directory_path() / name).string()) {}
    ~TempFile() { std::remove(path.c_str()); }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    out << text;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("format_double round-trips") {
    for (double x : {0.0, 1.0, -2.5, 1e-7, 3.141592653589793, 2.16e-3, -10.0 * 2.718281828}) {
        const std::string s = format_double(x);
        CHECK(std::stod(s) == x);
    }
}

TEST_CASE("atomic write leaves no temp file") {
    TempFile f("mfiv_atomic_test.txt");
    write_file_atomic(f.path, "hello\n");
    CHECK(read_text(f.path) == "hello\n");
    CHECK_FALSE(std::filesystem::exists(f.path + ".tmp"));
}

TEST_CASE("simulated sample round-trips through CSV bit-exactly") {
    DgpConfig cfg;
    cfg.t_sample = 7;
    cfg.m_sim = 5;
    cfg.seed = 99;
    const auto sample = simulate_sample(cfg);

    TempFile f("mfiv_roundtrip.csv");
    export_sample_csv(f.path, sample);

    SchemaConfig schema;
    schema.grid_a = 0.0;
    schema.grid_b = 1.0;
    const auto loaded = load_csv(f.path, schema);
    CHECK(loaded.y == sample.y);
    CHECK(loaded.w == sample.w);
    CHECK((loaded.z - sample.z).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(loaded.grid == sample.grid);
    CHECK(loaded.dropped_rows == 0);
}

TEST_CASE("default empirical grid is half-hourly on [0, 24]") {
    TempFile f("mfiv_empirical.csv");
    std::string text = "date,y,w";
    for (int j = 1; j <= 48; ++j) text += ",z_" + std::to_string(j);
    text += "\n";
    for (int t = 0; t < 3; ++t) {
        text += "2020-01-0" + std::to_string(t + 1) + ",1.5,20.0";
        for (int j = 1; j <= 48; ++j) text += "," + std::to_string(j * 0.1);
        text += "\n";
    }
    write_text(f.path, text);
    const auto data = load_csv(f.path, SchemaConfig{});
    CHECK(data.grid.size() == 48);
    CHECK(data.grid.a() == 0.0);
    CHECK(data.grid.b() == 24.0);
    CHECK(data.grid.weight(0) == doctest::Approx(0.5));
    CHECK(data.grid.point(0) == doctest::Approx(0.5));
    CHECK(data.grid.point(47) == doctest::Approx(24.0));
    CHECK(data.dates.size() == 3);
}

TEST_CASE("missing-cell policies") {
    const std::string header = "date,y,w,z_1,z_2\n";
    const std::string good = "d1,1.0,2.0,3.0,4.0\n";
    const std::string missing = "d2,1.0,,3.0,4.0\n";

    TempFile f("mfiv_missing.csv");
    write_text(f.path, header + good + missing + good);

    SchemaConfig reject;
    reject.grid_a = 0.0;
    reject.grid_b = 1.0;
    CHECK_THROWS(load_csv(f.path, reject));

    SchemaConfig drop = reject;
    drop.missing = MissingPolicy::DropRow;
    const auto data = load_csv(f.path, drop);
    CHECK(data.y.size() == 2);
    CHECK(data.dropped_rows == 1);
}

TEST_CASE("malformed cells and ragged rows are reported with coordinates") {
    TempFile f("mfiv_malformed.csv");
    write_text(f.path, "date,y,w,z_1\nd1,abc,2.0,3.0\n");
    SchemaConfig schema;
    schema.grid_a = 0.0;
    schema.grid_b = 1.0;
    CHECK_THROWS_WITH_AS(load_csv(f.path, schema),
                         doctest::Contains("row 2"), std::runtime_error);

    write_text(f.path, "date,y,w,z_1\nd1,1.0,2.0\n");
    CHECK_THROWS_WITH_AS(load_csv(f.path, schema), doctest::Contains("ragged"),
                         std::runtime_error);
}

TEST_CASE("non-positive value under log transform rejected with coordinates") {
    TempFile f("mfiv_log.csv");
    write_text(f.path, "date,y,w,z_1\nd1,1.0,2.0,0.0\n");
    SchemaConfig schema;
    schema.grid_a = 0.0;
    schema.grid_b = 1.0;
    schema.log_z = true;
    CHECK_THROWS_WITH_AS(load_csv(f.path, schema), doctest::Contains("z_1"),
                         std::runtime_error);

    schema.log_z = false;
    schema.log_y = true;
    write_text(f.path, "date,y,w,z_1\nd1,-1.0,2.0,3.0\n");
    CHECK_THROWS_WITH_AS(load_csv(f.path, schema), doctest::Contains("log"),
                         std::runtime_error);
}

TEST_CASE("header validation") {
    TempFile f("mfiv_header.csv");
    write_text(f.path, "time,value\n1,2\n");
    CHECK_THROWS(load_csv(f.path, SchemaConfig{}));
    CHECK_THROWS(load_csv("/nonexistent/path.csv", SchemaConfig{}));
}
