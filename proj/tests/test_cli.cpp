#include "lgsim/run.hpp"

#include "lgsim/output.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace lgsim;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("lgsim_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> lines_of(const std::string& contents) {
    std::vector<std::string> lines;
    size_t pos = 0;
    while (pos < contents.size()) {
        size_t end = contents.find("\r\n", pos);
        if (end == std::string::npos) break;
        lines.push_back(contents.substr(pos, end - pos));
        pos = end + 2;
    }
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

TEST_CASE("sweep command writes the fixed schema and hits K = 1.5") {
    fs::path dir = make_temp_dir("sweep");
    RunSpec spec;
    spec.command = Command::sweep;
    spec.engine = CliEngine::separate;
    spec.points = 2;
    spec.theta_min = 0.0;
    spec.theta_max = 0.5235987755982988;  // pi/6
    spec.output_path = (dir / "out.csv").string();

    REQUIRE(run(spec) == kExitOk);
    const std::string contents = slurp(dir / "out.csv");
    auto lines = lines_of(contents);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "theta,c12,c23,c13,k,engine");
    auto last = split_csv(lines[2]);
    REQUIRE(last.size() == 6);
    CHECK(std::stod(last[4]) == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(last[5] == "separate");
}

TEST_CASE("identical specs produce byte-identical CSV") {
    fs::path dir = make_temp_dir("determinism");
    RunSpec spec;
    spec.command = Command::sweep;
    spec.engine = CliEngine::simultaneous;
    spec.points = 40;
    spec.theta_min = 0.0;
    spec.theta_max = 6.0;
    spec.output_path = (dir / "a.csv").string();
    REQUIRE(run(spec) == kExitOk);
    spec.output_path = (dir / "b.csv").string();
    REQUIRE(run(spec) == kExitOk);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
}

TEST_CASE("simultaneous sweep over 1000 points never exceeds the bound") {
    fs::path dir = make_temp_dir("simbound");
    RunSpec spec;
    spec.command = Command::sweep;
    spec.engine = CliEngine::simultaneous;
    spec.points = 1000;
    spec.theta_min = 0.0;
    spec.theta_max = 6.283185307179586;
    spec.output_path = (dir / "sim.csv").string();
    REQUIRE(run(spec) == kExitOk);

    auto lines = lines_of(slurp(dir / "sim.csv"));
    REQUIRE(lines.size() == 1001);
    double max_k = -10.0;
    for (size_t i = 1; i < lines.size(); ++i) {
        max_k = std::max(max_k, std::stod(split_csv(lines[i])[4]));
    }
    CHECK(max_k <= 1.0 + 1e-9);
}

TEST_CASE("compare interleaves one row per engine at each theta") {
    fs::path dir = make_temp_dir("compare");
    RunSpec spec;
    spec.command = Command::compare;
    spec.points = 5;
    spec.theta_min = 0.0;
    spec.theta_max = 1.0;
    spec.output_path = (dir / "cmp.csv").string();
    REQUIRE(run(spec) == kExitOk);

    auto lines = lines_of(slurp(dir / "cmp.csv"));
    REQUIRE(lines.size() == 1 + 2 * 5);
    for (size_t i = 1; i < lines.size(); ++i) {
        auto fields = split_csv(lines[i]);
        REQUIRE(fields.size() == 6);
        CHECK(fields[5] == (i % 2 == 1 ? "separate" : "simultaneous"));
    }
    // Paired rows share their theta.
    CHECK(split_csv(lines[1])[0] == split_csv(lines[2])[0]);
}

TEST_CASE("classical engine sweeps stay within the bound") {
    fs::path dir = make_temp_dir("classical");
    RunSpec spec;
    spec.command = Command::sweep;
    spec.engine = CliEngine::classical;
    spec.points = 50;
    spec.theta_min = 0.0;
    spec.theta_max = 6.28;
    spec.output_path = (dir / "cl.csv").string();
    REQUIRE(run(spec) == kExitOk);
    auto lines = lines_of(slurp(dir / "cl.csv"));
    REQUIRE(lines.size() == 51);
    for (size_t i = 1; i < lines.size(); ++i) {
        CHECK(std::stod(split_csv(lines[i])[4]) <= 1.0 + 1e-12);
    }
}

TEST_CASE("coin command emits constant observer columns") {
    fs::path dir = make_temp_dir("coin");
    RunSpec spec;
    spec.command = Command::coin;
    spec.coin_steps = 3;
    spec.output_path = (dir / "coin.csv").string();
    REQUIRE(run(spec) == kExitOk);

    auto lines = lines_of(slurp(dir / "coin.csv"));
    REQUIRE(lines.size() == 4);
    for (size_t i = 1; i < lines.size(); ++i) {
        auto fields = split_csv(lines[i]);
        REQUIRE(fields.size() == 8);
        CHECK(fields[3] == "0.5");
        CHECK(fields[4] == "0.5");
        CHECK(fields[6] == "0.5");
        CHECK(fields[7] == "0.5");
    }
}

TEST_CASE("invasiveness command reports three inputs") {
    fs::path dir = make_temp_dir("invasiveness");
    RunSpec spec;
    spec.command = Command::invasiveness;
    spec.theta = 0.7;
    spec.output_path = (dir / "inv.csv").string();
    REQUIRE(run(spec) == kExitOk);

    auto lines = lines_of(slurp(dir / "inv.csv"));
    REQUIRE(lines.size() == 4);
    auto zero = split_csv(lines[1]);
    auto one = split_csv(lines[2]);
    auto mixed = split_csv(lines[3]);
    // Displacement columns are dx,dy,dz at indices 8..10.
    for (int col = 8; col <= 10; ++col) {
        CHECK(std::stod(zero[col]) + std::stod(one[col]) ==
              doctest::Approx(0.0).epsilon(1e-9));
        CHECK(std::stod(mixed[col]) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("ensemble command computes and flags epsilon at the defaults") {
    fs::path dir = make_temp_dir("ensemble");
    RunSpec spec;
    spec.command = Command::ensemble;
    spec.output_path = (dir / "ens.csv").string();
    REQUIRE(run(spec) == kExitOk);

    const std::string contents = slurp(dir / "ens.csv");
    CHECK(contents.find("epsilon_below_1e-7,false") != std::string::npos);
    CHECK(contents.find("fair_sampling_distributions_differ,true") !=
          std::string::npos);

    // Proton moment at 11.7 T and 300 K sits near 2e-5, far above 1e-7.
    const double eps = thermal_epsilon(ThermalParams{});
    CHECK(eps == doctest::Approx(1.9923e-5).epsilon(1e-3));
}

TEST_CASE("svg output draws one polyline per series") {
    fs::path dir = make_temp_dir("svg");
    RunSpec spec;
    spec.command = Command::compare;
    spec.points = 20;
    spec.theta_min = 0.0;
    spec.theta_max = 3.14;
    spec.format = OutputFormat::both;
    spec.output_path = (dir / "cmp.csv").string();
    REQUIRE(run(spec) == kExitOk);
    REQUIRE(fs::exists(dir / "cmp.svg"));
    const std::string svg = slurp(dir / "cmp.svg");
    CHECK(std::count(svg.begin(), svg.end(), '\n') > 5);
    size_t count = 0, pos = 0;
    while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
        ++count;
        pos += 9;
    }
    CHECK(count == 2);
}

TEST_CASE("bad specs exit 2, unwritable paths exit 3") {
    RunSpec spec;
    spec.command = Command::sweep;
    spec.points = 1;
    spec.output_path = "/tmp/lgsim_unused.csv";
    CHECK(run(spec) == kExitBadSpec);

    spec.points = 10;
    spec.theta_min = 2.0;
    spec.theta_max = 1.0;
    CHECK(run(spec) == kExitBadSpec);

    spec.theta_min = 0.0;
    spec.theta_max = 1.0;
    spec.output_path = "/nonexistent_dir_lgsim/out.csv";
    CHECK(run(spec) == kExitIoError);

    RunSpec coin_spec;
    coin_spec.command = Command::coin;
    coin_spec.coin_steps = 0;
    coin_spec.output_path = "/tmp/lgsim_unused.csv";
    CHECK(run(coin_spec) == kExitBadSpec);

    RunSpec shots_spec;
    shots_spec.command = Command::sweep;
    shots_spec.engine = CliEngine::simultaneous;
    shots_spec.shots = 100;
    shots_spec.output_path = "/tmp/lgsim_unused.csv";
    CHECK(run(shots_spec) == kExitBadSpec);
}

TEST_CASE("shot-sampling mode is deterministic for a fixed seed") {
    fs::path dir = make_temp_dir("shots");
    RunSpec spec;
    spec.command = Command::sweep;
    spec.engine = CliEngine::separate;
    spec.points = 4;
    spec.theta_min = 0.0;
    spec.theta_max = 1.2;
    spec.shots = 2000;
    spec.seed = 42;
    spec.output_path = (dir / "s1.csv").string();
    REQUIRE(run(spec) == kExitOk);
    spec.output_path = (dir / "s2.csv").string();
    REQUIRE(run(spec) == kExitOk);
    CHECK(slurp(dir / "s1.csv") == slurp(dir / "s2.csv"));
}

TEST_CASE("LGSIM_OUTPUT_DIR redirects relative paths") {
    fs::path dir = make_temp_dir("envdir");
    setenv("LGSIM_OUTPUT_DIR", dir.c_str(), 1);
    RunSpec spec;
    spec.command = Command::coin;
    spec.coin_steps = 1;
    spec.output_path = "env_coin.csv";
    const int status = run(spec);
    unsetenv("LGSIM_OUTPUT_DIR");
    REQUIRE(status == kExitOk);
    CHECK(fs::exists(dir / "env_coin.csv"));

    // Absolute paths are left alone.
    setenv("LGSIM_OUTPUT_DIR", "/nonexistent_dir_lgsim", 1);
    spec.output_path = (dir / "abs_coin.csv").string();
    const int abs_status = run(spec);
    unsetenv("LGSIM_OUTPUT_DIR");
    REQUIRE(abs_status == kExitOk);
    CHECK(fs::exists(dir / "abs_coin.csv"));
}
