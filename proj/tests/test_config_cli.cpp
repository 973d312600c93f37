#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "sairs/io/cli.hpp"
#include "sairs/io/json_io.hpp"
#include "sairs/io/reference_values.hpp"

using namespace sairs;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("sairs_test_" + std::to_string(std::rand()) + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
};

}  // namespace

TEST_CASE("parse_config: minimal config gets the reference defaults") {
    const ScenarioConfig config = parse_config(R"({"topology":{"kind":"ring","n":9}})");
    CHECK(config.kind == TopologyKind::Ring);
    CHECK(config.n == 9);
    CHECK(config.beta_a_intra == 0.8);
    CHECK(config.beta_a_inter == 0.4);
    CHECK(config.beta_i_intra == 0.95);
    CHECK(config.beta_i_inter == 0.475);
    CHECK(config.mu[0] == doctest::Approx(1.0 / 25550.0));
    CHECK(config.nu[0] == 0.01);
    CHECK(config.gamma == 0.02);
    CHECK(config.delta_a == 0.1);
    CHECK(config.delta_i == 0.51);
    CHECK(config.alpha == 0.8);
    CHECK(config.seed_fraction == 0.01);
    CHECK(config.event_threshold == 1e-5);
    CHECK(config.integrator.sample_interval == 0.005);
}

TEST_CASE("parse_config: field-level rejections") {
    SUBCASE("negative rate names the field") {
        try {
            parse_config(R"({"topology":{"kind":"ring","n":5},"rates":{"gamma":-0.1}})");
            FAIL("expected ConfigError");
        } catch (const SairsError& err) {
            CHECK(err.code() == Errc::ConfigError);
            CHECK(std::string(err.what()).find("gamma") != std::string::npos);
        }
    }
    SUBCASE("zero inter rate is rejected for multi-group topologies") {
        try {
            parse_config(
                R"({"topology":{"kind":"ring","n":5},
                    "rates":{"beta_a_inter":0.0,"beta_i_inter":0.0}})");
            FAIL("expected irreducibility rejection");
        } catch (const SairsError& err) {
            CHECK(err.code() == Errc::ReducibleMatrix);
        }
    }
    SUBCASE("malformed JSON") {
        CHECK_THROWS_AS(parse_config("{not json"), SairsError);
    }
    SUBCASE("unknown fields are named, not ignored") {
        try {
            parse_config(R"({"topology":{"kind":"ring","n":5},"rates":{"gama":0.02}})");
            FAIL("expected ConfigError");
        } catch (const SairsError& err) {
            CHECK(err.code() == Errc::ConfigError);
            CHECK(std::string(err.what()).find("gama") != std::string::npos);
        }
        CHECK_THROWS_AS(parse_config(R"({"topolgy":{"kind":"ring"}})"), SairsError);
    }
    SUBCASE("unknown topology kind") {
        CHECK_THROWS_AS(parse_config(R"({"topology":{"kind":"torus","n":5}})"), SairsError);
    }
    SUBCASE("wrongly typed fields surface as config errors") {
        try {
            parse_config(R"({"topology":{"kind":"ring","n":5},"t_end":"later"})");
            FAIL("expected ConfigError");
        } catch (const SairsError& err) {
            CHECK(err.code() == Errc::ConfigError);
        }
    }
}

TEST_CASE("config round-trips through JSON") {
    ScenarioConfig config = parse_config(
        R"({"topology":{"kind":"cycle_tree"},
            "rates":{"gamma":0.04,"nu":[0.01,0.02,0.01,0.01,0.01,0.01,0.01,0.01,0.03]},
            "initial":{"seed_group":3,"seed_fraction":0.05},
            "t_end":25.5,
            "integrator":{"rtol":1e-9,"sample_step":0.01}})");
    const ScenarioConfig rebuilt = parse_config(scenario_to_json(config).dump());
    CHECK(scenario_to_json(rebuilt) == scenario_to_json(config));
    CHECK(rebuilt.nu.size() == 9);
    CHECK(rebuilt.seed_group == 3);
    CHECK(rebuilt.t_end == 25.5);
    CHECK(rebuilt.integrator.rtol == 1e-9);
}

TEST_CASE("explicit transmission matrices override the intra/inter construction") {
    const ScenarioConfig config = parse_config(
        R"({"topology":{"kind":"custom","n":2,"edges":[[1,2]]},
            "rates":{"beta_a_matrix":[[0.7,0.2],[0.3,0.9]],
                     "beta_i_matrix":[[0.8,0.25],[0.35,1.0]]}})");
    const ModelParams params = config.build_params();
    CHECK(params.beta_a(0, 1) == 0.2);
    CHECK(params.beta_a(1, 0) == 0.3);
    CHECK(params.beta_i(1, 1) == 1.0);
    const ScenarioConfig rebuilt = parse_config(scenario_to_json(config).dump());
    CHECK(scenario_to_json(rebuilt) == scenario_to_json(config));

    // explicit matrices still go through the model checks
    CHECK_THROWS_AS(parse_config(
                        R"({"topology":{"kind":"custom","n":2,"edges":[[1,2]]},
                            "rates":{"beta_a_matrix":[[0.7,0.0],[0.0,0.9]],
                                     "beta_i_matrix":[[0.8,0.0],[0.0,1.0]]}})"),
                    SairsError);
}

TEST_CASE("topology JSON uses 1-based edge lists") {
    const NetworkTopology topo = make_topology(TopologyKind::CycleTree, 9);
    const Json j = topology_to_json(topo);
    CHECK(j["n"] == 9);
    CHECK(j["edges"].size() == 9);
    const NetworkTopology rebuilt = topology_from_json(j);
    CHECK((rebuilt.adjacency - topo.adjacency).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("run_command: r0 writes the report with bounds and both radii") {
    TempDir tmp;
    cli::CommandRequest request;
    request.command = cli::Command::R0;
    request.config = R"({"topology":{"kind":"star","n":9}})";
    request.out_dir = tmp.path.string();
    request.gamma_variant = "calibrated";
    CHECK(cli::run_command(request) == 0);

    const Json report = Json::parse(slurp(tmp.path / "r0.json"));
    CHECK(report["r0"].get<double>() == doctest::Approx(4.915).epsilon(1e-3));
    CHECK(report["bounds"][0].get<double>() <= report["r0"].get<double>());
    CHECK(report["r0"].get<double>() <= report["bounds"][1].get<double>());
    CHECK(report["rho_abar"].get<double>() == doctest::Approx(3.8284).epsilon(1e-4));
    CHECK(report["rho_a"].get<double>() == doctest::Approx(2.8284).epsilon(1e-4));
}

TEST_CASE("run_command: simulate writes trajectory.csv with the pinned header") {
    TempDir tmp;
    cli::CommandRequest request;
    request.command = cli::Command::Simulate;
    request.config = R"({"topology":{"kind":"ring","n":3},"t_end":2.0,
                         "integrator":{"sample_step":0.1}})";
    request.out_dir = tmp.path.string();
    CHECK(cli::run_command(request) == 0);

    const std::string csv = slurp(tmp.path / "trajectory.csv");
    CHECK(csv.rfind("t,S_1,A_1,I_1,R_1,S_2,A_2,I_2,R_2,S_3,A_3,I_3,R_3\n", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(fs::exists(tmp.path / "events.json"));
}

TEST_CASE("run_command: stability regime on a subcritical config") {
    TempDir tmp;
    cli::CommandRequest request;
    request.command = cli::Command::Stability;
    request.config = R"({"topology":{"kind":"ring","n":5},
                         "rates":{"beta_a_intra":0.16,"beta_a_inter":0.08,
                                  "beta_i_intra":0.19,"beta_i_inter":0.095}})";
    request.out_dir = tmp.path.string();
    CHECK(cli::run_command(request) == 0);
    const Json verdict = Json::parse(slurp(tmp.path / "stability.json"));
    CHECK(verdict["regime"] == "DFE_GAS");
    CHECK(verdict["r0"].get<double>() < 1.0);
}

TEST_CASE("run_command: equilibrium JSON carries per-group values") {
    TempDir tmp;
    cli::CommandRequest request;
    request.command = cli::Command::Equilibrium;
    request.config = R"({"topology":{"kind":"ring","n":9}})";
    request.out_dir = tmp.path.string();
    CHECK(cli::run_command(request) == 0);
    const Json report = Json::parse(slurp(tmp.path / "equilibrium.json"));
    CHECK(report["kind"] == "ENDEMIC");
    CHECK(report["groups"].size() == 9);
    CHECK(report["residual"].get<double>() < 1e-10);
    const double s = report["groups"][0]["s"].get<double>();
    const double a = report["groups"][0]["a"].get<double>();
    const double i = report["groups"][0]["i"].get<double>();
    const double r = report["groups"][0]["r"].get<double>();
    CHECK(s + a + i + r == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("run_command: validate returns nonzero with an error JSON on bad input") {
    cli::CommandRequest request;
    request.command = cli::Command::Validate;
    request.config = R"({"topology":{"kind":"ring","n":5},"rates":{"gamma":-1}})";
    CHECK(cli::run_command(request) != 0);

    request.config = R"({"topology":{"kind":"ring","n":9}})";
    CHECK(cli::run_command(request) == 0);
}

TEST_CASE("run_command: missing config file is an IO error, not a crash") {
    cli::CommandRequest request;
    request.command = cli::Command::R0;
    request.config = "/nonexistent/config.json";
    CHECK(cli::run_command(request) != 0);
}

TEST_CASE("run_command: reproduce emits eight scenario directories with the full artifact set") {
    TempDir tmp;
    cli::CommandRequest request;
    request.command = cli::Command::Reproduce;
    request.out_dir = tmp.path.string();
    request.fixed_step = 0.02;  // coarser than the default override; faster for the test
    CHECK(cli::run_command(request) == 0);

    // hermetic: a rerun produces byte-identical artifacts
    TempDir rerun_tmp;
    cli::CommandRequest rerun = request;
    rerun.out_dir = rerun_tmp.path.string();
    CHECK(cli::run_command(rerun) == 0);
    for (const char* name : {"trajectory.csv", "tables.csv", "totals.csv"}) {
        CHECK(slurp(tmp.path / "ring_gamma_0.04" / name) ==
              slurp(rerun_tmp.path / "ring_gamma_0.04" / name));
    }

    int directories = 0;
    for (const char* topology : {"cycle_tree", "star", "ring", "line"}) {
        for (const char* gamma : {"0.02", "0.04"}) {
            const fs::path dir = tmp.path / (std::string(topology) + "_gamma_" + gamma);
            CAPTURE(dir.string());
            CHECK(fs::exists(dir / "r0.json"));
            CHECK(fs::exists(dir / "trajectory.csv"));
            CHECK(fs::exists(dir / "tables.csv"));
            CHECK(fs::exists(dir / "totals.csv"));
            ++directories;
        }
    }
    CHECK(directories == 8);

    const Json report = Json::parse(slurp(tmp.path / "reproduce_report.json"));
    CHECK(report["scenarios"].size() == 8);
    // calibrated-gamma scenarios sit within a hundredth of the published r0
    for (const Json& entry : report["scenarios"]) {
        if (entry["gamma"].get<double>() == kGammaCalibrated) {
            CHECK(std::abs(entry["r0_delta"].get<double>()) <= 0.01);
        } else {
            CHECK(entry["r0_delta"].get<double>() < -0.5);  // the documented mismatch
        }
    }

    // plot-data contract: single header row, numeric rows, LF endings
    const std::string totals = slurp(tmp.path / "ring_gamma_0.04" / "totals.csv");
    CHECK(totals.rfind("t,sum_A,sum_I\n", 0) == 0);
    CHECK(totals.find('\r') == std::string::npos);
}

TEST_CASE("gamma variant constants") {
    CHECK(kGammaAsPrinted == 0.02);
    CHECK(kGammaCalibrated == 0.04);
    const TopologyReference& star = reference_for(TopologyKind::Star);
    CHECK(star.r0_headline == 4.91);
    CHECK(star.i_rows[1].peak_magnitude == 0.2915);
}
