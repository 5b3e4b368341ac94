#include <catch_amalgamated.hpp>

#include "rds/config.hpp"

#include <random>

using namespace rds;
using namespace rds::cli;

TEST_CASE("minimal config fills every default", "[config]") {
    const ExperimentConfig c = parse_config("lift = sine(a=0.1)\n");
    CHECK(c.lift.form == LiftSpec::Form::Sine);
    CHECK(c.lift.param == 0.1);
    CHECK(c == ExperimentConfig{});
    CHECK_FALSE(c.seed.has_value());

    const std::string echo = echo_config(c);
    for (const char* key : {"experiment = verdict", "lift = sine(a=0.1)", "seed = 12345", "horizon = 2000",
                            "eps_sync = 1e-09", "window = 50", "merge_radius = 0.02",
                            "stability_radii = [0.01, 0.02, 0.05, 0.1]", "pullback_grid = 1024"})
        CHECK(echo.find(key) != std::string::npos);
    CHECK(echo.find("harmonics") == std::string::npos);
}

TEST_CASE("lift forms", "[config]") {
    const ExperimentConfig rot = parse_config("lift = rotation(c=0.25)");
    CHECK(rot.lift.form == LiftSpec::Form::Rotation);
    CHECK(rot.lift.build() == LiftMap::rotation(0.25));

    const ExperimentConfig four = parse_config("lift = fourier; harmonics = [(2, 0.05, 0.0)]");
    CHECK(four.lift.build() == LiftMap::fourier({{2, 0.05, 0.0}}));

    const ExperimentConfig multi = parse_config(
        "# two harmonics\n"
        "harmonics = [(3, 0.01, 0), (1, 0.02, -0.5e-2)]   # order does not matter\n"
        "\n"
        "lift = fourier\n");
    CHECK(multi.lift.build() == LiftMap::fourier({{1, 0.02, -0.005}, {3, 0.01, 0.0}}));
}

TEST_CASE("values of every type parse", "[config]") {
    const ExperimentConfig c = parse_config(
        "experiment = sync\n"
        "seed = 99\n"
        "n_samples = 17\n"
        "eps_sync = 1e-7\n"
        "subperiod_exact = false\n"
        "containment_deltas = [0.01]\n"
        "output = \"results dir\"\n");
    CHECK(c.experiment == "sync");
    CHECK(c.seed == 99u);
    CHECK(c.n_samples == 17);
    CHECK(c.eps_sync == 1e-7);
    CHECK_FALSE(c.subperiod_exact);
    CHECK(c.containment_deltas == std::vector<double>{0.01});
    CHECK(c.output == "results dir");
}

TEST_CASE("parse errors carry the line number", "[config]") {
    auto line_of = [](const char* text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("lift = sine(a=0.1)\nbogus = 3\n") == 2);
    CHECK(line_of("\n\nhorizon = ten\n") == 3);
    CHECK(line_of("horizon\n") == 1);
    CHECK(line_of("horizon = 5\nhorizon = 6\n") == 2);
    CHECK(line_of("lift = cosine(a=0.1)\n") == 1);
    CHECK(line_of("lift = sine(c=0.1)\n") == 1);
    CHECK(line_of("# ok\nharmonics = [(1, 0.1)]\n") == 2);
    CHECK(line_of("stability_radii = 0.1\n") == 1);
    CHECK(line_of("subperiod_exact = maybe\n") == 1);
    CHECK(line_of("n_samples = -3\n") == 1);
}

TEST_CASE("semantic errors name the key", "[config]") {
    auto key_of = [](const char* text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return e.key();
        }
        return std::string("<none>");
    };
    CHECK(key_of("lift = fourier\nharmonics = [(2, 0.1, 0), (2, 0, 0.1)]") == "harmonics");
    CHECK(key_of("lift = fourier") == "harmonics");
    CHECK(key_of("lift = sine(a=0.1)\nharmonics = [(2, 0.1, 0)]") == "harmonics");
    CHECK(key_of("experiment = dance") == "experiment");
    CHECK(key_of("arc_radius = 0.3") == "arc_radius");
    CHECK(key_of("containment_eps = 0.1\ncontainment_deltas = [0.2]") == "containment_deltas");
    CHECK(key_of("subperiod_grid = 100") == "subperiod_grid");
    CHECK(key_of("sweep_param = b") == "sweep_param");
    CHECK(key_of("eps_sync = 0") == "eps_sync");
}

TEST_CASE("echo round-trips losslessly", "[config][property]") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> small(1, 5000);
    for (int trial = 0; trial < 200; ++trial) {
        ExperimentConfig c;
        c.experiment = known_commands()[static_cast<std::size_t>(trial) % known_commands().size()];
        switch (trial % 3) {
        case 0: c.lift = {LiftSpec::Form::Sine, u(rng) * 0.3, {}}; break;
        case 1: c.lift = {LiftSpec::Form::Rotation, u(rng) * 7.0 - 3.0, {}}; break;
        default:
            c.lift = {LiftSpec::Form::Fourier, 0.0, {{1, u(rng) * 0.01, -u(rng) * 0.02}, {4, 1e-17 * u(rng), 0.0}}};
        }
        c.seed = rng();
        c.horizon = static_cast<std::uint64_t>(small(rng));
        c.eps_sync = u(rng) * 1e-8 + 1e-300;
        c.arc_radius = u(rng) * 0.24 + 1e-3;
        c.stability_radii = {u(rng) * 0.2 + 1e-6, 0.1 / 3.0};
        c.containment_eps = 0.2;
        c.containment_deltas = {u(rng) * 0.1 + 1e-9};
        c.subperiod_exact = trial % 2 == 0;
        c.output = "out_" + std::to_string(trial);
        c.sweep_param = c.lift.form == LiftSpec::Form::Rotation ? "c" : "a";

        const ExperimentConfig back = parse_config(echo_config(c));
        REQUIRE(back == c);
    }
}
