// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "so3dc/config.hpp"
#include "so3dc/errors.hpp"
#include "so3dc/experiment.hpp"
#include "so3dc/observation_io.hpp"
#include "so3dc/scattering.hpp"
#include "test_util.hpp"

using namespace so3dc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(std::string const& name)
{
    auto const p = fs::temp_directory_path() / ("so3dc_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(fs::path const& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(std::string const& args)
{
    std::string const cmd = std::string(SO3DC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int const status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_text(fs::path const& p, std::string const& s)
{
    std::ofstream out(p);
    out << s;
}

}  // namespace

TEST_CASE("config parsing")
{
    std::istringstream in(R"(# comment
[model]
lambda = 0.5
g = 0.95

[estimator]
cutoff = 12
mode = general
prior_bounds = 1, 0.5, 0.25

[run]
n = 100
seed = 18446744073709551615
replications = 3
output_dir = /tmp/x
generator = interlaced

[figures]
g_values = 0.85,0.99
n_values = 10,20
)");
    auto const c = parse_config(in);
    CHECK(c.lambda == 0.5);
    CHECK(c.horizon == 10);
    CHECK(c.g == 0.95);
    CHECK(c.cutoff == 12);
    CHECK(c.mode == EstimatorMode::general);
    REQUIRE(c.prior_bounds.has_value());
    CHECK(c.prior_bounds->size() == 3);
    CHECK(c.seed == 18446744073709551615ULL);
    CHECK(c.replications == 3);
    CHECK(c.generator == Generator::interlaced);
    CHECK(c.n_values == std::vector<std::size_t>{10, 20});

    auto expect_line = [](std::string const& text, std::string const& needle) {
        std::istringstream s(text);
        try
        {
            parse_config(s, "cfg");
            FAIL("expected ConfigError");
        }
        catch (ConfigError const& e)
        {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_line("[model]\nlambda = 0.3\nlambda = abc\n", "cfg:3:");
    expect_line("[model]\n\nbogus = 1\n", "cfg:3: unknown key");
    expect_line("lambda = 1\n", "cfg:1:");
    expect_line("[nowhere]\n", "cfg:1: unknown section");
    expect_line("[model\n", "cfg:1:");
    expect_line("[model]\nlambda 3\n", "cfg:2:");
    expect_line("[model]\ng = 1.5\n", "model.g");
    expect_line("[run]\nreplications = 0\n", "replications");
    expect_line("[estimator]\nmode = fast\n", "cfg:2:");
}

TEST_CASE("config round trip")
{
    ExperimentConfig c;
    c.sigma2 = 0.05;
    c.prior_bounds = std::vector<double>{1.0, 0.1 + 0.2};
    c.input = "obs.csv";
    c.quick = true;
    std::stringstream ss;
    write_config(ss, c);
    auto const back = parse_config(ss);
    std::stringstream again;
    write_config(again, back);
    CHECK(again.str() == ss.str());
    CHECK(back.prior_bounds->at(1) == 0.1 + 0.2);
    CHECK(back.quick);
}

TEST_CASE("observation csv")
{
    CompoundModel const m(0.3, 10, 0.05, hg_angle_density(0.9));
    auto const obs = generate_observations(m, 50, 9);
    std::stringstream ss;
    write_observations(ss, obs);
    auto const back = read_observations(ss);
    REQUIRE(back.samples.size() == 50);
    for (std::size_t i = 0; i < 50; ++i)
        CHECK(back.samples[i].quaternion() == obs.samples[i].quaternion());
    CHECK(back.meta.seed == 9u);
    CHECK(back.meta.jump_law == obs.meta.jump_law);
    CHECK(back.meta.sigma2 == 0.05);

    std::stringstream empty;
    write_observations(empty, generate_observations(m, 0, 1));
    CHECK(empty.str().find("w,x,y,z\n") != std::string::npos);
    CHECK(read_observations(empty).samples.empty());

    std::stringstream bad("w,x,y,z\n1,0,0,0\n0.5,0.5,0.5\n");
    try
    {
        read_observations(bad);
        FAIL("expected IoError");
    }
    catch (IoError const& e)
    {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::stringstream nonunit("w,x,y,z\n2,0,0,0\n");
    CHECK_THROWS_AS(read_observations(nonunit), IoError);
}

TEST_CASE("run_simulate determinism and manifest replay")
{
    auto const dir = scratch("sim");
    ExperimentConfig c;
    c.n = 3000;
    c.output_dir = dir / "a";
    run_simulate(c);
    c.output_dir = dir / "b";
    c.workers = 3;
    run_simulate(c);
    CHECK(slurp(dir / "a" / "observations.csv") == slurp(dir / "b" / "observations.csv"));

    // replay from the manifest
    auto replay = load_config(dir / "a" / "manifest.cfg");
    replay.output_dir = dir / "c";
    run_simulate(replay);
    CHECK(slurp(dir / "a" / "observations.csv") == slurp(dir / "c" / "observations.csv"));

    ExperimentConfig z;
    z.n = 0;
    z.output_dir = dir / "zero";
    run_simulate(z);
    auto const zero = read_observations(dir / "zero" / "observations.csv");
    CHECK(zero.samples.empty());
}

TEST_CASE("run_decompound reads back its own tables")
{
    auto const dir = scratch("dec");
    ExperimentConfig c;
    c.n = 5000;
    c.output_dir = dir / "sim";
    run_simulate(c);
    c.input = dir / "sim" / "observations.csv";
    c.output_dir = dir / "dec";
    auto const rep = run_decompound(c);
    std::ifstream est(dir / "dec" / "estimate.csv");
    auto const t = read_estimate(est);
    CHECK(t.a_hat.size() == 31u);
    CHECK(std::abs(t.a_hat[1] - 0.9) < 0.05);
    std::ifstream rec(dir / "dec" / "reconstruction.csv");
    CHECK(read_reconstruction(rec).theta.size() == std::size_t(kReconstructionGrid));
    CHECK(fs::exists(dir / "dec" / "error_summary.json"));

    // identity-only observations at tight prior: every gate fails
    ObservationSet bad;
    CompoundModel const wide(3.0, 10, 0, AngleDensity::uniform());
    bad = generate_observations(wide, 2000, 4);
    write_observations(dir / "wide.csv", bad);
    ExperimentConfig strict;
    strict.input = dir / "wide.csv";
    strict.output_dir = dir / "strict";
    strict.prior_bounds = std::vector<double>(31, 0.99);
    CHECK_THROWS_AS(run_decompound(strict), NumericalError);
}

TEST_CASE("cli exit codes and determinism")
{
    auto const dir = scratch("cli");
    CHECK(run_cli("figures --quick --out " + (dir / "f1").string()) == 0);
    CHECK(run_cli("figures --quick --workers 2 --out " + (dir / "f2").string()) == 0);
    CHECK(slurp(dir / "f1" / "summary.json") == slurp(dir / "f2" / "summary.json"));
    CHECK(slurp(dir / "f1" / "medians.csv") == slurp(dir / "f2" / "medians.csv"));
    CHECK(fs::exists(dir / "f1" / "estimate_g0.99_n500.csv"));

    CHECK(run_cli("simulate --quick --seed 5 --out " + (dir / "s").string()) == 0);
    CHECK(run_cli("decompound --quick --out " + (dir / "d").string()) == 0);
    CHECK(run_cli("scatter --quick --out " + (dir / "sc").string()) == 0);

    write_text(dir / "bad.cfg", "[model]\nlambda = -1\n");
    CHECK(run_cli("simulate --config " + (dir / "bad.cfg").string()) == 1);
    CHECK(run_cli("simulate --config " + (dir / "missing.cfg").string()) == 2);
    CHECK(run_cli("bogus") == 1);
    write_text(dir / "blocker", "x");
    CHECK(run_cli("simulate --quick --out " + (dir / "blocker" / "sub").string()) == 2);

    write_text(dir / "obs.csv", "w,x,y,z\n1,0,0,0\nnot,a,row\n");
    write_text(dir / "in.cfg", "[run]\ninput = " + (dir / "obs.csv").string() + "\n");
    CHECK(run_cli("decompound --config " + (dir / "in.cfg").string() + " --out " + (dir / "o").string()) == 2);

    CompoundModel const wide(3.0, 10, 0, AngleDensity::uniform());
    write_observations(dir / "wide.csv", generate_observations(wide, 500, 4));
    std::string bounds;
    for (int i = 0; i < 31; ++i)
        bounds += (i ? "," : "") + std::string("0.99");
    write_text(dir / "strict.cfg",
               "[estimator]\nprior_bounds = " + bounds + "\n[run]\ninput = " + (dir / "wide.csv").string() + "\n");
    CHECK(run_cli("decompound --config " + (dir / "strict.cfg").string() + " --out " + (dir / "o2").string()) == 3);
}
