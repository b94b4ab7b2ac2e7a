// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
//
// so3dc {simulate|decompound|scatter|figures} [--config PATH] [--seed N]
//       [--out DIR] [--quick] [--workers N]

#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "so3dc/config.hpp"
#include "so3dc/errors.hpp"
#include "so3dc/experiment.hpp"

namespace {

enum Exit
{
    kOk = 0,
    kConfig = 1,
    kIo = 2,
    kNumerical = 3,
};

struct Flags
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    bool quick = false;
    std::optional<unsigned> workers;
};

void add_flags(CLI::App* sub, Flags& f)
{
    sub->add_option("--config", f.config, "configuration file");
    sub->add_option("--seed", f.seed, "master seed (overrides [run] seed)");
    sub->add_option("--out", f.out, "output directory (overrides [run] output_dir)");
    sub->add_flag("--quick", f.quick, "small sample sizes");
    sub->add_option("--workers", f.workers, "worker threads")->check(CLI::PositiveNumber);
}

so3dc::ExperimentConfig resolve(Flags const& f)
{
    so3dc::ExperimentConfig cfg = f.config.empty() ? so3dc::ExperimentConfig{} : so3dc::load_config(f.config);
    if (f.seed)
        cfg.seed = *f.seed;
    if (!f.out.empty())
        cfg.output_dir = f.out;
    if (f.quick)
        cfg.quick = true;
    if (f.workers)
        cfg.workers = *f.workers;
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"compound Poisson processes on SO(3) and decompounding"};
    app.require_subcommand(1);
    Flags flags;
    auto* simulate = app.add_subcommand("simulate", "write seeded observations");
    auto* decompound = app.add_subcommand("decompound", "estimate the jump spectrum");
    auto* scatter = app.add_subcommand("scatter", "transmitted intensity and g estimates");
    auto* figures = app.add_subcommand("figures", "g x n experiment grid");
    for (auto* sub : {simulate, decompound, scatter, figures})
        add_flags(sub, flags);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try
    {
        auto const cfg = resolve(flags);
        so3dc::RunReport report;
        if (*simulate)
            report = so3dc::run_simulate(cfg);
        else if (*decompound)
            report = so3dc::run_decompound(cfg);
        else if (*scatter)
            report = so3dc::run_scatter(cfg);
        else
            report = so3dc::run_figures(cfg);
        std::cout << report.summary;
        for (auto const& p : report.files)
            std::cout << "wrote " << p.string() << "\n";
        return kOk;
    }
    catch (so3dc::ConfigError const& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    }
    catch (so3dc::IoError const& e)
    {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kIo;
    }
    catch (so3dc::NumericalError const& e)
    {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    }
    catch (std::invalid_argument const& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    }
    catch (std::exception const& e)
    {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    }
}
