// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include "so3dc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "so3dc/csv.hpp"
#include "so3dc/errors.hpp"
#include "so3dc/observation_io.hpp"
#include "so3dc/quadrature.hpp"
#include "so3dc/scattering.hpp"
#include "so3dc/stats.hpp"

namespace so3dc {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr std::size_t kQuickN = 500;

void ensure_dir(fs::path const& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw IoError("cannot create output directory " + dir.string());
}

class OutFile
{
  public:
    OutFile(fs::path path, RunReport& report) : path_(std::move(path)), out_(path_)
    {
        if (!out_)
            throw IoError("cannot write " + path_.string());
        report.files.push_back(path_);
    }
    ~OutFile() = default;

    std::ostream& stream() { return out_; }
    void close()
    {
        out_.close();
        if (!out_)
            throw IoError("write failed: " + path_.string());
    }

  private:
    fs::path path_;
    std::ofstream out_;
};

std::string suffix(int r, int replications)
{
    return replications == 1 ? std::string() : "_r" + std::to_string(r);
}

std::size_t sample_count(ExperimentConfig const& cfg)
{
    return cfg.quick ? std::min(cfg.n, kQuickN) : cfg.n;
}

ZonalSpectrum hg_spectrum(double g, int cutoff)
{
    std::vector<double> a(cutoff);
    for (int d = 0; d < cutoff; ++d)
        a[d] = std::pow(g, d);
    return ZonalSpectrum(std::move(a));
}

ParametricEstimate estimate(std::span<Rotation const> obs, EstimatorConfig const& ecfg)
{
    return ecfg.prior_bounds ? decompound_with_prior(obs, ecfg) : decompound(obs, ecfg);
}

void write_manifest(ExperimentConfig const& cfg, RunReport& report)
{
    OutFile f(cfg.output_dir / "manifest.cfg", report);
    f.stream() << "# so3dc manifest; rerun with --config on this file\n";
    write_config(f.stream(), cfg);
    f.close();
}

json error_json(ErrorDecomposition const& e, ParametricEstimate const& est)
{
    return json{{"parametric", e.parametric},
                {"truncation", e.truncation},
                {"total", e.total},
                {"gates_failed", est.gates_failed()}};
}

std::string fmt_g(double g)
{
    std::ostringstream s;
    s << g;
    return s.str();
}

}  // namespace

double deflection_angle(Rotation const& r)
{
    return std::acos(std::clamp(r.cos_euler_theta(), -1.0, 1.0));
}

RunReport run_simulate(ExperimentConfig const& cfg)
{
    cfg.validate();
    RunReport report;
    ensure_dir(cfg.output_dir);
    auto const model = cfg.model();
    std::size_t const n = sample_count(cfg);
    for (int r = 0; r < cfg.replications; ++r)
    {
        auto const seed = cfg.replication_seed(r);
        auto const obs =
            generate_observations(model, n, seed, cfg.generator, cfg.workers, cfg.interlace_step);
        OutFile f(cfg.output_dir / ("observations" + suffix(r, cfg.replications) + ".csv"), report);
        write_observations(f.stream(), obs);
        f.close();
        report.summary += "replication " + std::to_string(r) + ": n=" + std::to_string(n) +
                          " seed=" + std::to_string(seed) + "\n";
    }
    write_manifest(cfg, report);
    return report;
}

RunReport run_decompound(ExperimentConfig const& cfg)
{
    cfg.validate();
    RunReport report;
    ensure_dir(cfg.output_dir);
    auto const ecfg = cfg.estimator();
    int const reps = cfg.input.empty() ? cfg.replications : 1;
    json summary = json::array();
    for (int r = 0; r < reps; ++r)
    {
        ObservationSet obs;
        double g = cfg.g;
        if (!cfg.input.empty())
        {
            obs = read_observations(cfg.input);
            if (auto const parsed = parse_hg_name(obs.meta.jump_law))
                g = *parsed;
        }
        else
        {
            obs = generate_observations(cfg.model(), sample_count(cfg), cfg.replication_seed(r),
                                        cfg.generator, cfg.workers, cfg.interlace_step);
        }
        if (obs.samples.empty())
            throw NumericalError("no observations to decompound");
        auto const est = estimate(obs.samples, ecfg);
        if (est.cutoff() > 1 && est.gates_failed() >= est.cutoff() - 1)
            throw NumericalError("every gate with delta >= 1 failed");
        auto const truth = hg_spectrum(g, ecfg.cutoff);
        auto const err = error_decomposition(est, truth, ecfg, g);
        std::string const sfx = suffix(r, reps);

        OutFile fe(cfg.output_dir / ("estimate" + sfx + ".csv"), report);
        write_estimate(fe.stream(), est, &truth);
        fe.close();
        OutFile fr(cfg.output_dir / ("reconstruction" + sfx + ".csv"), report);
        write_reconstruction(fr.stream(), reconstruct_density(est, ecfg),
                             [g](double t) { return hg_density(g, t); });
        fr.close();

        auto item = error_json(err, est);
        item["replication"] = r;
        item["n"] = obs.samples.size();
        item["g"] = g;
        summary.push_back(item);
        report.summary += "replication " + std::to_string(r) +
                          ": parametric=" + csv::format_double(err.parametric) +
                          " gates_failed=" + std::to_string(est.gates_failed()) + "\n";
    }
    OutFile fs_(cfg.output_dir / "error_summary.json", report);
    fs_.stream() << summary.dump(2) << "\n";
    fs_.close();
    write_manifest(cfg, report);
    return report;
}

RunReport run_scatter(ExperimentConfig const& cfg)
{
    cfg.validate();
    RunReport report;
    ensure_dir(cfg.output_dir);
    LayerModel const layer{cfg.thickness, cfg.mean_free_path, cfg.g};

    OutFile fc(cfg.output_dir / "intensity.csv", report);
    write_intensity_curve(fc.stream(), layer, cfg.curve_points);
    fc.close();

    std::size_t const n = sample_count(cfg);
    auto const obs =
        generate_observations(layer.compound_model(), n, cfg.seed, Generator::compound, cfg.workers);
    std::vector<double> angles;
    angles.reserve(n);
    for (auto const& r : obs.samples)
        angles.push_back(deflection_angle(r));
    double const atom = std::exp(-layer.optical_depth());
    double const ks = stats::ks_one_sample(
        angles, [&](double t) { return t <= 0 ? atom : transmitted_intensity(layer, t); },
        [&](double t) { return t <= 0 ? 0.0 : transmitted_intensity(layer, t); });
    double const bound = stats::ks_critical_one_sample(n, 0.01);

    auto ecfg = cfg.estimator();
    ecfg.lambda = 1.0 / layer.mean_free_path;
    ecfg.horizon = layer.thickness;
    ecfg.sigma2 = 0;
    auto const est = estimate(obs.samples, ecfg);
    OutFile fg(cfg.output_dir / "g_table.csv", report);
    write_g_table(fg.stream(), estimate_g(est));
    fg.close();

    json s{{"thickness", layer.thickness},
           {"mean_free_path", layer.mean_free_path},
           {"g", layer.g},
           {"n", n},
           {"seed", cfg.seed},
           {"ks_distance", ks},
           {"ks_bound_1pct", bound}};
    OutFile fs_(cfg.output_dir / "scatter_summary.json", report);
    fs_.stream() << s.dump(2) << "\n";
    fs_.close();
    report.summary += "KS sup distance " + csv::format_double(ks) + " (1% bound " +
                      csv::format_double(bound) + ")\n";
    write_manifest(cfg, report);
    return report;
}

RunReport run_figures(ExperimentConfig const& cfg)
{
    cfg.validate();
    RunReport report;
    ensure_dir(cfg.output_dir);
    auto const ecfg = cfg.estimator();
    std::vector<std::size_t> n_values = cfg.n_values;
    if (cfg.quick)
        n_values = {kQuickN};

    // mixture density and a conditioned histogram for the configured g
    {
        double const lt = cfg.lambda * cfg.horizon;
        double const atom = std::exp(-lt);
        OutFile fm(cfg.output_dir / "fig1_mixture.csv", report);
        fm.stream() << "theta,continuous\n";
        for (double t : reconstruction_grid())
            fm.stream() << csv::format_double(t) << ','
                        << csv::format_double(mixture_density(cfg.g, lt, t).continuous) << '\n';
        fm.close();

        CompoundModel const m(cfg.lambda, cfg.horizon, 0.0, hg_angle_density(cfg.g));
        auto const obs =
            generate_observations(m, n_values.back(), cfg.seed, Generator::compound, cfg.workers);
        constexpr int kBins = 50;
        std::vector<double> counts(kBins, 0.0);
        double jumped = 0;
        for (auto const& r : obs.samples)
        {
            double const t = deflection_angle(r);
            if (t <= 0)
                continue;
            int const b = std::min(kBins - 1, static_cast<int>(t / std::numbers::pi * kBins));
            counts[b] += 1;
            jumped += 1;
        }
        auto const rule = gauss_legendre(16);
        OutFile fh(cfg.output_dir / "fig1_histogram.csv", report);
        fh.stream() << "theta_lo,theta_hi,count,expected\n";
        for (int b = 0; b < kBins; ++b)
        {
            double const lo = std::numbers::pi * b / kBins;
            double const hi = std::numbers::pi * (b + 1) / kBins;
            double const p = integrate_interval(
                [&](double t) { return 0.5 * std::sin(t) * mixture_density(cfg.g, lt, t).continuous; },
                lo, hi, rule);
            fh.stream() << csv::format_double(lo) << ',' << csv::format_double(hi) << ','
                        << csv::format_double(counts[b]) << ','
                        << csv::format_double(jumped * p / (1 - atom)) << '\n';
        }
        fh.close();
    }

    json cells = json::array();
    OutFile fmed(cfg.output_dir / "medians.csv", report);
    fmed.stream() << "g,n,delta,median_a_hat,a_true\n";
    for (std::size_t gi = 0; gi < cfg.g_values.size(); ++gi)
    {
        double const g = cfg.g_values[gi];
        CompoundModel const model(cfg.lambda, cfg.horizon, cfg.sigma2, hg_angle_density(g));
        auto const truth = hg_spectrum(g, ecfg.cutoff);
        for (std::size_t ni = 0; ni < n_values.size(); ++ni)
        {
            std::size_t const n = n_values[ni];
            std::string const tag = "g" + fmt_g(g) + "_n" + std::to_string(n);
            std::vector<std::vector<double>> a_by_delta(ecfg.cutoff);
            std::vector<double> parametric;
            int negative_high = 0;
            int failed = 0;
            for (int r = 0; r < cfg.replications; ++r)
            {
                auto const seed = splitmix64(cfg.replication_seed(r) + 7919 * gi + ni);
                auto const obs = generate_observations(model, n, seed, cfg.generator, cfg.workers,
                                                       cfg.interlace_step);
                auto const est = estimate(obs.samples, ecfg);
                auto const err = error_decomposition(est, truth, ecfg, g);
                parametric.push_back(err.parametric);
                failed += est.gates_failed();
                for (int d = 0; d < est.cutoff(); ++d)
                {
                    a_by_delta[d].push_back(est.a_hat[d]);
                    if (d >= 25 && (!est.gate_passed[d] || est.a_hat[d] < 0))
                        ++negative_high;
                }
                if (r == 0)
                {
                    OutFile fe(cfg.output_dir / ("estimate_" + tag + ".csv"), report);
                    write_estimate(fe.stream(), est, &truth);
                    fe.close();
                    OutFile fr(cfg.output_dir / ("reconstruction_" + tag + ".csv"), report);
                    write_reconstruction(fr.stream(), reconstruct_density(est, ecfg),
                                         [g](double t) { return hg_density(g, t); });
                    fr.close();
                    OutFile fg(cfg.output_dir / ("g_table_" + tag + ".csv"), report);
                    write_g_table(fg.stream(), estimate_g(est));
                    fg.close();
                }
            }
            double ghat_dev = 0;
            for (int d = 0; d < ecfg.cutoff; ++d)
            {
                double const med = stats::median(a_by_delta[d]);
                fmed.stream() << csv::format_double(g) << ',' << n << ',' << d << ','
                              << csv::format_double(med) << ',' << csv::format_double(truth[d])
                              << '\n';
                if (d >= 1 && d <= 5 && med > 0)
                    ghat_dev = std::max(ghat_dev, std::abs(std::pow(med, 1.0 / d) - g));
            }
            cells.push_back(json{{"g", g},
                                 {"n", n},
                                 {"replications", cfg.replications},
                                 {"median_parametric_error", stats::median(parametric)},
                                 {"max_ghat_deviation_delta_le_5", ghat_dev},
                                 {"negative_or_gated_delta_ge_25", negative_high},
                                 {"gates_failed", failed}});
            report.summary += tag + ": median parametric error " +
                              csv::format_double(stats::median(parametric)) + "\n";
        }
    }
    fmed.close();
    OutFile fs_(cfg.output_dir / "summary.json", report);
    fs_.stream() << json{{"lambda", cfg.lambda},
                         {"horizon", cfg.horizon},
                         {"sigma2", cfg.sigma2},
                         {"mode", to_string(ecfg.mode)},
                         {"cutoff", ecfg.cutoff},
                         {"seed", cfg.seed},
                         {"cells", cells}}
                        .dump(2)
                 << "\n";
    fs_.close();
    write_manifest(cfg, report);
    return report;
}

}  // namespace so3dc
