// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include "so3dc/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>

#include "so3dc/csv.hpp"
#include "so3dc/errors.hpp"
#include "so3dc/random.hpp"
#include "so3dc/scattering.hpp"

namespace so3dc {
namespace {

template <class Int>
Int parse_int(std::string_view s)
{
    s = csv::trim(s);
    Int v{};
    auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    return v;
}

bool parse_bool(std::string_view s)
{
    s = csv::trim(s);
    if (s == "true" || s == "1" || s == "yes")
        return true;
    if (s == "false" || s == "0" || s == "no")
        return false;
    throw std::invalid_argument("not a boolean: '" + std::string(s) + "'");
}

std::vector<double> parse_list(std::string_view s)
{
    std::vector<double> out;
    for (auto const& f : csv::split(s))
        out.push_back(csv::parse_double(f));
    if (out.empty())
        throw std::invalid_argument("empty list");
    return out;
}

std::string join(std::vector<double> const& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + csv::format_double(v[i]);
    return s;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

std::map<std::string, Setter> const& setters()
{
    static std::map<std::string, Setter> const table{
        {"model.lambda", [](auto& c, auto v) { c.lambda = csv::parse_double(v); }},
        {"model.horizon", [](auto& c, auto v) { c.horizon = csv::parse_double(v); }},
        {"model.sigma2", [](auto& c, auto v) { c.sigma2 = csv::parse_double(v); }},
        {"model.g", [](auto& c, auto v) { c.g = csv::parse_double(v); }},
        {"estimator.cutoff", [](auto& c, auto v) { c.cutoff = parse_int<int>(v); }},
        {"estimator.smoothing", [](auto& c, auto v) { c.smoothing = csv::parse_double(v); }},
        {"estimator.mode",
         [](auto& c, auto v) { c.mode = estimator_mode_from_string(std::string(csv::trim(v))); }},
        {"estimator.prior_bounds", [](auto& c, auto v) { c.prior_bounds = parse_list(v); }},
        {"run.n", [](auto& c, auto v) { c.n = parse_int<std::size_t>(v); }},
        {"run.seed", [](auto& c, auto v) { c.seed = parse_int<std::uint64_t>(v); }},
        {"run.replications", [](auto& c, auto v) { c.replications = parse_int<int>(v); }},
        {"run.output_dir", [](auto& c, auto v) { c.output_dir = std::string(csv::trim(v)); }},
        {"run.workers", [](auto& c, auto v) { c.workers = parse_int<unsigned>(v); }},
        {"run.generator",
         [](auto& c, auto v) { c.generator = generator_from_string(std::string(csv::trim(v))); }},
        {"run.interlace_step", [](auto& c, auto v) { c.interlace_step = csv::parse_double(v); }},
        {"run.input", [](auto& c, auto v) { c.input = std::string(csv::trim(v)); }},
        {"run.quick", [](auto& c, auto v) { c.quick = parse_bool(v); }},
        {"scatter.thickness", [](auto& c, auto v) { c.thickness = csv::parse_double(v); }},
        {"scatter.mean_free_path", [](auto& c, auto v) { c.mean_free_path = csv::parse_double(v); }},
        {"scatter.curve_points", [](auto& c, auto v) { c.curve_points = parse_int<int>(v); }},
        {"figures.g_values", [](auto& c, auto v) { c.g_values = parse_list(v); }},
        {"figures.n_values",
         [](auto& c, auto v) {
             c.n_values.clear();
             for (auto const& f : csv::split(v))
                 c.n_values.push_back(parse_int<std::size_t>(f));
         }},
    };
    return table;
}

void check_g(double g, char const* what)
{
    if (!(g >= 0 && g < 1))
        throw ConfigError(std::string(what) + " must lie in [0, 1)");
}

}  // namespace

void ExperimentConfig::validate() const
{
    check_g(g, "model.g");
    try
    {
        estimator().validate();
        LayerModel{thickness, mean_free_path, g}.validate();
    }
    catch (std::invalid_argument const& e)
    {
        throw ConfigError(e.what());
    }
    if (replications < 1)
        throw ConfigError("run.replications must be >= 1");
    if (workers < 1)
        throw ConfigError("run.workers must be >= 1");
    if (!(interlace_step > 0))
        throw ConfigError("run.interlace_step must be > 0");
    if (curve_points < 2)
        throw ConfigError("scatter.curve_points must be >= 2");
    if (output_dir.empty())
        throw ConfigError("run.output_dir must not be empty");
    if (g_values.empty() || n_values.empty())
        throw ConfigError("figures grid must not be empty");
    for (double v : g_values)
        check_g(v, "figures.g_values entries");
    for (std::size_t v : n_values)
        if (v == 0)
            throw ConfigError("figures.n_values entries must be >= 1");
}

EstimatorConfig ExperimentConfig::estimator() const
{
    EstimatorConfig e;
    e.cutoff = cutoff;
    e.smoothing = smoothing;
    e.mode = mode;
    e.prior_bounds = prior_bounds;
    e.lambda = lambda;
    e.horizon = horizon;
    e.sigma2 = sigma2;
    return e;
}

CompoundModel ExperimentConfig::model() const
{
    return CompoundModel(lambda, horizon, sigma2, hg_angle_density(g));
}

std::uint64_t ExperimentConfig::replication_seed(int r) const
{
    return r == 0 ? seed : splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(r)));
}

ExperimentConfig parse_config(std::istream& is, std::string const& origin)
{
    ExperimentConfig cfg;
    std::string section;
    std::string raw;
    int line_no = 0;
    auto fail = [&](std::string const& msg) {
        throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(is, raw))
    {
        ++line_no;
        auto const line = csv::trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';')
            continue;
        if (line.front() == '[')
        {
            if (line.back() != ']')
                fail("unterminated section header");
            section = std::string(csv::trim(line.substr(1, line.size() - 2)));
            if (section != "model" && section != "estimator" && section != "run" &&
                section != "scatter" && section != "figures")
                fail("unknown section [" + section + "]");
            continue;
        }
        auto const eq = line.find('=');
        if (eq == std::string_view::npos)
            fail("expected key = value");
        if (section.empty())
            fail("key outside of a section");
        std::string const key = section + "." + std::string(csv::trim(line.substr(0, eq)));
        auto const it = setters().find(key);
        if (it == setters().end())
            fail("unknown key '" + key + "'");
        try
        {
            it->second(cfg, line.substr(eq + 1));
        }
        catch (std::exception const& e)
        {
            fail(key + ": " + e.what());
        }
    }
    try
    {
        cfg.validate();
    }
    catch (ConfigError const& e)
    {
        throw ConfigError(origin + ": " + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config " + path.string());
    return parse_config(in, path.string());
}

void write_config(std::ostream& os, ExperimentConfig const& c)
{
    using csv::format_double;
    os << "[model]\n"
       << "lambda = " << format_double(c.lambda) << "\n"
       << "horizon = " << format_double(c.horizon) << "\n"
       << "sigma2 = " << format_double(c.sigma2) << "\n"
       << "g = " << format_double(c.g) << "\n\n"
       << "[estimator]\n"
       << "cutoff = " << c.cutoff << "\n"
       << "smoothing = " << format_double(c.smoothing) << "\n"
       << "mode = " << to_string(c.mode) << "\n";
    if (c.prior_bounds)
        os << "prior_bounds = " << join(*c.prior_bounds) << "\n";
    os << "\n[run]\n"
       << "n = " << c.n << "\n"
       << "seed = " << c.seed << "\n"
       << "replications = " << c.replications << "\n"
       << "output_dir = " << c.output_dir.string() << "\n"
       << "workers = " << c.workers << "\n"
       << "generator = " << to_string(c.generator) << "\n"
       << "interlace_step = " << format_double(c.interlace_step) << "\n";
    if (!c.input.empty())
        os << "input = " << c.input.string() << "\n";
    os << "quick = " << (c.quick ? "true" : "false") << "\n\n"
       << "[scatter]\n"
       << "thickness = " << format_double(c.thickness) << "\n"
       << "mean_free_path = " << format_double(c.mean_free_path) << "\n"
       << "curve_points = " << c.curve_points << "\n\n"
       << "[figures]\n"
       << "g_values = " << join(c.g_values) << "\n"
       << "n_values = ";
    for (std::size_t i = 0; i < c.n_values.size(); ++i)
        os << (i ? "," : "") << c.n_values[i];
    os << "\n";
}

}  // namespace so3dc
