// Copyright 2026 The so3dc Authors
// SPDX-License-Identifier: Apache-2.0
#include "so3dc/observation_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "so3dc/csv.hpp"
#include "so3dc/errors.hpp"

namespace so3dc {
namespace csv {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split(std::string_view line, char sep)
{
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true)
    {
        std::size_t const pos = line.find(sep, start);
        fields.emplace_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s)
{
    auto const first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    auto const last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view field)
{
    field = trim(field);
    double v = 0;
    auto const [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
        throw std::invalid_argument("not a number: '" + std::string(field) + "'");
    return v;
}

}  // namespace csv

void write_observations(std::ostream& os, ObservationSet const& obs)
{
    auto const& m = obs.meta;
    os << "# so3dc observations\n";
    os << "# lambda=" << csv::format_double(m.lambda) << '\n';
    os << "# horizon=" << csv::format_double(m.horizon) << '\n';
    os << "# sigma2=" << csv::format_double(m.sigma2) << '\n';
    os << "# jump_law=" << m.jump_law << '\n';
    os << "# generator=" << m.generator << '\n';
    os << "# seed=" << m.seed << '\n';
    os << "# count=" << obs.samples.size() << '\n';
    os << "w,x,y,z\n";
    for (auto const& r : obs.samples)
    {
        os << csv::format_double(r.w()) << ',' << csv::format_double(r.x()) << ','
           << csv::format_double(r.y()) << ',' << csv::format_double(r.z()) << '\n';
    }
}

void write_observations(std::filesystem::path const& path, ObservationSet const& obs)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError("cannot write " + path.string());
    write_observations(os, obs);
    if (!os)
        throw IoError("write failed for " + path.string());
}

ObservationSet read_observations(std::istream& is)
{
    ObservationSet obs;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    auto fail = [&lineno](std::string const& what) {
        throw IoError("observations line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(is, line))
    {
        ++lineno;
        std::string_view const view = csv::trim(line);
        if (view.empty())
            continue;
        if (view.front() == '#')
        {
            auto const eq = view.find('=');
            if (eq == std::string_view::npos)
                continue;
            std::string const key(csv::trim(view.substr(1, eq - 1)));
            std::string const value(csv::trim(view.substr(eq + 1)));
            try
            {
                if (key == "lambda")
                    obs.meta.lambda = csv::parse_double(value);
                else if (key == "horizon")
                    obs.meta.horizon = csv::parse_double(value);
                else if (key == "sigma2")
                    obs.meta.sigma2 = csv::parse_double(value);
                else if (key == "jump_law")
                    obs.meta.jump_law = value;
                else if (key == "generator")
                    obs.meta.generator = value;
                else if (key == "seed")
                    obs.meta.seed = std::stoull(value);
            }
            catch (std::exception const& e)
            {
                fail("bad metadata '" + key + "': " + e.what());
            }
            continue;
        }
        if (!header_seen)
        {
            if (view != "w,x,y,z")
                fail("expected header 'w,x,y,z'");
            header_seen = true;
            continue;
        }
        auto const fields = csv::split(view);
        if (fields.size() != 4)
            fail("expected 4 fields, got " + std::to_string(fields.size()));
        double q[4];
        try
        {
            for (int k = 0; k < 4; ++k)
                q[k] = csv::parse_double(fields[k]);
        }
        catch (std::exception const& e)
        {
            fail(e.what());
        }
        double const norm2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3];
        if (!(std::abs(norm2 - 1.0) < 1e-6))
            fail("quaternion is not unit length");
        obs.samples.push_back(Rotation::from_quaternion(q[0], q[1], q[2], q[3]));
    }
    if (!header_seen)
        throw IoError("observations: missing 'w,x,y,z' header");
    return obs;
}

ObservationSet read_observations(std::filesystem::path const& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot read " + path.string());
    return read_observations(is);
}

}  // namespace so3dc
