// SPDX-License-Identifier: Apache-2.0
//
// vfd-relay: rate simulator and optimizer for virtual full-duplex relaying
// Copyright (C) 2026 The vfd-relay authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "vfd/scenario.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace vfd
{

using nlohmann::json;

namespace
{
std::string join_path(const std::string &parent, std::string_view key)
{
    return parent.empty() ? std::string(key) : parent + "." + std::string(key);
}

const json &require_object(const json &node, const std::string &path)
{
    if (!node.is_object())
        throw ScenarioError(path.empty() ? "<root>" : path, "expected an object");
    return node;
}

void reject_unknown(const json &node, const std::string &path, std::initializer_list<std::string_view> allowed)
{
    for (const auto &[key, value] : node.items())
    {
        bool known = false;
        for (const auto a : allowed)
            known = known || key == a;
        if (!known)
            throw ScenarioError(join_path(path, key), "unknown field '" + key + "'");
    }
}

double read_number(const json &node, const std::string &path)
{
    if (!node.is_number())
        throw ScenarioError(path, "expected a number");
    const double v = node.get<double>();
    if (!std::isfinite(v))
        throw ScenarioError(path, "must be finite");
    return v;
}

std::uint64_t read_unsigned(const json &node, const std::string &path)
{
    if (node.is_number_unsigned())
        return node.get<std::uint64_t>();
    if (node.is_number_integer() && node.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(node.get<std::int64_t>());
    throw ScenarioError(path, "expected a non-negative integer");
}

int read_int(const json &node, const std::string &path)
{
    const std::uint64_t v = read_unsigned(node, path);
    if (v > 1'000'000)
        throw ScenarioError(path, "value too large");
    return static_cast<int>(v);
}

// Sets `target` from node[key] when present.
template <typename Reader, typename T>
void optional_field(const json &node, const std::string &path, std::string_view key, T &target, Reader read)
{
    const auto it = node.find(std::string(key));
    if (it != node.end())
        target = static_cast<T>(read(*it, join_path(path, key)));
}

double required_number(const json &node, const std::string &path, std::string_view key)
{
    const auto it = node.find(std::string(key));
    if (it == node.end())
        throw ScenarioError(join_path(path, key), "required field missing");
    return read_number(*it, join_path(path, key));
}

SystemParams read_system(const json *node)
{
    double p_s = 1.0, p_r = 1.0, sigma_n2 = 1.0, p_max = 1.0;
    if (node)
    {
        const std::string path = "system";
        require_object(*node, path);
        reject_unknown(*node, path, {"p_s", "p_r", "sigma_n2", "p_max"});
        optional_field(*node, path, "p_s", p_s, read_number);
        optional_field(*node, path, "p_r", p_r, read_number);
        optional_field(*node, path, "sigma_n2", sigma_n2, read_number);
        optional_field(*node, path, "p_max", p_max, read_number);
    }
    try
    {
        return SystemParams(p_s, p_r, sigma_n2, p_max);
    }
    catch (const std::invalid_argument &e)
    {
        throw ScenarioError("system", e.what());
    }
}

FadingSpec read_fading(const json &node, bool require_f)
{
    const std::string path = "fading";
    require_object(node, path);
    reject_unknown(node, path, {"mean_h1_db", "mean_h2_db", "mean_g1_db", "mean_g2_db", "mean_f_db"});
    FadingSpec spec;
    spec.mean_h1_db = required_number(node, path, "mean_h1_db");
    spec.mean_h2_db = required_number(node, path, "mean_h2_db");
    spec.mean_g1_db = required_number(node, path, "mean_g1_db");
    spec.mean_g2_db = required_number(node, path, "mean_g2_db");
    if (require_f)
        spec.mean_f_db = required_number(node, path, "mean_f_db");
    else
        optional_field(node, path, "mean_f_db", spec.mean_f_db, read_number);
    return spec;
}

GeometrySpec read_geometry(const json *node, bool require_d)
{
    const std::string path = "geometry";
    GeometrySpec geo;
    if (node)
    {
        require_object(*node, path);
        reject_unknown(*node, path, {"d_sr2", "vertical_offset", "pathloss_exp", "shadowing_db"});
        if (require_d)
            geo.d_sr2 = required_number(*node, path, "d_sr2");
        else
            optional_field(*node, path, "d_sr2", geo.d_sr2, read_number);
        optional_field(*node, path, "vertical_offset", geo.vertical_offset, read_number);
        optional_field(*node, path, "pathloss_exp", geo.pathloss_exp, read_number);
        optional_field(*node, path, "shadowing_db", geo.shadowing_db, read_number);
    }
    else if (require_d)
    {
        throw ScenarioError("geometry.d_sr2", "required field missing");
    }
    try
    {
        validate(geo);
    }
    catch (const std::invalid_argument &e)
    {
        throw ScenarioError(path, e.what());
    }
    return geo;
}

std::vector<Strategy> read_strategies(const json &node)
{
    const std::string path = "strategies";
    if (!node.is_array() || node.empty())
        throw ScenarioError(path, "expected a non-empty array of strategy names");
    std::vector<Strategy> out;
    for (std::size_t k = 0; k < node.size(); ++k)
    {
        const std::string item = path + "[" + std::to_string(k) + "]";
        if (!node[k].is_string())
            throw ScenarioError(item, "expected a strategy name");
        Strategy s;
        try
        {
            s = parse_strategy(node[k].get<std::string>());
        }
        catch (const std::invalid_argument &e)
        {
            throw ScenarioError(item, e.what());
        }
        for (const auto &prev : out)
            if (prev == s)
                throw ScenarioError(item, "duplicate strategy '" + to_string(s) + "'");
        out.push_back(s);
    }
    return out;
}

std::vector<double> read_sweep(const json &node, ScenarioKind kind)
{
    const std::string path = "sweep";
    require_object(node, path);
    reject_unknown(node, path, {"values"});
    const auto it = node.find("values");
    if (it == node.end())
        return default_sweep_values(kind);
    if (!it->is_array())
        throw ScenarioError("sweep.values", "expected an array of numbers");
    std::vector<double> values;
    for (std::size_t k = 0; k < it->size(); ++k)
    {
        const std::string item = "sweep.values[" + std::to_string(k) + "]";
        const double v = read_number((*it)[k], item);
        if (!values.empty() && !(v > values.back()))
            throw ScenarioError(item, "values must be strictly ascending");
        if (kind == ScenarioKind::location_sweep && !(v > 0.0 && v < 1.0))
            throw ScenarioError(item, "d_sr2 must lie in (0, 1)");
        values.push_back(v);
    }
    return values;
}

const json *find(const json &node, std::string_view key)
{
    const auto it = node.find(std::string(key));
    return it == node.end() ? nullptr : &*it;
}

std::string format_real(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}
} // namespace

ScenarioError::ScenarioError(std::string field, const std::string &message)
    : std::runtime_error(field + ": " + message), field_(std::move(field))
{
}

std::string_view to_string(ScenarioKind kind)
{
    switch (kind)
    {
    case ScenarioKind::iri_sweep:
        return "iri_sweep";
    case ScenarioKind::max_improper_sweep:
        return "max_improper_sweep";
    case ScenarioKind::location_sweep:
        return "location_sweep";
    case ScenarioKind::single:
        return "single";
    }
    return "?";
}

ScenarioKind parse_scenario_kind(std::string_view name)
{
    for (const auto k : {ScenarioKind::iri_sweep, ScenarioKind::max_improper_sweep, ScenarioKind::location_sweep,
                         ScenarioKind::single})
        if (to_string(k) == name)
            return k;
    throw std::invalid_argument("unknown scenario kind '" + std::string(name) + "'");
}

SweepAxis sweep_axis(ScenarioKind kind)
{
    switch (kind)
    {
    case ScenarioKind::iri_sweep:
    case ScenarioKind::max_improper_sweep:
        return SweepAxis::mean_f_db;
    case ScenarioKind::location_sweep:
        return SweepAxis::d_sr2;
    case ScenarioKind::single:
        break;
    }
    throw std::invalid_argument("scenario kind 'single' has no sweep axis");
}

std::vector<double> default_sweep_values(ScenarioKind kind)
{
    std::vector<double> v;
    if (kind == ScenarioKind::location_sweep)
    {
        for (int k = 1; k <= 9; ++k)
            v.push_back(k / 10.0);
    }
    else if (kind != ScenarioKind::single)
    {
        for (int db = -10; db <= 35; db += 5)
            v.push_back(db);
    }
    return v;
}

ScenarioFile parse_scenario(std::string_view json_text, std::optional<ScenarioKind> expected)
{
    json root;
    try
    {
        root = json::parse(json_text.begin(), json_text.end());
    }
    catch (const json::parse_error &e)
    {
        throw ScenarioError("<root>", std::string("parse error: ") + e.what());
    }
    require_object(root, "");
    reject_unknown(root, "",
                   {"kind", "realizations", "seed", "threads", "strategies", "grid", "system", "fading", "geometry",
                    "sweep"});

    ScenarioFile sc;
    if (const json *k = find(root, "kind"))
    {
        if (!k->is_string())
            throw ScenarioError("kind", "expected a string");
        try
        {
            sc.kind = parse_scenario_kind(k->get<std::string>());
        }
        catch (const std::invalid_argument &e)
        {
            throw ScenarioError("kind", e.what());
        }
        if (expected && *expected != sc.kind)
            throw ScenarioError("kind", "file declares '" + std::string(to_string(sc.kind)) +
                                            "' but '" + std::string(to_string(*expected)) + "' was requested");
    }
    else if (expected)
    {
        sc.kind = *expected;
    }
    else
    {
        throw ScenarioError("kind", "required field missing");
    }

    RunConfig &run = sc.run;
    optional_field(root, "", "realizations", run.realizations, read_unsigned);
    if (run.realizations < 1)
        throw ScenarioError("realizations", "must be >= 1");
    optional_field(root, "", "seed", run.seed.master, read_unsigned);
    optional_field(root, "", "threads", run.threads, read_int);
    if (const json *s = find(root, "strategies"))
        run.strategies = read_strategies(*s);

    if (const json *g = find(root, "grid"))
    {
        require_object(*g, "grid");
        reject_unknown(*g, "grid", {"circ_points", "tau_points"});
        optional_field(*g, "grid", "circ_points", run.grid.circ_points, read_int);
        optional_field(*g, "grid", "tau_points", run.grid.tau_points, read_int);
    }
    try
    {
        validate(run.grid);
    }
    catch (const std::invalid_argument &e)
    {
        throw ScenarioError("grid", e.what());
    }

    run.params = read_system(find(root, "system"));

    const json *fading = find(root, "fading");
    const json *geometry = find(root, "geometry");
    const json *sweep = find(root, "sweep");
    switch (sc.kind)
    {
    case ScenarioKind::iri_sweep:
    case ScenarioKind::max_improper_sweep:
        if (geometry)
            throw ScenarioError("geometry", "not allowed for an interference sweep");
        if (!fading)
            throw ScenarioError("fading", "required field missing");
        run.source = read_fading(*fading, false);
        break;
    case ScenarioKind::location_sweep:
        if (fading)
            throw ScenarioError("fading", "not allowed for a location sweep");
        run.source = read_geometry(geometry, false);
        break;
    case ScenarioKind::single:
        if (sweep)
            throw ScenarioError("sweep", "not allowed for a single run");
        if ((fading == nullptr) == (geometry == nullptr))
            throw ScenarioError("fading", "a single run needs exactly one of 'fading' or 'geometry'");
        if (fading)
            run.source = read_fading(*fading, true);
        else
            run.source = read_geometry(geometry, true);
        break;
    }

    if (sc.kind != ScenarioKind::single)
        sc.sweep_values = sweep ? read_sweep(*sweep, sc.kind) : default_sweep_values(sc.kind);
    return sc;
}

ScenarioFile load_scenario(const std::filesystem::path &path, std::optional<ScenarioKind> expected)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    if (in.bad())
        throw std::runtime_error("cannot read " + path.string());
    return parse_scenario(text.str(), expected);
}

void write_sweep_csv(std::ostream &out, const std::vector<SweepPoint> &points)
{
    out << kCsvHeader << '\n';
    for (const auto &p : points)
    {
        for (const auto &s : p.stats.per_strategy)
        {
            out << format_real(p.value) << ',' << to_string(s.strategy) << ',' << format_real(s.mean_rate) << ','
                << format_real(s.mean_c1) << ',' << format_real(s.mean_c2) << ',' << format_real(s.mean_tau) << ','
                << s.count << ',' << p.seed.master << '\n';
        }
    }
}

std::vector<CsvRow> read_sweep_csv(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw std::runtime_error("CSV header mismatch");
    std::vector<CsvRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line))
    {
        ++lineno;
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        if (cells.size() != 8)
            throw std::runtime_error("CSV line " + std::to_string(lineno) + ": expected 8 columns");
        try
        {
            rows.push_back({std::stod(cells[0]), cells[1], std::stod(cells[2]), std::stod(cells[3]),
                            std::stod(cells[4]), std::stod(cells[5]), std::stoull(cells[6]), std::stoull(cells[7])});
        }
        catch (const std::exception &)
        {
            throw std::runtime_error("CSV line " + std::to_string(lineno) + ": malformed number");
        }
    }
    return rows;
}

} // namespace vfd
