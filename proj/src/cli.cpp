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

#include "vfd/cli.hpp"

#include "vfd/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace vfd
{

namespace
{
struct Overrides
{
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> realizations;
    std::optional<int> grid_points;
    std::vector<std::string> strategies;
};

void add_common_options(CLI::App &cmd, Overrides &o)
{
    cmd.add_option("--config", o.config, "Scenario JSON file")->required();
    cmd.add_option("--out", o.out, "Output file (CSV for sweeps; stdout when omitted)");
    cmd.add_option("--seed", o.seed, "Master seed");
    cmd.add_option("--realizations", o.realizations, "Channel realizations per point")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--grid-points", o.grid_points, "Samples per circularity and tau axis (odd)")
        ->check(CLI::Range(2, 1'000'000));
    cmd.add_option("--strategies", o.strategies, "Comma-separated strategy list")->delimiter(',');
}

void apply(const Overrides &o, ScenarioFile &sc)
{
    if (o.seed)
        sc.run.seed.master = *o.seed;
    if (o.realizations)
        sc.run.realizations = *o.realizations;
    if (o.grid_points)
    {
        sc.run.grid.circ_points = *o.grid_points;
        sc.run.grid.tau_points = *o.grid_points;
        try
        {
            validate(sc.run.grid);
        }
        catch (const std::invalid_argument &e)
        {
            throw ScenarioError("--grid-points", e.what());
        }
    }
    if (!o.strategies.empty())
    {
        std::vector<Strategy> list;
        for (const auto &name : o.strategies)
        {
            try
            {
                list.push_back(parse_strategy(name));
            }
            catch (const std::invalid_argument &e)
            {
                throw ScenarioError("--strategies", e.what());
            }
        }
        sc.run.strategies = std::move(list);
    }
}

std::string g9(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void print_single(std::ostream &out, const ScenarioFile &sc)
{
    const LinkGains gains = draw_realization(sc.run.source, sc.run.seed, 0);
    out << "seed " << sc.run.seed.master << '\n';
    out << "gains h1_sq=" << g9(gains.h1_sq()) << " h2_sq=" << g9(gains.h2_sq()) << " g1_sq=" << g9(gains.g1_sq())
        << " g2_sq=" << g9(gains.g2_sq()) << " f_sq=" << g9(gains.f_sq()) << '\n';
    for (const Strategy s : sc.run.strategies)
    {
        const OptResult r = grid_search(s, sc.run.grid, sc.run.params, gains);
        const RateBreakdown &b = r.breakdown;
        out << to_string(s) << ": c1=" << g9(r.best.c1().value()) << " c2=" << g9(r.best.c2().value())
            << " tau=" << g9(r.best.tau()) << " rate=" << g9(r.rate) << '\n';
        out << "  r11=" << g9(b.r11) << " r12=" << g9(b.r12) << " r21=" << g9(b.r21) << " r22=" << g9(b.r22)
            << " path1=" << g9(b.path1) << " path2=" << g9(b.path2) << " total=" << g9(b.total) << '\n';
    }
}

int run(ScenarioKind kind, const Overrides &o, std::ostream &out, std::ostream &err)
{
    ScenarioFile sc;
    try
    {
        sc = load_scenario(o.config, kind);
        apply(o, sc);
        validate(sc.run);
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    std::ostringstream text;
    try
    {
        if (kind == ScenarioKind::single)
            print_single(text, sc);
        else
            write_sweep_csv(text, run_sweep(sc.run, sweep_axis(kind), sc.sweep_values));
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    if (o.out.empty())
    {
        out << text.str();
        return 0;
    }
    std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
    file << text.str();
    file.close();
    if (!file)
    {
        err << "error: cannot write " << o.out << '\n';
        return 1;
    }
    return 0;
}
} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Rate simulator and optimizer for virtual full-duplex relaying with improper signaling", "vfd_sim"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    struct Command
    {
        const char *name;
        ScenarioKind kind;
        const char *help;
    };
    const Command commands[] = {
        {"iri-sweep", ScenarioKind::iri_sweep, "Sweep the mean inter-relay gain (dB)"},
        {"max-improper-sweep", ScenarioKind::max_improper_sweep,
         "Interference sweep comparing proper and maximally improper signaling"},
        {"location-sweep", ScenarioKind::location_sweep, "Sweep the S-R2 distance"},
        {"single", ScenarioKind::single, "Optimize one channel realization and print the rates"},
    };

    Overrides o;
    std::vector<std::pair<CLI::App *, ScenarioKind>> subs;
    for (const auto &c : commands)
    {
        CLI::App *sub = app.add_subcommand(c.name, c.help);
        add_common_options(*sub, o);
        subs.emplace_back(sub, c.kind);
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    for (const auto &[sub, kind] : subs)
        if (sub->parsed())
            return run(kind, o, out, err);
    return 2;
}

} // namespace vfd
