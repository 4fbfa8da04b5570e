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

#include "vfd/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

namespace vfd
{

void validate(const RunConfig &config)
{
    if (config.realizations < 1)
        throw std::invalid_argument("realizations must be >= 1");
    if (config.strategies.empty())
        throw std::invalid_argument("strategies must not be empty");
    validate(config.grid);
    std::visit([](const auto &spec) { validate(spec); }, config.source);
}

const StrategyStats &AggregateStats::at(Strategy s) const
{
    for (const auto &e : per_strategy)
        if (e.strategy == s)
            return e;
    throw std::out_of_range("no statistics for strategy " + to_string(s));
}

unsigned resolve_worker_count(unsigned requested)
{
    unsigned n = requested;
    if (n == 0)
        n = std::max(1u, std::thread::hardware_concurrency());
    if (const char *cap = std::getenv("VFD_THREADS"))
    {
        char *end = nullptr;
        const unsigned long v = std::strtoul(cap, &end, 10);
        if (end != cap && *end == '\0' && v > 0)
            n = std::min<unsigned long>(n, v);
    }
    return n;
}

LinkGains draw_realization(const ChannelSource &source, Seed seed, std::uint64_t index)
{
    RandomStream stream = make_stream(seed, index);
    if (const auto *fading = std::get_if<FadingSpec>(&source))
        return draw_rayleigh_gains(*fading, stream);
    return draw_geometric_gains(std::get<GeometrySpec>(source), stream);
}

AggregateStats run_point(const RunConfig &config)
{
    validate(config);

    const std::size_t n = config.realizations;
    const std::size_t ns = config.strategies.size();

    struct Sample
    {
        double rate, c1, c2, tau;
    };
    std::vector<Sample> samples(n * ns);
    std::vector<std::exception_ptr> errors(n);

    const auto work = [&](std::size_t k) {
        try
        {
            const LinkGains gains = draw_realization(config.source, config.seed, k);
            for (std::size_t s = 0; s < ns; ++s)
            {
                const OptResult r = grid_search(config.strategies[s], config.grid, config.params, gains);
                samples[k * ns + s] = {r.rate, r.best.c1().value(), r.best.c2().value(), r.best.tau()};
            }
        }
        catch (...)
        {
            errors[k] = std::current_exception();
        }
    };

    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_worker_count(config.threads), n));
    if (workers <= 1)
    {
        for (std::size_t k = 0; k < n; ++k)
            work(k);
    }
    else
    {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t k = next++; k < n; k = next++)
                    work(k);
            });
    }

    for (std::size_t k = 0; k < n; ++k)
    {
        if (!errors[k])
            continue;
        try
        {
            std::rethrow_exception(errors[k]);
        }
        catch (const std::exception &e)
        {
            throw std::runtime_error("realization " + std::to_string(k) + ": " + e.what());
        }
    }

    // Plain sums in realization order, long double accumulator. Rounding is
    // monotone, so per-realization rate ordering between strategies carries
    // over to the means.
    AggregateStats out;
    out.per_strategy.reserve(ns);
    for (std::size_t s = 0; s < ns; ++s)
    {
        long double rate = 0, c1 = 0, c2 = 0, tau = 0;
        for (std::size_t k = 0; k < n; ++k)
        {
            const Sample &x = samples[k * ns + s];
            rate += x.rate;
            c1 += x.c1;
            c2 += x.c2;
            tau += x.tau;
        }
        const long double count = static_cast<long double>(n);
        StrategyStats st;
        st.strategy = config.strategies[s];
        st.mean_rate = static_cast<double>(rate / count);
        st.mean_c1 = static_cast<double>(c1 / count);
        st.mean_c2 = static_cast<double>(c2 / count);
        st.mean_tau = static_cast<double>(tau / count);
        st.count = n;
        out.per_strategy.push_back(st);
    }
    return out;
}

SweepAxis parse_sweep_axis(std::string_view name)
{
    if (name == "mean_f_db")
        return SweepAxis::mean_f_db;
    if (name == "d_sr2")
        return SweepAxis::d_sr2;
    throw std::invalid_argument("invalid sweep axis '" + std::string(name) + "'");
}

std::string_view to_string(SweepAxis axis)
{
    return axis == SweepAxis::mean_f_db ? "mean_f_db" : "d_sr2";
}

Seed sweep_point_seed(Seed master, double value)
{
    // +0.0 and -0.0 are the same sweep point
    const double v = value == 0.0 ? 0.0 : value;
    return Seed{derive_seed(master.master, std::bit_cast<std::uint64_t>(v))};
}

std::vector<SweepPoint> run_sweep(const RunConfig &base, SweepAxis axis, const std::vector<double> &values)
{
    for (std::size_t k = 0; k < values.size(); ++k)
    {
        if (!std::isfinite(values[k]))
            throw std::invalid_argument("sweep values must be finite");
        if (k > 0 && !(values[k] > values[k - 1]))
            throw std::invalid_argument("sweep values must be strictly ascending");
    }
    if (axis == SweepAxis::mean_f_db && !std::holds_alternative<FadingSpec>(base.source))
        throw std::invalid_argument("mean_f_db sweep needs a fading channel source");
    if (axis == SweepAxis::d_sr2 && !std::holds_alternative<GeometrySpec>(base.source))
        throw std::invalid_argument("d_sr2 sweep needs a geometry channel source");

    std::vector<SweepPoint> out;
    out.reserve(values.size());
    for (const double v : values)
    {
        RunConfig cfg = base;
        if (axis == SweepAxis::mean_f_db)
            std::get<FadingSpec>(cfg.source).mean_f_db = v;
        else
            std::get<GeometrySpec>(cfg.source).d_sr2 = v;
        cfg.seed = sweep_point_seed(base.seed, v);
        out.push_back({v, cfg.seed, run_point(cfg)});
    }
    return out;
}

} // namespace vfd
