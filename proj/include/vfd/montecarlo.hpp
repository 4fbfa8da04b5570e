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

#ifndef VFD_MONTECARLO_HPP
#define VFD_MONTECARLO_HPP

#include "vfd/channels.hpp"
#include "vfd/core_rates.hpp"
#include "vfd/optimizer.hpp"

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

namespace vfd
{

using ChannelSource = std::variant<FadingSpec, GeometrySpec>;

struct RunConfig
{
    std::size_t realizations = 10000;
    Seed seed{};
    std::vector<Strategy> strategies = all_strategies();
    GridSpec grid{};
    SystemParams params{1.0, 1.0, 1.0, 1.0};
    ChannelSource source = FadingSpec{};
    /// 0 picks the hardware concurrency, capped by VFD_THREADS when set.
    unsigned threads = 0;
};

void validate(const RunConfig &config);

struct StrategyStats
{
    Strategy strategy;
    double mean_rate = 0.0;
    double mean_c1 = 0.0;
    double mean_c2 = 0.0;
    double mean_tau = 0.0;
    std::size_t count = 0;
};

/// One entry per requested strategy, in request order.
struct AggregateStats
{
    std::vector<StrategyStats> per_strategy;

    const StrategyStats &at(Strategy s) const;
};

/// Number of worker threads actually used for `requested` (0 = auto).
unsigned resolve_worker_count(unsigned requested);

/// Gains of realization `index`.
LinkGains draw_realization(const ChannelSource &source, Seed seed, std::uint64_t index);

/// Draws config.realizations channels and grid-searches each under every
/// strategy (all strategies see the same channels). Realizations may run
/// on several threads; the reduction runs in realization order, so the
/// result does not depend on the worker count.
AggregateStats run_point(const RunConfig &config);

enum class SweepAxis
{
    mean_f_db,
    d_sr2
};

SweepAxis parse_sweep_axis(std::string_view name);
std::string_view to_string(SweepAxis axis);

struct SweepPoint
{
    double value;
    Seed seed; ///< seed handed to run_point for this value
    AggregateStats stats;
};

/// Seed of the sweep point at `value`; depends on the master seed and the
/// value only.
Seed sweep_point_seed(Seed master, double value);

/// One run_point per value. `values` must be finite and ascending.
std::vector<SweepPoint> run_sweep(const RunConfig &base, SweepAxis axis, const std::vector<double> &values);

} // namespace vfd

#endif // VFD_MONTECARLO_HPP
