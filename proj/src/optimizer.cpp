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

#include "vfd/optimizer.hpp"

#include <array>
#include <stdexcept>

namespace vfd
{

namespace
{
struct NamedStrategy
{
    std::string_view name;
    Strategy strategy;
};

constexpr std::array<NamedStrategy, 8> kStrategies{{
    {"proper_eq", {CircularityMode::proper, TauMode::equal_fixed}},
    {"proper_opt", {CircularityMode::proper, TauMode::optimized}},
    {"shared_eq", {CircularityMode::shared, TauMode::equal_fixed}},
    {"shared_opt", {CircularityMode::shared, TauMode::optimized}},
    {"distinct_eq", {CircularityMode::distinct, TauMode::equal_fixed}},
    {"distinct_opt", {CircularityMode::distinct, TauMode::optimized}},
    {"maximp_eq", {CircularityMode::max_improper, TauMode::equal_fixed}},
    {"maximp_opt", {CircularityMode::max_improper, TauMode::optimized}},
}};

Eigen::ArrayXd circularity_values(CircularityMode mode, int circ_points)
{
    switch (mode)
    {
    case CircularityMode::proper:
        return Eigen::ArrayXd::Zero(1);
    case CircularityMode::max_improper:
        return Eigen::ArrayXd::Ones(1);
    case CircularityMode::shared:
    case CircularityMode::distinct:
        return unit_axis(circ_points);
    }
    throw std::logic_error("unhandled circularity mode");
}

Eigen::ArrayXd tau_values(TauMode mode, int tau_points)
{
    if (mode == TauMode::equal_fixed)
        return Eigen::ArrayXd::Constant(1, 0.5);
    return unit_axis(tau_points);
}

// Visits (c1 index, c2 index) pairs of the strategy in search order.
template <typename F>
void for_each_circularity_pair(CircularityMode mode, Eigen::Index n, F &&visit)
{
    for (Eigen::Index a = 0; a < n; ++a)
    {
        if (mode != CircularityMode::distinct)
        {
            visit(a, a);
            continue;
        }
        for (Eigen::Index b = 0; b < n; ++b)
            visit(a, b);
    }
}
} // namespace

std::string to_string(Strategy s)
{
    for (const auto &e : kStrategies)
        if (e.strategy == s)
            return std::string(e.name);
    throw std::logic_error("unnamed strategy");
}

Strategy parse_strategy(std::string_view name)
{
    for (const auto &e : kStrategies)
        if (e.name == name)
            return e.strategy;
    throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::vector<Strategy> all_strategies()
{
    std::vector<Strategy> out;
    for (const auto &e : kStrategies)
        out.push_back(e.strategy);
    return out;
}

void validate(const GridSpec &grid)
{
    if (grid.circ_points < 2)
        throw std::invalid_argument("circ_points must be >= 2");
    if (grid.tau_points < 2)
        throw std::invalid_argument("tau_points must be >= 2");
    if (grid.tau_points % 2 == 0)
        throw std::invalid_argument("tau_points must be odd so the tau grid contains 0.5");
}

Eigen::ArrayXd unit_axis(int n)
{
    if (n < 2)
        throw std::invalid_argument("unit_axis: need at least 2 points");
    const double last = static_cast<double>(n - 1);
    return Eigen::ArrayXd::NullaryExpr(n, [last](Eigen::Index k) { return static_cast<double>(k) / last; });
}

std::vector<SignalConfig> candidate_grid(Strategy strategy, const GridSpec &grid)
{
    validate(grid);
    const Eigen::ArrayXd c = circularity_values(strategy.circularity, grid.circ_points);
    const Eigen::ArrayXd t = tau_values(strategy.tau, grid.tau_points);

    std::vector<SignalConfig> out;
    for_each_circularity_pair(strategy.circularity, c.size(), [&](Eigen::Index a, Eigen::Index b) {
        for (Eigen::Index k = 0; k < t.size(); ++k)
            out.emplace_back(c(a), c(b), t(k));
    });
    return out;
}

OptResult grid_search(Strategy strategy, const GridSpec &grid, const SystemParams &params, const LinkGains &gains)
{
    validate(grid);
    const Eigen::ArrayXd c = circularity_values(strategy.circularity, grid.circ_points);
    const Eigen::ArrayXd t = tau_values(strategy.tau, grid.tau_points);

    // Hop rates depend on a single circularity each, so tabulate them once.
    const auto tabulate = [&](auto &&hop) {
        return c.unaryExpr([&](double v) { return hop(Circularity(v)); }).eval();
    };
    const Eigen::ArrayXd r11 = tabulate([&](Circularity v) { return first_hop_rate(Path::one, v, params, gains); });
    const Eigen::ArrayXd r12 = tabulate([&](Circularity v) { return second_hop_rate(Path::one, v, params, gains); });
    const Eigen::ArrayXd r21 = tabulate([&](Circularity v) { return first_hop_rate(Path::two, v, params, gains); });
    const Eigen::ArrayXd r22 = tabulate([&](Circularity v) { return second_hop_rate(Path::two, v, params, gains); });

    double best_rate = -1.0;
    Eigen::Index best_a = 0, best_b = 0, best_t = 0;
    for_each_circularity_pair(strategy.circularity, c.size(), [&](Eigen::Index a, Eigen::Index b) {
        // C1 = c(a) drives r12 and r21, C2 = c(b) drives r11 and r22
        for (Eigen::Index k = 0; k < t.size(); ++k)
        {
            const double rate = combine_hops(t(k), r11(b), r12(a), r21(a), r22(b)).total;
            if (rate > best_rate)
            {
                best_rate = rate;
                best_a = a;
                best_b = b;
                best_t = k;
            }
        }
    });

    const SignalConfig best(c(best_a), c(best_b), t(best_t));
    const RateBreakdown breakdown = total_rate(best, params, gains);
    return {best, breakdown.total, breakdown};
}

} // namespace vfd
