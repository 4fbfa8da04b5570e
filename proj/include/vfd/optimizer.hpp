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

#ifndef VFD_OPTIMIZER_HPP
#define VFD_OPTIMIZER_HPP

#include "vfd/core_rates.hpp"

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace vfd
{

enum class CircularityMode
{
    proper,              ///< C1 = C2 = 0
    shared,              ///< C1 = C2, one axis scanned
    distinct,            ///< C1 x C2 scanned independently
    max_improper,        ///< C1 = C2 = 1
};

enum class TauMode
{
    equal_fixed, ///< tau = 0.5
    optimized,   ///< tau axis scanned
};

struct Strategy
{
    CircularityMode circularity = CircularityMode::proper;
    TauMode tau = TauMode::equal_fixed;

    friend bool operator==(Strategy, Strategy) = default;
};

/// proper_eq, proper_opt, shared_eq, shared_opt, distinct_eq, distinct_opt,
/// maximp_eq, maximp_opt
std::string to_string(Strategy s);
Strategy parse_strategy(std::string_view name);
std::vector<Strategy> all_strategies();

/// Samples per axis. Both axes include 0 and 1; the tau axis must also hold
/// 0.5 exactly, hence an odd count.
struct GridSpec
{
    int circ_points = 51;
    int tau_points = 51;
};

void validate(const GridSpec &grid);

/// k / (n - 1), k = 0..n-1. Exact at 0, 1 and (for odd n) 0.5.
Eigen::ArrayXd unit_axis(int n);

struct OptResult
{
    SignalConfig best;
    double rate;
    RateBreakdown breakdown;
};

/// Every candidate of the strategy in search order (C1, C2, tau ascending).
std::vector<SignalConfig> candidate_grid(Strategy strategy, const GridSpec &grid);

/// Maximizes the total rate over the strategy's candidates. Ties go to the
/// first candidate in search order.
OptResult grid_search(Strategy strategy, const GridSpec &grid, const SystemParams &params, const LinkGains &gains);

} // namespace vfd

#endif // VFD_OPTIMIZER_HPP
