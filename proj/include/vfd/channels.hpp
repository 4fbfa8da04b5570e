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

#ifndef VFD_CHANNELS_HPP
#define VFD_CHANNELS_HPP

#include "vfd/core_rates.hpp"

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace vfd
{

/// Random engine owned by a single realization.
using RandomStream = std::mt19937_64;

struct Seed
{
    std::uint64_t master = 0;

    friend bool operator==(Seed, Seed) = default;
};

/// Stateless 64-bit mix of (seed, counter). Distinct counters give
/// statistically independent sub-seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) noexcept;

/// Stream for realization `index` under `master`. Depends on nothing else,
/// so realizations can be drawn in any order on any thread.
RandomStream make_stream(Seed master, std::uint64_t index);

inline double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

/// Mean power gains in dB for Rayleigh fading.
struct FadingSpec
{
    double mean_h1_db = 0.0;
    double mean_h2_db = 0.0;
    double mean_g1_db = 0.0;
    double mean_g2_db = 0.0;
    double mean_f_db = 0.0;
};

void validate(const FadingSpec &spec);

/// Relay placement in coordinates normalized by the S-D distance.
/// S = (0, 0), D = (1, 0), R1 = (0.5, +v), R2 = (d_sr2, -v).
struct GeometrySpec
{
    double d_sr2 = 0.5;
    double vertical_offset = 0.1;
    double pathloss_exp = 2.0;
    double shadowing_db = 5.0;
};

void validate(const GeometrySpec &geo);

/// Linear mean gains, field order as in LinkGains.
struct MeanGains
{
    double h1_sq;
    double h2_sq;
    double g1_sq;
    double g2_sq;
    double f_sq;
};

MeanGains mean_gains(const FadingSpec &spec);

struct RelayLayout
{
    Eigen::Vector2d source;
    Eigen::Vector2d destination;
    Eigen::Vector2d relay1;
    Eigen::Vector2d relay2;
};

RelayLayout relay_layout(const GeometrySpec &geo);

/// distance^(-pathloss_exp) for every link.
MeanGains geometry_to_mean_gains(const GeometrySpec &geo);

/// Each power gain is exponential (Rayleigh amplitude) with the configured
/// mean. Draw order: h1, h2, g1, g2, f.
LinkGains draw_rayleigh_gains(const FadingSpec &spec, RandomStream &stream);

enum class SmallScaleFading
{
    rayleigh,
    mean_only ///< replace the exponential factor by its mean (testing)
};

/// Path loss x lognormal shadowing x small-scale fading, i.i.d. per link.
LinkGains draw_geometric_gains(const GeometrySpec &geo, RandomStream &stream,
                               SmallScaleFading fading = SmallScaleFading::rayleigh);

} // namespace vfd

#endif // VFD_CHANNELS_HPP
