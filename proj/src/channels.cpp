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

#include "vfd/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vfd
{

namespace
{
// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double positive_exponential(RandomStream &stream, double mean)
{
    std::exponential_distribution<double> dist(1.0 / mean);
    double x = 0.0;
    while (!(x > 0.0))
        x = dist(stream);
    return x;
}

void require_finite(double v, const char *name)
{
    if (!std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be finite");
}
} // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t counter) noexcept
{
    return mix64(mix64(seed) ^ mix64(counter ^ 0x6a09e667f3bcc909ULL));
}

RandomStream make_stream(Seed master, std::uint64_t index)
{
    const std::uint64_t s = derive_seed(master.master, index);
    std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return RandomStream(seq);
}

void validate(const FadingSpec &spec)
{
    require_finite(spec.mean_h1_db, "mean_h1_db");
    require_finite(spec.mean_h2_db, "mean_h2_db");
    require_finite(spec.mean_g1_db, "mean_g1_db");
    require_finite(spec.mean_g2_db, "mean_g2_db");
    require_finite(spec.mean_f_db, "mean_f_db");
}

void validate(const GeometrySpec &geo)
{
    if (!(geo.d_sr2 > 0.0 && geo.d_sr2 < 1.0))
        throw std::invalid_argument("d_sr2 must lie in (0, 1)");
    if (!(geo.vertical_offset > 0.0) || !std::isfinite(geo.vertical_offset))
        throw std::invalid_argument("vertical_offset must be > 0");
    if (!(geo.pathloss_exp > 0.0) || !std::isfinite(geo.pathloss_exp))
        throw std::invalid_argument("pathloss_exp must be > 0");
    if (!(geo.shadowing_db >= 0.0) || !std::isfinite(geo.shadowing_db))
        throw std::invalid_argument("shadowing_db must be >= 0");
}

MeanGains mean_gains(const FadingSpec &spec)
{
    validate(spec);
    return {db_to_linear(spec.mean_h1_db), db_to_linear(spec.mean_h2_db), db_to_linear(spec.mean_g1_db),
            db_to_linear(spec.mean_g2_db), db_to_linear(spec.mean_f_db)};
}

RelayLayout relay_layout(const GeometrySpec &geo)
{
    validate(geo);
    return {Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.5, geo.vertical_offset),
            Eigen::Vector2d(geo.d_sr2, -geo.vertical_offset)};
}

MeanGains geometry_to_mean_gains(const GeometrySpec &geo)
{
    const RelayLayout n = relay_layout(geo);
    const auto gain = [&](const Eigen::Vector2d &a, const Eigen::Vector2d &b) {
        const double d = (a - b).norm();
        if (!(d > 0.0))
            throw std::domain_error("geometry_to_mean_gains: coincident nodes");
        return std::pow(d, -geo.pathloss_exp);
    };
    return {gain(n.source, n.relay1), gain(n.source, n.relay2), gain(n.relay1, n.destination),
            gain(n.relay2, n.destination), gain(n.relay1, n.relay2)};
}

LinkGains draw_rayleigh_gains(const FadingSpec &spec, RandomStream &stream)
{
    const MeanGains m = mean_gains(spec);
    const double h1 = positive_exponential(stream, m.h1_sq);
    const double h2 = positive_exponential(stream, m.h2_sq);
    const double g1 = positive_exponential(stream, m.g1_sq);
    const double g2 = positive_exponential(stream, m.g2_sq);
    const double f = positive_exponential(stream, m.f_sq);
    return {h1, h2, g1, g2, f};
}

LinkGains draw_geometric_gains(const GeometrySpec &geo, RandomStream &stream, SmallScaleFading fading)
{
    const MeanGains m = geometry_to_mean_gains(geo);
    std::normal_distribution<double> shadow_db(0.0, 1.0);

    // per link: shadowing draw, then fading draw
    const auto draw = [&](double mean) {
        const double shadow = geo.shadowing_db > 0.0 ? db_to_linear(geo.shadowing_db * shadow_db(stream)) : 1.0;
        const double small = fading == SmallScaleFading::rayleigh ? positive_exponential(stream, 1.0) : 1.0;
        return mean * shadow * small;
    };
    const double h1 = draw(m.h1_sq);
    const double h2 = draw(m.h2_sq);
    const double g1 = draw(m.g1_sq);
    const double g2 = draw(m.g2_sq);
    const double f = draw(m.f_sq);
    return {h1, h2, g1, g2, f};
}

} // namespace vfd
