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

#ifndef VFD_SCENARIO_HPP
#define VFD_SCENARIO_HPP

#include "vfd/montecarlo.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vfd
{

enum class ScenarioKind
{
    iri_sweep,
    max_improper_sweep,
    location_sweep,
    single
};

std::string_view to_string(ScenarioKind kind);
ScenarioKind parse_scenario_kind(std::string_view name);

/// Axis swept by a sweep kind. Throws for `single`.
SweepAxis sweep_axis(ScenarioKind kind);

/// Default sweep values: -10..35 dB in 5 dB steps for the interference
/// sweeps, 0.1..0.9 in steps of 0.1 for the location sweep.
std::vector<double> default_sweep_values(ScenarioKind kind);

struct ScenarioFile
{
    ScenarioKind kind = ScenarioKind::single;
    RunConfig run;
    std::vector<double> sweep_values;
};

/// Validation failure; what() starts with the offending field path.
class ScenarioError : public std::runtime_error
{
  public:
    ScenarioError(std::string field, const std::string &message);
    const std::string &field() const noexcept { return field_; }

  private:
    std::string field_;
};

/// Parses and validates a scenario document. `expected` (from the CLI
/// subcommand) fills in a missing "kind" and must match a present one.
ScenarioFile parse_scenario(std::string_view json_text, std::optional<ScenarioKind> expected = std::nullopt);

/// parse_scenario on a file's contents. Throws std::runtime_error when the
/// file cannot be read.
ScenarioFile load_scenario(const std::filesystem::path &path,
                           std::optional<ScenarioKind> expected = std::nullopt);

// ---- CSV -----------------------------------------------------------------

/// sweep_param,strategy,mean_rate,mean_c1,mean_c2,mean_tau,realizations,seed
inline constexpr std::string_view kCsvHeader =
    "sweep_param,strategy,mean_rate,mean_c1,mean_c2,mean_tau,realizations,seed";

struct CsvRow
{
    double sweep_param;
    std::string strategy;
    double mean_rate;
    double mean_c1;
    double mean_c2;
    double mean_tau;
    std::size_t realizations;
    std::uint64_t seed;
};

/// One row per (sweep value, strategy). Reals use 9 significant digits.
void write_sweep_csv(std::ostream &out, const std::vector<SweepPoint> &points);
std::vector<CsvRow> read_sweep_csv(std::istream &in);

} // namespace vfd

#endif // VFD_SCENARIO_HPP
