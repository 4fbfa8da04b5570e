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

#ifndef VFD_CLI_HPP
#define VFD_CLI_HPP

#include <iosfwd>

namespace vfd
{

/// Entry point of the vfd_sim tool.
///   vfd_sim <iri-sweep|max-improper-sweep|location-sweep|single> --config PATH
///           [--out PATH] [--seed U64] [--realizations N] [--grid-points N]
///           [--strategies a,b,...]
/// Returns 0 on success, 2 on bad usage, 1 on I/O or validation failure.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace vfd

#endif // VFD_CLI_HPP
