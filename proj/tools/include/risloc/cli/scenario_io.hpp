// SPDX-License-Identifier: Apache-2.0
//
// risloc - error bounds and RIS phase optimization for multi-RIS mmWave positioning
// Copyright (C) 2026 The risloc Authors
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

#pragma once

#include "risloc/scenario.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace risloc::cli
{

inline constexpr int kScenarioSchemaVersion = 1;

struct LoadedScenario
{
    Scenario scenario;
    std::string id;
    std::vector<std::string> warnings; // one line per defaulted field
};

// Parses a scenario document (JSON, schema version 1). Unknown keys and type
// mismatches raise SchemaError with the offending field path; physically
// invalid content raises InvariantError. dBm values are converted to watts here.
LoadedScenario parse_scenario(std::string_view text, std::string_view fallback_id = "scenario");

// Reads and parses a file; IoError if it cannot be read. The id defaults to the file stem.
LoadedScenario load_scenario(const std::filesystem::path &path);

// The six-element reference deployment (BS, MU and three RIS panels) with the
// non-geometric defaults used by the bundled scenarios/paper_vi.json.
Scenario reference_scenario();

double dbm_to_watts(double dbm);

} // namespace risloc::cli
