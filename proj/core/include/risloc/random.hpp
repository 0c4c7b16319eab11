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

#include <cstdint>
#include <initializer_list>

namespace risloc
{

// SplitMix64 finaliser; used as a stateless counter-based generator.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Hashes an ordered key tuple into one 64-bit word.
std::uint64_t hash_key(std::initializer_list<std::uint64_t> key) noexcept;

// Uniform double in [0, 1) from the top 53 bits of a 64-bit word.
double unit_uniform(std::uint64_t bits) noexcept;

// Standard normal draw that depends only on the key (Box-Muller).
double keyed_normal(std::initializer_list<std::uint64_t> key) noexcept;

} // namespace risloc
