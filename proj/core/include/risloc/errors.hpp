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

#include <stdexcept>
#include <string>

namespace risloc
{

// Coarse error category; the CLI maps it to a process exit code.
enum class ErrorKind
{
    Schema,
    Invariant,
    Config,
    DegenerateGeometry,
    SingularJacobian,
    SingularFim,
    AllSingular,
    Io,
};

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

#define RISLOC_DEFINE_ERROR(Name)                                                \
    class Name : public Error                                                    \
    {                                                                            \
    public:                                                                      \
        explicit Name(const std::string &what) : Error(ErrorKind::Name, what) {} \
    }

RISLOC_DEFINE_ERROR(DegenerateGeometry);
RISLOC_DEFINE_ERROR(SingularJacobian);
RISLOC_DEFINE_ERROR(SingularFim);
RISLOC_DEFINE_ERROR(AllSingular);

#undef RISLOC_DEFINE_ERROR

class SchemaError : public Error
{
public:
    explicit SchemaError(const std::string &what) : Error(ErrorKind::Schema, what) {}
};

class InvariantError : public Error
{
public:
    explicit InvariantError(const std::string &what) : Error(ErrorKind::Invariant, what) {}
};

class ConfigError : public Error
{
public:
    explicit ConfigError(const std::string &what) : Error(ErrorKind::Config, what) {}
};

class IoError : public Error
{
public:
    explicit IoError(const std::string &what) : Error(ErrorKind::Io, what) {}
};

} // namespace risloc
