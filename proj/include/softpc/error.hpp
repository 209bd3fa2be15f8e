// SPDX-License-Identifier: Apache-2.0
//
// softpc: soft (near-analog) wireless delivery of 3D point clouds
// Copyright (C) 2026 The softpc Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace softpc
{
    /// Invalid argument or inconsistent dimensions.
    class ParameterError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    /// Numerical breakdown (non-convergence, zero norm, NaN).
    class NumericalError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Input whose geometry cannot be processed, e.g. all points coincident.
    class DegenerateInputError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    /// File parse failure. `line()` is 1-based, 0 when not line-specific.
    class ParseError : public std::runtime_error
    {
    public:
        ParseError(const std::string &message, std::size_t line, const std::string &source = {})
            : std::runtime_error(format(message, line, source)), message_(message), line_(line)
        {
        }
        std::size_t line() const noexcept { return line_; }
        const std::string &message() const noexcept { return message_; }

    private:
        static std::string format(const std::string &message, std::size_t line, const std::string &source)
        {
            std::string out = source.empty() ? std::string{} : source + ": ";
            if (line != 0)
                out += "line " + std::to_string(line) + ": ";
            return out + message;
        }

        std::string message_;
        std::size_t line_;
    };

    /// Checkpoint or config file that is corrupt or of an unsupported version.
    class FormatError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };
}
