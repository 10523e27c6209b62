// SPDX-License-Identifier: Apache-2.0
//
// ulasim - link-level simulator for a high-mobility OFDM uplink with a large
// uniform linear transmit array
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

#ifndef ULASIM_ERRORS_HPP
#define ULASIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ulasim
{

// Named error conditions. Each maps one validation or runtime failure mode to
// a distinct type so callers and tests can react to the exact condition.

struct DelayExceedsCp : std::runtime_error
{
    explicit DelayExceedsCp(const std::string &msg) : std::runtime_error(msg) {}
};

struct SpacingTooWide : std::runtime_error
{
    explicit SpacingTooWide(const std::string &msg) : std::runtime_error(msg) {}
};

struct BadPowerProfile : std::runtime_error
{
    explicit BadPowerProfile(const std::string &msg) : std::runtime_error(msg) {}
};

struct BadLength : std::runtime_error
{
    explicit BadLength(const std::string &msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : std::runtime_error
{
    explicit DimensionMismatch(const std::string &msg) : std::runtime_error(msg) {}
};

struct ZeroTrainingSymbol : std::runtime_error
{
    explicit ZeroTrainingSymbol(const std::string &msg) : std::runtime_error(msg) {}
};

struct QuadratureNotConverged : std::runtime_error
{
    explicit QuadratureNotConverged(const std::string &msg) : std::runtime_error(msg) {}
};

struct ZeroTotalPower : std::runtime_error
{
    explicit ZeroTotalPower(const std::string &msg) : std::runtime_error(msg) {}
};

struct NegativeVariance : std::runtime_error
{
    explicit NegativeVariance(const std::string &msg) : std::runtime_error(msg) {}
};

struct DomainError : std::runtime_error
{
    explicit DomainError(const std::string &msg) : std::runtime_error(msg) {}
};

struct BadConfigFile : std::runtime_error
{
    explicit BadConfigFile(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace ulasim

#endif
