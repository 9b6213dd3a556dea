// SPDX-License-Identifier: Apache-2.0
//
// mmwcb - hierarchical codebook design for hybrid-precoding mmWave arrays
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

#ifndef MMWCB_ERROR_HPP
#define MMWCB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mmwcb
{

// Base of every error thrown by the library. The CLI maps the subclasses onto exit codes.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error
{
public:
    using Error::Error;
};

// Zero vector where a nonzero one is required.
class DegenerateInput : public Error
{
public:
    using Error::Error;
};

class PreconditionError : public Error
{
public:
    using Error::Error;
};

class InvalidInterval : public Error
{
public:
    using Error::Error;
};

class InfeasibleGeometry : public Error
{
public:
    using Error::Error;
};

class DimensionMismatch : public Error
{
public:
    using Error::Error;
};

// Malformed codebook document; what() carries "line L: field 'F': reason".
class ParseError : public Error
{
public:
    ParseError(std::size_t line, const std::string &field, const std::string &reason)
        : Error("line " + std::to_string(line) + ": field '" + field + "': " + reason),
          line_(line), field_(field) {}

    std::size_t line() const noexcept { return line_; }
    const std::string &field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

class ValidationError : public Error
{
public:
    using Error::Error;
};

class IoError : public Error
{
public:
    using Error::Error;
};

} // namespace mmwcb

#endif
