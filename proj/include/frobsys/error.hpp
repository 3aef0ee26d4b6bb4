/*
   Copyright 2026 The frobsys authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FROBSYS_ERROR_HPP
#define FROBSYS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace frobsys {

/// Base class of all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input data: bad records, broken invariants, unknown references.
class DataError : public Error {
  public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

/// Two values that must live over the same field do not.
class FieldMismatchError : public Error {
  public:
    explicit FieldMismatchError(const std::string& msg) : Error(msg) {}
};

/// Numeric phase ran out of precision; never silent.
class PrecisionError : public Error {
  public:
    explicit PrecisionError(const std::string& msg) : Error(msg) {}
};

}  // namespace frobsys

#endif
