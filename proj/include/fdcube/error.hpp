/*
   Copyright 2026 The fdcube Authors

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

#ifndef FDCUBE_ERROR_HPP
#define FDCUBE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdcube {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent arguments: mismatched fields, invalid plans,
/// out-of-range multiplicities.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// Arithmetic that has no result, e.g. inverting zero.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Text that does not follow one of the grammars in io/poly/field.
class ParseError : public Error {
  public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}

    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

}  // namespace fdcube

#endif  // FDCUBE_ERROR_HPP
