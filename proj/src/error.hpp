/*
   Copyright (c) 2026, the posekit developers

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

#ifndef POSEKIT_ERROR_HPP
#define POSEKIT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace posekit {

// Base class for all posekit failures surfaced to callers.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; message carries the line number when known.
class ParseError : public Error {
  public:
    ParseError(const std::string& what, size_t line = 0) : Error(format(what, line)), line_(line) {}
    size_t line() const { return line_; }

  private:
    static std::string format(const std::string& what, size_t line) {
        if (line == 0) return what;
        return "line " + std::to_string(line) + ": " + what;
    }
    size_t line_ = 0;
};

// A requested operation is undefined for the given input
// (e.g. scaffold mask on an acyclic molecule, score of an empty pocket).
class DomainError : public Error {
  public:
    using Error::Error;
};

// An objective evaluation produced a non-finite value; probe_index
// identifies the finite-difference probe that failed (6 == base point).
class EvalError : public Error {
  public:
    EvalError(const std::string& what, size_t probe_index)
        : Error(what), probe_index_(probe_index) {}
    size_t probe_index() const { return probe_index_; }

  private:
    size_t probe_index_;
};

}  // namespace posekit

#endif
