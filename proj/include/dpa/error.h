// dpa/error.h

// Copyright 2026  dpa authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef DPA_ERROR_H_
#define DPA_ERROR_H_

#include <stdexcept>
#include <string>

namespace dpa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data: unreadable files, malformed formats, unusable signals.
class DataError : public Error {
 public:
  using Error::Error;
};

// Invalid parameters or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An iterative solver hit its iteration cap before reaching tolerance.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what, double worst_violation = 0.0)
      : Error(what), worst_violation_(worst_violation) {}
  double worst_violation() const { return worst_violation_; }

 private:
  double worst_violation_;
};

}  // namespace dpa

#endif  // DPA_ERROR_H_
