// Copyright 2026 The nehari Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NEHARI_ERROR_HPP
#define NEHARI_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace nehari {

// Numeric values match the C API status codes and the CLI exit codes.
enum class ErrorCode {
  Internal = 1,
  InvalidArgument = 2,
  BranchEmpty = 3,
  NotConverged = 4,
  OracleFailed = 5,
  NoCriticalPoint = 6,
  NoWitness = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::InvalidArgument, what) {}
};

class BranchEmpty : public Error {
 public:
  explicit BranchEmpty(const std::string& what)
      : Error(ErrorCode::BranchEmpty, what) {}
};

class NoCriticalPoint : public Error {
 public:
  explicit NoCriticalPoint(const std::string& what)
      : Error(ErrorCode::NoCriticalPoint, what) {}
};

class NoWitness : public Error {
 public:
  explicit NoWitness(const std::string& what)
      : Error(ErrorCode::NoWitness, what) {}
};

class OracleFailed : public Error {
 public:
  explicit OracleFailed(const std::string& what)
      : Error(ErrorCode::OracleFailed, what) {}
};

// Carries the best iterate reached before the run was abandoned.
class NotConverged : public Error {
 public:
  NotConverged(const std::string& what, std::vector<double> best)
      : Error(ErrorCode::NotConverged, what), best_(std::move(best)) {}
  const std::vector<double>& best_iterate() const noexcept { return best_; }

 private:
  std::vector<double> best_;
};

}  // namespace nehari

#endif  // NEHARI_ERROR_HPP
