/*
   Copyright 2026 The qcdeform Authors

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

#ifndef QCDEFORM_ERRORS_HPP
#define QCDEFORM_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcdeform {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Series evaluated outside its disk of validity.
class EvaluationOutOfRange : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Division by a series whose constant term vanishes.
class SingularDivision : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Sampled spectrum has not decayed; more samples or a smaller circle needed.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Kernel with a non-integrable pole inside the integration disk.
class SingularKernel : public DomainError {
 public:
  using DomainError::DomainError;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

/// Iterative scheme failed to contract (Neumann series) or to converge (Newton).
/// Carries the residual history of the failed iteration.
class NonConvergence : public Error {
 public:
  explicit NonConvergence(const std::string& what, std::vector<double> trace = {})
      : Error(what), trace_(std::move(trace)) {}
  const std::vector<double>& trace() const { return trace_; }

 private:
  std::vector<double> trace_;
};

class DivergenceError : public NonConvergence {
 public:
  using NonConvergence::NonConvergence;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw DomainError(what);
}

}  // namespace qcdeform

#endif  // QCDEFORM_ERRORS_HPP
