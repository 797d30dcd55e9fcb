// Copyright 2026 The gridprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gridprep {

/// Failure categories. The command-line driver maps each category onto
/// exactly one exit status (see `exit_status`).
enum class ErrorKind {
    structural,     ///< bad segment name, index out of range, width mismatch
    validation,     ///< malformed input value (non-unitary matrix, Pauli violation, ...)
    configuration,  ///< inconsistent settings (missing MC bounds, bad config key)
    domain,         ///< argument outside a function's mathematical domain
    precondition,   ///< operation invoked on a state it cannot act on
    basis,          ///< singular or otherwise unusable orbital basis
    degeneracy,     ///< phase windows collide or a perturbation fails to split levels
    identification, ///< phase-estimation identification did not succeed
    resource,       ///< qubit or density-matrix cap exceeded
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message);

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string &message);

/// Throws `Error(kind, message)` when `condition` is false.
inline void require(bool condition, ErrorKind kind, const std::string &message) {
    if (!condition) {
        fail(kind, message);
    }
}

/// 0 never occurs for an error; 2 = invalid input, 3 = pipeline failure,
/// 4 = resource cap.
int exit_status(ErrorKind kind);

} // namespace gridprep
