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

#include "gridprep/error.hpp"

namespace gridprep {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::structural: return "structural";
    case ErrorKind::validation: return "validation";
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::domain: return "domain";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::basis: return "basis";
    case ErrorKind::degeneracy: return "degeneracy";
    case ErrorKind::identification: return "identification";
    case ErrorKind::resource: return "resource";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(to_string(kind)) + " error: " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string &message) { throw Error(kind, message); }

int exit_status(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::validation:
    case ErrorKind::configuration:
    case ErrorKind::domain:
        return 2;
    case ErrorKind::resource:
        return 4;
    case ErrorKind::structural:
    case ErrorKind::precondition:
    case ErrorKind::basis:
    case ErrorKind::degeneracy:
    case ErrorKind::identification:
        return 3;
    }
    return 3;
}

} // namespace gridprep
