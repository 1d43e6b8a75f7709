// Copyright 2026 The alcam Authors
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

#include "alcam/error.hpp"

namespace alcam {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidGrid: return "invalid-grid";
    case ErrorKind::GridMismatch: return "grid-mismatch";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::IncompleteScene: return "incomplete-scene";
    case ErrorKind::InvalidScene: return "invalid-scene";
    case ErrorKind::NotFound: return "not-found";
    case ErrorKind::CannotContain: return "cannot-contain";
    case ErrorKind::Format: return "format";
    case ErrorKind::Io: return "io";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace alcam
