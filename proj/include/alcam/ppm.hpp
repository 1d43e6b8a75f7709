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

#pragma once

#include <iosfwd>
#include <string>

#include "alcam/image.hpp"

namespace alcam {

// Binary netpbm, maxval 255 only. P6 decodes as RGB; P5 decodes to three
// identical channels.
QuantizedImage read_ppm(std::istream& in);
QuantizedImage read_ppm(const std::string& path);

/// P6. Requires an 8-bit image.
void write_ppm(std::ostream& out, const QuantizedImage& img);
void write_ppm(const std::string& path, const QuantizedImage& img);

/// P5 from the first channel. Requires an 8-bit image.
void write_pgm(std::ostream& out, const QuantizedImage& img);

}  // namespace alcam
