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

#include "alcam/image.hpp"

#include "alcam/error.hpp"

namespace alcam {

double saturated_fraction(const QuantizedImage& img) {
  const auto max = static_cast<std::uint16_t>(img.max_code());
  const auto& c = img.codes;
  const auto saturated = (c[0] == max) || (c[1] == max) || (c[2] == max);
  return static_cast<double>(saturated.count()) /
         static_cast<double>(img.width() * img.height());
}

void validate(const LinearImage& img) {
  for (int c = 0; c < 3; ++c) {
    require(img[c].allFinite() && (img[c] >= 0.0).all(), ErrorKind::InvalidArgument,
            "linear image values must be finite and non-negative");
  }
}

void validate(const QuantizedImage& img) {
  require(img.bit_depth >= 1 && img.bit_depth <= 16, ErrorKind::InvalidArgument,
          "bit depth must lie in [1, 16]");
  for (int c = 0; c < 3; ++c) {
    require((img.codes[c].cast<int>() <= img.max_code()).all(), ErrorKind::InvalidArgument,
            "quantized code exceeds the bit depth");
  }
}

}  // namespace alcam
