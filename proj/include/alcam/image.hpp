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

#include <array>
#include <cstdint>

#include <Eigen/Core>

namespace alcam {

template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Three row-major planes (R, G, B); rows index y, columns index x.
template <typename Scalar>
struct RgbImage {
  std::array<Plane<Scalar>, 3> channels;

  RgbImage() = default;
  RgbImage(int width, int height, Scalar fill = Scalar(0)) {
    for (auto& c : channels) c = Plane<Scalar>::Constant(height, width, fill);
  }

  int width() const { return static_cast<int>(channels[0].cols()); }
  int height() const { return static_cast<int>(channels[0].rows()); }
  bool same_size(const RgbImage& other) const {
    return width() == other.width() && height() == other.height();
  }

  Plane<Scalar>& operator[](int c) { return channels[static_cast<std::size_t>(c)]; }
  const Plane<Scalar>& operator[](int c) const { return channels[static_cast<std::size_t>(c)]; }

  friend bool operator==(const RgbImage& a, const RgbImage& b) {
    if (!a.same_size(b)) return false;
    for (int c = 0; c < 3; ++c)
      if (!(a[c] == b[c]).all()) return false;
    return true;
  }
};

/// Linear radiometric signal, >= 0.
using LinearImage = RgbImage<double>;

/// Integer codes in [0, 2^bit_depth - 1].
struct QuantizedImage {
  RgbImage<std::uint16_t> codes;
  int bit_depth = 8;

  QuantizedImage() = default;
  QuantizedImage(int width, int height, int bits = 8) : codes(width, height), bit_depth(bits) {}

  int width() const { return codes.width(); }
  int height() const { return codes.height(); }
  int max_code() const { return (1 << bit_depth) - 1; }
  bool same_size(const QuantizedImage& other) const { return codes.same_size(other.codes); }

  friend bool operator==(const QuantizedImage&, const QuantizedImage&) = default;
};

/// 0.299 R + 0.587 G + 0.114 B.
template <typename Scalar>
Plane<double> luma(const RgbImage<Scalar>& img) {
  return 0.299 * img[0].template cast<double>() + 0.587 * img[1].template cast<double>() +
         0.114 * img[2].template cast<double>();
}

inline Plane<double> luma(const QuantizedImage& img) { return luma(img.codes); }

/// Fraction of pixels with any channel at the maximum code.
double saturated_fraction(const QuantizedImage& img);

void validate(const LinearImage& img);
void validate(const QuantizedImage& img);

}  // namespace alcam
