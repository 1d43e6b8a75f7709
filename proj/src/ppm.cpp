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

#include "alcam/ppm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "alcam/error.hpp"

namespace alcam {

namespace {

void skip_space_and_comments(std::istream& in) {
  while (true) {
    const int ch = in.peek();
    if (ch == '#') {
      std::string discard;
      std::getline(in, discard);
    } else if (ch != EOF && std::isspace(ch)) {
      in.get();
    } else {
      return;
    }
  }
}

int read_header_int(std::istream& in, const char* field) {
  skip_space_and_comments(in);
  int value = 0;
  bool any = false;
  while (std::isdigit(in.peek())) {
    value = value * 10 + (in.get() - '0');
    any = true;
    if (value > (1 << 24)) fail(ErrorKind::Format, std::string("PPM ") + field + " is too large");
  }
  require(any, ErrorKind::Format, std::string("PPM header is missing the ") + field);
  return value;
}

void require_8bit(const QuantizedImage& img) {
  require(img.bit_depth == 8, ErrorKind::InvalidArgument, "PPM output requires an 8-bit image");
}

}  // namespace

QuantizedImage read_ppm(std::istream& in) {
  char magic[2] = {};
  in.read(magic, 2);
  require(in.gcount() == 2 && magic[0] == 'P' && (magic[1] == '5' || magic[1] == '6'),
          ErrorKind::Format, "bad magic number (expected binary P5 or P6)");
  const int channels = magic[1] == '6' ? 3 : 1;
  const int width = read_header_int(in, "width");
  const int height = read_header_int(in, "height");
  const int maxval = read_header_int(in, "maxval");
  require(width > 0 && height > 0, ErrorKind::Format, "PPM dimensions must be positive");
  require(maxval == 255, ErrorKind::Format,
          "unsupported maxval " + std::to_string(maxval) + " (only 255)");
  require(std::isspace(in.get()) != 0, ErrorKind::Format,
          "PPM header must end with a single whitespace byte");

  const auto count = static_cast<std::size_t>(width) * height * channels;
  std::vector<unsigned char> bytes(count);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(count));
  require(static_cast<std::size_t>(in.gcount()) == count, ErrorKind::Format,
          "truncated pixel data: expected " + std::to_string(count) + " bytes, got " +
              std::to_string(in.gcount()));

  QuantizedImage img(width, height, 8);
  std::size_t i = 0;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < 3; ++c) img.codes[c](y, x) = bytes[i + (channels == 3 ? c : 0)];
      i += channels;
    }
  }
  return img;
}

QuantizedImage read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::Io, "cannot open image: " + path);
  try {
    return read_ppm(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

void write_ppm(std::ostream& out, const QuantizedImage& img) {
  require_8bit(img);
  out << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
  std::vector<char> bytes;
  bytes.reserve(static_cast<std::size_t>(img.width()) * img.height() * 3);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      for (int c = 0; c < 3; ++c) bytes.push_back(static_cast<char>(img.codes[c](y, x)));
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void write_ppm(const std::string& path, const QuantizedImage& img) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::Io, "cannot write image: " + path);
  write_ppm(out, img);
  require(out.good(), ErrorKind::Io, "failed writing image: " + path);
}

void write_pgm(std::ostream& out, const QuantizedImage& img) {
  require_8bit(img);
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) out.put(static_cast<char>(img.codes[0](y, x)));
}

}  // namespace alcam
