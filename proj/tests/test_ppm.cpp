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

#include <doctest.h>

#include <random>
#include <sstream>

#include "alcam/error.hpp"
#include "alcam/ppm.hpp"

using namespace alcam;

namespace {

QuantizedImage random_image(std::mt19937_64& rng, int w, int h) {
  std::uniform_int_distribution<int> u(0, 255);
  QuantizedImage img(w, h);
  for (int c = 0; c < 3; ++c) img.codes[c] = img.codes[c].unaryExpr([&](std::uint16_t) {
    return static_cast<std::uint16_t>(u(rng));
  });
  return img;
}

}  // namespace

TEST_CASE("write then read is bit-identical") {
  std::mt19937_64 rng(100);
  std::uniform_int_distribution<int> dim(1, 40);
  for (int trial = 0; trial < 100; ++trial) {
    const QuantizedImage img = random_image(rng, dim(rng), dim(rng));
    std::stringstream buf;
    write_ppm(buf, img);
    const std::string bytes = buf.str();
    CHECK(read_ppm(buf) == img);

    std::stringstream again;
    write_ppm(again, img);
    CHECK(again.str() == bytes);
  }
}

TEST_CASE("2x2 P6 fixture") {
  const std::string bytes = std::string("P6\n2 2\n255\n") +
                            std::string("\xff\x00\x00\x00\xff\x00\x00\x00\xff\x10\x20\x30", 12);
  std::stringstream in(bytes);
  const QuantizedImage img = read_ppm(in);
  CHECK(img.width() == 2);
  CHECK(img.height() == 2);
  CHECK(img.codes[0](0, 0) == 255);
  CHECK(img.codes[1](0, 1) == 255);
  CHECK(img.codes[2](1, 0) == 255);
  CHECK(img.codes[0](1, 1) == 0x10);
  CHECK(img.codes[2](1, 1) == 0x30);

  std::stringstream out;
  write_ppm(out, img);
  CHECK(out.str() == bytes);
}

TEST_CASE("P5 is read into three equal channels, comments are skipped") {
  const std::string bytes = std::string("P5\n# made by hand\n3 1 # width height\n255\n") +
                            std::string("\x01\x80\xfe", 3);
  std::stringstream in(bytes);
  const QuantizedImage img = read_ppm(in);
  CHECK(img.width() == 3);
  for (int c = 0; c < 3; ++c) {
    CHECK(img.codes[c](0, 0) == 1);
    CHECK(img.codes[c](0, 1) == 128);
    CHECK(img.codes[c](0, 2) == 254);
  }
  std::stringstream pgm;
  write_pgm(pgm, img);
  std::stringstream back(pgm.str());
  CHECK(read_ppm(back) == img);
}

TEST_CASE("malformed files") {
  const auto fails = [](const std::string& bytes) {
    std::stringstream in(bytes);
    try {
      read_ppm(in);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::Format;
    }
    return false;
  };
  CHECK(fails("P3\n1 1\n255\n1 2 3\n"));
  CHECK(fails("P6\n1 1\n65535\n\x01\x02\x03\x04\x05\x06"));
  CHECK(fails("P6\n2 2\n255\n\x01\x02\x03"));
  CHECK(fails("P6\n0 2\n255\n"));
  CHECK(fails(""));

  try {
    read_ppm(std::string("/nonexistent/frame.ppm"));
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("/nonexistent/frame.ppm") != std::string::npos);
  }

  QuantizedImage deep(2, 2, 12);
  std::stringstream out;
  CHECK_THROWS_AS(write_ppm(out, deep), Error);
}
