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

#include <cmath>
#include <random>
#include <sstream>

#include "alcam/error.hpp"
#include "alcam/quality.hpp"

using namespace alcam;

namespace {

// Straight from the definition: raw sums per window, no Eigen blocks.
double ssim_oracle(const std::vector<double>& x, const std::vector<double>& y, int w, int h,
                   int win) {
  const double c1 = (0.01 * 255) * (0.01 * 255);
  const double c2 = (0.03 * 255) * (0.03 * 255);
  const double c3 = c2 / 2;
  double total = 0.0;
  int count = 0;
  for (int r = 0; r + win <= h; ++r) {
    for (int c = 0; c + win <= w; ++c) {
      double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
      for (int i = r; i < r + win; ++i)
        for (int j = c; j < c + win; ++j) {
          const double a = x[i * w + j];
          const double b = y[i * w + j];
          sx += a;
          sy += b;
          sxx += a * a;
          syy += b * b;
          sxy += a * b;
        }
      const double n = win * win;
      const double mx = sx / n, my = sy / n;
      const double vx = sxx / n - mx * mx, vy = syy / n - my * my;
      const double cov = sxy / n - mx * my;
      const double sd = std::sqrt(std::max(vx, 0.0) * std::max(vy, 0.0));
      const double l = (2 * mx * my + c1) / (mx * mx + my * my + c1);
      const double k = (2 * sd + c2) / (vx + vy + c2);
      const double s = (cov + c3) / (sd + c3);
      total += l * k * s;
      ++count;
    }
  }
  return total / count;
}

Plane<double> to_plane(const std::vector<double>& v, int w, int h) {
  Plane<double> p(h, w);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) p(i, j) = v[i * w + j];
  return p;
}

std::vector<double> random_pixels(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> u(0, 255);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = u(rng);
  return v;
}

QuantizedImage random_image(std::mt19937_64& rng, int w, int h) {
  std::uniform_int_distribution<int> u(0, 255);
  QuantizedImage img(w, h);
  for (int c = 0; c < 3; ++c) img.codes[c] = img.codes[c].unaryExpr([&](std::uint16_t) {
    return static_cast<std::uint16_t>(u(rng));
  });
  return img;
}

QuantizedImage gray(int w, int h, int v) {
  QuantizedImage img(w, h);
  for (int c = 0; c < 3; ++c) img.codes[c].setConstant(static_cast<std::uint16_t>(v));
  return img;
}

}  // namespace

TEST_CASE("ssim matches the brute-force oracle on random 16x16 pairs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_pixels(rng, 256);
    auto y = random_pixels(rng, 256);
    if (trial % 2 == 0)  // correlated pairs too
      for (int i = 0; i < 256; ++i) y[i] = std::min(255.0, 0.7 * x[i] + 0.3 * y[i]);
    const double got = ssim(to_plane(x, 16, 16), to_plane(y, 16, 16));
    CHECK(std::abs(got - ssim_oracle(x, y, 16, 16, 8)) <= 1e-10);
  }
}

TEST_CASE("ssim identity, symmetry and range") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Plane<double> x = to_plane(random_pixels(rng, 20 * 12), 20, 12);
    const Plane<double> y = to_plane(random_pixels(rng, 20 * 12), 20, 12);
    CHECK(ssim(x, x) == 1.0);
    CHECK(std::abs(ssim(x, y) - ssim(y, x)) <= 1e-15);
    CHECK(ssim(x, y) <= 1.0);
    CHECK(ssim(x, y) >= -1.0);
  }
  const QuantizedImage img = random_image(rng, 24, 16);
  CHECK(ssim(img, img) == 1.0);
}

TEST_CASE("ssim constant 100 vs 200") {
  CHECK(std::abs(ssim(gray(16, 16, 100), gray(16, 16, 200)) - 0.8001) <= 1e-4);
  const double c1 = (0.01 * 255) * (0.01 * 255);
  CHECK(ssim(gray(16, 16, 100), gray(16, 16, 200)) ==
        doctest::Approx((2 * 100.0 * 200.0 + c1) / (100.0 * 100.0 + 200.0 * 200.0 + c1)));
}

TEST_CASE("ssim detects a one-pixel shift") {
  std::mt19937_64 rng(9);
  const Plane<double> x = to_plane(random_pixels(rng, 32 * 32), 32, 32);
  Plane<double> shifted = x;
  shifted.rightCols(31) = x.leftCols(31);
  CHECK(ssim(x, shifted) < 0.5);
}

TEST_CASE("ssim of constant images does not depend on the window") {
  for (int win : {3, 4, 8, 11}) {
    SsimParams p;
    p.window = win;
    CHECK(ssim(gray(16, 16, 100), gray(16, 16, 200), p) ==
          doctest::Approx(ssim(gray(16, 16, 100), gray(16, 16, 200))).epsilon(1e-14));
  }
}

TEST_CASE("ssim input checks") {
  CHECK_THROWS_AS(ssim(gray(8, 8, 1), gray(9, 8, 1)), Error);
  SsimParams bad;
  bad.window = 0;
  CHECK_THROWS_AS(ssim(gray(8, 8, 1), gray(8, 8, 1), bad), Error);
  // Smaller than one window: a single window covering the image.
  CHECK(ssim(gray(4, 4, 10), gray(4, 4, 10)) == 1.0);
}

TEST_CASE("psnr examples") {
  const QuantizedImage a = gray(16, 16, 100);
  const QuantizedImage b = gray(16, 16, 116);
  CHECK(std::abs(psnr(a, b).db - 24.05) <= 0.01);
  CHECK(psnr(a, b).db == doctest::Approx(10.0 * std::log10(255.0 * 255.0 / 256.0)));

  const Psnr same = psnr(a, a);
  CHECK(same.identical);
  CHECK(std::isinf(same.db));
  CHECK(same.exported() == 99.0);

  QuantizedImage c = a;
  c.codes[0](0, 0) = 101;
  CHECK(!psnr(a, c).identical);
  CHECK(psnr(a, c).exported() == doctest::Approx(10.0 * std::log10(255.0 * 255.0 * 768.0)));
  CHECK(Psnr{120.0, false}.exported() == 99.0);
  CHECK_THROWS_AS(psnr(a, gray(8, 16, 0)), Error);
}

TEST_CASE("psnr matches a brute-force MSE and ignores channel order") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const QuantizedImage x = random_image(rng, 13, 7);
    const QuantizedImage y = random_image(rng, 13, 7);
    double se = 0.0;
    for (int c = 0; c < 3; ++c)
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 13; ++j) {
          const double d = double(x.codes[c](i, j)) - double(y.codes[c](i, j));
          se += d * d;
        }
    const double mse = se / (3.0 * 13 * 7);
    CHECK(std::abs(psnr(x, y).db - 10.0 * std::log10(255.0 * 255.0 / mse)) <= 1e-12);

    QuantizedImage xp = x, yp = y;
    std::swap(xp.codes[0], xp.codes[2]);
    std::swap(yp.codes[0], yp.codes[2]);
    CHECK(psnr(xp, yp).db == doctest::Approx(psnr(x, y).db).epsilon(1e-14));
  }
}

TEST_CASE("condition names") {
  CHECK(to_string(Condition::HDR) == "HDR");
  CHECK(parse_condition("NL") == Condition::NL);
  CHECK_THROWS_AS(parse_condition("XX"), Error);
}

TEST_CASE("consistency_series") {
  const QuantizedImage ref = gray(16, 16, 100);
  std::vector<TimedFrame> frames{{0.0, Condition::AL, ref, 1.0},
                                 {20.0, Condition::AL, gray(16, 16, 116), 0.9}};
  const QualityReport r = consistency_series(ref, frames, {}, "ref");
  REQUIRE(r.rows.size() == 2);
  CHECK(r.reference_id == "ref");
  CHECK(r.rows[0].ssim_pct == 100.0);
  CHECK(r.rows[0].psnr_db == 99.0);
  CHECK(r.rows[1].time_min == 20.0);
  CHECK(r.rows[1].scene_scale == 0.9);
  CHECK(std::abs(r.rows[1].psnr_db - 24.05) <= 0.01);
  CHECK(r.rows[1].ssim_pct < 100.0);

  CHECK_THROWS_AS(consistency_series(ref, {}), Error);
  std::vector<TimedFrame> backwards{frames[1], frames[0]};
  CHECK_THROWS_AS(consistency_series(ref, backwards), Error);
  std::vector<TimedFrame> wrong{{0.0, Condition::AL, gray(8, 8, 1), 1.0}};
  CHECK_THROWS_AS(consistency_series(ref, wrong), Error);
}

TEST_CASE("report CSV and JSON round trips") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int trial = 0; trial < 25; ++trial) {
    QualityReport report{"ref.ppm", {}};
    for (int i = 0; i < 1 + trial % 7; ++i)
      report.rows.push_back({20.0 * i, static_cast<Condition>(i % 3), u(rng), u(rng), u(rng) / 100});
    if (trial == 0) report.rows[0].psnr_db = 99.0;

    std::stringstream csv;
    write_report_csv(csv, report);
    CHECK(csv.str().rfind(std::string(kReportCsvHeader), 0) == 0);
    CHECK(read_report_csv(csv, "ref.ppm") == report);

    std::stringstream json;
    write_report_json(json, report);
    CHECK(read_report_json(json, "ref.ppm") == report);
  }

  std::stringstream bad("time_min,condition\n1,AL\n");
  CHECK_THROWS_AS(read_report_csv(bad), Error);
  std::stringstream bad_json("[{\"time_min\": 0}]");
  CHECK_THROWS_AS(read_report_json(bad_json), Error);
}
