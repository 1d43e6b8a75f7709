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

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "alcam/config.hpp"
#include "alcam/error.hpp"
#include "alcam/experiment.hpp"
#include "alcam/ppm.hpp"

using namespace alcam;
namespace fs = std::filesystem;

namespace {

DaySweepConfig small_config() {
  DaySweepConfig cfg;
  cfg.width = 64;
  cfg.height = 48;
  cfg.interval = 60.0;
  return cfg;
}

double spread(const QualityReport& r) {
  const auto [lo, hi] = std::minmax_element(
      r.rows.begin(), r.rows.end(),
      [](const QualityRow& a, const QualityRow& b) { return a.ssim_pct < b.ssim_pct; });
  return hi->ssim_pct - lo->ssim_pct;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("alcam_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

QuantizedImage ramp(int w, int h, int offset) {
  QuantizedImage img(w, h);
  for (int c = 0; c < 3; ++c)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        img.codes[c](y, x) = static_cast<std::uint16_t>((x * 7 + y * 3 + c * 20) % 200 + offset);
  return img;
}

}  // namespace

TEST_CASE("sweep_times covers the day inclusively") {
  DaySweepConfig cfg;
  const auto t = sweep_times(cfg);
  REQUIRE(t.size() == 19);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == 360.0);
  cfg.interval = 7.0;
  CHECK(sweep_times(cfg).back() == 357.0);
}

TEST_CASE("default flash dominates noon daylight at the subject by over 100x") {
  CHECK(flash_dominance_ratio(DaySweepConfig{}) >= 100.0);
}

TEST_CASE("no ambient light: every AL frame is the reference") {
  DaySweepConfig cfg = small_config();
  cfg.conditions = {Condition::AL};
  cfg.day.measured = DaylightProfile{{0.0, 360.0}, {0.0, 0.0}};
  cfg.calibrate_k = false;
  const Scene scene = resolve_scene(cfg);
  cfg.sensor.normalization_k =
      calibrate_normalization(cfg.sensor, cfg.optics, scene, blackbody_spd(6500.0));
  const SweepResult r = run_day_sweep(cfg);
  const QualityReport& al = r.reports.at(Condition::AL);
  REQUIRE(al.rows.size() == 7);
  for (const auto& row : al.rows) {
    CHECK(row.ssim_pct == 100.0);
    CHECK(row.psnr_db == 99.0);
  }
}

TEST_CASE("default sweep: AL holds steady, NL drifts") {
  const SweepResult r = run_day_sweep(small_config());
  const QualityReport& al = r.reports.at(Condition::AL);
  const QualityReport& nl = r.reports.at(Condition::NL);
  REQUIRE(al.rows.size() == 7);
  REQUIRE(nl.rows.size() == 7);
  REQUIRE(r.reports.count(Condition::HDR) == 1);
  for (const auto& row : al.rows) CHECK(row.ssim_pct >= 99.0);
  CHECK(spread(al) < 1.0);
  CHECK(nl.rows.back().ssim_pct <= 80.0);
  CHECK(spread(nl) > 10.0 * spread(al));

  // The AL shutter is frozen, NL's follows the light.
  const CapturedFrame* first = r.find(0.0, Condition::NL);
  const CapturedFrame* late = r.find(300.0, Condition::NL);
  REQUIRE(first);
  REQUIRE(late);
  CHECK(late->settings.shutter_time > first->settings.shutter_time);
  CHECK(r.find(300.0, Condition::AL)->settings == *r.al_settings);
  CHECK(r.combined().rows.size() == 21);
}

TEST_CASE("sweep is deterministic and conditions are independent") {
  DaySweepConfig cfg = small_config();
  cfg.interval = 120.0;
  const SweepResult a = run_day_sweep(cfg);
  const SweepResult b = run_day_sweep(cfg);
  REQUIRE(a.frames.size() == b.frames.size());
  for (std::size_t i = 0; i < a.frames.size(); ++i) CHECK(a.frames[i].image == b.frames[i].image);
  CHECK(a.combined() == b.combined());

  DaySweepConfig only_al = cfg;
  only_al.conditions = {Condition::AL};
  const SweepResult c = run_day_sweep(only_al);
  CHECK(c.reports.at(Condition::AL) == a.reports.at(Condition::AL));
  CHECK(c.find(240.0, Condition::AL)->image == a.find(240.0, Condition::AL)->image);

  DaySweepConfig reseeded = cfg;
  reseeded.seed = 2;
  CHECK(!(run_day_sweep(reseeded).frames[0].image == a.frames[0].image));
}

TEST_CASE("a weaker flash loosens AL consistency") {
  DaySweepConfig strong = small_config();
  strong.conditions = {Condition::AL};
  DaySweepConfig weak = strong;
  weak.flash.radiant_power = 60.0;
  weak.al_shutter = 200e-6;
  const double s_strong = spread(run_day_sweep(strong).reports.at(Condition::AL));
  const double s_weak = spread(run_day_sweep(weak).reports.at(Condition::AL));
  CHECK(s_weak > s_strong);
}

TEST_CASE("extreme scene: the sun clips NL but not AL") {
  DaySweepConfig cfg = small_config();
  cfg.scene = "orchard_extreme";
  const ExtremeResult r = run_extreme(cfg);
  CHECK(r.sun_area_fraction > 0.05);
  CHECK(r.al_saturated_fraction <= r.sun_area_fraction + 0.01);
  CHECK(r.nl_saturated_fraction > r.al_saturated_fraction);
  CHECK(r.al_foreground_contrast > r.nl_foreground_contrast);
  CHECK(r.nl_auto_exposure_saturated);

  try {
    run_extreme(small_config());
    FAIL("expected invalid scene");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidScene);
  }
}

TEST_CASE("masked_luma_stddev") {
  QuantizedImage img(2, 1);
  for (int c = 0; c < 3; ++c) {
    img.codes[c](0, 0) = 10;
    img.codes[c](0, 1) = 30;
  }
  Plane<bool> all = Plane<bool>::Constant(1, 2, true);
  CHECK(masked_luma_stddev(img, all) == doctest::Approx(10.0));
  Plane<bool> one = all;
  one(0, 1) = false;
  CHECK(masked_luma_stddev(img, one) == doctest::Approx(0.0));
  CHECK(masked_luma_stddev(img, Plane<bool>::Constant(1, 2, false)) == 0.0);
}

TEST_CASE("analyze_directory") {
  const fs::path dir = scratch("analyze");
  const QuantizedImage ref = ramp(24, 16, 0);
  write_ppm((dir / "a.ppm").string(), ref);
  write_ppm((dir / "b.ppm").string(), ref);
  write_ppm((dir / "c.ppm").string(), ramp(24, 16, 16));
  write_ppm((dir / "d.ppm").string(), QuantizedImage(8, 8));
  std::ofstream((dir / "notes.txt").string()) << "ignored";

  const auto images = list_images(dir.string());
  REQUIRE(images.size() == 4);
  CHECK(fs::path(images[0]).filename() == "a.ppm");

  const QualityReport single = analyze_directory(images[0], {images[0]});
  REQUIRE(single.rows.size() == 1);
  CHECK(single.rows[0].ssim_pct == 100.0);
  CHECK(single.rows[0].psnr_db == 99.0);

  const QualityReport r = analyze_directory(images[0], {images[0], images[1], images[2]});
  CHECK(r.rows[1].ssim_pct == 100.0);
  CHECK(std::abs(r.rows[2].psnr_db - 24.05) <= 0.01);
  CHECK(r.rows[2].time_min == 2.0);

  try {
    analyze_directory(images[0], images);
    FAIL("expected size mismatch");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("d.ppm") != std::string::npos);
  }
  CHECK_THROWS_AS(list_images((dir / "missing").string()), Error);
  fs::remove_all(dir);
}

TEST_CASE("config parsing") {
  const DaySweepConfig d = load_sweep_config(std::string(ALCAM_CONFIG_DIR) + "/day_sweep.json");
  CHECK(d.scene == "orchard_day");
  CHECK(d.width == 256);
  CHECK(d.flash.beam_gain == 1.5);
  CHECK(sweep_times(d).size() == 19);
  CHECK(d.conditions.size() == 3);

  const DaySweepConfig e = load_sweep_config(std::string(ALCAM_CONFIG_DIR) + "/extreme.json");
  CHECK(e.scene == "orchard_extreme");

  const DaySweepConfig p = parse_sweep_config(R"({"seed": 9, "conditions": ["NL"],
      "sensor": {"quantum_efficiency": [{"constant": 0.5}, {"constant": 0.4},
                 {"gaussian": {"base": 0, "height": 0.8, "center_nm": 460, "sigma_nm": 40}}]},
      "daylight": {"noon_cct": 6000}})", ".");
  CHECK(p.seed == 9);
  CHECK(p.conditions == std::vector<Condition>{Condition::NL});
  CHECK(p.sensor.qe(Channel::G)[0] == 0.4);
  CHECK(p.day.noon_cct == 6000.0);

  const auto message = [](const std::string& text) {
    try {
      parse_sweep_config(text, ".");
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::Config);
      return std::string(err.what());
    }
    return std::string("no error");
  };
  CHECK(message(R"({"flash": {"colour": 1}})").find("flash.colour") != std::string::npos);
  CHECK(message(R"({"width": "wide"})").find("width") != std::string::npos);
  CHECK(message(R"({"conditions": ["XX"]})").find("conditions") != std::string::npos);
  CHECK(message("{not json").find("no error") == std::string::npos);
  CHECK(message(R"({"interval_min": 0})").find("no error") == std::string::npos);
  CHECK_THROWS_AS(load_sweep_config("/nonexistent/config.json"), Error);
}
