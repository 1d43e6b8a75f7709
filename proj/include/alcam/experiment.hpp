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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alcam/capture.hpp"
#include "alcam/illumination.hpp"
#include "alcam/quality.hpp"
#include "alcam/scene.hpp"
#include "alcam/spectral.hpp"

namespace alcam {

/// Flash used by the default sweep: the stock unit with a 1.5x on-axis beam gain
/// for the directional LED array.
FlashUnit default_sweep_flash();

struct DaySweepConfig {
  std::string scene = "orchard_day";  // builtin name or path to a scene JSON file
  int width = 256;
  int height = 192;
  double interval = 20.0;  // minutes
  DaylightModel day;
  FlashUnit flash = default_sweep_flash();
  SensorModel sensor;
  OpticsModel optics;
  std::vector<Condition> conditions{Condition::AL, Condition::NL, Condition::HDR};
  std::vector<double> hdr_brackets{0.25, 1.0, 4.0};  // multiples of each step's auto exposure
  std::uint64_t seed = 1;
  double target_mean = 0.5;
  Interval nl_bounds = Interval::between(kMinShutter, 1.0 / 15.0);
  double rate_hz = kMaxStereoRate;
  std::optional<double> al_shutter;  // frozen AL shutter; calibrated at day_start when unset
  bool motion_blur = false;
  bool calibrate_k = true;
  SsimParams ssim;
};

void validate(const DaySweepConfig& config);

Scene resolve_scene(const DaySweepConfig& config);

/// Sample times from day_start to day_end (inclusive) every `interval`.
std::vector<double> sweep_times(const DaySweepConfig& config);

/// Flash irradiance at the nearest patch over noon ambient irradiance.
double flash_dominance_ratio(const DaySweepConfig& config);

struct CapturedFrame {
  double time_min = 0.0;
  Condition condition = Condition::AL;
  QuantizedImage image;
  ExposureSettings settings;
  double saturated_fraction = 0.0;
  double scene_scale = 0.0;
};

struct SweepResult {
  std::vector<CapturedFrame> frames;  // ordered by (time, condition)
  std::map<Condition, QualityReport> reports;
  std::optional<ExposureSettings> al_settings;
  double normalization_k = 0.0;

  /// Every report row, ordered by (time, condition).
  QualityReport combined() const;
  const CapturedFrame* find(double time_min, Condition condition) const;
};

SweepResult run_day_sweep(const DaySweepConfig& config);

struct ExtremeResult {
  SweepResult sweep;  // one AL and one NL frame at day_start
  double sun_area_fraction = 0.0;
  double al_saturated_fraction = 0.0;
  double nl_saturated_fraction = 0.0;
  double al_foreground_contrast = 0.0;  // std-dev of foreground luma
  double nl_foreground_contrast = 0.0;
  bool nl_auto_exposure_saturated = false;
};

/// Sun-facing scenario; the scene must contain an emitter.
ExtremeResult run_extreme(const DaySweepConfig& config);

/// Std-dev of luma over `mask` pixels.
double masked_luma_stddev(const QuantizedImage& img, const Plane<bool>& mask);

/// Consistency of `image_paths` (in order, time = index) against the
/// reference image.
QualityReport analyze_directory(const std::string& reference_path,
                                const std::vector<std::string>& image_paths,
                                const SsimParams& params = {},
                                Condition condition = Condition::AL);

/// *.ppm and *.pgm files in `directory`, sorted by filename.
std::vector<std::string> list_images(const std::string& directory);

}  // namespace alcam
