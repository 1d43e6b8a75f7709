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
#include <optional>
#include <utility>
#include <vector>

#include "alcam/illumination.hpp"
#include "alcam/image.hpp"
#include "alcam/scene.hpp"
#include "alcam/spectral.hpp"

namespace alcam {

/// Shortest shutter the camera supports.
inline constexpr double kMinShutter = 11e-6;
inline constexpr double kMaxStereoRate = 20.0;
inline constexpr double kMinStereoRate = 1.0;

/// Time interval in seconds relative to the trigger, kept as start plus
/// duration so a window's length is exact.
struct Interval {
  double start = 0.0;
  double duration = 0.0;

  static Interval between(double start, double end) { return {start, end - start}; }
  double end() const { return start + duration; }
  double length() const { return duration; }
  bool contains(const Interval& other) const {
    return other.start >= start && other.end() <= end();
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Length of the intersection; 0 when disjoint.
double flash_overlap(const Interval& shutter_window, const Interval& flash_window);

struct ExposureSettings {
  double shutter_time = 1e-3;
  double f_number = kMinFNumber;
  double gain_db = 0.0;

  double gain() const;
  friend bool operator==(const ExposureSettings&, const ExposureSettings&) = default;
};

void validate(const ExposureSettings& settings);

struct TriggerSchedule {
  double frame_period = 0.05;
  Interval shutter_window;
  Interval flash_window;
  int n_cameras = 2;

  double overlap() const { return flash_overlap(shutter_window, flash_window); }
};

void validate(const TriggerSchedule& schedule);

/// Stereo trigger plan with the shutter centred inside the flash pulse.
TriggerSchedule schedule_stereo(double rate_hz, const FlashUnit& flash, double shutter_time);

/// Noise-free linear exposure of `scene`.
///
/// Ambient light integrates over the whole shutter; the flash contributes only
/// for the shutter/flash overlap, scaled to each patch's depth. Emitters add
/// their own SPD with unit reflectance.
LinearImage expose(const Scene& scene, const SpectralCurve& day,
                   const std::optional<FlashUnit>& flash, const ExposureSettings& settings,
                   const std::optional<TriggerSchedule>& schedule, const SensorModel& sensor,
                   const OpticsModel& optics);

/// Gain, Gaussian read + shot noise, clamp and round-half-up. Noise draws
/// depend only on `seed` and pixel position, never on the signal.
QuantizedImage quantize(const LinearImage& img, const SensorModel& sensor,
                        const ExposureSettings& settings, std::uint64_t seed);

struct AutoExposureResult {
  ExposureSettings settings;
  bool saturated = false;     // T_min hit, or clipped pixels remain
  bool underexposed = false;  // T_max hit
  bool converged = false;
  int iterations = 0;
  double mean_fraction = 0.0;       // mean linear signal / full scale at the result
  double clipped_fraction = 0.0;    // pixels with any channel >= full scale
};

/// Bisection on log(T) towards `target_mean` of full scale, within +-2%, at
/// most 16 iterations. f/2.4 and 0 dB are fixed. With a flash, every trial
/// shutter is scheduled inside the pulse at `rate_hz`.
AutoExposureResult auto_expose(const Scene& scene, const SpectralCurve& day,
                               const SensorModel& sensor, const OpticsModel& optics,
                               double target_mean, Interval bounds,
                               const std::optional<FlashUnit>& flash = std::nullopt,
                               double rate_hz = kMaxStereoRate);

inline constexpr double kAutoExposureTolerance = 0.02;
inline constexpr int kAutoExposureIterations = 16;

/// Weighted radiance merge, in codes per second of (shutter * gain).
LinearImage hdr_merge(const std::vector<std::pair<QuantizedImage, ExposureSettings>>& brackets);

/// Hat weight: zero at 0 and max_code, peak at mid-scale.
double hdr_weight(int code, int max_code);

/// Image-plane travel during the shutter, in pixels.
double motion_blur_extent(double camera_speed, double shutter_time, double depth,
                          const OpticsModel& optics, const SensorModel& sensor);

Plane<double> motion_blur_extents(const Scene& scene, const SceneRaster& raster,
                                  double shutter_time, const OpticsModel& optics,
                                  const SensorModel& sensor);

/// Horizontal box filter, width round(extent) + 1 at each pixel, edges clamped.
LinearImage apply_motion_blur(const LinearImage& img, const Plane<double>& extents);

/// K such that `scene` under `illumination` at T = 1 ms puts its brightest
/// foreground patch channel at 50% of full scale.
double calibrate_normalization(const SensorModel& sensor, const OpticsModel& optics,
                               const Scene& scene, const SpectralCurve& illumination);

}  // namespace alcam
