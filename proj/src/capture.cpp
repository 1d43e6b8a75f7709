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

#include "alcam/capture.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "alcam/error.hpp"
#include "alcam/text.hpp"

namespace alcam {

double flash_overlap(const Interval& shutter_window, const Interval& flash_window) {
  if (flash_window.contains(shutter_window)) return shutter_window.duration;
  if (shutter_window.contains(flash_window)) return flash_window.duration;
  const double overlap = std::min(shutter_window.end(), flash_window.end()) -
                         std::max(shutter_window.start, flash_window.start);
  return std::clamp(overlap, 0.0, std::min(shutter_window.duration, flash_window.duration));
}

double ExposureSettings::gain() const { return std::pow(10.0, gain_db / 20.0); }

void validate(const ExposureSettings& settings) {
  require(std::isfinite(settings.shutter_time) && settings.shutter_time >= kMinShutter,
          ErrorKind::InvalidArgument,
          "shutter_time must be at least 11 us, got " + format_double(settings.shutter_time));
  require(settings.f_number >= kMinFNumber, ErrorKind::InvalidArgument,
          "f_number must be at least 2.4");
  require(settings.gain_db >= 0.0, ErrorKind::InvalidArgument, "gain_db must be >= 0");
}

void validate(const TriggerSchedule& schedule) {
  require(schedule.frame_period > 0.0, ErrorKind::InvalidArgument, "frame_period must be positive");
  require(schedule.shutter_window.duration > 0.0 && schedule.flash_window.duration > 0.0,
          ErrorKind::InvalidArgument, "trigger windows must be non-degenerate");
  const Interval frame{0.0, schedule.frame_period};
  require(frame.contains(schedule.shutter_window) && frame.contains(schedule.flash_window),
          ErrorKind::InvalidArgument, "trigger windows must fit within one frame period");
  require(schedule.n_cameras >= 1, ErrorKind::InvalidArgument, "n_cameras must be >= 1");
}

TriggerSchedule schedule_stereo(double rate_hz, const FlashUnit& flash, double shutter_time) {
  require(rate_hz >= kMinStereoRate && rate_hz <= kMaxStereoRate, ErrorKind::OutOfRange,
          "stereo rate must lie in [1, 20] Hz, got " + format_double(rate_hz));
  validate(flash);
  require(shutter_time > 0.0, ErrorKind::InvalidArgument, "shutter_time must be positive");
  require(shutter_time <= flash.pulse_duration, ErrorKind::CannotContain,
          "shutter cannot be contained in flash window");
  TriggerSchedule schedule;
  schedule.frame_period = 1.0 / rate_hz;
  schedule.flash_window = {flash.pulse_start_offset, flash.pulse_duration};
  const double margin = 0.5 * (flash.pulse_duration - shutter_time);
  schedule.shutter_window = {flash.pulse_start_offset + margin, shutter_time};
  schedule.n_cameras = 2;
  require(schedule.flash_window.start >= 0.0 &&
              schedule.flash_window.end() <= schedule.frame_period,
          ErrorKind::CannotContain, "flash pulse does not fit within one frame period");
  return schedule;
}

namespace {

OpticsModel with_f_number(const OpticsModel& optics, double f_number) {
  OpticsModel out = optics;
  out.f_number = f_number;
  return out;
}

// Linear signal of each scene source (patches, then emitters) for one exposure.
std::vector<Eigen::Array3d> source_signals(const Scene& scene, const SpectralCurve& day,
                                           const std::optional<FlashUnit>& flash,
                                           double shutter_time, double flash_time,
                                           const SensorModel& sensor, const OpticsModel& optics) {
  const double fraction = flash ? std::min(flash_time / shutter_time, 1.0) : 0.0;
  std::vector<Eigen::Array3d> signals;
  signals.reserve(scene.source_count());
  for (const auto& patch : scene.patches) {
    const SpectralCurve& refl = scene.reflectances.find(patch.reflectance_id)->second;
    if (flash && fraction > 0.0) {
      const SpectralCurve lit = combined_irradiance(
          day, flash_irradiance(*flash, patch.depth, day.grid()), fraction);
      signals.push_back(pixel_signal_rgb(shutter_time, sensor, optics, lit, refl));
    } else {
      signals.push_back(pixel_signal_rgb(shutter_time, sensor, optics, day, refl));
    }
  }
  const SpectralCurve unit = SpectralCurve::constant(day.grid(), 1.0);
  for (const auto& e : scene.emitters) {
    signals.push_back(
        pixel_signal_rgb(shutter_time, sensor, optics, e.spd.scaled(e.scale), unit));
  }
  return signals;
}

LinearImage paint(const SceneRaster& raster, const std::vector<Eigen::Array3d>& signals) {
  LinearImage img;
  for (int c = 0; c < 3; ++c) {
    img[c] = raster.source.unaryExpr(
        [&](int s) { return signals[static_cast<std::size_t>(s)][c]; });
  }
  return img;
}

}  // namespace

LinearImage expose(const Scene& scene, const SpectralCurve& day,
                   const std::optional<FlashUnit>& flash, const ExposureSettings& settings,
                   const std::optional<TriggerSchedule>& schedule, const SensorModel& sensor,
                   const OpticsModel& optics) {
  validate(settings);
  validate(sensor);
  validate(optics);
  double flash_time = 0.0;
  if (flash) {
    require(schedule.has_value(), ErrorKind::InvalidArgument,
            "a flash exposure needs a trigger schedule");
    validate(*schedule);
    validate(*flash);
    flash_time = schedule->overlap();
  }
  const SceneRaster raster = rasterize(scene);
  const OpticsModel lens = with_f_number(optics, settings.f_number);
  return paint(raster, source_signals(scene, day, flash, settings.shutter_time, flash_time,
                                      sensor, lens));
}

QuantizedImage quantize(const LinearImage& img, const SensorModel& sensor,
                        const ExposureSettings& settings, std::uint64_t seed) {
  validate(sensor);
  const double gain = settings.gain();
  const double full_scale = sensor.full_scale_signal;
  const int max_code = sensor.max_code();
  const double read_var = sensor.read_noise_sigma * sensor.read_noise_sigma;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  QuantizedImage out(img.width(), img.height(), sensor.bit_depth);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      for (int c = 0; c < 3; ++c) {
        const double z = normal(rng);
        const double signal = img[c](y, x) * gain;
        const double sigma = std::sqrt(read_var + sensor.shot_noise_scale * std::max(signal, 0.0));
        const double level = std::clamp((signal + sigma * z) / full_scale, 0.0, 1.0);
        out.codes[c](y, x) = static_cast<std::uint16_t>(std::floor(level * max_code + 0.5));
      }
    }
  }
  return out;
}

namespace {

double mean_signal(const LinearImage& img) {
  double sum = 0.0;
  for (int c = 0; c < 3; ++c) sum += img[c].sum();
  return sum / (3.0 * static_cast<double>(img.width()) * img.height());
}

double clipped_fraction(const LinearImage& img, double full_scale) {
  const auto clipped = (img[0] >= full_scale) || (img[1] >= full_scale) || (img[2] >= full_scale);
  return static_cast<double>(clipped.count()) / static_cast<double>(img.width() * img.height());
}

}  // namespace

AutoExposureResult auto_expose(const Scene& scene, const SpectralCurve& day,
                               const SensorModel& sensor, const OpticsModel& optics,
                               double target_mean, Interval bounds,
                               const std::optional<FlashUnit>& flash, double rate_hz) {
  require(target_mean > 0.0 && target_mean < 1.0, ErrorKind::InvalidArgument,
          "target_mean must lie in (0, 1)");
  require(bounds.start >= kMinShutter * (1.0 - 1e-12), ErrorKind::InvalidArgument,
          "auto-exposure lower bound must be at least 11 us");
  require(bounds.duration >= 0.0, ErrorKind::InvalidArgument,
          "auto-exposure bounds must be ordered");
  double t_min = std::max(bounds.start, kMinShutter);
  double t_max = bounds.end();
  if (flash) {
    validate(*flash);
    t_max = std::min(t_max, flash->pulse_duration);
    require(t_max >= t_min, ErrorKind::CannotContain,
            "shutter cannot be contained in flash window");
  }

  const SceneRaster raster = rasterize(scene);
  const auto capture = [&](double shutter) {
    double flash_time = 0.0;
    if (flash) flash_time = schedule_stereo(rate_hz, *flash, shutter).overlap();
    return paint(raster, source_signals(scene, day, flash, shutter, flash_time, sensor,
                                        with_f_number(optics, kMinFNumber)));
  };

  const double full_scale = sensor.full_scale_signal;
  const double target = target_mean * full_scale;
  const double tolerance = kAutoExposureTolerance * target;

  AutoExposureResult result;
  result.settings = {t_max, kMinFNumber, 0.0};
  double mean = mean_signal(capture(t_max));
  if (mean < target - tolerance) {
    result.underexposed = true;
  } else {
    const double mean_at_min = mean_signal(capture(t_min));
    if (mean_at_min > target + tolerance) {
      result.settings.shutter_time = t_min;
      result.saturated = true;
      mean = mean_at_min;
    } else {
      double lo = std::log(t_min);
      double hi = std::log(t_max);
      double shutter = t_max;
      for (int i = 0; i < kAutoExposureIterations; ++i) {
        shutter = std::exp(0.5 * (lo + hi));
        mean = mean_signal(capture(shutter));
        result.iterations = i + 1;
        if (std::abs(mean - target) <= tolerance) {
          result.converged = true;
          break;
        }
        (mean < target ? lo : hi) = std::log(shutter);
      }
      result.settings.shutter_time = shutter;
    }
  }
  result.mean_fraction = mean / full_scale;
  result.clipped_fraction = clipped_fraction(capture(result.settings.shutter_time), full_scale);
  result.saturated = result.saturated || result.clipped_fraction > 0.0;
  return result;
}

double hdr_weight(int code, int max_code) {
  return static_cast<double>(std::min(code, max_code - code));
}

LinearImage hdr_merge(const std::vector<std::pair<QuantizedImage, ExposureSettings>>& brackets) {
  require(brackets.size() >= 2, ErrorKind::InvalidArgument, "HDR merge needs at least 2 brackets");
  const QuantizedImage& first = brackets.front().first;
  for (const auto& [img, settings] : brackets) {
    require(img.same_size(first) && img.bit_depth == first.bit_depth,
            ErrorKind::InvalidArgument, "HDR brackets must share dimensions and bit depth");
    require(settings.shutter_time > 0.0, ErrorKind::InvalidArgument,
            "HDR bracket shutter must be positive");
  }
  for (std::size_t i = 0; i < brackets.size(); ++i)
    for (std::size_t j = i + 1; j < brackets.size(); ++j)
      require(brackets[i].second.shutter_time != brackets[j].second.shutter_time,
              ErrorKind::InvalidArgument, "HDR brackets need distinct shutter times");

  // Shortest effective exposure first, so the fallback ends on the longest
  // unsaturated one.
  std::vector<std::size_t> order(brackets.size());
  std::iota(order.begin(), order.end(), 0);
  const auto exposure = [&](std::size_t i) {
    return brackets[i].second.shutter_time * brackets[i].second.gain();
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return exposure(a) < exposure(b); });

  const int max_code = first.max_code();
  const int w = first.width();
  const int h = first.height();
  LinearImage out(w, h);
  for (int c = 0; c < 3; ++c) {
    Plane<double> num = Plane<double>::Zero(h, w);
    Plane<double> den = Plane<double>::Zero(h, w);
    Plane<double> fallback = Plane<double>::Zero(h, w);
    bool first_bracket = true;
    for (const std::size_t i : order) {
      const Plane<double> codes = brackets[i].first.codes[c].cast<double>();
      const Plane<double> radiance = codes / exposure(i);
      const Plane<double> weight = brackets[i].first.codes[c].unaryExpr(
          [&](std::uint16_t code) { return hdr_weight(code, max_code); });
      num += weight * radiance;
      den += weight;
      if (first_bracket) {
        fallback = radiance;
        first_bracket = false;
      } else {
        fallback = (codes < max_code).select(radiance, fallback);
      }
    }
    out[c] = (den > 0.0).select(num / den, fallback);
  }
  return out;
}

double motion_blur_extent(double camera_speed, double shutter_time, double depth,
                          const OpticsModel& optics, const SensorModel& sensor) {
  require(depth > 0.0, ErrorKind::InvalidArgument, "depth must be positive");
  return camera_speed * shutter_time * optics.focal_length / (depth * sensor.pixel_pitch);
}

Plane<double> motion_blur_extents(const Scene& scene, const SceneRaster& raster,
                                  double shutter_time, const OpticsModel& optics,
                                  const SensorModel& sensor) {
  return raster.depth.unaryExpr([&](double depth) {
    return motion_blur_extent(scene.camera_speed, shutter_time, depth, optics, sensor);
  });
}

LinearImage apply_motion_blur(const LinearImage& img, const Plane<double>& extents) {
  require(extents.rows() == img.height() && extents.cols() == img.width(),
          ErrorKind::InvalidArgument, "blur extent map must match the image size");
  const int w = img.width();
  LinearImage out = img;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < w; ++x) {
      const auto width = static_cast<int>(std::lround(std::max(extents(y, x), 0.0))) + 1;
      if (width == 1) continue;
      const int left = (width - 1) / 2;
      for (int c = 0; c < 3; ++c) {
        double sum = 0.0;
        for (int k = x - left; k < x - left + width; ++k) sum += img[c](y, std::clamp(k, 0, w - 1));
        out[c](y, x) = sum / width;
      }
    }
  }
  return out;
}

double calibrate_normalization(const SensorModel& sensor, const OpticsModel& optics,
                               const Scene& scene, const SpectralCurve& illumination) {
  validate(scene);
  SensorModel unit = sensor;
  unit.normalization_k = 1.0;
  const double fg = scene.foreground_depth();
  double brightest = 0.0;
  for (const auto& patch : scene.patches) {
    if (patch.depth != fg) continue;
    const SpectralCurve& refl = scene.reflectances.find(patch.reflectance_id)->second;
    brightest = std::max(brightest,
                         pixel_signal_rgb(1e-3, unit, optics, illumination, refl).maxCoeff());
  }
  require(brightest > 0.0, ErrorKind::InvalidArgument,
          "calibration scene is black under the reference illumination");
  return 0.5 * sensor.full_scale_signal / brightest;
}

}  // namespace alcam
