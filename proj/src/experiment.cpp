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

#include "alcam/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "alcam/config.hpp"
#include "alcam/error.hpp"
#include "alcam/ppm.hpp"
#include "alcam/text.hpp"

namespace alcam {

FlashUnit default_sweep_flash() {
  FlashUnit flash;
  flash.beam_gain = 1.5;
  return flash;
}

void validate(const DaySweepConfig& config) {
  require(config.interval > 0.0, ErrorKind::Config, "interval must be positive");
  require(config.width > 0 && config.height > 0, ErrorKind::Config,
          "width and height must be positive");
  require(!config.conditions.empty(), ErrorKind::Config, "conditions must not be empty");
  const bool wants_hdr = std::find(config.conditions.begin(), config.conditions.end(),
                                   Condition::HDR) != config.conditions.end();
  require(!wants_hdr || config.hdr_brackets.size() >= 2, ErrorKind::Config,
          "hdr_brackets needs at least 2 entries when HDR is requested");
  for (double f : config.hdr_brackets)
    require(f > 0.0, ErrorKind::Config, "hdr_brackets entries must be positive");
  require(config.target_mean > 0.0 && config.target_mean < 1.0, ErrorKind::Config,
          "target_mean must lie in (0, 1)");
  require(config.nl_bounds.start >= kMinShutter && config.nl_bounds.duration >= 0.0,
          ErrorKind::Config, "nl_shutter_bounds must be ordered and start at >= 11 us");
  if (config.al_shutter) {
    require(*config.al_shutter >= kMinShutter, ErrorKind::Config,
            "al_shutter must be at least 11 us");
  }
  validate(config.day);
  validate(config.flash);
  validate(config.sensor);
  validate(config.optics);
  validate(config.ssim);
}

Scene resolve_scene(const DaySweepConfig& config) {
  const WavelengthGrid grid = config.sensor.qe(Channel::R).grid();
  if (is_builtin_scene(config.scene))
    return builtin_scene(config.scene, config.width, config.height, grid);
  return load_scene_file(config.scene, grid);
}

std::vector<double> sweep_times(const DaySweepConfig& config) {
  std::vector<double> times;
  const double span = config.day.day_end - config.day.day_start;
  const auto steps = static_cast<long>(std::floor(span / config.interval + 1e-9));
  for (long k = 0; k <= steps; ++k)
    times.push_back(config.day.day_start + static_cast<double>(k) * config.interval);
  return times;
}

double flash_dominance_ratio(const DaySweepConfig& config) {
  const Scene scene = resolve_scene(config);
  return flash_irradiance_scale(config.flash, scene.foreground_depth()) /
         config.day.noon_illuminance;
}

QualityReport SweepResult::combined() const {
  QualityReport out;
  for (const auto& frame : frames) {
    const auto& rows = reports.at(frame.condition).rows;
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const QualityRow& r) {
      return r.time_min == frame.time_min;
    });
    if (it != rows.end()) out.rows.push_back(*it);
  }
  if (!reports.empty()) out.reference_id = "noon";
  return out;
}

const CapturedFrame* SweepResult::find(double time_min, Condition condition) const {
  for (const auto& f : frames)
    if (f.time_min == time_min && f.condition == condition) return &f;
  return nullptr;
}

namespace {

bool wants(const DaySweepConfig& config, Condition c) {
  return std::find(config.conditions.begin(), config.conditions.end(), c) !=
         config.conditions.end();
}

struct SweepContext {
  DaySweepConfig config;
  Scene scene;
  SceneRaster raster;
  SensorModel sensor;
  SensorModel noiseless;
};

SweepContext prepare(const DaySweepConfig& config) {
  validate(config);
  SweepContext ctx{config, resolve_scene(config), {}, config.sensor, {}};
  ctx.raster = rasterize(ctx.scene);
  if (config.calibrate_k) {
    const SpectralCurve reference =
        daylight_irradiance(config.day, config.day.day_start, config.sensor.qe(Channel::R).grid());
    ctx.sensor.normalization_k =
        calibrate_normalization(ctx.sensor, config.optics, ctx.scene, reference);
  }
  ctx.noiseless = ctx.sensor;
  ctx.noiseless.read_noise_sigma = 0.0;
  ctx.noiseless.shot_noise_scale = 0.0;
  return ctx;
}

LinearImage blurred(const SweepContext& ctx, LinearImage img, double shutter) {
  if (!ctx.config.motion_blur) return img;
  return apply_motion_blur(
      img, motion_blur_extents(ctx.scene, ctx.raster, shutter, ctx.config.optics, ctx.sensor));
}

ExposureSettings calibrate_al(const SweepContext& ctx) {
  const auto& cfg = ctx.config;
  if (cfg.al_shutter) return {*cfg.al_shutter, kMinFNumber, 0.0};
  const SpectralCurve day = daylight_irradiance(cfg.day, cfg.day.day_start,
                                                ctx.sensor.qe(Channel::R).grid());
  return auto_expose(ctx.scene, day, ctx.sensor, cfg.optics, cfg.target_mean,
                     Interval::between(kMinShutter, cfg.flash.pulse_duration), cfg.flash,
                     cfg.rate_hz)
      .settings;
}

CapturedFrame make_frame(double t, Condition c, QuantizedImage img, ExposureSettings settings,
                         double scale) {
  const double sat = saturated_fraction(img);
  return {t, c, std::move(img), settings, sat, scale};
}

struct StepOutput {
  std::vector<CapturedFrame> frames;
  bool nl_saturated = false;
};

StepOutput capture_step(const SweepContext& ctx, const std::optional<ExposureSettings>& al,
                        double t, const std::vector<Condition>& conditions) {
  const auto& cfg = ctx.config;
  const WavelengthGrid grid = ctx.sensor.qe(Channel::R).grid();
  const SpectralCurve day = daylight_irradiance(cfg.day, t, grid);
  const double scale = daylight_scale(cfg.day, t);
  const auto has = [&](Condition c) {
    return std::find(conditions.begin(), conditions.end(), c) != conditions.end();
  };

  StepOutput out;
  if (has(Condition::AL)) {
    const TriggerSchedule schedule = schedule_stereo(cfg.rate_hz, cfg.flash, al->shutter_time);
    LinearImage lin = expose(ctx.scene, day, cfg.flash, *al, schedule, ctx.sensor, cfg.optics);
    lin = blurred(ctx, std::move(lin), al->shutter_time);
    out.frames.push_back(make_frame(t, Condition::AL, quantize(lin, ctx.sensor, *al, cfg.seed),
                                    *al, scale));
  }
  if (has(Condition::NL) || has(Condition::HDR)) {
    const AutoExposureResult ae = auto_expose(ctx.scene, day, ctx.sensor, cfg.optics,
                                              cfg.target_mean, cfg.nl_bounds);
    out.nl_saturated = ae.saturated;
    const auto shoot = [&](const ExposureSettings& s) {
      LinearImage lin = expose(ctx.scene, day, std::nullopt, s, std::nullopt, ctx.sensor, cfg.optics);
      return quantize(blurred(ctx, std::move(lin), s.shutter_time), ctx.sensor, s, cfg.seed);
    };
    if (has(Condition::NL))
      out.frames.push_back(make_frame(t, Condition::NL, shoot(ae.settings), ae.settings, scale));
    if (has(Condition::HDR)) {
      std::vector<std::pair<QuantizedImage, ExposureSettings>> brackets;
      for (double factor : cfg.hdr_brackets) {
        ExposureSettings s = ae.settings;
        s.shutter_time = std::max(ae.settings.shutter_time * factor, kMinShutter);
        const bool duplicate = std::any_of(brackets.begin(), brackets.end(), [&](const auto& b) {
          return b.second.shutter_time == s.shutter_time;
        });
        if (!duplicate) brackets.emplace_back(shoot(s), s);
      }
      // Back to the auto-exposure scale, in linear signal units.
      const double to_signal = ae.settings.shutter_time * ctx.sensor.full_scale_signal /
                               static_cast<double>(ctx.sensor.max_code());
      LinearImage radiance = hdr_merge(brackets);
      for (int c = 0; c < 3; ++c) radiance[c] *= to_signal;
      out.frames.push_back(make_frame(
          t, Condition::HDR, quantize(radiance, ctx.noiseless, ae.settings, cfg.seed),
          ae.settings, scale));
    }
  }
  return out;
}

SweepResult assemble(std::vector<CapturedFrame> frames, const SweepContext& ctx,
                     const std::optional<ExposureSettings>& al) {
  SweepResult result;
  result.frames = std::move(frames);
  result.al_settings = al;
  result.normalization_k = ctx.sensor.normalization_k;
  for (Condition c : {Condition::AL, Condition::NL, Condition::HDR}) {
    std::vector<TimedFrame> series;
    for (const auto& f : result.frames)
      if (f.condition == c) series.push_back({f.time_min, c, f.image, f.scene_scale});
    if (series.empty()) continue;
    result.reports[c] = consistency_series(series.front().image, series, ctx.config.ssim,
                                           std::string(to_string(c)) + "@" +
                                               format_double(series.front().time_min));
  }
  return result;
}

}  // namespace

SweepResult run_day_sweep(const DaySweepConfig& config) {
  const SweepContext ctx = prepare(config);
  std::optional<ExposureSettings> al;
  if (wants(config, Condition::AL)) al = calibrate_al(ctx);

  std::vector<Condition> ordered;
  for (Condition c : {Condition::AL, Condition::NL, Condition::HDR})
    if (wants(config, c)) ordered.push_back(c);

  std::vector<CapturedFrame> frames;
  for (double t : sweep_times(config)) {
    auto step = capture_step(ctx, al, t, ordered);
    std::move(step.frames.begin(), step.frames.end(), std::back_inserter(frames));
  }
  return assemble(std::move(frames), ctx, al);
}

double masked_luma_stddev(const QuantizedImage& img, const Plane<bool>& mask) {
  require(mask.rows() == img.height() && mask.cols() == img.width(), ErrorKind::InvalidArgument,
          "mask must match the image size");
  const auto n = static_cast<double>(mask.count());
  if (n == 0.0) return 0.0;
  const Plane<double> y = luma(img);
  const Plane<double> m = mask.cast<double>();
  const double mean = (y * m).sum() / n;
  return std::sqrt(((y - mean).square() * m).sum() / n);
}

ExtremeResult run_extreme(const DaySweepConfig& config) {
  DaySweepConfig cfg = config;
  cfg.conditions = {Condition::AL, Condition::NL};
  const SweepContext ctx = prepare(cfg);
  require(!ctx.scene.emitters.empty(), ErrorKind::InvalidScene,
          "extreme scenario needs a scene with an emitter (e.g. orchard_extreme)");
  const std::optional<ExposureSettings> al = calibrate_al(ctx);
  const double t = cfg.day.day_start;
  StepOutput step = capture_step(ctx, al, t, cfg.conditions);

  ExtremeResult result;
  result.nl_auto_exposure_saturated = step.nl_saturated;
  result.sweep = assemble(std::move(step.frames), ctx, al);
  const CapturedFrame& al_frame = *result.sweep.find(t, Condition::AL);
  const CapturedFrame& nl_frame = *result.sweep.find(t, Condition::NL);
  const Plane<bool> fg = foreground_mask(ctx.scene, ctx.raster);
  result.sun_area_fraction = static_cast<double>(emitter_mask(ctx.scene, ctx.raster).count()) /
                             static_cast<double>(ctx.scene.width * ctx.scene.height);
  result.al_saturated_fraction = al_frame.saturated_fraction;
  result.nl_saturated_fraction = nl_frame.saturated_fraction;
  result.al_foreground_contrast = masked_luma_stddev(al_frame.image, fg);
  result.nl_foreground_contrast = masked_luma_stddev(nl_frame.image, fg);
  return result;
}

QualityReport analyze_directory(const std::string& reference_path,
                                const std::vector<std::string>& image_paths,
                                const SsimParams& params, Condition condition) {
  require(!image_paths.empty(), ErrorKind::InvalidArgument, "no images to analyze");
  const QuantizedImage reference = read_ppm(reference_path);
  std::vector<TimedFrame> frames;
  frames.reserve(image_paths.size());
  for (std::size_t i = 0; i < image_paths.size(); ++i) {
    QuantizedImage img = read_ppm(image_paths[i]);
    require(img.same_size(reference), ErrorKind::InvalidArgument,
            image_paths[i] + ": size " + std::to_string(img.width()) + "x" +
                std::to_string(img.height()) + " differs from reference " +
                std::to_string(reference.width()) + "x" + std::to_string(reference.height()));
    frames.push_back({static_cast<double>(i), condition, std::move(img), 0.0});
  }
  return consistency_series(reference, frames, params, reference_path);
}

std::vector<std::string> list_images(const std::string& directory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  require(fs::is_directory(directory, ec), ErrorKind::Io, "not a directory: " + directory);
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(directory)) {
    const auto ext = entry.path().extension().string();
    if (entry.is_regular_file() && (ext == ".ppm" || ext == ".pgm"))
      out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace alcam
