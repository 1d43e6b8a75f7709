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

#include "alcam/illumination.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "alcam/error.hpp"
#include "alcam/text.hpp"

namespace alcam {

namespace {

constexpr double kBoltzmann = 1.380649e-23;

void require_cct(double cct) {
  require(std::isfinite(cct) && cct >= kMinCct && cct <= kMaxCct, ErrorKind::InvalidArgument,
          "colour temperature must lie in [1000, 20000] K, got " + format_double(cct));
}

}  // namespace

SpectralCurve blackbody_spd(double cct, const WavelengthGrid& grid) {
  require_cct(cct);
  validate(grid);
  constexpr double h = PhysicalConstants::planck;
  constexpr double c = PhysicalConstants::speed_of_light;
  const Eigen::ArrayXd lambda = grid.wavelengths() * 1e-9;
  const Eigen::ArrayXd radiance =
      2.0 * h * c * c / lambda.pow(5) / ((h * c / (kBoltzmann * cct) / lambda).exp() - 1.0);
  const SpectralCurve shape(grid, radiance);
  const double area = integrate(shape);
  return shape.scaled(area > 0.0 ? 1.0 / area : 0.0);
}

double DaylightProfile::at(double t) const {
  if (time_min.empty()) return 0.0;
  if (t <= time_min.front()) return scale.front();
  if (t >= time_min.back()) return scale.back();
  const auto hi = static_cast<std::size_t>(
      std::upper_bound(time_min.begin(), time_min.end(), t) - time_min.begin());
  const std::size_t lo = hi - 1;
  const double frac = (t - time_min[lo]) / (time_min[hi] - time_min[lo]);
  return scale[lo] + frac * (scale[hi] - scale[lo]);
}

DaylightProfile read_daylight_profile_csv(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)) && trim(line) == "time_min,scale",
          ErrorKind::Format, "daylight profile CSV header must be 'time_min,scale'");
  DaylightProfile profile;
  while (std::getline(in, line)) {
    const auto row = trim(line);
    if (row.empty()) continue;
    const auto fields = split(row, ',');
    require(fields.size() == 2, ErrorKind::Format,
            "daylight profile row needs 2 fields: " + std::string(row));
    const double t = parse_double(fields[0]);
    const double s = parse_double(fields[1]);
    require(profile.time_min.empty() || t > profile.time_min.back(), ErrorKind::Format,
            "daylight profile times must be strictly increasing");
    require(s >= 0.0, ErrorKind::Format, "daylight profile scale must be non-negative");
    profile.time_min.push_back(t);
    profile.scale.push_back(s);
  }
  require(!profile.time_min.empty(), ErrorKind::Format, "daylight profile has no rows");
  return profile;
}

DaylightProfile read_daylight_profile_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::Io, "cannot open daylight profile: " + path);
  return read_daylight_profile_csv(in);
}

void validate(const DaylightModel& model) {
  require(model.day_end > model.day_start, ErrorKind::InvalidArgument,
          "day_end must be after day_start");
  require_cct(model.noon_cct);
  require_cct(model.sunset_cct);
  require(model.noon_illuminance > 0.0, ErrorKind::InvalidArgument,
          "noon_illuminance must be positive");
}

namespace {

double day_fraction(const DaylightModel& model, double t_min) {
  validate(model);
  require(t_min >= model.day_start && t_min <= model.day_end, ErrorKind::OutOfRange,
          "time " + format_double(t_min) + " min lies outside the day window");
  return (t_min - model.day_start) / (model.day_end - model.day_start);
}

}  // namespace

double daylight_scale(const DaylightModel& model, double t_min) {
  const double u = day_fraction(model, t_min);
  if (model.measured) return model.noon_illuminance * model.measured->at(t_min);
  // cos(pi/2) is 6e-17, not 0.
  if (u >= 1.0) return 0.0;
  return model.noon_illuminance * std::cos(std::numbers::pi / 2.0 * u);
}

double daylight_cct(const DaylightModel& model, double t_min) {
  const double u = day_fraction(model, t_min);
  return model.noon_cct + u * (model.sunset_cct - model.noon_cct);
}

SpectralCurve daylight_irradiance(const DaylightModel& model, double t_min,
                                  const WavelengthGrid& grid) {
  return blackbody_spd(daylight_cct(model, t_min), grid).scaled(daylight_scale(model, t_min));
}

void validate(const FlashUnit& flash) {
  require(flash.radiant_power > 0.0, ErrorKind::InvalidArgument, "radiant_power must be positive");
  require_cct(flash.cct);
  require(flash.pulse_duration > 0.0, ErrorKind::InvalidArgument,
          "pulse_duration must be positive");
  require(flash.reference_distance > 0.0, ErrorKind::InvalidArgument,
          "reference_distance must be positive");
  require(flash.beam_gain > 0.0, ErrorKind::InvalidArgument, "beam_gain must be positive");
}

double flash_irradiance_scale(const FlashUnit& flash, double distance) {
  validate(flash);
  require(std::isfinite(distance) && distance > 0.0, ErrorKind::InvalidArgument,
          "flash distance must be positive");
  return flash.beam_gain * flash.radiant_power / (4.0 * std::numbers::pi * distance * distance);
}

SpectralCurve flash_irradiance(const FlashUnit& flash, double distance, const WavelengthGrid& grid) {
  const double scale = flash_irradiance_scale(flash, distance);
  return blackbody_spd(flash.cct, grid).scaled(scale);
}

SpectralCurve combined_irradiance(const SpectralCurve& day, const SpectralCurve& flash_at_distance,
                                  double flash_overlap_fraction) {
  require(flash_overlap_fraction >= 0.0 && flash_overlap_fraction <= 1.0,
          ErrorKind::InvalidArgument, "flash overlap fraction must lie in [0, 1]");
  require_same_grid(day, flash_at_distance);
  return {day.grid(), day.samples() + flash_at_distance.samples() * flash_overlap_fraction};
}

}  // namespace alcam
