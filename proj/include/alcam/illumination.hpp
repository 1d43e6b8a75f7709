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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "alcam/spectral.hpp"

namespace alcam {

inline constexpr double kMinCct = 1000.0;
inline constexpr double kMaxCct = 20000.0;

/// Planck radiator shape on `grid`, normalized to unit integral (nm measure).
SpectralCurve blackbody_spd(double cct, const WavelengthGrid& grid = WavelengthGrid::visible());

/// Sampled (time_min, scale) trace; linearly interpolated, clamped at the ends.
struct DaylightProfile {
  std::vector<double> time_min;
  std::vector<double> scale;

  double at(double t) const;
};

DaylightProfile read_daylight_profile_csv(std::istream& in);
DaylightProfile read_daylight_profile_file(const std::string& path);

/// Ambient light over an afternoon, times in minutes from noon.
///
/// Intensity follows noon_illuminance * cos(pi/2 * u) with u the fraction of
/// the day window elapsed; CCT ramps linearly from noon_cct to sunset_cct.
/// A measured profile, when present, replaces the cosine factor.
struct DaylightModel {
  double noon_illuminance = 1.0;
  double noon_cct = 6500.0;
  double sunset_cct = 2500.0;
  double day_start = 0.0;
  double day_end = 360.0;
  std::optional<DaylightProfile> measured;
};

void validate(const DaylightModel& model);

double daylight_scale(const DaylightModel& model, double t_min);
double daylight_cct(const DaylightModel& model, double t_min);
SpectralCurve daylight_irradiance(const DaylightModel& model, double t_min,
                                  const WavelengthGrid& grid = WavelengthGrid::visible());

struct FlashUnit {
  double radiant_power = 1200.0;  // W
  double cct = 5600.0;            // K
  double pulse_duration = 250e-6;
  double pulse_start_offset = 0.0;
  double reference_distance = 1.0;  // m
  double beam_gain = 1.0;           // on-axis concentration of a directional emitter
};

void validate(const FlashUnit& flash);

/// Total irradiance (W m^-2) of an isotropic emitter at `distance`.
double flash_irradiance_scale(const FlashUnit& flash, double distance);
SpectralCurve flash_irradiance(const FlashUnit& flash, double distance,
                               const WavelengthGrid& grid = WavelengthGrid::visible());

/// day + flash * overlap_fraction, pointwise.
SpectralCurve combined_irradiance(const SpectralCurve& day, const SpectralCurve& flash_at_distance,
                                  double flash_overlap_fraction);

}  // namespace alcam
