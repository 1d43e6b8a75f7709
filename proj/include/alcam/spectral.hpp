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

#include <array>
#include <functional>
#include <iosfwd>
#include <string>

#include <Eigen/Core>

namespace alcam {

struct PhysicalConstants {
  static constexpr double planck = 6.62607015e-34;        // J s
  static constexpr double speed_of_light = 2.99792458e8;  // m/s
};

/// Uniform wavelength sampling, in nanometres.
struct WavelengthGrid {
  double start_nm = 380.0;
  double step_nm = 5.0;
  Eigen::Index count = 81;

  double wavelength(Eigen::Index i) const { return start_nm + step_nm * static_cast<double>(i); }
  double end_nm() const { return wavelength(count - 1); }
  Eigen::ArrayXd wavelengths() const;

  /// 380-780 nm at 5 nm.
  static WavelengthGrid visible() { return {}; }

  friend bool operator==(const WavelengthGrid&, const WavelengthGrid&) = default;
};

void validate(const WavelengthGrid& grid);

/// A non-negative function of wavelength sampled on a uniform grid.
///
/// Used for spectral power distributions (W m^-2 nm^-1), reflectances and
/// quantum efficiencies (dimensionless, [0, 1]).
class SpectralCurve {
 public:
  SpectralCurve(WavelengthGrid grid, Eigen::ArrayXd samples);

  static SpectralCurve constant(const WavelengthGrid& grid, double value);
  static SpectralCurve from_function(const WavelengthGrid& grid,
                                     const std::function<double(double)>& fn);

  const WavelengthGrid& grid() const { return grid_; }
  const Eigen::ArrayXd& samples() const { return samples_; }
  Eigen::Index size() const { return samples_.size(); }
  double operator[](Eigen::Index i) const { return samples_[i]; }

  /// Linear interpolation; zero outside the sampled support.
  double value_at(double lambda_nm) const;

  bool unit_bounded() const { return (samples_ <= 1.0).all(); }

  SpectralCurve scaled(double factor) const;

 private:
  WavelengthGrid grid_;
  Eigen::ArrayXd samples_;
};

SpectralCurve operator+(const SpectralCurve& a, const SpectralCurve& b);
SpectralCurve operator*(const SpectralCurve& a, const SpectralCurve& b);

/// Throws InvalidArgument unless every sample lies in [0, 1].
void require_unit_bounded(const SpectralCurve& curve, const std::string& what);
void require_same_grid(const SpectralCurve& a, const SpectralCurve& b);

SpectralCurve resample(const SpectralCurve& curve, double target_start_nm,
                       double target_step_nm, Eigen::Index target_count);
inline SpectralCurve resample(const SpectralCurve& curve, const WavelengthGrid& target) {
  return resample(curve, target.start_nm, target.step_nm, target.count);
}

/// Trapezoidal integral over the grid with d-lambda in nanometres.
double integrate(const SpectralCurve& curve);

enum class Channel { R = 0, G = 1, B = 2 };

/// Gaussian responses peaking at 460/540/610 nm, sigma 40 nm, height 0.8.
std::array<SpectralCurve, 3> default_quantum_efficiency(const WavelengthGrid& grid = WavelengthGrid::visible());

struct SensorModel {
  double pixel_pitch = 3.45e-6;  // m
  double normalization_k = 1.0;
  std::array<SpectralCurve, 3> quantum_efficiency = default_quantum_efficiency();
  int bit_depth = 8;
  double full_scale_signal = 1.0;
  double read_noise_sigma = 0.5 / 255.0;
  double shot_noise_scale = 1.0 / (255.0 * 255.0);

  const SpectralCurve& qe(Channel c) const { return quantum_efficiency[static_cast<int>(c)]; }
  int max_code() const { return (1 << bit_depth) - 1; }
};

void validate(const SensorModel& sensor);

SensorModel default_sensor(const WavelengthGrid& grid = WavelengthGrid::visible());

struct OpticsModel {
  double f_number = 2.4;
  double focal_length = 3.5e-3;  // m
};

inline constexpr double kMinFNumber = 2.4;

void validate(const OpticsModel& optics);

/// Linear pixel signal for one colour channel:
///   T K (l^2 / N^2) integral E(l) R(l) Q(l) / (h c / l) dl
/// evaluated by the trapezoidal rule, with wavelength and its differential
/// in metres.
double pixel_signal(double exposure_time, const SensorModel& sensor, const OpticsModel& optics,
                    const SpectralCurve& irradiance, const SpectralCurve& reflectance,
                    Channel channel);

/// All three channels at once; same contract as pixel_signal.
Eigen::Array3d pixel_signal_rgb(double exposure_time, const SensorModel& sensor,
                                const OpticsModel& optics, const SpectralCurve& irradiance,
                                const SpectralCurve& reflectance);

// `lambda_nm,value` CSV. Rows must be evenly spaced.
SpectralCurve read_curve_csv(std::istream& in);
SpectralCurve read_curve_csv_file(const std::string& path);
void write_curve_csv(std::ostream& out, const SpectralCurve& curve);

}  // namespace alcam
