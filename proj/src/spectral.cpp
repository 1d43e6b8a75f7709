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

#include "alcam/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "alcam/error.hpp"
#include "alcam/text.hpp"

namespace alcam {

Eigen::ArrayXd WavelengthGrid::wavelengths() const {
  return Eigen::ArrayXd::LinSpaced(count, start_nm, end_nm());
}

void validate(const WavelengthGrid& grid) {
  require(std::isfinite(grid.start_nm) && std::isfinite(grid.step_nm), ErrorKind::InvalidGrid,
          "wavelength grid must be finite");
  require(grid.step_nm > 0.0, ErrorKind::InvalidGrid, "wavelength step must be positive");
  require(grid.count > 0, ErrorKind::InvalidGrid, "wavelength grid must have at least one sample");
}

SpectralCurve::SpectralCurve(WavelengthGrid grid, Eigen::ArrayXd samples)
    : grid_(grid), samples_(std::move(samples)) {
  validate(grid_);
  require(samples_.size() == grid_.count, ErrorKind::InvalidGrid,
          "sample count does not match grid");
  require(samples_.allFinite(), ErrorKind::InvalidArgument, "spectral samples must be finite");
  require((samples_ >= 0.0).all(), ErrorKind::InvalidArgument,
          "spectral samples must be non-negative");
}

SpectralCurve SpectralCurve::constant(const WavelengthGrid& grid, double value) {
  return {grid, Eigen::ArrayXd::Constant(grid.count, value)};
}

SpectralCurve SpectralCurve::from_function(const WavelengthGrid& grid,
                                           const std::function<double(double)>& fn) {
  return {grid, grid.wavelengths().unaryExpr(fn)};
}

double SpectralCurve::value_at(double lambda_nm) const {
  const double pos = (lambda_nm - grid_.start_nm) / grid_.step_nm;
  const auto last = static_cast<double>(grid_.count - 1);
  // Tolerate round-off at the support edges.
  constexpr double kEdge = 1e-9;
  if (pos < -kEdge || pos > last + kEdge) return 0.0;
  if (grid_.count == 1) return samples_[0];
  const double clamped = std::clamp(pos, 0.0, last);
  const auto lo = std::min(static_cast<Eigen::Index>(std::floor(clamped)), grid_.count - 2);
  const double frac = clamped - static_cast<double>(lo);
  return samples_[lo] + frac * (samples_[lo + 1] - samples_[lo]);
}

SpectralCurve SpectralCurve::scaled(double factor) const {
  require(std::isfinite(factor) && factor >= 0.0, ErrorKind::InvalidArgument,
          "scale factor must be finite and non-negative");
  return {grid_, samples_ * factor};
}

void require_same_grid(const SpectralCurve& a, const SpectralCurve& b) {
  require(a.grid() == b.grid(), ErrorKind::GridMismatch,
          "spectral curves are sampled on different grids");
}

SpectralCurve operator+(const SpectralCurve& a, const SpectralCurve& b) {
  require_same_grid(a, b);
  return {a.grid(), a.samples() + b.samples()};
}

SpectralCurve operator*(const SpectralCurve& a, const SpectralCurve& b) {
  require_same_grid(a, b);
  return {a.grid(), a.samples() * b.samples()};
}

void require_unit_bounded(const SpectralCurve& curve, const std::string& what) {
  require(curve.unit_bounded(), ErrorKind::InvalidArgument, what + " samples must lie in [0, 1]");
}

SpectralCurve resample(const SpectralCurve& curve, double target_start_nm, double target_step_nm,
                       Eigen::Index target_count) {
  const WavelengthGrid target{target_start_nm, target_step_nm, target_count};
  validate(target);
  if (target == curve.grid()) return curve;
  Eigen::ArrayXd out(target_count);
  for (Eigen::Index i = 0; i < target_count; ++i) out[i] = curve.value_at(target.wavelength(i));
  return {target, std::move(out)};
}

namespace {

// Trapezoid weights (in units of one step) for n samples.
Eigen::ArrayXd trapezoid_weights(Eigen::Index n) {
  Eigen::ArrayXd w = Eigen::ArrayXd::Ones(n);
  if (n > 1) {
    w[0] = 0.5;
    w[n - 1] = 0.5;
  } else {
    w[0] = 0.0;
  }
  return w;
}

}  // namespace

double integrate(const SpectralCurve& curve) {
  return (curve.samples() * trapezoid_weights(curve.size())).sum() * curve.grid().step_nm;
}

std::array<SpectralCurve, 3> default_quantum_efficiency(const WavelengthGrid& grid) {
  const auto bump = [&](double peak) {
    return SpectralCurve::from_function(grid, [peak](double nm) {
      const double z = (nm - peak) / 40.0;
      return 0.8 * std::exp(-0.5 * z * z);
    });
  };
  return {bump(610.0), bump(540.0), bump(460.0)};
}

SensorModel default_sensor(const WavelengthGrid& grid) {
  SensorModel sensor;
  sensor.quantum_efficiency = default_quantum_efficiency(grid);
  return sensor;
}

void validate(const SensorModel& sensor) {
  require(sensor.pixel_pitch > 0.0, ErrorKind::InvalidArgument, "pixel_pitch must be positive");
  require(sensor.normalization_k > 0.0, ErrorKind::InvalidArgument,
          "normalization_k must be positive");
  require(sensor.bit_depth == 8 || sensor.bit_depth == 10 || sensor.bit_depth == 12 ||
              sensor.bit_depth == 16,
          ErrorKind::InvalidArgument, "bit_depth must be one of 8, 10, 12, 16");
  require(sensor.full_scale_signal > 0.0, ErrorKind::InvalidArgument,
          "full_scale_signal must be positive");
  require(sensor.read_noise_sigma >= 0.0 && sensor.shot_noise_scale >= 0.0,
          ErrorKind::InvalidArgument, "noise parameters must be non-negative");
  for (const auto& qe : sensor.quantum_efficiency) require_unit_bounded(qe, "quantum efficiency");
  require(sensor.quantum_efficiency[0].grid() == sensor.quantum_efficiency[1].grid() &&
              sensor.quantum_efficiency[1].grid() == sensor.quantum_efficiency[2].grid(),
          ErrorKind::GridMismatch, "quantum efficiency channels use different grids");
}

void validate(const OpticsModel& optics) {
  require(optics.f_number >= kMinFNumber, ErrorKind::InvalidArgument,
          "f_number must be at least 2.4");
  require(optics.focal_length > 0.0, ErrorKind::InvalidArgument, "focal_length must be positive");
}

namespace {

// Integrand weight per sample, E R already multiplied: lambda / (h c) with
// lambda in metres, times the trapezoid weight and the step in metres.
Eigen::ArrayXd photon_weights(const WavelengthGrid& grid) {
  constexpr double hc = PhysicalConstants::planck * PhysicalConstants::speed_of_light;
  const double step_m = grid.step_nm * 1e-9;
  return grid.wavelengths() * 1e-9 / hc * trapezoid_weights(grid.count) * step_m;
}

double optical_gain(double exposure_time, const SensorModel& sensor, const OpticsModel& optics) {
  require(std::isfinite(exposure_time) && exposure_time >= 0.0, ErrorKind::InvalidArgument,
          "exposure time must be non-negative");
  const double pitch = sensor.pixel_pitch;
  const double n = optics.f_number;
  return exposure_time * sensor.normalization_k * (pitch * pitch) / (n * n);
}

}  // namespace

double pixel_signal(double exposure_time, const SensorModel& sensor, const OpticsModel& optics,
                    const SpectralCurve& irradiance, const SpectralCurve& reflectance,
                    Channel channel) {
  const double gain = optical_gain(exposure_time, sensor, optics);
  const SpectralCurve& qe = sensor.qe(channel);
  require_same_grid(irradiance, reflectance);
  require_same_grid(irradiance, qe);
  const Eigen::ArrayXd weights = photon_weights(irradiance.grid());
  return gain * (irradiance.samples() * reflectance.samples() * qe.samples() * weights).sum();
}

Eigen::Array3d pixel_signal_rgb(double exposure_time, const SensorModel& sensor,
                                const OpticsModel& optics, const SpectralCurve& irradiance,
                                const SpectralCurve& reflectance) {
  return {pixel_signal(exposure_time, sensor, optics, irradiance, reflectance, Channel::R),
          pixel_signal(exposure_time, sensor, optics, irradiance, reflectance, Channel::G),
          pixel_signal(exposure_time, sensor, optics, irradiance, reflectance, Channel::B)};
}

SpectralCurve read_curve_csv(std::istream& in) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), ErrorKind::Format, "empty curve file");
  require(trim(line) == "lambda_nm,value", ErrorKind::Format,
          "curve CSV header must be 'lambda_nm,value'");
  std::vector<double> lambdas;
  std::vector<double> values;
  while (std::getline(in, line)) {
    const auto row = trim(line);
    if (row.empty()) continue;
    const auto fields = split(row, ',');
    require(fields.size() == 2, ErrorKind::Format, "curve CSV row needs 2 fields: " + std::string(row));
    lambdas.push_back(parse_double(fields[0]));
    values.push_back(parse_double(fields[1]));
  }
  require(!lambdas.empty(), ErrorKind::Format, "curve CSV has no rows");
  WavelengthGrid grid{lambdas.front(), 1.0, static_cast<Eigen::Index>(lambdas.size())};
  if (lambdas.size() > 1) {
    grid.step_nm = (lambdas.back() - lambdas.front()) / static_cast<double>(lambdas.size() - 1);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      require(std::abs(lambdas[i] - grid.wavelength(static_cast<Eigen::Index>(i))) <
                  1e-6 * grid.step_nm,
              ErrorKind::Format, "curve CSV wavelengths must be evenly spaced");
    }
  }
  return {grid, Eigen::Map<const Eigen::ArrayXd>(values.data(), static_cast<Eigen::Index>(values.size()))};
}

SpectralCurve read_curve_csv_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::Io, "cannot open curve file: " + path);
  return read_curve_csv(in);
}

void write_curve_csv(std::ostream& out, const SpectralCurve& curve) {
  out << "lambda_nm,value\n";
  for (Eigen::Index i = 0; i < curve.size(); ++i)
    out << format_double(curve.grid().wavelength(i)) << ',' << format_double(curve[i]) << '\n';
}

}  // namespace alcam
