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
#include "alcam/illumination.hpp"
#include "alcam/spectral.hpp"

using namespace alcam;

namespace {

constexpr double kH = 6.62607015e-34;
constexpr double kC = 2.99792458e8;

SensorModel unit_sensor(const WavelengthGrid& grid) {
  SensorModel s;
  s.pixel_pitch = 1.0;
  s.normalization_k = 1.0;
  for (auto& q : s.quantum_efficiency) q = SpectralCurve::constant(grid, 1.0);
  return s;
}

// Independent trapezoid of lambda/(hc) over [a, b] nm with step h nm, in SI.
double photon_integral_oracle(double a_nm, double b_nm, double h_nm) {
  const auto n = static_cast<long>(std::lround((b_nm - a_nm) / h_nm));
  double sum = 0.0;
  for (long i = 0; i <= n; ++i) {
    const double lambda = (a_nm + h_nm * static_cast<double>(i)) * 1e-9;
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    sum += w * lambda / (kH * kC);
  }
  return sum * h_nm * 1e-9;
}

}  // namespace

TEST_CASE("resample: identity, constants and linear interpolation") {
  const WavelengthGrid grid = WavelengthGrid::visible();
  const SpectralCurve ramp = SpectralCurve::from_function(
      grid, [](double nm) { return (nm - 380.0) / 400.0; });

  const SpectralCurve same = resample(ramp, grid);
  CHECK((same.samples() == ramp.samples()).all());

  const SpectralCurve ones = SpectralCurve::constant(grid, 1.0);
  const SpectralCurve sub = resample(ones, 400.0, 2.5, 101);
  CHECK((sub.samples() == 1.0).all());

  CHECK(ramp.value_at(580.0) == doctest::Approx(0.5).epsilon(1e-15));
  const SpectralCurve at = resample(ramp, 580.0, 1.0, 1);
  CHECK(at[0] == doctest::Approx(0.5));
  // Between samples.
  CHECK(ramp.value_at(582.5) == doctest::Approx(202.5 / 400.0));
}

TEST_CASE("resample: zero outside support and grid errors") {
  const SpectralCurve ones = SpectralCurve::constant(WavelengthGrid{500.0, 10.0, 11}, 1.0);
  const SpectralCurve wide = resample(ones, 480.0, 10.0, 15);
  CHECK(wide[0] == 0.0);
  CHECK(wide[1] == 0.0);
  CHECK(wide[2] == 1.0);
  CHECK(wide[12] == 1.0);
  CHECK(wide[13] == 0.0);

  CHECK_THROWS_AS(resample(ones, 400.0, 0.0, 10), Error);
  CHECK_THROWS_AS(resample(ones, 400.0, -1.0, 10), Error);
  try {
    resample(ones, 400.0, 5.0, 0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidGrid);
  }
}

TEST_CASE("SpectralCurve rejects negative or non-finite samples") {
  const WavelengthGrid grid{380.0, 5.0, 3};
  CHECK_THROWS_AS(SpectralCurve(grid, Eigen::Array3d(0.1, -0.1, 0.2)), Error);
  CHECK_THROWS_AS(SpectralCurve(grid, Eigen::Array3d(0.1, NAN, 0.2)), Error);
  CHECK_THROWS_AS(SpectralCurve(grid, Eigen::Array2d(0.1, 0.2)), Error);
  CHECK_THROWS_AS(require_unit_bounded(SpectralCurve::constant(grid, 1.5), "qe"), Error);
}

TEST_CASE("pixel_signal: zero exposure and error paths") {
  const WavelengthGrid grid = WavelengthGrid::visible();
  const SensorModel sensor = default_sensor();
  const OpticsModel optics;
  const SpectralCurve e = blackbody_spd(5600.0);
  const SpectralCurve r = SpectralCurve::constant(grid, 0.5);
  CHECK(pixel_signal(0.0, sensor, optics, e, r, Channel::G) == 0.0);
  CHECK_THROWS_AS(pixel_signal(-1e-3, sensor, optics, e, r, Channel::G), Error);

  const SpectralCurve other = SpectralCurve::constant(WavelengthGrid{380.0, 10.0, 41}, 0.5);
  try {
    pixel_signal(1e-3, sensor, optics, e, other, Channel::G);
    FAIL("expected grid mismatch");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::GridMismatch);
  }
}

TEST_CASE("pixel_signal: flat spectrum matches the analytic photon integral") {
  const WavelengthGrid grid = WavelengthGrid::visible();
  const SensorModel sensor = unit_sensor(grid);
  OpticsModel optics;
  optics.f_number = 2.4;
  const SpectralCurve flat = SpectralCurve::constant(grid, 1.0);
  const double n2 = optics.f_number * optics.f_number;
  const double signal = pixel_signal(1.0, sensor, optics, flat, flat, Channel::R) * n2;

  const double analytic = (780e-9 * 780e-9 - 380e-9 * 380e-9) / (2.0 * kH * kC);
  const double fine = photon_integral_oracle(380.0, 780.0, 0.1);
  CHECK(analytic == doctest::Approx(1.168e12).epsilon(1e-3));
  CHECK(std::abs(fine - analytic) / analytic < 1e-9);
  CHECK(std::abs(signal - fine) / fine < 1e-4);
  CHECK(std::abs(signal - analytic) / analytic < 1e-4);
}

TEST_CASE("pixel_signal: linear in T, K and irradiance; 1/N^2 aperture law") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const WavelengthGrid grid = WavelengthGrid::visible();
  for (int trial = 0; trial < 100; ++trial) {
    SensorModel sensor = default_sensor();
    sensor.normalization_k = 0.1 + 10.0 * u(rng);
    OpticsModel optics;
    optics.f_number = 2.4 + 10.0 * u(rng);
    const double t = 1e-5 + 1e-2 * u(rng);
    const SpectralCurve e = blackbody_spd(2000.0 + 8000.0 * u(rng)).scaled(1.0 + 100.0 * u(rng));
    const double a = u(rng);
    const SpectralCurve r = SpectralCurve::from_function(
        grid, [a](double nm) { return 0.5 + 0.4 * std::sin(a * nm / 50.0); });
    const auto ch = static_cast<Channel>(trial % 3);
    const double base = pixel_signal(t, sensor, optics, e, r, ch);

    CHECK(pixel_signal(2.0 * t, sensor, optics, e, r, ch) == doctest::Approx(2.0 * base).epsilon(1e-14));
    SensorModel k2 = sensor;
    k2.normalization_k *= 3.0;
    CHECK(pixel_signal(t, k2, optics, e, r, ch) == doctest::Approx(3.0 * base).epsilon(1e-14));
    CHECK(pixel_signal(t, sensor, optics, e.scaled(5.0), r, ch) ==
          doctest::Approx(5.0 * base).epsilon(1e-14));

    OpticsModel doubled = optics;
    doubled.f_number *= 2.0;
    CHECK(pixel_signal(t, sensor, doubled, e, r, ch) == doctest::Approx(base / 4.0).epsilon(1e-14));
    const double n = optics.f_number;
    const double n2 = doubled.f_number;
    CHECK(pixel_signal(t, sensor, doubled, e, r, ch) * n2 * n2 ==
          doctest::Approx(base * n * n).epsilon(1e-14));
  }
}

TEST_CASE("pixel_signal: monotone in irradiance") {
  const WavelengthGrid grid = WavelengthGrid::visible();
  const SensorModel sensor = default_sensor();
  const OpticsModel optics;
  const SpectralCurve r = SpectralCurve::constant(grid, 0.3);
  const SpectralCurve e = blackbody_spd(4000.0);
  const SpectralCurve bumped = e + SpectralCurve::from_function(grid, [](double nm) {
                                 return nm > 600.0 && nm < 620.0 ? 1e-3 : 0.0;
                               });
  for (Channel c : {Channel::R, Channel::G, Channel::B})
    CHECK(pixel_signal(1e-3, sensor, optics, bumped, r, c) >=
          pixel_signal(1e-3, sensor, optics, e, r, c));
}

TEST_CASE("pixel_signal: halving the grid step changes smooth results by < 0.1%") {
  const OpticsModel optics;
  const WavelengthGrid coarse = WavelengthGrid::visible();
  const WavelengthGrid fine{380.0, 2.5, 161};
  for (double cct : {2500.0, 5600.0, 6500.0}) {
    const double a = pixel_signal(1e-3, default_sensor(coarse), optics, blackbody_spd(cct, coarse),
                                  SpectralCurve::constant(coarse, 0.5), Channel::G);
    const double b = pixel_signal(1e-3, default_sensor(fine), optics, blackbody_spd(cct, fine),
                                  SpectralCurve::constant(fine, 0.5), Channel::G);
    CHECK(std::abs(a - b) / b < 1e-3);
  }
}

TEST_CASE("sensor and optics validation") {
  SensorModel s = default_sensor();
  CHECK_NOTHROW(validate(s));
  s.bit_depth = 9;
  CHECK_THROWS_AS(validate(s), Error);
  s = default_sensor();
  s.pixel_pitch = 0.0;
  CHECK_THROWS_AS(validate(s), Error);
  OpticsModel o;
  o.f_number = 2.0;
  CHECK_THROWS_AS(validate(o), Error);
}

TEST_CASE("curve CSV round trip") {
  const SpectralCurve qe = default_quantum_efficiency()[1];
  std::stringstream ss;
  write_curve_csv(ss, qe);
  const SpectralCurve back = read_curve_csv(ss);
  CHECK(back.grid() == qe.grid());
  CHECK((back.samples() == qe.samples()).all());

  std::stringstream bad("lambda_nm,value\n400,0.1\n405,0.2\n411,0.3\n");
  CHECK_THROWS_AS(read_curve_csv(bad), Error);
  std::stringstream header("nm,v\n400,1\n");
  CHECK_THROWS_AS(read_curve_csv(header), Error);
}
