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

#include "alcam/config.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "alcam/error.hpp"

namespace alcam {

namespace {

using nlohmann::json;

std::string resolve_path(const std::string& base_dir, const std::string& path) {
  const std::filesystem::path p(path);
  return p.is_absolute() ? path : (std::filesystem::path(base_dir) / p).string();
}

std::string read_text(const std::string& path, const char* what) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::Io, std::string("cannot open ") + what + ": " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Config, std::string("malformed ") + what + " JSON: " + e.what());
  }
}

// Reads the members of one JSON object, tracking the dotted field path for
// error messages and rejecting keys nobody asked for.
class Fields {
 public:
  Fields(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    require(obj_.is_object(), ErrorKind::Config, where("") + "must be an object");
  }

  ~Fields() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (const auto& [key, value] : obj_.items()) {
      require(seen_.count(key) > 0, ErrorKind::Config, "unknown config field '" + full(key) + "'");
    }
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return obj_.contains(key) && !obj_.at(key).is_null();
  }

  std::string full(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    require(obj_.contains(key), ErrorKind::Config, "missing config field '" + full(key) + "'");
    return obj_.at(key);
  }

  template <typename T>
  void get(const std::string& key, T& out) {
    if (!has(key)) return;
    out = value<T>(key);
  }

  template <typename T>
  T value(const std::string& key) {
    const json& v = raw(key);
    try {
      return v.get<T>();
    } catch (const json::exception&) {
      fail(ErrorKind::Config, "config field '" + full(key) + "' has the wrong type");
    }
  }

  void check(const std::string& key, bool ok, const std::string& message) {
    require(ok, ErrorKind::Config, "config field '" + full(key) + "': " + message);
  }

 private:
  std::string where(const std::string& key) const {
    const auto f = full(key);
    return f.empty() ? "config " : "config field '" + f + "' ";
  }

  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

// Re-raises validation failures with the field path prepended.
template <typename Fn>
void with_context(const std::string& field, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    fail(ErrorKind::Config, "config field '" + field + "': " + e.what());
  }
}

SpectralCurve parse_curve(const json& node, const std::string& path, const WavelengthGrid& grid,
                          const std::string& base_dir) {
  Fields f(node, path);
  if (f.has("constant")) return SpectralCurve::constant(grid, f.value<double>("constant"));
  if (f.has("gaussian")) {
    Fields g(f.raw("gaussian"), f.full("gaussian"));
    const double base = g.value<double>("base");
    const double height = g.value<double>("height");
    const double center = g.value<double>("center_nm");
    const double sigma = g.value<double>("sigma_nm");
    g.check("sigma_nm", sigma > 0.0, "must be positive");
    return SpectralCurve::from_function(grid, [=](double nm) {
      const double z = (nm - center) / sigma;
      return base + height * std::exp(-0.5 * z * z);
    });
  }
  if (f.has("blackbody_cct")) {
    const double cct = f.value<double>("blackbody_cct");
    std::optional<SpectralCurve> out;
    with_context(f.full("blackbody_cct"), [&] { out = blackbody_spd(cct, grid); });
    return *out;
  }
  if (f.has("csv")) {
    const std::string file = resolve_path(base_dir, f.value<std::string>("csv"));
    std::optional<SpectralCurve> out;
    with_context(f.full("csv"), [&] { out = resample(read_curve_csv_file(file), grid); });
    return *out;
  }
  fail(ErrorKind::Config,
       "config field '" + path + "' needs one of constant, gaussian, blackbody_cct, csv");
}

Rect parse_rect(Fields& f) {
  return {f.value<int>("x"), f.value<int>("y"), f.value<int>("width"), f.value<int>("height")};
}

std::vector<Condition> parse_conditions(Fields& f, const std::string& key) {
  std::vector<Condition> out;
  for (const auto& name : f.value<std::vector<std::string>>(key)) {
    with_context(f.full(key), [&] { out.push_back(parse_condition(name)); });
  }
  return out;
}

void parse_daylight(const json& node, DaylightModel& day, const std::string& base_dir) {
  Fields f(node, "daylight");
  f.get("noon_illuminance", day.noon_illuminance);
  f.get("noon_cct", day.noon_cct);
  f.get("sunset_cct", day.sunset_cct);
  f.get("day_start", day.day_start);
  f.get("day_end", day.day_end);
  if (f.has("profile_csv")) {
    const std::string file = resolve_path(base_dir, f.value<std::string>("profile_csv"));
    with_context(f.full("profile_csv"), [&] { day.measured = read_daylight_profile_file(file); });
  }
  with_context("daylight", [&] { validate(day); });
}

void parse_flash(const json& node, FlashUnit& flash) {
  Fields f(node, "flash");
  f.get("radiant_power", flash.radiant_power);
  f.get("cct", flash.cct);
  f.get("pulse_duration", flash.pulse_duration);
  f.get("pulse_start_offset", flash.pulse_start_offset);
  f.get("reference_distance", flash.reference_distance);
  f.get("beam_gain", flash.beam_gain);
  with_context("flash", [&] { validate(flash); });
}

void parse_sensor(const json& node, SensorModel& sensor, const std::string& base_dir) {
  Fields f(node, "sensor");
  f.get("pixel_pitch", sensor.pixel_pitch);
  f.get("normalization_k", sensor.normalization_k);
  f.get("bit_depth", sensor.bit_depth);
  f.get("full_scale_signal", sensor.full_scale_signal);
  f.get("read_noise_sigma", sensor.read_noise_sigma);
  f.get("shot_noise_scale", sensor.shot_noise_scale);
  if (f.has("quantum_efficiency")) {
    const json& qe = f.raw("quantum_efficiency");
    f.check("quantum_efficiency", qe.is_array() && qe.size() == 3, "needs 3 curves (R, G, B)");
    const WavelengthGrid grid = sensor.qe(Channel::R).grid();
    for (std::size_t c = 0; c < 3; ++c) {
      sensor.quantum_efficiency[c] = parse_curve(
          qe[c], f.full("quantum_efficiency") + "[" + std::to_string(c) + "]", grid, base_dir);
    }
  }
  with_context("sensor", [&] { validate(sensor); });
}

void parse_optics(const json& node, OpticsModel& optics) {
  Fields f(node, "optics");
  f.get("f_number", optics.f_number);
  f.get("focal_length", optics.focal_length);
  with_context("optics", [&] { validate(optics); });
}

}  // namespace

DaySweepConfig parse_sweep_config(std::string_view json_text, const std::string& base_dir) {
  const json root = parse_json(json_text, "config");
  DaySweepConfig cfg;
  {
    Fields f(root, "");
    if (f.has("scene")) {
      cfg.scene = f.value<std::string>("scene");
      if (!is_builtin_scene(cfg.scene)) cfg.scene = resolve_path(base_dir, cfg.scene);
    }
    f.get("width", cfg.width);
    f.get("height", cfg.height);
    f.get("interval_min", cfg.interval);
    f.get("seed", cfg.seed);
    if (f.has("conditions")) cfg.conditions = parse_conditions(f, "conditions");
    f.get("hdr_brackets", cfg.hdr_brackets);
    f.get("target_mean", cfg.target_mean);
    if (f.has("nl_shutter_bounds")) {
      const auto b = f.value<std::vector<double>>("nl_shutter_bounds");
      f.check("nl_shutter_bounds", b.size() == 2 && b[1] >= b[0], "needs [min, max] seconds");
      cfg.nl_bounds = Interval::between(b[0], b[1]);
    }
    f.get("rate_hz", cfg.rate_hz);
    if (f.has("al_shutter")) cfg.al_shutter = f.value<double>("al_shutter");
    f.get("motion_blur", cfg.motion_blur);
    f.get("calibrate_k", cfg.calibrate_k);
    if (f.has("ssim")) {
      Fields s(f.raw("ssim"), "ssim");
      s.get("k1", cfg.ssim.k1);
      s.get("k2", cfg.ssim.k2);
      s.get("dynamic_range", cfg.ssim.dynamic_range);
      s.get("window", cfg.ssim.window);
    }
    if (f.has("daylight")) parse_daylight(f.raw("daylight"), cfg.day, base_dir);
    if (f.has("flash")) parse_flash(f.raw("flash"), cfg.flash);
    if (f.has("sensor")) parse_sensor(f.raw("sensor"), cfg.sensor, base_dir);
    if (f.has("optics")) parse_optics(f.raw("optics"), cfg.optics);
  }
  validate(cfg);
  return cfg;
}

DaySweepConfig load_sweep_config(const std::string& path) {
  const std::string text = read_text(path, "config file");
  const auto dir = std::filesystem::path(path).parent_path().string();
  return parse_sweep_config(text, dir.empty() ? "." : dir);
}

Scene parse_scene(std::string_view json_text, const WavelengthGrid& grid,
                  const std::string& base_dir) {
  const json root = parse_json(json_text, "scene");
  Scene scene;
  {
    Fields f(root, "");
    scene.width = f.value<int>("width");
    scene.height = f.value<int>("height");
    f.get("camera_speed", scene.camera_speed);
    if (f.has("reflectances")) {
      const json& lib = f.raw("reflectances");
      f.check("reflectances", lib.is_object(), "must be an object of named curves");
      for (const auto& [name, node] : lib.items())
        scene.reflectances.insert_or_assign(
            name, parse_curve(node, "reflectances." + name, grid, base_dir));
    } else {
      scene.reflectances = default_reflectances(grid);
    }
    const json& patches = f.raw("patches");
    f.check("patches", patches.is_array(), "must be an array");
    for (std::size_t i = 0; i < patches.size(); ++i) {
      Fields p(patches[i], "patches[" + std::to_string(i) + "]");
      ScenePatch patch;
      patch.region = parse_rect(p);
      patch.depth = p.value<double>("depth");
      patch.reflectance_id = p.value<std::string>("reflectance");
      p.get("label", patch.label);
      scene.patches.push_back(std::move(patch));
    }
    if (f.has("emitters")) {
      const json& emitters = f.raw("emitters");
      f.check("emitters", emitters.is_array(), "must be an array");
      for (std::size_t i = 0; i < emitters.size(); ++i) {
        const std::string path = "emitters[" + std::to_string(i) + "]";
        Fields e(emitters[i], path);
        const Rect region = parse_rect(e);
        double depth = 1.0e3;
        e.get("depth", depth);
        std::string label = "emitter";
        e.get("label", label);
        const double scale = e.value<double>("scale");
        SpectralCurve spd = parse_curve(e.raw("spd"), path + ".spd", grid, base_dir);
        scene.emitters.push_back({region, depth, label, std::move(spd), scale});
      }
    }
  }
  with_context("scene", [&] { validate(scene); });
  return scene;
}

Scene load_scene_file(const std::string& path, const WavelengthGrid& grid) {
  const std::string text = read_text(path, "scene file");
  const auto dir = std::filesystem::path(path).parent_path().string();
  return parse_scene(text, grid, dir.empty() ? "." : dir);
}

}  // namespace alcam
