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

#include "alcam/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "alcam/error.hpp"
#include "alcam/illumination.hpp"

namespace alcam {

double Scene::source_depth(int source) const {
  return is_emitter(source) ? emitter(source).depth
                            : patches[static_cast<std::size_t>(source)].depth;
}

double Scene::foreground_depth() const {
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& p : patches) nearest = std::min(nearest, p.depth);
  return nearest;
}

namespace {

bool inside(const Rect& r, int width, int height) {
  return r.width > 0 && r.height > 0 && r.x >= 0 && r.y >= 0 && r.x + r.width <= width &&
         r.y + r.height <= height;
}

std::string describe(const Rect& r) {
  return "[" + std::to_string(r.x) + "," + std::to_string(r.y) + " " + std::to_string(r.width) +
         "x" + std::to_string(r.height) + "]";
}

}  // namespace

void validate(const Scene& scene) {
  require(scene.width > 0 && scene.height > 0, ErrorKind::InvalidScene,
          "scene width and height must be positive");
  require(scene.camera_speed >= 0.0, ErrorKind::InvalidScene, "camera_speed must be >= 0");
  require(!scene.patches.empty(), ErrorKind::InvalidScene, "scene has no patches");
  for (const auto& p : scene.patches) {
    require(p.depth > 0.0, ErrorKind::InvalidScene, "patch '" + p.label + "' has depth <= 0");
    require(inside(p.region, scene.width, scene.height), ErrorKind::InvalidScene,
            "patch '" + p.label + "' region " + describe(p.region) + " is outside the image");
    const auto it = scene.reflectances.find(p.reflectance_id);
    require(it != scene.reflectances.end(), ErrorKind::InvalidScene,
            "patch '" + p.label + "' uses unknown reflectance '" + p.reflectance_id + "'");
    require_unit_bounded(it->second, "reflectance '" + p.reflectance_id + "'");
  }
  for (const auto& e : scene.emitters) {
    require(e.depth > 0.0, ErrorKind::InvalidScene, "emitter '" + e.label + "' has depth <= 0");
    require(inside(e.region, scene.width, scene.height), ErrorKind::InvalidScene,
            "emitter '" + e.label + "' region " + describe(e.region) + " is outside the image");
    require(std::isfinite(e.scale) && e.scale >= 0.0, ErrorKind::InvalidScene,
            "emitter '" + e.label + "' scale must be >= 0");
  }
}

SceneRaster rasterize(const Scene& scene) {
  validate(scene);
  SceneRaster raster;
  raster.source = Plane<int>::Constant(scene.height, scene.width, -1);
  const auto paint = [&](const Rect& r, int source) {
    raster.source.block(r.y, r.x, r.height, r.width).setConstant(source);
  };
  for (std::size_t i = 0; i < scene.patches.size(); ++i)
    paint(scene.patches[i].region, static_cast<int>(i));
  for (std::size_t i = 0; i < scene.emitters.size(); ++i)
    paint(scene.emitters[i].region, static_cast<int>(scene.patches.size() + i));

  require((raster.source >= 0).all(), ErrorKind::IncompleteScene,
          "scene leaves " + std::to_string((raster.source < 0).count()) + " pixels uncovered");
  raster.depth = raster.source.unaryExpr([&](int s) { return scene.source_depth(s); });
  return raster;
}

Plane<bool> foreground_mask(const Scene& scene, const SceneRaster& raster) {
  const double fg = scene.foreground_depth();
  return raster.source.unaryExpr(
      [&](int s) { return !scene.is_emitter(s) && scene.source_depth(s) == fg; });
}

Plane<bool> emitter_mask(const Scene& scene, const SceneRaster& raster) {
  return raster.source.unaryExpr([&](int s) { return scene.is_emitter(s); });
}

std::map<std::string, SpectralCurve, std::less<>> default_reflectances(const WavelengthGrid& grid) {
  const auto bump = [&](double base, double height, double center, double sigma) {
    return SpectralCurve::from_function(grid, [=](double nm) {
      const double z = (nm - center) / sigma;
      return base + height * std::exp(-0.5 * z * z);
    });
  };
  std::map<std::string, SpectralCurve, std::less<>> lib;
  lib.emplace("fruit", bump(0.10, 0.30, 640.0, 55.0));
  lib.emplace("foliage", bump(0.20, 0.20, 550.0, 50.0));
  lib.emplace("background", SpectralCurve::constant(grid, 0.30));
  lib.emplace("gray18", SpectralCurve::constant(grid, 0.18));
  return lib;
}

namespace {

// Rectangle from fractional image coordinates.
Rect frac_rect(int width, int height, double x0, double y0, double x1, double y1) {
  const auto px = [&](double f) { return static_cast<int>(std::lround(f * width)); };
  const auto py = [&](double f) { return static_cast<int>(std::lround(f * height)); };
  return {px(x0), py(y0), std::max(1, px(x1) - px(x0)), std::max(1, py(y1) - py(y0))};
}

Scene orchard(int width, int height, const WavelengthGrid& grid) {
  Scene scene;
  scene.width = width;
  scene.height = height;
  scene.reflectances = default_reflectances(grid);
  const auto add = [&](Rect r, double depth, const char* refl, const char* label) {
    scene.patches.push_back({r, depth, refl, label});
  };
  const auto rect = [&](double x0, double y0, double x1, double y1) {
    return frac_rect(width, height, x0, y0, x1, y1);
  };

  add(rect(0.0, 0.0, 1.0, 1.0), kBackgroundDepth, "background", "background");

  // Adjacent row, visible either side of the canopy.
  add(rect(0.0, 0.10, 0.12, 0.85), kBackgroundDepth, "foliage", "foliage");
  add(rect(0.88, 0.10, 1.0, 0.85), kBackgroundDepth, "foliage", "foliage");
  add(rect(0.03, 0.40, 0.09, 0.48), kBackgroundDepth, "fruit", "fruit");
  add(rect(0.91, 0.55, 0.97, 0.63), kBackgroundDepth, "fruit", "fruit");

  add(rect(0.12, 0.06, 0.88, 1.0), kForegroundDepth, "foliage", "foliage");
  for (double cy : {0.28, 0.55, 0.80}) {
    for (double cx : {0.25, 0.42, 0.58, 0.75}) {
      add(rect(cx - 0.035, cy - 0.045, cx + 0.035, cy + 0.045), kForegroundDepth, "fruit",
          "fruit");
    }
  }
  return scene;
}

}  // namespace

bool is_builtin_scene(std::string_view name) {
  return name == "orchard_day" || name == "orchard_extreme" || name == "flat_gray";
}

Scene builtin_scene(std::string_view name, int width, int height, const WavelengthGrid& grid) {
  require(width > 0 && height > 0, ErrorKind::InvalidArgument, "scene size must be positive");
  if (name == "orchard_day") return orchard(width, height, grid);
  if (name == "orchard_extreme") {
    Scene scene = orchard(width, height, grid);
    scene.emitters.push_back({frac_rect(width, height, 0.0, 0.0, 0.24, 0.26), 1.0e3, "sun",
                              blackbody_spd(kSunCct, grid), kSunScale});
    return scene;
  }
  if (name == "flat_gray") {
    Scene scene;
    scene.width = width;
    scene.height = height;
    scene.reflectances.emplace("gray18", SpectralCurve::constant(grid, 0.18));
    scene.patches.push_back({Rect{0, 0, width, height}, kForegroundDepth, "gray18", "gray"});
    return scene;
  }
  fail(ErrorKind::NotFound, "unknown builtin scene '" + std::string(name) + "'");
}

}  // namespace alcam
