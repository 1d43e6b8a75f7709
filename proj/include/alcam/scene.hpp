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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "alcam/image.hpp"
#include "alcam/spectral.hpp"

namespace alcam {

/// Axis-aligned pixel rectangle, half-open: [x, x + width) x [y, y + height).
struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  long long area() const { return static_cast<long long>(width) * height; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct ScenePatch {
  Rect region;
  double depth = 1.0;  // m
  std::string reflectance_id;
  std::string label;
};

/// A self-luminous patch; its SPD reaches the sensor without reflection.
struct EmitterPatch {
  Rect region;
  double depth = 1.0e3;
  std::string label;
  SpectralCurve spd;
  double scale = 1.0;
};

/// Planar-patch scene. Patches paint in order, emitters paint last.
struct Scene {
  int width = 0;
  int height = 0;
  std::vector<ScenePatch> patches;
  std::map<std::string, SpectralCurve, std::less<>> reflectances;
  double camera_speed = 0.4;  // m/s
  std::vector<EmitterPatch> emitters;

  std::size_t source_count() const { return patches.size() + emitters.size(); }
  bool is_emitter(int source) const { return source >= static_cast<int>(patches.size()); }
  const EmitterPatch& emitter(int source) const {
    return emitters[static_cast<std::size_t>(source) - patches.size()];
  }
  double source_depth(int source) const;
  /// Pixels at the minimum non-emitter depth.
  double foreground_depth() const;
};

/// Per-pixel source index into Scene patches followed by Scene emitters.
struct SceneRaster {
  Plane<int> source;
  Plane<double> depth;

  int width() const { return static_cast<int>(source.cols()); }
  int height() const { return static_cast<int>(source.rows()); }
};

void validate(const Scene& scene);

SceneRaster rasterize(const Scene& scene);

/// Mask of pixels whose source is a foreground (nearest, non-emitter) patch.
Plane<bool> foreground_mask(const Scene& scene, const SceneRaster& raster);
/// Mask of emitter pixels.
Plane<bool> emitter_mask(const Scene& scene, const SceneRaster& raster);

/// "fruit", "foliage", "background" and "gray18".
std::map<std::string, SpectralCurve, std::less<>> default_reflectances(
    const WavelengthGrid& grid = WavelengthGrid::visible());

inline constexpr double kForegroundDepth = 1.0;
inline constexpr double kBackgroundDepth = 3.0;
inline constexpr double kSunCct = 5778.0;
inline constexpr double kSunScale = 40.0;

/// orchard_day, orchard_extreme or flat_gray.
Scene builtin_scene(std::string_view name, int width = 256, int height = 192,
                    const WavelengthGrid& grid = WavelengthGrid::visible());
bool is_builtin_scene(std::string_view name);

}  // namespace alcam
