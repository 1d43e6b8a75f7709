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

#include <string>
#include <string_view>

#include "alcam/experiment.hpp"
#include "alcam/scene.hpp"

namespace alcam {

// JSON schemas are documented in docs/config.md. Unknown keys are rejected;
// errors name the offending field. Relative file references resolve against
// `base_dir`.

DaySweepConfig parse_sweep_config(std::string_view json_text, const std::string& base_dir = ".");
DaySweepConfig load_sweep_config(const std::string& path);

Scene parse_scene(std::string_view json_text, const WavelengthGrid& grid,
                  const std::string& base_dir = ".");
Scene load_scene_file(const std::string& path, const WavelengthGrid& grid);

}  // namespace alcam
