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

// Locale-independent number formatting and small string helpers used by the
// CSV readers and writers.

#include <string>
#include <string_view>
#include <vector>

namespace alcam {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

/// Parses the whole field as a double; throws Format otherwise.
double parse_double(std::string_view field);
long long parse_int(std::string_view field);

/// Shortest representation that parses back to the same double.
std::string format_double(double value);
std::string format_fixed(double value, int decimals);

}  // namespace alcam
