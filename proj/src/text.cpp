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

#include "alcam/text.hpp"

#include <array>
#include <charconv>

#include "alcam/error.hpp"

namespace alcam {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const auto pos = s.find(sep, begin);
    out.push_back(trim(s.substr(begin, pos - begin)));
    if (pos == std::string_view::npos) break;
    begin = pos + 1;
  }
  return out;
}

double parse_double(std::string_view field) {
  field = trim(field);
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  require(ec == std::errc() && ptr == end, ErrorKind::Format,
          "not a number: '" + std::string(field) + "'");
  return value;
}

long long parse_int(std::string_view field) {
  field = trim(field);
  long long value = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  require(ec == std::errc() && ptr == end, ErrorKind::Format,
          "not an integer: '" + std::string(field) + "'");
  return value;
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return {buf.data(), ptr};
}

std::string format_fixed(double value, int decimals) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                       std::chars_format::fixed, decimals);
  return {buf.data(), ptr};
}

}  // namespace alcam
