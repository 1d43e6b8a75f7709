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

#include "alcam/quality.hpp"

#include <istream>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "alcam/text.hpp"

namespace alcam {

void validate(const SsimParams& params) {
  require(params.k1 > 0.0 && params.k2 > 0.0, ErrorKind::InvalidArgument,
          "SSIM k1 and k2 must be positive");
  require(params.window >= 2, ErrorKind::InvalidArgument, "SSIM window must be at least 2");
  require(params.dynamic_range > 0.0, ErrorKind::InvalidArgument,
          "SSIM dynamic range must be positive");
}

double ssim(const QuantizedImage& x, const QuantizedImage& y, const SsimParams& params) {
  require(x.same_size(y), ErrorKind::InvalidArgument, "SSIM inputs must have identical dimensions");
  return ssim(luma(x), luma(y), params);
}

Psnr psnr(const QuantizedImage& x, const QuantizedImage& y, int max_code) {
  require(x.same_size(y), ErrorKind::InvalidArgument, "PSNR inputs must have identical dimensions");
  require(max_code > 0, ErrorKind::InvalidArgument, "max_code must be positive");
  double sse = 0.0;
  for (int c = 0; c < 3; ++c)
    sse += (x.codes[c].cast<double>() - y.codes[c].cast<double>()).square().sum();
  const double mse = sse / (3.0 * static_cast<double>(x.width()) * x.height());
  if (mse == 0.0) return {std::numeric_limits<double>::infinity(), true};
  const double peak = static_cast<double>(max_code);
  return {10.0 * std::log10(peak * peak / mse), false};
}

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::AL: return "AL";
    case Condition::NL: return "NL";
    case Condition::HDR: return "HDR";
  }
  return "?";
}

Condition parse_condition(std::string_view name) {
  if (name == "AL") return Condition::AL;
  if (name == "NL") return Condition::NL;
  if (name == "HDR") return Condition::HDR;
  fail(ErrorKind::Format, "unknown condition '" + std::string(name) + "' (expected AL, NL or HDR)");
}

QualityReport consistency_series(const QuantizedImage& reference,
                                 const std::vector<TimedFrame>& frames, const SsimParams& params,
                                 std::string reference_id) {
  require(!frames.empty(), ErrorKind::InvalidArgument, "consistency series needs frames");
  QualityReport report;
  report.reference_id = std::move(reference_id);
  const Plane<double> ref_luma = luma(reference);
  for (const auto& frame : frames) {
    require(frame.image.same_size(reference), ErrorKind::InvalidArgument,
            "frame at t=" + format_double(frame.time_min) + " differs in size from the reference");
    require(report.rows.empty() || frame.time_min >= report.rows.back().time_min,
            ErrorKind::InvalidArgument, "frames must be time-ordered");
    report.rows.push_back({frame.time_min, frame.condition,
                           100.0 * ssim(ref_luma, luma(frame.image), params),
                           psnr(reference, frame.image, reference.max_code()).exported(),
                           frame.scene_scale});
  }
  return report;
}

void write_report_csv(std::ostream& out, const QualityReport& report) {
  out << kReportCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << format_double(r.time_min) << ',' << to_string(r.condition) << ','
        << format_double(r.ssim_pct) << ',' << format_double(r.psnr_db) << ','
        << format_double(r.scene_scale) << '\n';
  }
}

void write_report_json(std::ostream& out, const QualityReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"time_min", r.time_min},
                    {"condition", to_string(r.condition)},
                    {"ssim_pct", r.ssim_pct},
                    {"psnr_db", r.psnr_db},
                    {"scene_scale", r.scene_scale}});
  }
  out << rows.dump(2) << '\n';
}

QualityReport read_report_csv(std::istream& in, std::string reference_id) {
  std::string line;
  require(static_cast<bool>(std::getline(in, line)) && trim(line) == kReportCsvHeader,
          ErrorKind::Format, "report CSV header must be '" + std::string(kReportCsvHeader) + "'");
  QualityReport report;
  report.reference_id = std::move(reference_id);
  while (std::getline(in, line)) {
    const auto row = trim(line);
    if (row.empty()) continue;
    const auto f = split(row, ',');
    require(f.size() == 5, ErrorKind::Format, "report CSV row needs 5 fields: " + std::string(row));
    report.rows.push_back({parse_double(f[0]), parse_condition(f[1]), parse_double(f[2]),
                           parse_double(f[3]), parse_double(f[4])});
  }
  return report;
}

QualityReport read_report_json(std::istream& in, std::string reference_id) {
  QualityReport report;
  report.reference_id = std::move(reference_id);
  try {
    const auto rows = nlohmann::json::parse(in);
    require(rows.is_array(), ErrorKind::Format, "report JSON must be an array");
    for (const auto& r : rows) {
      report.rows.push_back({r.at("time_min").get<double>(),
                             parse_condition(r.at("condition").get<std::string>()),
                             r.at("ssim_pct").get<double>(), r.at("psnr_db").get<double>(),
                             r.at("scene_scale").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Format, std::string("malformed report JSON: ") + e.what());
  }
  return report;
}

}  // namespace alcam
