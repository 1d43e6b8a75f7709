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

#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "alcam/error.hpp"
#include "alcam/image.hpp"

namespace alcam {

struct SsimParams {
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
  int window = 8;

  double c1() const { return (k1 * dynamic_range) * (k1 * dynamic_range); }
  double c2() const { return (k2 * dynamic_range) * (k2 * dynamic_range); }
  double c3() const { return c2() / 2.0; }
};

void validate(const SsimParams& params);

/// Luminance, contrast and structure terms of one window.
struct SsimTerms {
  double luminance = 1.0;
  double contrast = 1.0;
  double structure = 1.0;

  double value() const { return luminance * contrast * structure; }
};

/// SSIM terms from window statistics (population moments).
inline SsimTerms ssim_terms(double mean_x, double mean_y, double var_x, double var_y,
                            double cov_xy, const SsimParams& p) {
  const double c1 = p.c1();
  const double c2 = p.c2();
  const double c3 = p.c3();
  // sqrt(v * v) == v exactly, so identical windows give exactly 1.
  const double sigma_xy = std::sqrt(var_x * var_y);
  return {(2.0 * mean_x * mean_y + c1) / (mean_x * mean_x + mean_y * mean_y + c1),
          (2.0 * sigma_xy + c2) / (var_x + var_y + c2), (cov_xy + c3) / (sigma_xy + c3)};
}

/// Mean SSIM over every window position (stride 1) of two planes. A window
/// larger than the image shrinks to the image.
template <typename DerivedX, typename DerivedY>
double ssim(const Eigen::ArrayBase<DerivedX>& x, const Eigen::ArrayBase<DerivedY>& y,
            const SsimParams& params = {}) {
  validate(params);
  require(x.rows() == y.rows() && x.cols() == y.cols(), ErrorKind::InvalidArgument,
          "SSIM inputs must have identical dimensions");
  require(x.size() > 0, ErrorKind::InvalidArgument, "SSIM inputs must be non-empty");
  const Eigen::Index wr = std::min<Eigen::Index>(params.window, x.rows());
  const Eigen::Index wc = std::min<Eigen::Index>(params.window, x.cols());
  const auto n = static_cast<double>(wr * wc);

  double total = 0.0;
  Eigen::Index count = 0;
  for (Eigen::Index r = 0; r + wr <= x.rows(); ++r) {
    for (Eigen::Index c = 0; c + wc <= x.cols(); ++c) {
      const auto bx = x.block(r, c, wr, wc).template cast<double>();
      const auto by = y.block(r, c, wr, wc).template cast<double>();
      const double mx = bx.sum() / n;
      const double my = by.sum() / n;
      const auto dx = bx - mx;
      const auto dy = by - my;
      total += ssim_terms(mx, my, (dx * dx).sum() / n, (dy * dy).sum() / n,
                          (dx * dy).sum() / n, params)
                   .value();
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

/// SSIM of the luma planes.
double ssim(const QuantizedImage& x, const QuantizedImage& y, const SsimParams& params = {});

inline constexpr double kPsnrCapDb = 99.0;

struct Psnr {
  double db = 0.0;
  bool identical = false;

  /// Numeric value for exports: identical images and anything above the cap
  /// report 99 dB.
  double exported() const { return identical ? kPsnrCapDb : std::min(db, kPsnrCapDb); }
};

/// 10 log10(max_code^2 / MSE) over all channels.
Psnr psnr(const QuantizedImage& x, const QuantizedImage& y, int max_code = 255);

enum class Condition { AL, NL, HDR };

std::string_view to_string(Condition c);
Condition parse_condition(std::string_view name);

struct QualityRow {
  double time_min = 0.0;
  Condition condition = Condition::AL;
  double ssim_pct = 0.0;
  double psnr_db = 0.0;
  double scene_scale = 0.0;

  friend bool operator==(const QualityRow&, const QualityRow&) = default;
};

struct QualityReport {
  std::string reference_id;
  std::vector<QualityRow> rows;

  friend bool operator==(const QualityReport&, const QualityReport&) = default;
};

struct TimedFrame {
  double time_min = 0.0;
  Condition condition = Condition::AL;
  QuantizedImage image;
  double scene_scale = 0.0;
};

/// One row per frame comparing it with `reference`.
QualityReport consistency_series(const QuantizedImage& reference,
                                 const std::vector<TimedFrame>& frames,
                                 const SsimParams& params = {}, std::string reference_id = "");

inline constexpr std::string_view kReportCsvHeader = "time_min,condition,ssim_pct,psnr_db,scene_scale";

void write_report_csv(std::ostream& out, const QualityReport& report);
void write_report_json(std::ostream& out, const QualityReport& report);
QualityReport read_report_csv(std::istream& in, std::string reference_id = "");
QualityReport read_report_json(std::istream& in, std::string reference_id = "");

}  // namespace alcam
