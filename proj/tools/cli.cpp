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

#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "alcam/config.hpp"
#include "alcam/error.hpp"
#include "alcam/experiment.hpp"
#include "alcam/ppm.hpp"
#include "alcam/quality.hpp"
#include "alcam/text.hpp"

namespace alcam::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::Io, "cannot write " + path.string());
  return out;
}

void write_report_files(const QualityReport& report, const fs::path& csv, const fs::path& json) {
  auto c = open_output(csv);
  write_report_csv(c, report);
  auto j = open_output(json);
  write_report_json(j, report);
}

void write_report_by_extension(const QualityReport& report, const std::string& path) {
  auto f = open_output(path);
  if (fs::path(path).extension() == ".json")
    write_report_json(f, report);
  else
    write_report_csv(f, report);
}

std::string frame_name(const CapturedFrame& f) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_t%03ld.ppm", std::string(to_string(f.condition)).c_str(),
                std::lround(f.time_min));
  return buf;
}

void write_sweep(const SweepResult& result, const fs::path& out_dir) {
  fs::create_directories(out_dir / "frames");
  for (const auto& f : result.frames) write_ppm((out_dir / "frames" / frame_name(f)).string(), f.image);
  write_report_files(result.combined(), out_dir / "report.csv", out_dir / "report.json");
  auto sat = open_output(out_dir / "saturation.csv");
  sat << "time_min,condition,saturated_fraction,shutter_s\n";
  for (const auto& f : result.frames) {
    sat << format_double(f.time_min) << ',' << to_string(f.condition) << ','
        << format_double(f.saturated_fraction) << ',' << format_double(f.settings.shutter_time)
        << '\n';
  }
}

void print_summary(const SweepResult& result, std::ostream& out) {
  for (const auto& [condition, report] : result.reports) {
    double min_ssim = 100.0;
    double sum_ssim = 0.0;
    double sum_psnr = 0.0;
    for (const auto& r : report.rows) {
      min_ssim = std::min(min_ssim, r.ssim_pct);
      sum_ssim += r.ssim_pct;
      sum_psnr += r.psnr_db;
    }
    const auto n = static_cast<double>(report.rows.size());
    out << to_string(condition) << " min_ssim_pct=" << format_fixed(min_ssim, 2)
        << " mean_ssim_pct=" << format_fixed(sum_ssim / n, 2)
        << " mean_psnr_db=" << format_fixed(sum_psnr / n, 2) << '\n';
  }
}

std::vector<Condition> parse_conditions(const std::vector<std::string>& names) {
  std::vector<Condition> out;
  for (const auto& name : names) {
    try {
      out.push_back(parse_condition(name));
    } catch (const Error&) {
      throw CLI::ValidationError("--conditions", "unknown condition '" + name + "'");
    }
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Active-lighting camera simulator and image-consistency toolkit", "alcam"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run the noon-to-sunset consistency sweep");
  std::string sim_config;
  std::string sim_out;
  std::optional<std::uint64_t> sim_seed;
  std::vector<std::string> sim_conditions;
  simulate->add_option("config", sim_config, "Sweep configuration (JSON)")->required();
  simulate->add_option("out_dir", sim_out, "Output directory")->required();
  simulate->add_option("--seed", sim_seed, "Noise seed (overrides the config)");
  simulate->add_option("--conditions", sim_conditions, "Subset of AL,NL,HDR")->delimiter(',');

  // extreme
  auto* extreme = app.add_subcommand("extreme", "Sun-facing scenario: AL vs NL saturation");
  std::string ext_config;
  std::string ext_out;
  std::optional<std::uint64_t> ext_seed;
  extreme->add_option("config", ext_config, "Sweep configuration (JSON)")->required();
  extreme->add_option("--out", ext_out, "Write the two frames and report here");
  extreme->add_option("--seed", ext_seed, "Noise seed (overrides the config)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Consistency report over a directory of images");
  std::string an_dir;
  std::string an_reference;
  std::string an_report;
  std::string an_condition = "AL";
  int an_window = SsimParams{}.window;
  analyze->add_option("directory", an_dir, "Directory of .ppm/.pgm images")->required();
  analyze->add_option("--reference", an_reference, "Reference image (default: first by name)");
  analyze->add_option("--window", an_window, "SSIM window size")->check(CLI::Range(2, 4096));
  analyze->add_option("--report", an_report, "Write the report (.csv or .json)");
  analyze->add_option("--condition", an_condition, "Condition label for the rows")
      ->check(CLI::IsMember({"AL", "NL", "HDR"}));

  // sync-check
  auto* sync = app.add_subcommand("sync-check", "Check flash/shutter containment for stereo");
  double sync_rate = kMaxStereoRate;
  double sync_flash_us = 250.0;
  double sync_shutter_us = 11.0;
  sync->add_option("--rate", sync_rate, "Stereo trigger rate (Hz)");
  sync->add_option("--flash-us", sync_flash_us, "Flash pulse duration (us)");
  sync->add_option("--shutter-us", sync_shutter_us, "Shutter time (us)");

  // metrics
  auto* metrics = app.add_subcommand("metrics", "SSIM and PSNR of one image pair");
  std::string m_ref;
  std::string m_img;
  std::string m_report;
  int m_window = SsimParams{}.window;
  metrics->add_option("reference", m_ref, "Reference image")->required();
  metrics->add_option("image", m_img, "Image to compare")->required();
  metrics->add_option("--window", m_window, "SSIM window size")->check(CLI::Range(2, 4096));
  metrics->add_option("--report", m_report, "Also write a one-row report (.csv or .json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      DaySweepConfig config = load_sweep_config(sim_config);
      if (sim_seed) config.seed = *sim_seed;
      if (!sim_conditions.empty()) {
        try {
          config.conditions = parse_conditions(sim_conditions);
        } catch (const CLI::ValidationError& e) {
          err << "error: " << e.what() << "\n\n" << simulate->help();
          return kExitUsage;
        }
      }
      const SweepResult result = run_day_sweep(config);
      write_sweep(result, sim_out);
      print_summary(result, out);
      return kExitOk;
    }

    if (extreme->parsed()) {
      DaySweepConfig config = load_sweep_config(ext_config);
      if (ext_seed) config.seed = *ext_seed;
      const ExtremeResult r = run_extreme(config);
      if (!ext_out.empty()) write_sweep(r.sweep, ext_out);
      out << "sun_area_fraction=" << format_fixed(r.sun_area_fraction, 4) << '\n'
          << "AL saturated_fraction=" << format_fixed(r.al_saturated_fraction, 4)
          << " foreground_contrast=" << format_fixed(r.al_foreground_contrast, 2) << '\n'
          << "NL saturated_fraction=" << format_fixed(r.nl_saturated_fraction, 4)
          << " foreground_contrast=" << format_fixed(r.nl_foreground_contrast, 2)
          << " auto_exposure_saturated=" << (r.nl_auto_exposure_saturated ? "yes" : "no") << '\n';
      return kExitOk;
    }

    if (analyze->parsed()) {
      const std::vector<std::string> images = list_images(an_dir);
      require(!images.empty(), ErrorKind::Io, "no .ppm/.pgm images in " + an_dir);
      const std::string reference = an_reference.empty() ? images.front() : an_reference;
      SsimParams params;
      params.window = an_window;
      const QualityReport report =
          analyze_directory(reference, images, params, parse_condition(an_condition));
      if (!an_report.empty()) write_report_by_extension(report, an_report);
      write_report_csv(out, report);
      return kExitOk;
    }

    if (sync->parsed()) {
      FlashUnit flash;
      flash.pulse_duration = sync_flash_us * 1e-6;
      try {
        const TriggerSchedule s = schedule_stereo(sync_rate, flash, sync_shutter_us * 1e-6);
        out << "feasible=yes\n"
            << "frame_period_ms=" << format_double(s.frame_period * 1e3) << '\n'
            << "flash_window_us=" << format_double(s.flash_window.start * 1e6) << ','
            << format_double(s.flash_window.end() * 1e6) << '\n'
            << "shutter_window_us=" << format_double(s.shutter_window.start * 1e6) << ','
            << format_double(s.shutter_window.end() * 1e6) << '\n'
            << "overlap_us=" << format_double(s.overlap() * 1e6) << '\n'
            << "cameras=" << s.n_cameras << '\n';
        return kExitOk;
      } catch (const Error& e) {
        out << "feasible=no\n";
        err << "infeasible: " << e.what() << '\n';
        return kExitDomainError;
      }
    }

    if (metrics->parsed()) {
      const QuantizedImage ref = read_ppm(m_ref);
      const QuantizedImage img = read_ppm(m_img);
      require(ref.same_size(img), ErrorKind::InvalidArgument,
              "image sizes differ: " + m_ref + " vs " + m_img);
      SsimParams params;
      params.window = m_window;
      const QualityReport report =
          consistency_series(ref, {{0.0, Condition::AL, img, 0.0}}, params, m_ref);
      const QualityRow& row = report.rows.front();
      out << "ssim_pct=" << format_fixed(row.ssim_pct, 2)
          << " psnr_db=" << format_fixed(row.psnr_db, 2) << '\n';
      if (!m_report.empty()) write_report_by_extension(report, m_report);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  return kExitUsage;
}

}  // namespace alcam::cli
