// f2k: translate a Fortran kernel to Kokkos, then build, run, test, profile
// and optimize it; or render reports from a finished workdir.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "f2k/cli/commands.hpp"
#include "f2k/cli/reports.hpp"
#include "f2k/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Fortran-to-Kokkos translation and optimization pipeline"};
  app.require_subcommand(1);

  std::string config;
  auto* run = app.add_subcommand("run", "run the pipeline described by a config file");
  run->add_option("--config,-c", config, "pipeline config (JSON)")->required()->check(CLI::ExistingFile);

  std::string kind = "summary";
  std::string format = "csv";
  std::string workdir;
  std::string out;
  f2k::cli::ReportRequest req;
  double ai = 0.0;
  auto* report = app.add_subcommand("report", "render a report from a pipeline workdir");
  report->add_option("--kind,-k", kind, "summary | trajectory | roofline | cost | invocations")
      ->check(CLI::IsMember({"summary", "trajectory", "roofline", "cost", "invocations"}));
  report->add_option("--workdir,-w", workdir, "pipeline workdir")->required();
  report->add_option("--out,-o", out, "output file (default: stdout)");
  report->add_option("--format,-f", format, "csv | json | plot_data")
      ->check(CLI::IsMember({"csv", "json", "plot_data"}));
  auto* ai_opt = report->add_option("--ai", ai, "arithmetic intensity, FLOP/byte (roofline)")
                     ->check(CLI::PositiveNumber);
  report->add_option("--peak", req.roofline.peak_flops_per_s, "peak FLOP/s (roofline)")->check(CLI::PositiveNumber);
  report->add_option("--ridge", req.roofline.ridge_point, "ridge point, FLOP/byte (roofline)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : f2k::cli::kExitConfigInvalid;
  }

  if (*run) return f2k::cli::cmd_run(config, std::cout, std::cerr);

  req.kind = f2k::cli::parse_report_kind(kind);
  req.format = f2k::cli::parse_report_format(format);
  req.workdir = workdir;
  req.output = out;
  if (*ai_opt) req.roofline.arithmetic_intensity = ai;
  return f2k::cli::cmd_report(req, std::cout, std::cerr);
}
