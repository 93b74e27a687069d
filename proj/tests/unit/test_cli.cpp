#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <nlohmann/json.hpp>

#include "f2k/cli/commands.hpp"
#include "f2k/cli/config_file.hpp"
#include "f2k/cli/reports.hpp"
#include "f2k/errors.hpp"
#include "f2k/text.hpp"
#include "f2k/workflow/pipeline.hpp"
#include "temp_dir.hpp"
#include "toy.hpp"

using namespace f2k;
using f2k::testing::TempDir;
using nlohmann::json;

namespace {

std::filesystem::path write_config(const TempDir& dir, const json& j) {
  const auto p = dir / "run.json";
  text::write_file(p, j.dump(2));
  return p;
}

// A finished two-version workdir, produced by recording a live scripted run.
struct RecordedRun {
  TempDir dir;
  std::filesystem::path workdir = dir / "work";
  std::filesystem::path transcripts = dir / "transcripts";

  RecordedRun() {
    auto cfg = f2k::testing::toy_config(workdir);
    cfg.max_optimization_rounds = 1;
    f2k::testing::ToyRig rig(f2k::testing::ToyFault::none, f2k::testing::stub_target(), llm::LlmMode::record,
                             transcripts);
    rig.run(cfg);
  }
};

}  // namespace

TEST_CASE("run config parses and resolves", "[cli]") {
  TempDir dir;
  auto j = f2k::testing::toy_run_config(dir / "work", dir / "tx");
  j["role_models"] = {{"Optimizer", "scripted"}};
  const auto rc = cli::load_run_config(write_config(dir, j));
  CHECK(rc.pipeline.kernel_id == KernelId::DGEMM);
  CHECK(rc.pipeline.max_n == 16);
  CHECK(rc.pipeline.program_iterations.iter_max == 3);
  CHECK(rc.pipeline.max_compile_fixes == 20);
  CHECK(rc.llm.mode == llm::LlmMode::replay);
  CHECK(rc.target.compile_command_template.find("stub_cc.sh") != std::string::npos);
  CHECK(rc.models.for_role(agents::Role::Optimizer).price_out_per_mtok == 10.0);
  CHECK(rc.inputs.fortran_source.find("program dgemm_toy") != std::string::npos);
}

TEST_CASE("run config rejects unknown keys, bad types and missing references", "[cli]") {
  TempDir dir;
  const auto base = f2k::testing::toy_run_config(dir / "work", dir / "tx");
  auto j = base;
  j["pipeline"]["max_compile_fixs"] = 3;
  CHECK_THROWS_AS(cli::load_run_config(write_config(dir, j)), ConfigInvalid);
  j = base;
  j["pipeline"]["max_n"] = "big";
  CHECK_THROWS_AS(cli::load_run_config(write_config(dir, j)), ConfigInvalid);
  j = base;
  j["pipeline"]["model"] = "nobody";
  CHECK_THROWS_AS(cli::load_run_config(write_config(dir, j)), ConfigInvalid);
  j = base;
  j["llm"].erase("transcripts");
  CHECK_THROWS_AS(cli::load_run_config(write_config(dir, j)), ConfigInvalid);
  j = base;
  j["targets"]["stub"]["compile"] = "g++ {source}";
  CHECK_THROWS_AS(cli::load_run_config(write_config(dir, j)), ConfigInvalid);
  CHECK_THROWS_AS(cli::parse_run_config("{not json", dir.path()), ConfigInvalid);
  CHECK_THROWS_AS(cli::load_run_config(dir / "missing.json"), ConfigInvalid);
}

TEST_CASE("reports render from a finished workdir", "[cli]") {
  RecordedRun run;
  cli::ReportRequest req;
  req.workdir = run.workdir;

  req.kind = cli::ReportKind::summary;
  const auto summary = cli::render_report(req);
  CHECK(summary == text::read_file(run.workdir / workflow::kSummaryCsvName));
  req.format = cli::ReportFormat::json;
  CHECK(json::parse(cli::render_report(req)).size() == 2);
  req.format = cli::ReportFormat::plot_data;
  CHECK(cli::render_report(req).starts_with("# version n runtime_s\n"));

  req.format = cli::ReportFormat::csv;
  req.kind = cli::ReportKind::trajectory;
  const auto traj = text::split_lines(cli::render_report(req));
  REQUIRE(traj.size() == 3);
  CHECK(traj[0] == "version,max_n,gflops_at_max_n");
  CHECK(traj[1].starts_with("1,16,"));

  req.kind = cli::ReportKind::invocations;
  const auto inv = text::split_lines(cli::render_report(req));
  CHECK(inv.back() == "total,,2,2,2");

  req.kind = cli::ReportKind::cost;
  const auto cost = text::split_lines(cli::render_report(req));
  CHECK(cost.front() == "role,model,calls,input_tokens,output_tokens,cost_usd");
  CHECK(cost.back().starts_with("total,,"));

  req.kind = cli::ReportKind::roofline;
  CHECK_THROWS_AS(cli::render_report(req), MissingData);
  req.roofline.arithmetic_intensity = 15.17;
  const auto roof = text::split_lines(cli::render_report(req));
  REQUIRE(roof.size() == 3);
  CHECK(roof[1].starts_with("toy_dgemm.v1,16,"));
  CHECK(roof[1].ends_with(",compute_bound"));

  // Reports are pure functions of the workdir.
  CHECK(cli::render_report(req) == cli::render_report(req));
}

TEST_CASE("reports on a missing workdir are missing data", "[cli]") {
  TempDir dir;
  cli::ReportRequest req;
  req.workdir = dir / "nothing";
  CHECK_THROWS_AS(cli::render_report(req), MissingData);
  req.workdir = dir.path();
  CHECK_THROWS_AS(cli::render_report(req), MissingData);
  std::ostringstream out, err;
  CHECK(cli::cmd_report(req, out, err) == cli::kExitMissingData);
}

TEST_CASE("cmd_run replays a recorded run and maps failures to exit codes", "[cli]") {
  RecordedRun recorded;
  TempDir dir;
  auto j = f2k::testing::toy_run_config(dir / "work", recorded.transcripts);
  j["pipeline"]["max_optimization_rounds"] = 1;
  std::ostringstream out, err;
  CHECK(cli::cmd_run(write_config(dir, j), out, err) == cli::kExitOk);
  CHECK(out.str().find("done: 2 version(s)") != std::string::npos);
  CHECK(text::read_file(dir / "work" / workflow::kSummaryCsvName).size() > 0);

  // One more round than was recorded: the replay store cannot answer.
  TempDir dir2;
  j = f2k::testing::toy_run_config(dir2 / "work", recorded.transcripts);
  j["pipeline"]["max_optimization_rounds"] = 2;
  CHECK(cli::cmd_run(write_config(dir2, j), out, err) == cli::kExitProviderUnavailable);

  j["pipeline"]["bogus"] = 1;
  CHECK(cli::cmd_run(write_config(dir2, j), out, err) == cli::kExitConfigInvalid);
}

TEST_CASE("report kinds and formats parse", "[cli]") {
  CHECK(cli::parse_report_kind("roofline") == cli::ReportKind::roofline);
  CHECK(cli::parse_report_format("plot_data") == cli::ReportFormat::plot_data);
  CHECK_THROWS_AS(cli::parse_report_kind("pie"), ConfigInvalid);
}
