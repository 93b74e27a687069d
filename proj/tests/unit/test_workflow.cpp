#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "f2k/errors.hpp"
#include "f2k/functest/injection.hpp"
#include "f2k/text.hpp"
#include "f2k/workflow/config.hpp"
#include "f2k/workflow/pipeline.hpp"
#include "f2k/workflow/summary_csv.hpp"
#include "f2k/workflow/trace.hpp"
#include "f2k/workflow/version_store.hpp"
#include "temp_dir.hpp"
#include "toy.hpp"

using namespace f2k;
using f2k::testing::TempDir;
using f2k::testing::ToyFault;
using f2k::testing::ToyRig;
using nlohmann::json;

namespace {

json read_json(const std::filesystem::path& p) { return json::parse(text::read_file(p)); }

int count_version_dirs(const std::filesystem::path& workdir, const std::string& kernel) {
  int n = 0;
  for (const auto& e : std::filesystem::directory_iterator(workdir))
    if (e.is_directory() && e.path().filename().string().starts_with(kernel + ".v")) ++n;
  return n;
}

int trace_count(const std::filesystem::path& workdir, const std::string& role) {
  int n = 0;
  for (const auto& r : workflow::read_trace(workdir / workflow::kTraceName))
    if (r.value("type", "") == "agent" && r.value("role", "") == role) ++n;
  return n;
}

}  // namespace

TEST_CASE("config defaults follow the benchmark settings", "[workflow]") {
  const auto c = workflow::PipelineConfig::defaults_for(KernelId::MG, "A100");
  CHECK(c.min_n == 32);
  CHECK(c.max_n == 256);
  CHECK(c.num_sizes == 10);
  CHECK(c.kernel_repetitions == 250);
  CHECK(c.max_compile_fixes == 20);
  CHECK(c.max_runtime_fixes == 20);
  CHECK(c.max_functionality_fixes == 10);
  CHECK(c.max_optimization_rounds == 5);
  CHECK(c.effective_kernel_name() == "MG");
}

TEST_CASE("config validation names the broken field", "[workflow]") {
  TempDir dir;
  auto c = f2k::testing::toy_config(dir.path());
  c.validate();
  auto bad = c;
  bad.max_compile_fixes = -1;
  CHECK_THROWS_AS(bad.validate(), ConfigInvalid);
  bad = c;
  bad.min_n = 20;
  CHECK_THROWS_AS(bad.validate(), ConfigInvalid);
  bad = c;
  bad.kernel_name = "../escape";
  CHECK_THROWS_AS(bad.validate(), ConfigInvalid);
}

TEST_CASE("version numbers are unique under concurrency", "[workflow]") {
  TempDir dir;
  std::vector<int> numbers(8);
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&, t] { numbers[t] = workflow::VersionStore(dir.path(), "k").next_version().number; });
  for (auto& t : threads) t.join();
  CHECK(std::set<int>(numbers.begin(), numbers.end()).size() == 8);
  CHECK(workflow::VersionStore(dir.path(), "k").existing() == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(workflow::VersionStore(dir.path(), "k").dir_for(3) == dir.path() / "k.v3");
}

TEST_CASE("summary CSV formatting and header discipline", "[workflow]") {
  TempDir dir;
  workflow::RunSummaryRow row{"dgemm", "gpt-5", "MI250", 2, {{1024, 0.5}, {2048, 3.25}}, 1, 0, 2, {1000, 100},
                              2.25, 12.3456};
  CHECK(workflow::summary_header(row) ==
        "kernel,model,target,version,runtime_n1024,runtime_n2048,build_fixes,run_fixes,func_fixes,input_tokens,"
        "output_tokens,cost_usd,elapsed_s");
  CHECK(workflow::summary_line(row) == "dgemm,gpt-5,MI250,2,0.500000,3.250000,1,0,2,1000,100,2.25,12.346");
  const auto csv = dir / "summary.csv";
  workflow::append_summary_row(row, csv);
  row.version = 3;
  workflow::append_summary_row(row, csv);
  CHECK(text::count_lines(text::read_file(csv)) == 3);
  row.runtimes = {{4096, 1.0}};
  CHECK_THROWS_AS(workflow::append_summary_row(row, csv), IoFailure);
}

TEST_CASE("trace lines round-trip", "[workflow]") {
  TempDir dir;
  workflow::TraceLog log(dir / "t.jsonl");
  log.append({{"type", "job"}, {"n", 1}});
  log.append({{"type", "agent"}, {"text", "multi\nline"}});
  const auto records = workflow::read_trace(dir / "t.jsonl");
  REQUIRE(records.size() == 2);
  CHECK(records[1]["text"] == "multi\nline");
  CHECK_THROWS_AS(workflow::read_trace(dir / "none.jsonl"), MissingData);
}

TEST_CASE("logs are sanitized of the workdir path", "[workflow]") {
  CHECK(workflow::sanitize_log("/tmp/w/x.v1/source.cpp:3: error", "/tmp/w") == "<workdir>/x.v1/source.cpp:3: error");
}

TEST_CASE("clean toy run: baseline plus optimization rounds", "[workflow][pipeline]") {
  TempDir dir;
  auto cfg = f2k::testing::toy_config(dir.path());
  cfg.max_optimization_rounds = 2;
  ToyRig rig(ToyFault::none, f2k::testing::stub_target());
  const auto result = rig.run(cfg);

  REQUIRE(result.versions.size() == 3);
  CHECK(result.rows.size() == 3);
  CHECK(result.stop_reason == "optimization rounds completed");
  CHECK(count_version_dirs(dir.path(), "toy_dgemm") == 3);
  for (const auto& v : result.versions) {
    INFO("v" << v.version);
    CHECK(v.status == workflow::VersionStatus::tested_ok);
    CHECK(v.build_attempts == 1);
    CHECK(v.run_attempts == 1);
    CHECK(v.functionality_attempts == 1);
    CHECK(v.runtimes.size() == 3);
    CHECK(v.executions.at(4) == 3);  // fixed at n_min, then two
    CHECK(v.executions.at(16) == 2);
    REQUIRE(v.gflops_at_max_n.has_value());
    CHECK(std::filesystem::exists(v.dir / "source.cpp"));
    CHECK(std::filesystem::exists(v.dir / "build.log"));
    CHECK(std::filesystem::exists(v.dir / "run_16.log"));
    CHECK(std::filesystem::exists(v.dir / "functionality.json"));
    CHECK(std::filesystem::exists(v.dir / "profile_summary.txt"));
    CHECK_FALSE(functest::has_capture_markers(text::read_file(v.dir / "source.cpp")));
  }
  CHECK(result.versions[1].parent_version == 1);
  CHECK(result.versions[2].parent_version == 2);
  // The stub reports shorter times for each optimization round.
  CHECK(*result.versions[2].gflops_at_max_n > *result.versions[0].gflops_at_max_n);

  const auto pj = read_json(dir / workflow::kPipelineJsonName);
  CHECK(pj["completed"] == true);
  CHECK(pj["versions"].size() == 3);
  CHECK(text::count_lines(text::read_file(dir / workflow::kSummaryCsvName)) == 4);
  CHECK(trace_count(dir.path(), "Translator") == 1);
  CHECK(trace_count(dir.path(), "Optimizer") == 2);
  CHECK(std::filesystem::exists(dir / "toy_dgemm.v2" / "transcripts"));
  CHECK(result.cost_usd > 0.0);
}

TEST_CASE("persistent compile failure exhausts its budget", "[workflow][pipeline]") {
  TempDir dir;
  auto cfg = f2k::testing::toy_config(dir.path());
  cfg.max_compile_fixes = 3;
  ToyRig rig(ToyFault::compile, f2k::testing::stub_target());
  try {
    rig.run(cfg);
    FAIL("expected BudgetExhausted");
  } catch (const BudgetExhausted& e) {
    CHECK(e.stage() == "compile");
    CHECK(e.version() == 1);
  }
  CHECK(rig.provider->calls("CompileErrorFixer") == 3);
  CHECK(rig.provider->calls("ErrorSummarizer") == 3);
  CHECK(count_version_dirs(dir.path(), "toy_dgemm") == 1);
  const auto v = read_json(dir / "toy_dgemm.v1" / workflow::kVersionJsonName);
  CHECK(v["status"] == "aborted");
  CHECK(v["compile_fixes"] == 3);
  CHECK(v["build_attempts"] == 4);
  CHECK(read_json(dir / workflow::kPipelineJsonName)["completed"] == false);
  CHECK_FALSE(std::filesystem::exists(dir / workflow::kSummaryCsvName));
}

TEST_CASE("persistent runtime and functionality failures exhaust their budgets", "[workflow][pipeline]") {
  for (auto [fault, stage, role, budget] :
       {std::tuple{ToyFault::runtime, "runtime", "RuntimeErrorFixer", 2},
        std::tuple{ToyFault::functionality, "functionality", "FunctionalityFixer", 2}}) {
    TempDir dir;
    auto cfg = f2k::testing::toy_config(dir.path());
    cfg.max_runtime_fixes = budget;
    cfg.max_functionality_fixes = budget;
    ToyRig rig(fault, f2k::testing::stub_target());
    INFO(stage);
    try {
      rig.run(cfg);
      FAIL("expected BudgetExhausted");
    } catch (const BudgetExhausted& e) {
      CHECK(e.stage() == stage);
    }
    CHECK(rig.provider->calls(role) == budget);
    CHECK(count_version_dirs(dir.path(), "toy_dgemm") == 1);
  }
}

TEST_CASE("a fixer that repairs the fault lets the run continue", "[workflow][pipeline]") {
  TempDir dir;
  auto cfg = f2k::testing::toy_config(dir.path());
  cfg.max_optimization_rounds = 1;
  ToyRig rig(ToyFault::none, f2k::testing::stub_target());
  // Translator plants a compile error; the first fix removes it.
  rig.provider = std::make_shared<f2k::testing::ScriptedProvider>([](const llm::ChatRequest& r, int i) {
    if (r.role == "Translator")
      return f2k::testing::fenced(f2k::testing::with_fault(f2k::testing::toy_source(), ToyFault::compile));
    return f2k::testing::toy_responder(ToyFault::none)(r, i);
  });
  rig.gateway = std::make_unique<llm::Gateway>(llm::LlmMode::live, rig.provider, std::nullopt);
  rig.agents = std::make_unique<agents::Agents>(*rig.gateway, agents::RoleCatalog::builtin(),
                                                agents::RoleModels{f2k::testing::toy_model(), {}});
  const auto result = rig.run(cfg);
  REQUIRE(result.versions.size() == 2);
  CHECK(result.versions[0].compile_fixes == 1);
  CHECK(result.versions[0].build_attempts == 2);
  CHECK(result.rows[0].build_fixes == 1);
  const auto summary = text::read_file(dir / workflow::kSummaryCsvName);
  CHECK(summary.find(",1,0,0,") != std::string::npos);
}

TEST_CASE("optimizer returning the same code ends the rounds early", "[workflow][pipeline]") {
  TempDir dir;
  auto cfg = f2k::testing::toy_config(dir.path());
  ToyRig rig(ToyFault::none, f2k::testing::stub_target());
  rig.provider = std::make_shared<f2k::testing::ScriptedProvider>([](const llm::ChatRequest& r, int i) {
    if (r.role == "Optimizer") return f2k::testing::fenced(f2k::testing::toy_source());
    return f2k::testing::toy_responder(ToyFault::none)(r, i);
  });
  rig.gateway = std::make_unique<llm::Gateway>(llm::LlmMode::live, rig.provider, std::nullopt);
  rig.agents = std::make_unique<agents::Agents>(*rig.gateway, agents::RoleCatalog::builtin(),
                                                agents::RoleModels{f2k::testing::toy_model(), {}});
  const auto result = rig.run(cfg);
  CHECK(result.versions.size() == 1);
  CHECK(result.stop_reason.find("unchanged") != std::string::npos);
  CHECK(count_version_dirs(dir.path(), "toy_dgemm") == 1);
}

TEST_CASE("profiler feedback reaches the optimizer", "[workflow][pipeline]") {
  TempDir dir;
  auto cfg = f2k::testing::toy_config(dir.path());
  cfg.max_optimization_rounds = 1;
  auto target = f2k::testing::stub_target();
  target.profiler = exec::ProfilerKind::ncu_like;
  target.profile_command_template =
      "cp " + (f2k::testing::fixtures_dir() / "profiler" / "ncu_two_opt_blocks.txt").string() +
      " {report} && {exe} {n} {reps}";
  std::string optimizer_prompt;
  ToyRig rig(ToyFault::none, target);
  rig.provider = std::make_shared<f2k::testing::ScriptedProvider>([&](const llm::ChatRequest& r, int i) {
    if (r.role == "Optimizer") optimizer_prompt = r.user;
    return f2k::testing::toy_responder(ToyFault::none)(r, i);
  });
  rig.gateway = std::make_unique<llm::Gateway>(llm::LlmMode::live, rig.provider, std::nullopt);
  rig.agents = std::make_unique<agents::Agents>(*rig.gateway, agents::RoleCatalog::builtin(),
                                                agents::RoleModels{f2k::testing::toy_model(), {}});
  rig.run(cfg);
  CHECK(optimizer_prompt.find("estimated speedup 25%") != std::string::npos);
  const auto summary = text::read_file(dir / "toy_dgemm.v1" / "profile_summary.txt");
  CHECK(summary.starts_with("1. "));
  CHECK(std::filesystem::exists(dir / "toy_dgemm.v1" / "profile_profile.txt"));
}

TEST_CASE("real toolchain: toy kernel compiled with g++ against the Kokkos shim", "[workflow][pipeline][gxx]") {
  TempDir dir;
  auto cfg = f2k::testing::toy_config(dir.path());
  cfg.target_id = "host-gxx";
  cfg.min_n = 24;
  cfg.max_n = 48;
  cfg.num_sizes = 2;
  cfg.kernel_repetitions = 20;
  cfg.max_optimization_rounds = 1;
  ToyRig rig(ToyFault::none, f2k::testing::gxx_target());
  const auto result = rig.run(cfg);
  REQUIRE(result.versions.size() == 2);
  for (const auto& v : result.versions) {
    CHECK(v.status == workflow::VersionStatus::tested_ok);
    CHECK(read_json(v.dir / "functionality.json")["verdict"] == "pass");
  }
}

TEST_CASE("real toolchain: wrong results are caught against the reference", "[workflow][pipeline][gxx]") {
  TempDir dir;
  auto cfg = f2k::testing::toy_config(dir.path());
  cfg.target_id = "host-gxx";
  cfg.min_n = 8;
  cfg.max_n = 8;
  cfg.num_sizes = 1;
  cfg.functionality_sizes = 1;
  cfg.max_functionality_fixes = 1;
  ToyRig rig(ToyFault::functionality, f2k::testing::gxx_target());
  CHECK_THROWS_AS(rig.run(cfg), BudgetExhausted);
  const auto report = read_json(dir / "toy_dgemm.v1" / "functionality.json");
  CHECK(report["verdict"] == "fail");
}
