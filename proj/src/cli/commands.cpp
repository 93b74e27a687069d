#include "f2k/cli/commands.hpp"

#include <exception>
#include <memory>
#include <ostream>

#include <fmt/format.h>

#include "f2k/agents/agents.hpp"
#include "f2k/cli/config_file.hpp"
#include "f2k/errors.hpp"
#include "f2k/exec/backend.hpp"
#include "f2k/llm/gateway.hpp"
#include "f2k/llm/http_provider.hpp"
#include "f2k/profiler/thresholds.hpp"
#include "f2k/workflow/pipeline.hpp"

namespace f2k::cli {

int report_current_exception(std::ostream& err) {
  try {
    throw;
  } catch (const BudgetExhausted& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudgetExhausted;
  } catch (const ConfigInvalid& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigInvalid;
  } catch (const ProviderUnavailable& e) {
    err << "model provider unavailable: " << e.what() << '\n';
    return kExitProviderUnavailable;
  } catch (const ExecutorFailure& e) {
    err << "executor failure: " << e.what() << '\n';
    return kExitExecutorFailure;
  } catch (const MissingData& e) {
    err << "missing data: " << e.what() << '\n';
    return kExitMissingData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_run(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig cfg = load_run_config(config_path);

    std::shared_ptr<llm::ChatProvider> live;
    if (cfg.llm.mode != llm::LlmMode::replay) {
      llm::HttpChatProvider::Options opts;
      opts.timeout = cfg.llm.timeout;
      live = std::make_shared<llm::HttpChatProvider>(opts);
    }
    std::optional<llm::TranscriptStore> store;
    if (cfg.llm.transcripts) store.emplace(*cfg.llm.transcripts);
    llm::Gateway gateway(cfg.llm.mode, live, std::move(store), cfg.llm.retry);

    auto catalog = cfg.prompt_dir ? agents::RoleCatalog::with_overrides(*cfg.prompt_dir) : agents::RoleCatalog::builtin();
    agents::Agents roles(gateway, std::move(catalog), cfg.models);

    auto backend = exec::make_backend(cfg.target);
    auto rules = cfg.threshold_rules ? profiler::load_rule_table(*cfg.threshold_rules) : profiler::default_rule_table();

    workflow::PipelineServices services{roles, gateway, *backend, cfg.target, std::move(rules),
                                        [&out](std::string_view line) { out << line << std::endl; }};
    const auto result = workflow::run_pipeline(cfg.pipeline, cfg.inputs, services);
    out << fmt::format("done: {} version(s); {}; tokens in={} out={}; cost ${:.2f}\n", result.versions.size(),
                       result.stop_reason, result.usage.input_tokens, result.usage.output_tokens, result.cost_usd);
    return kExitOk;
  } catch (...) {
    return report_current_exception(err);
  }
}

int cmd_report(const ReportRequest& request, std::ostream& out, std::ostream& err) {
  try {
    const auto content = write_report(request);
    if (request.output.empty() || request.output == "-") out << content;
    return kExitOk;
  } catch (...) {
    return report_current_exception(err);
  }
}

}  // namespace f2k::cli
