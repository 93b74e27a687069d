#include "f2k/cli/config_file.hpp"

#include <initializer_list>
#include <set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "f2k/errors.hpp"
#include "f2k/text.hpp"

namespace f2k::cli {
namespace {

using nlohmann::json;

// Typed, path-aware accessors over one JSON object.
class Section {
 public:
  Section(const json& j, std::string path, std::initializer_list<std::string_view> allowed) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigInvalid(path_ + " must be an object");
    std::set<std::string_view> ok(allowed);
    for (const auto& [k, v] : j_.items())
      if (!ok.contains(k)) throw ConfigInvalid(fmt::format("unknown key {}.{}", path_, k));
  }

  bool has(std::string_view key) const { return j_.contains(std::string(key)); }
  const json& raw(std::string_view key) const { return j_.at(std::string(key)); }
  std::string where(std::string_view key) const { return path_ + "." + std::string(key); }

  template <typename T>
  T get(std::string_view key) const {
    if (!has(key)) throw ConfigInvalid("missing " + where(key));
    return as<T>(key);
  }

  template <typename T>
  T get_or(std::string_view key, T fallback) const {
    return has(key) ? as<T>(key) : fallback;
  }

 private:
  template <typename T>
  T as(std::string_view key) const {
    const auto& v = j_.at(std::string(key));
    try {
      if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw ConfigInvalid(where(key) + " must be a string");
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw ConfigInvalid(where(key) + " must be a boolean");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw ConfigInvalid(where(key) + " must be an integer");
        if constexpr (std::is_unsigned_v<T>) {
          if (v.get<long long>() < 0) throw ConfigInvalid(where(key) + " must not be negative");
        }
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) throw ConfigInvalid(where(key) + " must be a number");
      } else if constexpr (std::is_same_v<T, json>) {
        if (!v.is_object()) throw ConfigInvalid(where(key) + " must be an object");
      } else {
        if (!v.is_array()) throw ConfigInvalid(where(key) + " must be an array");
      }
      return v.get<T>();
    } catch (const json::exception& e) {
      throw ConfigInvalid(where(key) + ": " + e.what());
    }
  }

  const json& j_;
  std::string path_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

template <typename F>
auto wrap(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigInvalid&) {
    throw;
  } catch (const Error& e) {
    throw ConfigInvalid(e.what());
  }
}

llm::ModelRef parse_model(const std::string& name, const json& j) {
  Section s(j, "models." + name, {"endpoint", "price_in_per_mtok", "price_out_per_mtok", "api_key_env", "name"});
  llm::ModelRef m;
  m.name = s.get_or<std::string>("name", name);
  m.endpoint = s.get<std::string>("endpoint");
  m.price_in_per_mtok = s.get_or<double>("price_in_per_mtok", 0.0);
  m.price_out_per_mtok = s.get_or<double>("price_out_per_mtok", 0.0);
  m.api_key_env = s.get_or<std::string>("api_key_env", "");
  m.validate();
  return m;
}

exec::BatchSettings parse_batch(const json& j) {
  Section s(j, "targets.*.batch",
            {"directive_prefix", "partition", "extra_directives", "submit_command", "status_command", "cancel_command",
             "poll_interval_ms", "success_states", "failure_states"});
  exec::BatchSettings b;
  b.directive_prefix = s.get_or("directive_prefix", b.directive_prefix);
  b.partition = s.get_or("partition", b.partition);
  b.extra_directives = s.get_or("extra_directives", b.extra_directives);
  b.submit_command = s.get_or("submit_command", b.submit_command);
  b.status_command = s.get_or("status_command", b.status_command);
  b.cancel_command = s.get_or("cancel_command", b.cancel_command);
  b.poll_interval = std::chrono::milliseconds(s.get_or<long long>("poll_interval_ms", b.poll_interval.count()));
  b.success_states = s.get_or("success_states", b.success_states);
  b.failure_states = s.get_or("failure_states", b.failure_states);
  return b;
}

exec::TargetProfile parse_target(const std::string& id, const json& j, const std::filesystem::path& base,
                                 std::optional<std::filesystem::path>& rules) {
  Section s(j, "targets." + id,
            {"backend", "env_setup", "compile", "run", "fortran_compile", "profiler", "profile_command",
             "wallclock_minutes", "threshold_rules", "batch"});
  exec::TargetProfile t;
  t.target_id = id;
  t.backend = wrap([&] { return exec::parse_backend_kind(s.get_or<std::string>("backend", "local")); });
  t.env_setup_commands = s.get_or("env_setup", t.env_setup_commands);
  t.compile_command_template = s.get_or("compile", t.compile_command_template);
  t.run_command_template = s.get_or("run", t.run_command_template);
  t.fortran_compile_command = s.get_or("fortran_compile", t.fortran_compile_command);
  t.profiler = wrap([&] { return exec::parse_profiler_kind(s.get_or<std::string>("profiler", "none")); });
  t.profile_command_template = s.get_or("profile_command", t.profile_command_template);
  t.wallclock_limit_minutes = s.get_or("wallclock_minutes", t.wallclock_limit_minutes);
  if (s.has("threshold_rules")) rules = resolve(base, s.get<std::string>("threshold_rules"));
  if (s.has("batch")) t.batch = parse_batch(s.raw("batch"));
  t.validate();
  return t;
}

void parse_pipeline(const json& j, const std::filesystem::path& base, RunConfig& rc) {
  Section s(j, "pipeline",
            {"kernel", "kernel_name", "target", "model", "partition", "max_compile_fixes", "max_runtime_fixes",
             "max_functionality_fixes", "max_optimization_rounds", "min_n", "max_n", "num_sizes", "size_spacing",
             "iterations", "kernel_repetitions", "workdir", "fortran_source", "baseline_source", "functionality",
             "cleanup_commands", "profile_summary_lines"});
  const auto kernel = wrap([&] { return parse_kernel_id(s.get<std::string>("kernel")); });
  auto& c = rc.pipeline;
  c = workflow::PipelineConfig::defaults_for(kernel, s.get_or<std::string>("partition", "MI250"));
  c.kernel_name = s.get_or<std::string>("kernel_name", "");
  c.target_id = s.get<std::string>("target");
  c.model_ref = s.get<std::string>("model");
  c.max_compile_fixes = s.get_or("max_compile_fixes", c.max_compile_fixes);
  c.max_runtime_fixes = s.get_or("max_runtime_fixes", c.max_runtime_fixes);
  c.max_functionality_fixes = s.get_or("max_functionality_fixes", c.max_functionality_fixes);
  c.max_optimization_rounds = s.get_or("max_optimization_rounds", c.max_optimization_rounds);
  c.min_n = s.get_or("min_n", c.min_n);
  c.max_n = s.get_or("max_n", c.max_n);
  c.num_sizes = s.get_or("num_sizes", c.num_sizes);
  if (s.has("size_spacing"))
    c.size_spacing = wrap([&] { return perf::parse_size_spacing(s.get<std::string>("size_spacing")); });
  if (s.has("iterations")) {
    Section it(s.raw("iterations"), "pipeline.iterations", {"policy", "min", "max"});
    if (it.has("policy"))
      c.program_iterations.kind =
          wrap([&] { return perf::parse_iteration_policy(it.get<std::string>("policy").c_str()); });
    c.program_iterations.iter_min = it.get_or("min", c.program_iterations.iter_min);
    c.program_iterations.iter_max = it.get_or("max", c.program_iterations.iter_max);
  }
  c.kernel_repetitions = s.get_or("kernel_repetitions", c.kernel_repetitions);
  c.workdir = resolve(base, s.get<std::string>("workdir"));
  c.cleanup_commands = s.get_or("cleanup_commands", c.cleanup_commands);
  c.profile_summary_lines = s.get_or("profile_summary_lines", c.profile_summary_lines);
  if (s.has("functionality")) {
    Section f(s.raw("functionality"), "pipeline.functionality",
              {"sizes", "repetitions", "tolerance", "rule", "capture_array"});
    c.functionality_sizes = f.get_or("sizes", c.functionality_sizes);
    c.functionality_repetitions = f.get_or("repetitions", c.functionality_repetitions);
    c.functionality_tolerance = f.get_or("tolerance", c.functionality_tolerance);
    if (f.has("rule")) {
      const auto rule = f.get<std::string>("rule");
      if (rule == "elementwise_tol") {
        c.compare_rule = functest::CompareRule::elementwise_tol;
      } else if (rule == "nonzero") {
        c.compare_rule = functest::CompareRule::nonzero;
      } else {
        throw ConfigInvalid("pipeline.functionality.rule must be elementwise_tol or nonzero");
      }
    }
    c.capture_array = f.get_or<std::string>("capture_array", "");
  }

  const auto fortran = resolve(base, s.get<std::string>("fortran_source"));
  std::error_code ec;
  if (!std::filesystem::is_regular_file(fortran, ec))
    throw ConfigInvalid("pipeline.fortran_source does not exist: " + fortran.string());
  rc.inputs.fortran_source = text::read_file(fortran);
  rc.inputs.baseline_source = resolve(base, s.get_or<std::string>("baseline_source", fortran.string()));
  if (!std::filesystem::is_regular_file(rc.inputs.baseline_source, ec))
    throw ConfigInvalid("pipeline.baseline_source does not exist: " + rc.inputs.baseline_source.string());
  wrap([&] {
    c.validate();
    return 0;
  });
}

void parse_llm(const json& j, const std::filesystem::path& base, LlmSettings& l) {
  Section s(j, "llm", {"mode", "transcripts", "retry", "timeout_s"});
  if (s.has("mode")) l.mode = wrap([&] { return llm::parse_llm_mode(s.get<std::string>("mode")); });
  if (s.has("transcripts")) l.transcripts = resolve(base, s.get<std::string>("transcripts"));
  l.timeout = std::chrono::seconds(s.get_or<long long>("timeout_s", l.timeout.count()));
  if (s.has("retry")) {
    Section r(s.raw("retry"), "llm.retry", {"max_attempts", "initial_backoff_ms", "multiplier"});
    l.retry.max_attempts = r.get_or("max_attempts", l.retry.max_attempts);
    l.retry.initial_backoff = std::chrono::milliseconds(r.get_or<long long>("initial_backoff_ms", l.retry.initial_backoff.count()));
    l.retry.multiplier = r.get_or("multiplier", l.retry.multiplier);
    if (l.retry.max_attempts < 1) throw ConfigInvalid("llm.retry.max_attempts must be >= 1");
  }
}

}  // namespace

RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  const auto j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw ConfigInvalid("config is not valid JSON");
  Section top(j, "config", {"pipeline", "models", "role_models", "targets", "llm", "prompt_dir"});

  RunConfig rc;
  parse_pipeline(top.get<json>("pipeline"), base_dir, rc);

  const auto models = top.get<json>("models");
  if (!models.is_object() || !models.contains(rc.pipeline.model_ref))
    throw ConfigInvalid("models has no entry for pipeline.model '" + rc.pipeline.model_ref + "'");
  rc.models.default_model = parse_model(rc.pipeline.model_ref, models.at(rc.pipeline.model_ref));
  if (top.has("role_models")) {
    const auto& rm = top.raw("role_models");
    if (!rm.is_object()) throw ConfigInvalid("role_models must be an object");
    for (const auto& [role_name, model_name] : rm.items()) {
      const auto role = agents::parse_role(role_name);
      if (!role) throw ConfigInvalid("role_models: unknown role '" + role_name + "'");
      if (!model_name.is_string() || !models.contains(model_name.get<std::string>()))
        throw ConfigInvalid("role_models." + role_name + " must name an entry of models");
      rc.models.overrides[*role] = parse_model(model_name.get<std::string>(), models.at(model_name.get<std::string>()));
    }
  }

  const auto targets = top.get<json>("targets");
  if (!targets.is_object() || !targets.contains(rc.pipeline.target_id))
    throw ConfigInvalid("targets has no entry for pipeline.target '" + rc.pipeline.target_id + "'");
  rc.target = parse_target(rc.pipeline.target_id, targets.at(rc.pipeline.target_id), base_dir, rc.threshold_rules);

  if (top.has("llm")) parse_llm(top.raw("llm"), base_dir, rc.llm);
  if (const auto env_mode = wrap([] { return llm::llm_mode_from_environment(); })) rc.llm.mode = *env_mode;
  if (rc.llm.mode != llm::LlmMode::live && !rc.llm.transcripts)
    throw ConfigInvalid(fmt::format("llm.transcripts is required in {} mode", llm::to_string(rc.llm.mode)));

  if (top.has("prompt_dir")) rc.prompt_dir = resolve(base_dir, top.get<std::string>("prompt_dir"));
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw ConfigInvalid("config file not found: " + path.string());
  const auto abs = std::filesystem::absolute(path);
  return parse_run_config(text::read_file(abs), abs.parent_path());
}

}  // namespace f2k::cli
