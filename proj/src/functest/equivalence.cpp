#include "f2k/functest/equivalence.hpp"

#include <fmt/format.h>

#include "f2k/errors.hpp"
#include "f2k/exec/jobs.hpp"

namespace f2k::functest {

nlohmann::json FunctionalityReport::to_json() const {
  nlohmann::json sizes = nlohmann::json::array();
  for (const auto& s : per_size) {
    nlohmann::json j{{"n", s.n}, {"pass", s.pass}};
    if (rule == CompareRule::nonzero) {
      j["any_nonzero"] = s.any_nonzero;
    } else {
      j["max_abs_diff"] = std::isfinite(s.max_abs_diff) ? nlohmann::json(s.max_abs_diff) : nlohmann::json(nullptr);
    }
    if (!s.detail.empty()) j["detail"] = s.detail;
    sizes.push_back(std::move(j));
  }
  return {{"verdict", pass ? "pass" : "fail"},
          {"rule", std::string(to_string(rule))},
          {"tolerance", tolerance},
          {"sizes_tested", sizes_tested},
          {"per_size", std::move(sizes)}};
}

std::string FunctionalityReport::diagnosis() const {
  std::string out = fmt::format("Functionality test against the Fortran reference failed (rule {}, tolerance {:g}).\n",
                                to_string(rule), tolerance);
  for (const auto& s : per_size) {
    if (s.pass) continue;
    out += fmt::format("n = {}: {}\n", s.n, s.detail);
  }
  return out;
}

FunctionalityReport run_equivalence(const EquivalenceRun& run, const exec::TargetProfile& target,
                                    exec::Backend& backend) {
  if (run.sizes.empty()) throw PreconditionViolation("run_equivalence: no sizes");
  FunctionalityReport report;
  report.tolerance = run.tolerance;
  report.rule = run.rule;
  report.sizes_tested = run.sizes;
  report.pass = true;

  for (const auto n : run.sizes) {
    const auto dir = run.workdir / fmt::format("n{}", n);
    const auto kokkos_dir = dir / "translated";
    const auto ref_dir = dir / "reference";
    for (const auto& d : {kokkos_dir, ref_dir}) {
      std::filesystem::remove_all(d);
      std::filesystem::create_directories(d);
    }

    const auto ref = exec::run_program(run.baseline_exe, n, run.reps, false, target, backend, {ref_dir, "run"});
    const auto ref_csv = ref_dir / run.csv_name;
    if (ref.exit_status != 0)
      throw MissingCsv(fmt::format("reference program failed at n = {} (exit {})", n, ref.exit_status));
    if (!std::filesystem::exists(ref_csv))
      throw MissingCsv(fmt::format("reference program wrote no {} at n = {}", run.csv_name, n));
    const auto ref_values = parse_capture_csv(text::read_file(ref_csv));

    SizeVerdict v;
    v.n = n;
    const auto out = exec::run_program(run.instrumented_exe, n, run.reps, false, target, backend, {kokkos_dir, "run"});
    const auto csv = kokkos_dir / run.csv_name;
    if (out.exit_status != 0) {
      v.detail = fmt::format("translated program exited with status {}", out.exit_status);
    } else if (!std::filesystem::exists(csv)) {
      v.detail = fmt::format("translated program wrote no {} (capture code after Kokkos::fence() never ran)",
                             run.csv_name);
    } else {
      try {
        const auto r = compare_values(parse_capture_csv(text::read_file(csv)), ref_values, run.tolerance, run.rule);
        v.pass = r.pass;
        v.max_abs_diff = r.max_abs_diff;
        v.any_nonzero = r.any_nonzero;
        if (!r.pass) {
          v.detail = run.rule == CompareRule::nonzero
                         ? "all captured values are zero"
                         : fmt::format("max |difference| {:g} exceeds tolerance {:g}", r.max_abs_diff, run.tolerance);
        }
      } catch (const LengthMismatch& e) {
        v.detail = e.what();
      } catch (const ParseError& e) {
        v.detail = e.what();
      }
    }
    report.pass = report.pass && v.pass;
    report.per_size.push_back(std::move(v));
  }
  return report;
}

}  // namespace f2k::functest
