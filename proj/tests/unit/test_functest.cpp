#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <fmt/format.h>

#include "f2k/errors.hpp"
#include "f2k/exec/backend.hpp"
#include "f2k/exec/jobs.hpp"
#include "f2k/exec/subprocess.hpp"
#include "f2k/functest/compare.hpp"
#include "f2k/functest/equivalence.hpp"
#include "f2k/functest/injection.hpp"
#include "f2k/text.hpp"
#include "generators.hpp"
#include "temp_dir.hpp"
#include "toy.hpp"

using namespace f2k;
using f2k::testing::generated_source;
using f2k::testing::TempDir;

TEST_CASE("strip(inject(s)) == s for generated single-anchor sources", "[functest][property]") {
  std::mt19937 rng(4242);
  const auto spec = functest::default_injection_spec(KernelId::DGEMM);
  for (int i = 0; i < 100; ++i) {
    const auto s = generated_source(rng);
    INFO("case " << i << ":\n" << s);
    const auto injected = functest::inject_capture(s, spec);
    CHECK(injected != s);
    CHECK(functest::has_capture_markers(injected));
    CHECK(functest::strip_injection(injected) == s);
  }
}

TEST_CASE("injection needs exactly one anchor", "[functest]") {
  const auto spec = functest::default_injection_spec(KernelId::CG);
  CHECK_THROWS_AS(functest::inject_capture("int main() {}\n", spec), AnchorMissing);
  CHECK_THROWS_AS(functest::inject_capture("// Kokkos::fence();\nint main() {}\n", spec), AnchorMissing);
  CHECK_THROWS_AS(functest::inject_capture("Kokkos::fence();\nKokkos::fence();\n", spec), AnchorAmbiguous);
  CHECK_THROWS_AS(functest::inject_capture("Kokkos::fence(); Kokkos::fence();\n", spec), AnchorAmbiguous);
  const auto once = functest::inject_capture("Kokkos::fence();\n", spec);
  CHECK_THROWS_AS(functest::inject_capture(once, spec), PreconditionViolation);
}

TEST_CASE("injected capture lands right after the anchor with its indentation", "[functest]") {
  const auto spec = functest::default_injection_spec(KernelId::MG);
  const auto out = functest::inject_capture("int main() {\n    Kokkos::fence();\n    return 0;\n}\n", spec);
  const auto fence = out.find("    Kokkos::fence();\n");
  const auto begin = out.find(std::string("    ") + std::string(functest::kCaptureBegin));
  const auto ret = out.find("    return 0;");
  CHECK(fence < begin);
  CHECK(begin < ret);
  CHECK(out.find("create_mirror_view_and_copy(Kokkos::HostSpace(), u)") != std::string::npos);
  CHECK(out.starts_with(std::string(functest::kCaptureBegin)));
}

TEST_CASE("strip_injection rejects broken marker structure", "[functest]") {
  const std::string b(functest::kCaptureBegin), e(functest::kCaptureEnd);
  CHECK_THROWS_AS(functest::strip_injection(b + "\nx\n"), UnbalancedMarkers);
  CHECK_THROWS_AS(functest::strip_injection(e + "\n"), UnbalancedMarkers);
  CHECK_THROWS_AS(functest::strip_injection(b + "\n" + b + "\n" + e + "\n" + e + "\n"), UnbalancedMarkers);
  CHECK(functest::strip_injection("plain\n") == "plain\n");
}

TEST_CASE("capture arrays follow the kernel", "[functest]") {
  CHECK(functest::default_capture_array(KernelId::CG) == "x");
  CHECK(functest::default_capture_array(KernelId::EP) == "q");
  CHECK(functest::default_capture_array(KernelId::DGEMM) == "C");
  CHECK(functest::rule_for(KernelId::EP) == functest::CompareRule::nonzero);
  CHECK(functest::rule_for(KernelId::FT) == functest::CompareRule::elementwise_tol);
}

TEST_CASE("CSV capture parsing", "[functest]") {
  CHECK(functest::parse_capture_csv("1, 2;3\n4.5e0 +5 1.0D2\n") == std::vector<double>{1, 2, 3, 4.5, 5, 100});
  CHECK_THROWS_AS(functest::parse_capture_csv(""), ParseError);
  CHECK_THROWS_AS(functest::parse_capture_csv("1\nabc\n"), ParseError);
}

TEST_CASE("comparison rules", "[functest]") {
  using functest::CompareRule;
  CHECK(functest::compare_values({1, 2}, {1, 2 + 1e-7}, 1e-6, CompareRule::elementwise_tol).pass);
  const auto off = functest::compare_values({1, 2}, {1, 2.1}, 1e-6, CompareRule::elementwise_tol);
  CHECK_FALSE(off.pass);
  CHECK(off.max_abs_diff == Catch::Approx(0.1));
  CHECK_THROWS_AS(functest::compare_values({1}, {1, 2}, 1e-6, CompareRule::elementwise_tol), LengthMismatch);
  CHECK_FALSE(functest::compare_values({std::nan("")}, {1}, 1e-6, CompareRule::elementwise_tol).pass);
  // EP: only the translated output has to be non-zero; values may differ.
  CHECK(functest::compare_values({0, 3}, {7, 7, 7}, 1e-6, CompareRule::nonzero).pass);
  CHECK_FALSE(functest::compare_values({0, 0}, {7}, 1e-6, CompareRule::nonzero).pass);
}

TEST_CASE("run_equivalence over the stub toolchain", "[functest]") {
  TempDir dir;
  const auto target = f2k::testing::stub_target();
  exec::LocalBackend backend(target);
  const auto spec = functest::default_injection_spec(KernelId::DGEMM);

  text::write_file(dir / "ref.f90", "program p\nend program p\n");
  REQUIRE(exec::compile_baseline(dir / "ref.f90", dir / "ref", target, backend, {dir.path(), "ref"}).succeeded());

  auto build = [&](f2k::testing::ToyFault fault, const std::string& name) {
    const auto src = functest::inject_capture(f2k::testing::with_fault(f2k::testing::toy_source(), fault), spec);
    text::write_file(dir / (name + ".cpp"), src);
    REQUIRE(exec::build_program(dir / (name + ".cpp"), dir / name, target, backend, {dir.path(), name}).succeeded());
    return dir / name;
  };
  const std::vector<std::int64_t> sizes{4, 9};

  auto good = functest::run_equivalence({build(f2k::testing::ToyFault::none, "good"), dir / "ref", sizes, 1,
                                         spec.output_csv_name, 1e-6, functest::CompareRule::elementwise_tol,
                                         dir / "eq_good"},
                                        target, backend);
  CHECK(good.pass);
  CHECK(good.per_size.size() == 2);
  CHECK(good.to_json()["verdict"] == "pass");

  auto bad = functest::run_equivalence({build(f2k::testing::ToyFault::functionality, "bad"), dir / "ref", sizes, 1,
                                        spec.output_csv_name, 1e-6, functest::CompareRule::elementwise_tol,
                                        dir / "eq_bad"},
                                       target, backend);
  CHECK_FALSE(bad.pass);
  CHECK(bad.to_json()["verdict"] == "fail");
  CHECK(bad.diagnosis().find("n = 4") != std::string::npos);

  // An uninstrumented translation writes no CSV: a failed size, not an exception.
  text::write_file(dir / "plain.cpp", f2k::testing::toy_source());
  REQUIRE(exec::build_program(dir / "plain.cpp", dir / "plain", target, backend, {dir.path(), "plain"}).succeeded());
  auto missing = functest::run_equivalence({dir / "plain", dir / "ref", sizes, 1, spec.output_csv_name, 1e-6,
                                            functest::CompareRule::elementwise_tol, dir / "eq_plain"},
                                           target, backend);
  CHECK_FALSE(missing.pass);

  // A reference program that writes nothing is an infrastructure problem.
  CHECK_THROWS_AS(functest::run_equivalence({dir / "good", dir / "plain", sizes, 1, spec.output_csv_name, 1e-6,
                                             functest::CompareRule::elementwise_tol, dir / "eq_noref"},
                                            target, backend),
                  MissingCsv);
}

TEST_CASE("the Fortran toy and its Kokkos translation agree", "[functest][gfortran]") {
  if (exec::run_shell("command -v gfortran", {}).exit_status != 0) SKIP("gfortran is not installed");
  TempDir dir;
  auto target = f2k::testing::gxx_target();
  target.fortran_compile_command = "gfortran -O1 {source} -o {exe}";
  exec::LocalBackend backend(target);
  const auto spec = functest::default_injection_spec(KernelId::DGEMM);
  REQUIRE(exec::compile_baseline(f2k::testing::fixtures_dir() / "toy" / "dgemm.f90", dir / "ref", target, backend,
                                 {dir.path(), "ref"})
              .succeeded());
  text::write_file(dir / "k.cpp", functest::inject_capture(f2k::testing::toy_source(), spec));
  REQUIRE(exec::build_program(dir / "k.cpp", dir / "k", target, backend, {dir.path(), "k"}).succeeded());
  const auto r = functest::run_equivalence({dir / "k", dir / "ref", {3, 8}, 1, spec.output_csv_name, 1e-9,
                                            functest::CompareRule::elementwise_tol, dir / "eq"},
                                           target, backend);
  CHECK(r.pass);
}
