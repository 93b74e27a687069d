#pragma once

#include <string>
#include <string_view>

#include "f2k/kernel.hpp"

namespace f2k::functest {

inline constexpr std::string_view kCaptureBegin = "// >>> functionality-capture begin";
inline constexpr std::string_view kCaptureEnd = "// <<< functionality-capture end";

/// Where and what to inject into a translated program.
struct InjectionSpec {
  KernelId kernel = KernelId::custom;
  std::string anchor = "Kokkos::fence()";  // must occur exactly once outside // comments
  std::string capture_snippet;  // statements only; markers are added on injection
  std::string output_csv_name = "functionality_output.csv";
};

/// Name of the result View dumped for each kernel.
std::string_view default_capture_array(KernelId kernel);

/// Statements that copy `array` to the host and write every element of its
/// span, one per line with 17 significant digits, to `csv_name`.
std::string capture_snippet(std::string_view array, std::string_view csv_name);

/// Spec for `kernel`, dumping `array` (default_capture_array when empty).
InjectionSpec default_injection_spec(KernelId kernel, std::string_view array = {});

/// Adds a marked include block at the top of `source` and the marked snippet
/// right after the anchor line, indented like it. Throws AnchorMissing,
/// AnchorAmbiguous, or PreconditionViolation when markers are already present.
std::string inject_capture(std::string_view source, const InjectionSpec& spec);

/// Removes every marked block; strip_injection(inject_capture(s, spec)) == s.
/// Throws UnbalancedMarkers.
std::string strip_injection(std::string_view source);

bool has_capture_markers(std::string_view source);

}  // namespace f2k::functest
