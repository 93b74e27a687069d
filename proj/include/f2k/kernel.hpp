#pragma once

#include <string>
#include <string_view>

namespace f2k {

enum class KernelId { CG, EP, MG, FT, DGEMM, custom };

std::string_view to_string(KernelId id);

/// Accepts the canonical names case-insensitively; throws UnknownKernel.
KernelId parse_kernel_id(std::string_view name);

}  // namespace f2k
