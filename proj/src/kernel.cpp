#include "f2k/kernel.hpp"

#include "f2k/errors.hpp"
#include "f2k/text.hpp"

namespace f2k {

std::string_view to_string(KernelId id) {
  switch (id) {
    case KernelId::CG: return "CG";
    case KernelId::EP: return "EP";
    case KernelId::MG: return "MG";
    case KernelId::FT: return "FT";
    case KernelId::DGEMM: return "DGEMM";
    case KernelId::custom: return "custom";
  }
  return "custom";
}

KernelId parse_kernel_id(std::string_view name) {
  const std::string lower = text::to_lower(text::trim(name));
  if (lower == "cg") return KernelId::CG;
  if (lower == "ep") return KernelId::EP;
  if (lower == "mg") return KernelId::MG;
  if (lower == "ft") return KernelId::FT;
  if (lower == "dgemm") return KernelId::DGEMM;
  if (lower == "custom") return KernelId::custom;
  throw UnknownKernel("unknown kernel '" + std::string(name) + "'");
}

}  // namespace f2k
