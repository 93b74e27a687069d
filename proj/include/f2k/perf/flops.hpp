#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "f2k/kernel.hpp"

namespace f2k::perf {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using Real = boost::multiprecision::cpp_bin_float_50;

/// An exact closed-form work count of the shape
///   integral + pi_multiple * pi + log2_multiple * log2(log2_argument).
///
/// EP's accept rate carries pi and FT carries log2(n^3), which is irrational
/// unless n is a power of two; keeping those factors symbolic lets two
/// independent evaluations be compared exactly. When n is a power of two the
/// logarithm is folded into `integral` so the representation is canonical.
struct FlopCount {
  BigInt integral = 0;
  BigRational pi_multiple = 0;
  BigInt log2_multiple = 0;
  std::uint64_t log2_argument = 1;

  Real value() const;
  double to_double() const;
  std::string to_string() const;

  FlopCount scaled(const BigInt& factor) const;
  friend bool operator==(const FlopCount&, const FlopCount&) = default;
};

struct EpOptions {
  bool include_transcendentals = false;
  /// FLOPs charged per accepted pair when transcendentals are included:
  /// one log and one sqrt, 20 FLOPs each.
  std::uint32_t transcendental_flops_per_pair = 40;
};

/// Closed-form FLOP count for `repetitions` kernel repetitions at size `n`.
///   CG    r(2nnz + 3n + c_max(2nnz + 10n)) + (2nnz + 3n), nnz = 3n - 2, c_max = 25
///   EP    r(19 * 2^(n+1) + 8 (pi/4) 2^n)       (n is log2 of the pair count)
///   MG    r * 576 n^3
///   FT    r * 5 n^3 log2(n^3)
///   DGEMM r(2n^3 + 3n^2)                        (alpha = 1, beta = 2)
/// Throws UnknownKernel for `custom`, PreconditionViolation for n or r < 1.
FlopCount flops(KernelId kernel, std::uint64_t n, std::uint64_t repetitions, const EpOptions& ep = {});

inline constexpr std::uint64_t kCgMaxIterations = 25;

/// The additive CG term (2nnz + 3n) that does not scale with repetitions.
BigInt cg_setup_flops(std::uint64_t n);

/// GFLOPS = count / (seconds * 1e9). Throws NonPositiveTime.
double gflops(const FlopCount& count, double seconds);

/// Effective count i_hat * flops(n, r): i_hat program executions of r
/// repetitions each, timed together as `seconds`.
double gflops(KernelId kernel, std::uint64_t n, std::uint64_t i_hat, std::uint64_t repetitions, double seconds);

bool has_flop_model(KernelId kernel);

}  // namespace f2k::perf
