#include "f2k/perf/flops.hpp"

#include <bit>
#include <cmath>

#include <boost/math/constants/constants.hpp>

#include "f2k/errors.hpp"

namespace f2k::perf {
namespace {

BigInt big(std::uint64_t v) { return BigInt(v); }

FlopCount cg_flops(std::uint64_t n, std::uint64_t r) {
  const BigInt nn = big(n);
  const BigInt nnz = 3 * nn - 2;
  const BigInt per_rep = 2 * nnz + 3 * nn + kCgMaxIterations * (2 * nnz + 10 * nn);
  FlopCount c;
  c.integral = big(r) * per_rep + cg_setup_flops(n);
  return c;
}

FlopCount ep_flops(std::uint64_t n, std::uint64_t r, const EpOptions& opt) {
  // 19 * 2^(n+1) for the RNG stream; 8 * (pi/4) * 2^n = pi * 2^(n+1) for the
  // accepted-pair arithmetic.
  const BigInt pairs_pow = BigInt(1) << n;
  FlopCount c;
  c.integral = big(r) * 19 * (pairs_pow << 1);
  c.pi_multiple = BigRational(big(r) * (pairs_pow << 1));
  if (opt.include_transcendentals) {
    // (pi/4) 2^n accepted pairs per repetition, each charged the surcharge.
    c.pi_multiple += BigRational(big(r) * opt.transcendental_flops_per_pair * pairs_pow, BigInt(4));
  }
  return c;
}

FlopCount ft_flops(std::uint64_t n, std::uint64_t r) {
  // 5 n^3 log2(n^3) = 15 n^3 log2(n)
  const BigInt coeff = big(r) * 15 * big(n) * big(n) * big(n);
  FlopCount c;
  if (std::has_single_bit(n)) {
    c.integral = coeff * static_cast<unsigned>(std::countr_zero(n));
  } else {
    c.log2_multiple = coeff;
    c.log2_argument = n;
  }
  return c;
}

}  // namespace

Real FlopCount::value() const {
  Real v(integral);
  if (pi_multiple != 0) {
    v += Real(boost::multiprecision::numerator(pi_multiple)) / Real(boost::multiprecision::denominator(pi_multiple)) *
         boost::math::constants::pi<Real>();
  }
  if (log2_multiple != 0) v += Real(log2_multiple) * boost::multiprecision::log2(Real(log2_argument));
  return v;
}

double FlopCount::to_double() const { return value().convert_to<double>(); }

std::string FlopCount::to_string() const {
  std::string s = integral.str();
  if (pi_multiple != 0) s += " + (" + pi_multiple.str() + ")*pi";
  if (log2_multiple != 0) s += " + " + log2_multiple.str() + "*log2(" + std::to_string(log2_argument) + ")";
  return s;
}

FlopCount FlopCount::scaled(const BigInt& factor) const {
  FlopCount c = *this;
  c.integral *= factor;
  c.pi_multiple *= BigRational(factor);
  c.log2_multiple *= factor;
  if (c.log2_multiple == 0) c.log2_argument = 1;
  return c;
}

BigInt cg_setup_flops(std::uint64_t n) {
  const BigInt nn = big(n);
  return 2 * (3 * nn - 2) + 3 * nn;
}

bool has_flop_model(KernelId kernel) { return kernel != KernelId::custom; }

FlopCount flops(KernelId kernel, std::uint64_t n, std::uint64_t repetitions, const EpOptions& ep) {
  if (n < 1 || repetitions < 1) throw PreconditionViolation("flops requires n >= 1 and r >= 1");
  switch (kernel) {
    case KernelId::CG: return cg_flops(n, repetitions);
    case KernelId::EP: return ep_flops(n, repetitions, ep);
    case KernelId::MG: {
      FlopCount c;
      c.integral = big(repetitions) * 576 * big(n) * big(n) * big(n);
      return c;
    }
    case KernelId::FT: return ft_flops(n, repetitions);
    case KernelId::DGEMM: {
      FlopCount c;
      c.integral = big(repetitions) * (2 * big(n) * big(n) * big(n) + 3 * big(n) * big(n));
      return c;
    }
    case KernelId::custom: break;
  }
  throw UnknownKernel("no closed-form FLOP model for kernel '" + std::string(to_string(kernel)) + "'");
}

double gflops(const FlopCount& count, double seconds) {
  if (!(seconds > 0.0) || !std::isfinite(seconds)) throw NonPositiveTime("kernel time must be positive");
  return (count.value() / (Real(seconds) * Real(1e9))).convert_to<double>();
}

double gflops(KernelId kernel, std::uint64_t n, std::uint64_t i_hat, std::uint64_t repetitions, double seconds) {
  if (!(seconds > 0.0) || !std::isfinite(seconds)) throw NonPositiveTime("kernel time must be positive");
  if (i_hat < 1) throw PreconditionViolation("effective iteration count must be >= 1");
  return gflops(flops(kernel, n, repetitions).scaled(BigInt(i_hat)), seconds);
}

}  // namespace f2k::perf
