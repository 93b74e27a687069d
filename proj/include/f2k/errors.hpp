#pragma once

#include <stdexcept>
#include <string>

namespace f2k {

/// Base of every error raised by the pipeline library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define F2K_DEFINE_ERROR(Name, Base)   \
  class Name : public Base {           \
   public:                             \
    using Base::Base;                  \
  }

// Caller broke an operation's precondition (empty prompt, n < 1, ...).
F2K_DEFINE_ERROR(PreconditionViolation, Error);
F2K_DEFINE_ERROR(IoFailure, Error);
F2K_DEFINE_ERROR(ConfigInvalid, Error);
F2K_DEFINE_ERROR(MissingData, Error);

// llm-gateway
F2K_DEFINE_ERROR(ProviderUnavailable, Error);
// Connection-level failure; retried by the gateway like RateLimited.
F2K_DEFINE_ERROR(TransportError, ProviderUnavailable);
F2K_DEFINE_ERROR(RateLimited, ProviderUnavailable);
F2K_DEFINE_ERROR(MalformedResponse, Error);

// Template expansion
F2K_DEFINE_ERROR(UnresolvedPlaceholder, Error);
F2K_DEFINE_ERROR(MissingContextKey, UnresolvedPlaceholder);

// agent-roles
F2K_DEFINE_ERROR(NoChangeProduced, Error);

// exec-backend: infrastructure failures, never a program's own failure.
F2K_DEFINE_ERROR(ExecutorFailure, Error);
F2K_DEFINE_ERROR(Timeout, ExecutorFailure);
F2K_DEFINE_ERROR(SchedulerUnavailable, ExecutorFailure);

// functional-test
F2K_DEFINE_ERROR(AnchorMissing, Error);
F2K_DEFINE_ERROR(AnchorAmbiguous, Error);
F2K_DEFINE_ERROR(UnbalancedMarkers, Error);
F2K_DEFINE_ERROR(MissingCsv, Error);
F2K_DEFINE_ERROR(LengthMismatch, Error);
F2K_DEFINE_ERROR(ParseError, Error);

// perf-model
F2K_DEFINE_ERROR(UnknownKernel, Error);
F2K_DEFINE_ERROR(NonPositiveTime, Error);

#undef F2K_DEFINE_ERROR

/// A stage kept failing until its fix budget ran out.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(std::string stage, int version)
      : Error("fix budget exhausted in stage '" + stage + "' of version v" + std::to_string(version)),
        stage_(std::move(stage)),
        version_(version) {}

  const std::string& stage() const noexcept { return stage_; }
  int version() const noexcept { return version_; }

 private:
  std::string stage_;
  int version_;
};

}  // namespace f2k
