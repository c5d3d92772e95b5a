#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fptm {

// Base for domain errors. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define FPTM_DEFINE_ERROR(Name)                                              \
    struct Name : Error {                                                    \
        explicit Name(const std::string& m) : Error(#Name, m) {}             \
    }

FPTM_DEFINE_ERROR(RealityViolation);
FPTM_DEFINE_ERROR(SmallDivisorBreach);
FPTM_DEFINE_ERROR(NonSaturatedModule);
FPTM_DEFINE_ERROR(ResidualResonance);
FPTM_DEFINE_ERROR(ZeroDivisor);
FPTM_DEFINE_ERROR(NotInvertible);
FPTM_DEFINE_ERROR(NonMonotone);
FPTM_DEFINE_ERROR(AllOrdersFlat);
FPTM_DEFINE_ERROR(NoZero);
FPTM_DEFINE_ERROR(DegenerateZero);
FPTM_DEFINE_ERROR(NotContracting);
FPTM_DEFINE_ERROR(HyperbolicityFail);
FPTM_DEFINE_ERROR(SolvabilityFail);
FPTM_DEFINE_ERROR(NonDegeneracyFail);
FPTM_DEFINE_ERROR(SignChange);
FPTM_DEFINE_ERROR(PinchingFail);
FPTM_DEFINE_ERROR(FiberInversionFail);
FPTM_DEFINE_ERROR(Diverged);
FPTM_DEFINE_ERROR(BudgetExceeded);

#undef FPTM_DEFINE_ERROR

// Malformed configs and inputs. The CLI maps these to exit code 3.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace fptm
