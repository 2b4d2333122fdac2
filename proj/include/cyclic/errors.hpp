#pragma once

#include <stdexcept>
#include <string>

namespace cyclic {

// Validation errors map to CLI exit code 2, numerical-contract failures to 3.
enum class ErrorCategory { validation, numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

#define CYCLIC_DEFINE_ERROR(Name, Category)                                  \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what)                               \
            : Error(ErrorCategory::Category, #Name ": " + what) {}           \
    }

// g_N = Omega = 0: the polariton basis is undefined.
CYCLIC_DEFINE_ERROR(DegenerateModel, validation);
CYCLIC_DEFINE_ERROR(BadCutoff, validation);
// A creation monomial would push an occupation past its cutoff.
CYCLIC_DEFINE_ERROR(CutoffOverflow, validation);
CYCLIC_DEFINE_ERROR(IrrationalRatio, validation);
CYCLIC_DEFINE_ERROR(NotPhotonOnly, validation);
CYCLIC_DEFINE_ERROR(SectorMissing, validation);
CYCLIC_DEFINE_ERROR(InvalidArgument, validation);
CYCLIC_DEFINE_ERROR(QuadratureFailure, numerical);
CYCLIC_DEFINE_ERROR(IntegratorFailure, numerical);

#undef CYCLIC_DEFINE_ERROR

}  // namespace cyclic
