#pragma once

#include <stdexcept>
#include <string>

namespace heun_air {

// Base of every structured error raised by the library. kind() names the
// concrete category so callers (and the CLI) can report it uniformly.
class HeunError : public std::runtime_error {
public:
    explicit HeunError(const std::string& msg) : std::runtime_error(msg) {}
    virtual const char* kind() const noexcept { return "HeunError"; }
};

#define HEUN_AIR_ERROR(Name)                                              \
    class Name : public HeunError {                                       \
    public:                                                               \
        explicit Name(const std::string& msg) : HeunError(msg) {}         \
        const char* kind() const noexcept override { return #Name; }      \
    }

HEUN_AIR_ERROR(PoleError);
HEUN_AIR_ERROR(ParamError);
HEUN_AIR_ERROR(ConvergenceError);
HEUN_AIR_ERROR(DomainError);
HEUN_AIR_ERROR(BranchError);
HEUN_AIR_ERROR(DegreeError);
HEUN_AIR_ERROR(DegenerateError);
HEUN_AIR_ERROR(ZeroCoefficientError);
HEUN_AIR_ERROR(RemovablePointError);
HEUN_AIR_ERROR(StiffnessError);
HEUN_AIR_ERROR(SchemaError);
HEUN_AIR_ERROR(NonFiniteError);

#undef HEUN_AIR_ERROR

}  // namespace heun_air
