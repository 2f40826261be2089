#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ldp {

enum class ErrorKind {
    InvalidRate,
    MalformedModel,
    InvalidTime,
    InvalidParameter,
    DegenerateModel,
    InfeasibleSpeed,
    NumericalFailure,
    IntegrationFailure,
    InfeasibleBridge,
    InsufficientSampling,
    InternalError,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers dispatch on kind().
class LdpError : public std::runtime_error {
public:
    LdpError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidRate: return "InvalidRate";
    case ErrorKind::MalformedModel: return "MalformedModel";
    case ErrorKind::InvalidTime: return "InvalidTime";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::DegenerateModel: return "DegenerateModel";
    case ErrorKind::InfeasibleSpeed: return "InfeasibleSpeed";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::IntegrationFailure: return "IntegrationFailure";
    case ErrorKind::InfeasibleBridge: return "InfeasibleBridge";
    case ErrorKind::InsufficientSampling: return "InsufficientSampling";
    case ErrorKind::InternalError: return "InternalError";
    }
    return "Unknown";
}

} // namespace ldp
