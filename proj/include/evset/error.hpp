#pragma once

#include <stdexcept>
#include <string>

namespace evset {

enum class ErrorCode {
    InvalidArgument,
    InvalidVertex,
    SupportCapExceeded,
    ResourceCapExceeded,
    NotNormalized,
    EmptySet,
    UncertifiedConstant,
    BadInput,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidArgument:    return "invalid_argument";
        case ErrorCode::InvalidVertex:      return "invalid_vertex";
        case ErrorCode::SupportCapExceeded: return "support_cap_exceeded";
        case ErrorCode::ResourceCapExceeded:return "resource_cap_exceeded";
        case ErrorCode::NotNormalized:      return "not_normalized";
        case ErrorCode::EmptySet:           return "empty_set";
        case ErrorCode::UncertifiedConstant:return "uncertified_constant";
        case ErrorCode::BadInput:           return "bad_input";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace evset
