#pragma once

#include <stdexcept>
#include <string>

namespace wl {

// Domain errors map to exit status 1, resource errors to 2.
enum class ErrorKind {
    Structural,    // mismatched bases, lengths, shapes
    Unsupported,   // operation not defined for this input class
    Precondition,  // input violates a documented precondition
    Parse,         // malformed text or JSON
    Resource       // enumeration or storage budget exceeded
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& msg)
        : std::runtime_error(msg), kind_(kind), code_(std::move(code)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& code() const { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& code, const std::string& msg) {
    throw Error(k, code, msg);
}

inline const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Structural: return "structural";
        case ErrorKind::Unsupported: return "unsupported";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Resource: return "resource";
    }
    return "unknown";
}

}  // namespace wl
