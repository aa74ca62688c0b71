#pragma once

#include <stdexcept>
#include <string>

namespace ejmnet {

// Exit-code contract: usage 1, validity/domain 2, verification 3.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ValidityError : std::runtime_error {
    explicit ValidityError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : ValidityError {
    explicit DomainError(const std::string& msg) : ValidityError(msg) {}
};

struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& msg) : std::runtime_error(msg) {}
};

inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const UsageError*>(&e)) return 1;
    if (dynamic_cast<const ValidityError*>(&e)) return 2;
    if (dynamic_cast<const VerificationError*>(&e)) return 3;
    return 2;
}

}
