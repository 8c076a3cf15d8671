#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace colsel {

/// Library error with a stable machine-readable code ("ZeroColumn",
/// "PoleProximity", ...) next to the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
    throw Error(std::move(code), message);
}

}  // namespace colsel
