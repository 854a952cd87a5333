#pragma once

#include <stdexcept>
#include <string>

namespace brandsim {

/// Invalid parameters or violated preconditions. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& message) : std::runtime_error(message) {}

    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key + ": " + message), key_(std::move(key)) {}

    /// Offending config key, empty when the error is not tied to one.
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Unreadable input or unwritable output. Maps to CLI exit code 3.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Broken internal invariant (e.g. shape mismatch between profiles).
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace brandsim
