// errors.hpp: exception types that map onto CLI exit codes

#pragma once

#include <stdexcept>
#include <string>

namespace chsqb {

// Rejected configuration; `key` names the offending setting.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

// A numerical invariant (unitarity, energy bounds, ...) failed at run time.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace chsqb
