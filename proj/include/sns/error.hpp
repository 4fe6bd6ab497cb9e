#pragma once

#include <stdexcept>
#include <string>

namespace sns {

/// Base class for every error raised by the solver library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A non-finite value was met while transforming or stepping a field.
/// The integrator turns this into a diverged state instead of aborting.
class DivergedError : public Error {
public:
    using Error::Error;
};

/// Configuration text could not be turned into a valid RunConfig.
class ConfigError : public Error {
public:
    ConfigError(const std::string& key, int line, const std::string& what)
        : Error(format(key, line, what)), key_(key), line_(line) {}

    const std::string& key() const { return key_; }
    int line() const { return line_; }

private:
    static std::string format(const std::string& key, int line, const std::string& what) {
        std::string msg = what;
        if (!key.empty()) msg += " (key '" + key + "'";
        if (!key.empty() && line > 0) msg += ", line " + std::to_string(line);
        if (!key.empty()) msg += ")";
        return msg;
    }

    std::string key_;
    int line_ = 0;
};

/// Missing or malformed on-disk artifact (snapshot, ledger, report).
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace sns
