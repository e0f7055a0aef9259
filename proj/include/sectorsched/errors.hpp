#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sectorsched {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: out-of-range angles, unknown task ids, bad flags.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// No schedule exists: zero capacity in a task's whole field of view,
/// or a task longer than every sector it may run in.
class InfeasibleScenario : public Error {
public:
    using Error::Error;
};

class LimitsExceeded : public Error {
public:
    using Error::Error;
};

/// Every schedule needs more rotations than the search allows.
class HorizonExceeded : public LimitsExceeded {
public:
    using LimitsExceeded::LimitsExceeded;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::string message, std::optional<std::size_t> line, std::string field)
        : Error(format(message, line, field)), line_(line), field_(std::move(field)) {}

    std::optional<std::size_t> line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string format(const std::string& message, std::optional<std::size_t> line,
                              const std::string& field) {
        std::string out;
        if (line) out += "line " + std::to_string(*line) + ": ";
        if (!field.empty()) out += field + ": ";
        return out + message;
    }

    std::optional<std::size_t> line_;
    std::string field_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations)
        : Error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "validation failed";
        for (const auto& s : v) out += "\n  " + s;
        return out;
    }

    std::vector<std::string> violations_;
};

}  // namespace sectorsched
