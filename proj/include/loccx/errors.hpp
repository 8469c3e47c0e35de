#pragma once

#include <stdexcept>
#include <string>

namespace loccx {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input documents (JSON shape, missing fields, bad types).
class parse_error : public error {
public:
    explicit parse_error(const std::string& what) : error(what) {}
};

// Structurally well-formed input that violates a semantic invariant
// (non-orthogonal state set, bad dimensions, invalid tree, ...).
class validation_error : public error {
public:
    explicit validation_error(const std::string& what) : error(what) {}
};

// Protocol construction failed. When `instance_json` is non-empty it holds a
// serialized copy of the offending state set for external scrutiny.
class synthesis_error : public error {
public:
    synthesis_error(const std::string& what, std::string instance_json = {})
        : error(what), instance_json_(std::move(instance_json)) {}

    const std::string& instance_json() const noexcept { return instance_json_; }

private:
    std::string instance_json_;
};

} // namespace loccx
