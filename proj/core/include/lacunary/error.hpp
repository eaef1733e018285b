#pragma once

#include <stdexcept>
#include <string>

namespace lacunary {

/// Broad failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
    Identifier,    // unknown catalog / schedule / class name
    Parameter,     // missing or invalid parameter
    Validation,    // structurally invalid input (schedule, file header, spec)
    Syntax,        // run-spec syntax error
    Range,         // index outside the declared domain, integer overflow
    Domain,        // function undefined at a sequence value
    Truncation,    // Abel tail bound not met within n_max
    Construction,  // proof construction infeasible
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace lacunary
