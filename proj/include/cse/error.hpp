#pragma once

#include "cse/source_span.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace cse {

/// Syntax error raised by the reader. Always carries the offending span.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& message, SourceSpan span);

    const std::string& message() const { return message_; }
    const SourceSpan& span() const { return span_; }

private:
    std::string message_;
    SourceSpan span_;
};

enum class error_kind {
    unbound_variable,
    not_callable,
    arity_mismatch,
    type_error,
    division_by_zero,
    user_error,
    step_limit_exceeded,
    no_rule_applies,
};

const char* to_string(error_kind kind);

/// Thrown by primitives. The machine rethrows it as an eval_error annotated
/// with the step number and the span of the responsible call.
class primitive_error : public std::runtime_error {
public:
    primitive_error(error_kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    error_kind kind() const { return kind_; }

private:
    error_kind kind_;
};

/// Run-time failure of the machine. Aborts the run.
class eval_error : public std::runtime_error {
public:
    eval_error(error_kind kind, const std::string& message, std::uint64_t step,
               std::optional<SourceSpan> span = std::nullopt);

    error_kind kind() const { return kind_; }
    const std::string& message() const { return message_; }
    std::uint64_t step() const { return step_; }
    const std::optional<SourceSpan>& span() const { return span_; }

private:
    error_kind kind_;
    std::string message_;
    std::uint64_t step_;
    std::optional<SourceSpan> span_;
};

}  // namespace cse
