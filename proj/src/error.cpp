#include "cse/error.hpp"

#include <algorithm>

namespace cse {

std::string to_string(const SourceSpan& span) {
    return std::to_string(span.start_line) + ":" + std::to_string(span.start_col);
}

SourceSpan cover(const SourceSpan& first, const SourceSpan& last) {
    SourceSpan out = first;
    if (last.end_offset > out.end_offset) {
        out.end_offset = last.end_offset;
        out.end_line = last.end_line;
        out.end_col = last.end_col;
    }
    if (last.start_offset < out.start_offset) {
        out.start_offset = last.start_offset;
        out.start_line = last.start_line;
        out.start_col = last.start_col;
    }
    return out;
}

parse_error::parse_error(const std::string& message, SourceSpan span)
    : std::runtime_error(to_string(span) + ": " + message), message_(message), span_(span) {}

const char* to_string(error_kind kind) {
    switch (kind) {
    case error_kind::unbound_variable: return "UnboundVariable";
    case error_kind::not_callable: return "NotCallable";
    case error_kind::arity_mismatch: return "ArityMismatch";
    case error_kind::type_error: return "TypeError";
    case error_kind::division_by_zero: return "DivisionByZero";
    case error_kind::user_error: return "UserError";
    case error_kind::step_limit_exceeded: return "StepLimitExceeded";
    case error_kind::no_rule_applies: return "NoRuleApplies";
    }
    return "?";
}

eval_error::eval_error(error_kind kind, const std::string& message, std::uint64_t step,
                       std::optional<SourceSpan> span)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      message_(message),
      step_(step),
      span_(span) {}

}  // namespace cse
