#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace cse {

/// Half-open byte range [start_offset, end_offset) into a source text, with
/// 1-based line/column positions for both ends.
struct SourceSpan {
    std::size_t start_offset = 0;
    std::size_t end_offset = 0;
    std::size_t start_line = 1;
    std::size_t start_col = 1;
    std::size_t end_line = 1;
    std::size_t end_col = 1;

    bool contains(const SourceSpan& inner) const {
        return start_offset <= inner.start_offset && inner.end_offset <= end_offset;
    }

    std::string_view text_in(std::string_view source) const {
        return source.substr(start_offset, end_offset - start_offset);
    }

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

/// `line:col` of the span start.
std::string to_string(const SourceSpan& span);

/// Smallest span covering both arguments.
SourceSpan cover(const SourceSpan& first, const SourceSpan& last);

}  // namespace cse
