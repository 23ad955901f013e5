#pragma once

#include "cse/env.hpp"
#include "cse/value.hpp"

#include <string>
#include <string_view>

namespace cse {

/// Double-quoted string literal with escapes.
std::string write_string(std::string_view text);

/// External representation: `(a b . c)` for pairs, `#<procedure f>` for
/// closures, `#<continuation>`, `#<unspecified>`. Cyclic structure prints
/// `...` at the revisited cell.
std::string write_value(const Value& value, const PairHeap& heap);

/// Like write_value, but strings print without quotes.
std::string display_value(const Value& value, const PairHeap& heap);

}  // namespace cse
