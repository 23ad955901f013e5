#pragma once

#include "cse/state.hpp"

#include <string>

namespace cse {

// Plain-text rendering of machine states in the `(control, stash, E)`
// notation: items joined by `:` and terminated by `ε`, heads first.
// Environments appear by symbolic id (E0, E1, ...), primitives by their
// display name (`times` for `*`), lists as `(1:2:ε)`.

std::string render_item(const ControlItem& item);
std::string render_value(const Value& value, const PairHeap& heap);
std::string render_control(const std::vector<ControlItem>& control);
std::string render_stash(const std::vector<Value>& stash, const PairHeap& heap);

/// One derivation line: `(control, stash, En)`.
std::string render_state(const State& state);

/// Frame table listing every frame with its parent and bindings. The global
/// frame's primitive bindings are summarized by count.
std::string render_frames(const State& state);

}  // namespace cse
