#pragma once

#include "cse/env.hpp"
#include "cse/value.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cse {

/// The transition rules. The head of control, and for CALL the callee under
/// the arguments, selects exactly one.
enum class rule {
    decompose_call,
    construct_closure,
    decompose_define,
    decompose_set,
    decompose_if,
    decompose_sequence,
    decompose_begin,
    evaluate_primitive,
    lookup_variable,
    apply_primitive,
    apply_closure,
    apply_callcc,
    apply_continuation,
    restore_environment,
    assign,
    branch_consequent,
    branch_alternative,
    remove_unused,
};

struct MachineConfig {
    /// Maximum number of states a run may generate, counting the initial one.
    std::uint64_t step_limit = 200000;
    /// Skip pushing ENV when the caller's environment would be restored
    /// immediately anyway (control empty or already headed by ENV).
    bool proper_tail_calls = false;
};

/// The (control, stash, environment) triple plus the stores it points into.
/// Control and stash are stored bottom-first: `back()` is the head/top.
struct State {
    std::vector<ControlItem> control;
    std::vector<Value> stash;
    EnvId current_env;
    EnvStore envs;
    PairHeap pairs;
    std::uint64_t step_number = 0;
    /// Rule that produced this state; absent for the injected state.
    std::optional<rule> last_rule;
    std::string output;
    std::uint32_t next_closure_id = 0;
    std::uint32_t next_continuation_id = 0;

    bool is_final() const { return control.empty(); }
    const ControlItem& head() const { return control.back(); }
};

}  // namespace cse
