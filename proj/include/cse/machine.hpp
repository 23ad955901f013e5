#pragma once

#include "cse/state.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace cse {

/// Human-readable rule name, e.g. "Apply closure".
const char* rule_name(rule r);

std::span<const rule> all_rules();

/// Initial state: the program as one control item (a Sequence when it has
/// several expressions), empty stash, global environment.
State inject(const std::vector<ExprPtr>& program);

/// Classifies a non-final state. Throws eval_error(no_rule_applies) for
/// malformed states, which inject/step never produce.
rule rule_for(const State& state);

/// Applies one rule in place and returns it. On eval_error the state is left
/// partially updated and must be discarded.
rule advance(State& state, const MachineConfig& config);

/// Installs `cont` as the current control/stash/environment, with `args`
/// pushed in order onto the captured stash. Stores are left untouched.
void apply_continuation(State& state, const Continuation& cont, std::span<const Value> args);

struct Next {
    State state;
    rule applied;
};

struct Final {
    Value value;
};

using StepResult = std::variant<Next, Final>;

/// Final{value} for a final state; otherwise the successor state.
StepResult step(State state, const MachineConfig& config);

/// The value a final state carries: its only stash entry, or Unspecified for
/// an empty program.
Value final_value(const State& state);

/// Called for every state of a run, starting with the injected one. `applied`
/// is the rule that produced the state, absent for state 0.
using StateObserver = std::function<void(const State& state, std::optional<rule> applied)>;

/// Steps `state` until it is final. Throws eval_error for runtime errors and
/// for step_limit_exceeded once another state would exceed the limit.
void drive(State& state, const MachineConfig& config, const StateObserver& observer = {});

struct RunOutcome {
    Value value;
    std::uint64_t steps_taken = 0;
    State final_state;
};

RunOutcome run(const std::vector<ExprPtr>& program, const MachineConfig& config);

}  // namespace cse
