#pragma once

#include "cse/state.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cse {

using Json = nlohmann::ordered_json;

inline constexpr int trace_format_version = 1;

/// Canonical JSON rendering of one state: frames in EnvId order, bindings in
/// insertion order, pairs in PairId order. Control and stash are listed head
/// first, matching the `v:S` notation.
Json snapshot(const State& state);

/// Descriptor for a single run-time value, as used inside snapshots.
Json describe_value(const Value& value, const PairHeap& heap);

Json describe_span(const SourceSpan& span);

struct TraceDocument {
    std::string source;
    MachineConfig config;
    std::vector<Json> states;
    Json outcome;

    Json to_json() const;
    /// Compact UTF-8 JSON followed by a newline. Byte-stable for a given
    /// source and config.
    std::string serialize() const;
};

/// Runs `source` and snapshots every state. Runtime errors and the step limit
/// end the trace with an error/step_limit outcome instead of throwing; the
/// erroring state is the last one recorded. Throws parse_error.
TraceDocument record(std::string_view source, const MachineConfig& config);

/// Recomputes state `k` from the start. Throws std::out_of_range when the run
/// has fewer than k + 1 states, and parse_error for bad source.
State replay_to(std::string_view source, const MachineConfig& config, std::uint64_t k);

}  // namespace cse
