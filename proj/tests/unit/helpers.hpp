#pragma once

#include "cse/machine.hpp"
#include "cse/printer.hpp"
#include "cse/reader.hpp"

#include <string>
#include <string_view>

inline std::string eval_to_string(std::string_view source, const cse::MachineConfig& config = {}) {
    const cse::RunOutcome r = cse::run(cse::parse_program(source), config);
    return cse::write_value(r.value, r.final_state.pairs);
}

inline std::string output_of(std::string_view source) {
    return cse::run(cse::parse_program(source), cse::MachineConfig{}).final_state.output;
}
