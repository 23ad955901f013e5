#include "cse/trace.hpp"

#include "cse/error.hpp"
#include "cse/machine.hpp"
#include "cse/prelude.hpp"
#include "cse/printer.hpp"
#include "cse/reader.hpp"

#include <stdexcept>

namespace cse {

namespace {

Json describe_control(const std::vector<ControlItem>& control, const PairHeap& heap);
Json describe_stash(const std::vector<Value>& stash, const PairHeap& heap);

Json describe_instruction(const Instruction& instr) {
    Json out;
    out["kind"] = "instruction";
    std::visit(
        [&](const auto& op) {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, Asgn>) {
                out["opcode"] = "ASGN";
                out["params"] = Json::array({op.name});
            } else if constexpr (std::is_same_v<T, Call>) {
                out["opcode"] = "CALL";
                out["params"] = Json::array({op.arity});
            } else if constexpr (std::is_same_v<T, EnvRestore>) {
                out["opcode"] = "ENV";
                out["params"] = Json::array();
                out["env_ref"] = op.env.index;
            } else if constexpr (std::is_same_v<T, Branch>) {
                out["opcode"] = "BRANCH";
                out["params"] = Json::array({unparse(*op.consequent), unparse(*op.alternative)});
            } else {
                out["opcode"] = "POP";
                out["params"] = Json::array();
            }
        },
        instr.op);
    out["span"] = describe_span(instr.origin);
    return out;
}

Json describe_item(const ControlItem& item) {
    if (const auto* expr = std::get_if<ExprPtr>(&item)) {
        Json out;
        out["kind"] = "expression";
        out["source_text"] = unparse(**expr);
        out["span"] = describe_span((*expr)->span);
        return out;
    }
    return describe_instruction(std::get<Instruction>(item));
}

Json describe_control(const std::vector<ControlItem>& control, const PairHeap&) {
    Json out = Json::array();
    for (auto it = control.rbegin(); it != control.rend(); ++it) {
        out.push_back(describe_item(*it));
    }
    return out;
}

Json describe_stash(const std::vector<Value>& stash, const PairHeap& heap) {
    Json out = Json::array();
    for (auto it = stash.rbegin(); it != stash.rend(); ++it) {
        out.push_back(describe_value(*it, heap));
    }
    return out;
}

Json describe_outcome_error(const eval_error& e) {
    Json out;
    if (e.kind() == error_kind::step_limit_exceeded) {
        out["kind"] = "step_limit";
        out["repr"] = e.message();
    } else {
        out["kind"] = "error";
        out["repr"] = e.what();
        out["error_kind"] = to_string(e.kind());
        out["message"] = e.message();
    }
    out["step_number"] = e.step();
    out["span"] = e.span() ? describe_span(*e.span()) : Json(nullptr);
    return out;
}

}  // namespace

Json describe_span(const SourceSpan& span) {
    Json out;
    out["start_offset"] = span.start_offset;
    out["end_offset"] = span.end_offset;
    out["start_line"] = span.start_line;
    out["start_col"] = span.start_col;
    out["end_line"] = span.end_line;
    out["end_col"] = span.end_col;
    return out;
}

Json describe_value(const Value& value, const PairHeap& heap) {
    Json out;
    out["kind"] = value.kind_name();
    out["repr"] = write_value(value, heap);
    if (const PairId* p = value.as<PairId>()) {
        out["pair_ref"] = p->index;
    } else if (const auto* spec = value.as<const PrimitiveSpec*>()) {
        out["name"] = (*spec)->name;
        out["display_name"] = (*spec)->display_name;
    } else if (const auto* clo = value.as<ClosurePtr>()) {
        const Lambda& code = (*clo)->code();
        out["closure_id"] = (*clo)->id;
        out["params"] = code.params;
        out["body"] = unparse(*code.body_item);
        out["env_ref"] = (*clo)->env.index;
    } else if (const auto* cont = value.as<ContinuationPtr>()) {
        out["continuation_id"] = (*cont)->id;
        out["env_ref"] = (*cont)->env.index;
        out["control"] = describe_control((*cont)->control, heap);
        out["stash"] = describe_stash((*cont)->stash, heap);
    }
    return out;
}

Json snapshot(const State& state) {
    Json out;
    out["step_number"] = state.step_number;
    out["rule_applied"] = state.last_rule ? Json(rule_name(*state.last_rule)) : Json(nullptr);
    out["control"] = describe_control(state.control, state.pairs);
    out["stash"] = describe_stash(state.stash, state.pairs);
    out["current_env"] = state.current_env.index;

    Json frames = Json::array();
    for (std::uint32_t i = 0; i < state.envs.size(); ++i) {
        const Frame& f = state.envs.frame(EnvId{i});
        Json frame;
        frame["id"] = i;
        frame["parent"] = f.parent ? Json(f.parent->index) : Json(nullptr);
        Json bindings = Json::object();
        for (const auto& [name, value] : f.bindings) {
            bindings[name] = describe_value(value, state.pairs);
        }
        frame["bindings"] = std::move(bindings);
        frames.push_back(std::move(frame));
    }
    out["frames"] = std::move(frames);

    Json pairs = Json::array();
    for (std::uint32_t i = 0; i < state.pairs.size(); ++i) {
        const PairCell& cell = state.pairs.cell(PairId{i});
        Json pair;
        pair["id"] = i;
        pair["car"] = describe_value(cell.car, state.pairs);
        pair["cdr"] = describe_value(cell.cdr, state.pairs);
        pairs.push_back(std::move(pair));
    }
    out["pairs"] = std::move(pairs);
    out["output_so_far"] = state.output;
    return out;
}

Json TraceDocument::to_json() const {
    Json out;
    out["version"] = trace_format_version;
    out["source"] = source;
    out["config"] = {{"step_limit", config.step_limit}, {"proper_tail_calls", config.proper_tail_calls}};
    out["states"] = states;
    out["outcome"] = outcome;
    return out;
}

std::string TraceDocument::serialize() const {
    return to_json().dump(-1, ' ', false, Json::error_handler_t::replace) + "\n";
}

TraceDocument record(std::string_view source, const MachineConfig& config) {
    TraceDocument doc;
    doc.source = std::string(source);
    doc.config = config;
    State state = inject(parse_program(source));
    try {
        drive(state, config, [&](const State& s, std::optional<rule>) { doc.states.push_back(snapshot(s)); });
        const Value value = final_value(state);
        doc.outcome["kind"] = "value";
        doc.outcome["repr"] = write_value(value, state.pairs);
        doc.outcome["value"] = describe_value(value, state.pairs);
    } catch (const eval_error& e) {
        doc.outcome = describe_outcome_error(e);
    }
    return doc;
}

State replay_to(std::string_view source, const MachineConfig& config, std::uint64_t k) {
    State state = inject(parse_program(source));
    while (state.step_number < k) {
        if (state.is_final()) {
            throw std::out_of_range("state " + std::to_string(k) + " is past the final state " +
                                    std::to_string(state.step_number));
        }
        if (state.step_number + 1 >= config.step_limit) {
            throw std::out_of_range("state " + std::to_string(k) + " is beyond the step limit");
        }
        try {
            advance(state, config);
        } catch (const eval_error& e) {
            throw std::out_of_range("state " + std::to_string(k) + " is past the error at state " +
                                    std::to_string(e.step()));
        }
    }
    return state;
}

}  // namespace cse
