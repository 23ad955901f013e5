#include "cse/derive.hpp"

#include "cse/prelude.hpp"
#include "cse/printer.hpp"

#include <algorithm>

namespace cse {

namespace {

const char* const epsilon = "\xCE\xB5";

std::string env_name(EnvId id) { return "E" + std::to_string(id.index); }

std::string render_pair(PairId first, const PairHeap& heap) {
    std::string out = "(";
    std::vector<PairId> seen;
    PairId id = first;
    while (true) {
        if (std::find(seen.begin(), seen.end(), id) != seen.end()) {
            return out + "...)";
        }
        seen.push_back(id);
        const PairCell& cell = heap.cell(id);
        out += render_value(cell.car, heap) + ":";
        if (const PairId* next = cell.cdr.as<PairId>()) {
            id = *next;
            continue;
        }
        return out + render_value(cell.cdr, heap) + ")";
    }
}

std::string wrapped(const std::string& list) {
    return list == epsilon ? list : "(" + list + ")";
}

}  // namespace

std::string render_item(const ControlItem& item) {
    if (const auto* expr = std::get_if<ExprPtr>(&item)) {
        return unparse(**expr);
    }
    return std::visit(
        [](const auto& op) -> std::string {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, Asgn>) {
                return "ASGN " + op.name;
            } else if constexpr (std::is_same_v<T, Call>) {
                return "CALL " + std::to_string(op.arity);
            } else if constexpr (std::is_same_v<T, EnvRestore>) {
                return "ENV " + env_name(op.env);
            } else if constexpr (std::is_same_v<T, Branch>) {
                return "BRANCH " + unparse(*op.consequent) + " " + unparse(*op.alternative);
            } else {
                return "POP";
            }
        },
        std::get<Instruction>(item).op);
}

std::string render_value(const Value& value, const PairHeap& heap) {
    if (value.is<Nil>()) {
        return epsilon;
    }
    if (value.is<Unspecified>()) {
        return "unspecified";
    }
    if (const PairId* p = value.as<PairId>()) {
        return render_pair(*p, heap);
    }
    if (const auto* spec = value.as<const PrimitiveSpec*>()) {
        return std::string((*spec)->display_name);
    }
    if (const auto* clo = value.as<ClosurePtr>()) {
        const Lambda& code = (*clo)->code();
        std::string params;
        for (const std::string& p : code.params) {
            params += (params.empty() ? "" : " ") + p;
        }
        return "CLO (" + params + ") " + unparse(*code.body_item) + " " + env_name((*clo)->env);
    }
    if (const auto* cont = value.as<ContinuationPtr>()) {
        return "CONT " + wrapped(render_control((*cont)->control)) + " " +
               wrapped(render_stash((*cont)->stash, heap)) + " " + env_name((*cont)->env);
    }
    return write_value(value, heap);
}

std::string render_control(const std::vector<ControlItem>& control) {
    std::string out;
    for (auto it = control.rbegin(); it != control.rend(); ++it) {
        out += render_item(*it) + ":";
    }
    return out + epsilon;
}

std::string render_stash(const std::vector<Value>& stash, const PairHeap& heap) {
    std::string out;
    for (auto it = stash.rbegin(); it != stash.rend(); ++it) {
        out += render_value(*it, heap) + ":";
    }
    return out + epsilon;
}

std::string render_state(const State& state) {
    return "(" + render_control(state.control) + ", " + render_stash(state.stash, state.pairs) +
           ", " + env_name(state.current_env) + ")";
}

std::string render_frames(const State& state) {
    std::string out;
    for (std::uint32_t i = 0; i < state.envs.size(); ++i) {
        const Frame& f = state.envs.frame(EnvId{i});
        out += env_name(EnvId{i});
        out += f.parent ? " -> " + env_name(*f.parent) : std::string(" (global)");
        std::size_t primitives = 0;
        std::string bindings;
        for (const auto& [name, value] : f.bindings) {
            if (!f.parent && value.is<const PrimitiveSpec*>()) {
                ++primitives;
                continue;
            }
            bindings += (bindings.empty() ? "" : ", ") + name + " = " + render_value(value, state.pairs);
        }
        out += ":";
        if (primitives > 0) {
            out += " " + std::to_string(primitives) + " primitives";
            if (!bindings.empty()) {
                out += ";";
            }
        }
        if (!bindings.empty()) {
            out += " " + bindings;
        }
        out += "\n";
    }
    return out;
}

}  // namespace cse
