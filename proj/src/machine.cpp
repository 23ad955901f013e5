#include "cse/machine.hpp"

#include "cse/error.hpp"
#include "cse/prelude.hpp"
#include "cse/printer.hpp"

#include <array>

namespace cse {

const char* rule_name(rule r) {
    switch (r) {
    case rule::decompose_call: return "Decompose n-ary procedure call";
    case rule::construct_closure: return "Construct closure";
    case rule::decompose_define: return "Decompose variable declaration";
    case rule::decompose_set: return "Decompose variable assignment";
    case rule::decompose_if: return "Decompose conditional expression";
    case rule::decompose_sequence: return "Decompose expression sequence";
    case rule::decompose_begin: return "Decompose begin expression";
    case rule::evaluate_primitive: return "Evaluate primitive";
    case rule::lookup_variable: return "Lookup variable";
    case rule::apply_primitive: return "Apply operator or simple procedure";
    case rule::apply_closure: return "Apply closure";
    case rule::apply_callcc: return "Apply callcc";
    case rule::apply_continuation: return "Apply continuation";
    case rule::restore_environment: return "Restore environment";
    case rule::assign: return "Assign variable to value";
    case rule::branch_consequent: return "Branch to consequent";
    case rule::branch_alternative: return "Branch to alternative";
    case rule::remove_unused: return "Remove unused value";
    }
    return "?";
}

std::span<const rule> all_rules() {
    static constexpr std::array rules{
        rule::decompose_call,     rule::construct_closure,  rule::decompose_define,
        rule::decompose_set,      rule::decompose_if,       rule::decompose_sequence,
        rule::decompose_begin,    rule::evaluate_primitive, rule::lookup_variable,
        rule::apply_primitive,    rule::apply_closure,      rule::apply_callcc,
        rule::apply_continuation, rule::restore_environment, rule::assign,
        rule::branch_consequent,  rule::branch_alternative, rule::remove_unused,
    };
    return rules;
}

State inject(const std::vector<ExprPtr>& program) {
    InitialEnvironment init = make_initial_environment();
    State state;
    state.envs = std::move(init.envs);
    state.current_env = init.global;
    if (!program.empty()) {
        state.control.emplace_back(make_sequence(program));
    }
    return state;
}

namespace {

[[noreturn]] void no_rule(const State& state, const std::string& why) {
    throw eval_error(error_kind::no_rule_applies, why, state.step_number);
}

rule classify_expr(const Expr& expr) {
    return std::visit(
        [](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Var>) return rule::lookup_variable;
            else if constexpr (std::is_same_v<T, Lambda>) return rule::construct_closure;
            else if constexpr (std::is_same_v<T, Define>) return rule::decompose_define;
            else if constexpr (std::is_same_v<T, SetBang>) return rule::decompose_set;
            else if constexpr (std::is_same_v<T, If>) return rule::decompose_if;
            else if constexpr (std::is_same_v<T, Begin>) return rule::decompose_begin;
            else if constexpr (std::is_same_v<T, App>) return rule::decompose_call;
            else if constexpr (std::is_same_v<T, Sequence>) return rule::decompose_sequence;
            else return rule::evaluate_primitive;
        },
        expr.node);
}

Value literal_value(const Expr& expr) {
    return std::visit(
        [](const auto& n) -> Value {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NumberLit>) return Value::number(n.value);
            else if constexpr (std::is_same_v<T, StringLit>) return Value::string(n.value);
            else if constexpr (std::is_same_v<T, BoolLit>) return Value::boolean(n.value);
            else if constexpr (std::is_same_v<T, SymbolLit>) return Value::symbol(n.name);
            else return Value();
        },
        expr.node);
}

class Transition {
public:
    Transition(State& state, const MachineConfig& config) : state_(state), config_(config) {}

    void apply(rule r) {
        ControlItem item = std::move(state_.control.back());
        state_.control.pop_back();
        if (auto* expr = std::get_if<ExprPtr>(&item)) {
            decompose(r, *expr);
        } else {
            execute(r, std::get<Instruction>(item));
        }
    }

private:
    void push(ExprPtr expr) { state_.control.emplace_back(std::move(expr)); }
    void push(Instruction instr) { state_.control.emplace_back(std::move(instr)); }

    void push_sequence(const std::vector<ExprPtr>& body, const SourceSpan& origin) {
        for (std::size_t i = body.size(); i-- > 0;) {
            push(body[i]);
            if (i > 0) {
                push(Instruction{Pop{}, origin});
            }
        }
    }

    void decompose(rule r, const ExprPtr& item) {
        const Expr& expr = *item;
        switch (r) {
        case rule::decompose_call: {
            const App& app = std::get<App>(expr.node);
            push(Instruction{Call{app.operands.size()}, expr.span});
            for (auto it = app.operands.rbegin(); it != app.operands.rend(); ++it) {
                push(*it);
            }
            push(app.op);
            return;
        }
        case rule::construct_closure:
            state_.stash.emplace_back(std::make_shared<const Closure>(
                Closure{state_.next_closure_id++, item, state_.current_env}));
            return;
        case rule::decompose_define: {
            const Define& def = std::get<Define>(expr.node);
            push(Instruction{Asgn{def.name}, expr.span});
            push(def.value);
            return;
        }
        case rule::decompose_set: {
            const SetBang& set = std::get<SetBang>(expr.node);
            push(Instruction{Asgn{set.name}, expr.span});
            push(set.value);
            return;
        }
        case rule::decompose_if: {
            const If& cond = std::get<If>(expr.node);
            push(Instruction{Branch{cond.consequent, cond.alternative}, expr.span});
            push(cond.test);
            return;
        }
        case rule::decompose_sequence:
            push_sequence(std::get<Sequence>(expr.node).body, expr.span);
            return;
        case rule::decompose_begin:
            push_sequence(std::get<Begin>(expr.node).body, expr.span);
            return;
        case rule::evaluate_primitive:
            state_.stash.push_back(literal_value(expr));
            return;
        case rule::lookup_variable: {
            const std::string& name = std::get<Var>(expr.node).name;
            const Value* v = state_.envs.lookup(state_.current_env, name);
            if (!v) {
                throw eval_error(error_kind::unbound_variable, "unbound variable '" + name + "'",
                                 state_.step_number, expr.span);
            }
            state_.stash.push_back(*v);
            return;
        }
        default:
            no_rule(state_, "no expression rule for this item");
        }
    }

    void execute(rule r, const Instruction& instr) {
        switch (r) {
        case rule::restore_environment:
            state_.current_env = std::get<EnvRestore>(instr.op).env;
            return;
        case rule::assign:
            state_.envs.assign(state_.current_env, std::get<Asgn>(instr.op).name, state_.stash.back());
            return;
        case rule::branch_consequent:
        case rule::branch_alternative: {
            const Branch& branch = std::get<Branch>(instr.op);
            state_.stash.pop_back();
            push(r == rule::branch_consequent ? branch.consequent : branch.alternative);
            return;
        }
        case rule::remove_unused:
            state_.stash.pop_back();
            return;
        case rule::apply_primitive:
        case rule::apply_closure:
        case rule::apply_callcc:
        case rule::apply_continuation:
            call(r, instr);
            return;
        default:
            no_rule(state_, "no instruction rule for this item");
        }
    }

    eval_error failure(error_kind kind, const std::string& message, const Instruction& instr) const {
        return eval_error(kind, message, state_.step_number, instr.origin);
    }

    void call(rule r, const Instruction& instr) {
        const std::size_t n = std::get<Call>(instr.op).arity;
        const auto callee_at = static_cast<std::ptrdiff_t>(state_.stash.size() - n - 1);
        const Value callee = state_.stash[static_cast<std::size_t>(callee_at)];
        std::vector<Value> args(state_.stash.begin() + callee_at + 1, state_.stash.end());
        state_.stash.resize(static_cast<std::size_t>(callee_at));

        switch (r) {
        case rule::apply_primitive:
            return call_primitive(callee, args, instr);
        case rule::apply_closure:
            return call_closure(**callee.as<ClosurePtr>(), args, instr);
        case rule::apply_callcc:
            return capture(args.front(), instr);
        case rule::apply_continuation:
            apply_continuation(state_, **callee.as<ContinuationPtr>(), args);
            return;
        default:
            no_rule(state_, "not a call rule");
        }
    }

    void call_primitive(const Value& callee, std::span<const Value> args, const Instruction& instr) {
        const auto* spec = callee.as<const PrimitiveSpec*>();
        if (!spec) {
            throw failure(error_kind::not_callable,
                          "not callable: " + write_value(callee, state_.pairs), instr);
        }
        try {
            if ((*spec)->is_callcc()) {
                throw primitive_error(error_kind::arity_mismatch,
                                      std::string((*spec)->name) + ": expected 1 argument, got " +
                                          std::to_string(args.size()));
            }
            state_.stash.push_back(apply_primitive(**spec, args, state_.pairs, state_.output));
        } catch (const primitive_error& e) {
            throw failure(e.kind(), e.what(), instr);
        }
    }

    void call_closure(const Closure& clo, std::span<const Value> args, const Instruction& instr) {
        const Lambda& code = clo.code();
        if (code.params.size() != args.size()) {
            throw failure(error_kind::arity_mismatch,
                          "#<procedure " + code.name.value_or("anonymous") + ">: expected " +
                              Arity::fixed(code.params.size()).describe() + ", got " +
                              std::to_string(args.size()),
                          instr);
        }
        const EnvId frame = state_.envs.create(clo.env);
        for (std::size_t i = 0; i < args.size(); ++i) {
            state_.envs.define(frame, code.params[i], args[i]);
        }
        if (!(config_.proper_tail_calls && restore_pending())) {
            push(Instruction{EnvRestore{state_.current_env}, instr.origin});
        }
        push(code.body_item);
        state_.current_env = frame;
    }

    /// The caller's environment is irrelevant or about to be replaced anyway.
    bool restore_pending() const {
        if (state_.control.empty()) {
            return true;
        }
        const auto* next = std::get_if<Instruction>(&state_.control.back());
        return next && next->as<EnvRestore>();
    }

    void capture(const Value& receiver, const Instruction& instr) {
        if (!receiver.callable()) {
            throw failure(error_kind::not_callable,
                          "call/cc: not callable: " + write_value(receiver, state_.pairs), instr);
        }
        auto cont = std::make_shared<const Continuation>(Continuation{
            state_.next_continuation_id++, state_.control, state_.stash, state_.current_env});
        push(instr);
        state_.stash.push_back(receiver);
        state_.stash.emplace_back(std::move(cont));
    }

    State& state_;
    const MachineConfig& config_;
};

}  // namespace

rule rule_for(const State& state) {
    if (state.control.empty()) {
        no_rule(state, "state is final");
    }
    const ControlItem& head = state.control.back();
    if (const auto* expr = std::get_if<ExprPtr>(&head)) {
        return classify_expr(**expr);
    }
    const Instruction& instr = std::get<Instruction>(head);
    const std::size_t depth = state.stash.size();
    return std::visit(
        [&](const auto& op) -> rule {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, EnvRestore>) {
                return rule::restore_environment;
            } else if constexpr (std::is_same_v<T, Call>) {
                if (depth < op.arity + 1) {
                    no_rule(state, "CALL " + std::to_string(op.arity) + " with too few stash values");
                }
                const Value& callee = state.stash[depth - op.arity - 1];
                if (callee.is<ClosurePtr>()) {
                    return rule::apply_closure;
                }
                if (callee.is<ContinuationPtr>()) {
                    return rule::apply_continuation;
                }
                const auto* spec = callee.as<const PrimitiveSpec*>();
                if (spec && (*spec)->is_callcc() && op.arity == 1) {
                    return rule::apply_callcc;
                }
                // also covers non-callables; the step raises NotCallable
                return rule::apply_primitive;
            } else {
                if (depth == 0) {
                    no_rule(state, "instruction needs a stash value");
                }
                if constexpr (std::is_same_v<T, Asgn>) {
                    return rule::assign;
                } else if constexpr (std::is_same_v<T, Branch>) {
                    return state.stash.back().truthy() ? rule::branch_consequent
                                                       : rule::branch_alternative;
                } else {
                    return rule::remove_unused;
                }
            }
        },
        instr.op);
}

rule advance(State& state, const MachineConfig& config) {
    const rule r = rule_for(state);
    Transition(state, config).apply(r);
    ++state.step_number;
    state.last_rule = r;
    return r;
}

void apply_continuation(State& state, const Continuation& cont, std::span<const Value> args) {
    state.control = cont.control;
    state.stash = cont.stash;
    state.stash.insert(state.stash.end(), args.begin(), args.end());
    state.current_env = cont.env;
}

StepResult step(State state, const MachineConfig& config) {
    if (state.is_final()) {
        return Final{final_value(state)};
    }
    const rule r = advance(state, config);
    return Next{std::move(state), r};
}

Value final_value(const State& state) {
    if (state.stash.empty()) {
        return Value();
    }
    return state.stash.back();
}

void drive(State& state, const MachineConfig& config, const StateObserver& observer) {
    if (observer) {
        observer(state, std::nullopt);
    }
    while (!state.is_final()) {
        if (state.step_number + 1 >= config.step_limit) {
            throw eval_error(error_kind::step_limit_exceeded,
                             "step limit exceeded at " + std::to_string(config.step_limit),
                             state.step_number);
        }
        const rule r = advance(state, config);
        if (observer) {
            observer(state, r);
        }
    }
}

RunOutcome run(const std::vector<ExprPtr>& program, const MachineConfig& config) {
    State state = inject(program);
    drive(state, config);
    Value value = final_value(state);
    const std::uint64_t steps = state.step_number;
    return RunOutcome{std::move(value), steps, std::move(state)};
}

}  // namespace cse
