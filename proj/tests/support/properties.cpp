#include "properties.hpp"

#include "cse/error.hpp"
#include "cse/machine.hpp"
#include "cse/prelude.hpp"
#include "cse/reader.hpp"
#include "cse/trace.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#ifndef CSE_TEST_DIR
#error "CSE_TEST_DIR must point at the tests directory"
#endif

namespace props {

using namespace cse;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<CorpusProgram> load_corpus() {
    std::vector<CorpusProgram> out;
    for (const auto& entry : std::filesystem::directory_iterator(std::string(CSE_TEST_DIR) + "/corpus")) {
        if (entry.path().extension() == ".scm") {
            out.push_back({entry.path().stem().string(), read_file(entry.path().string())});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

namespace {

const Expr* head_expr(const State& s) {
    const auto* e = std::get_if<ExprPtr>(&s.head());
    return e ? e->get() : nullptr;
}

const Instruction* head_instr(const State& s) { return std::get_if<Instruction>(&s.head()); }

template <typename T>
bool expr_is(const State& s) {
    const Expr* e = head_expr(s);
    return e && e->as<T>();
}

template <typename T>
bool instr_is(const State& s) {
    const Instruction* i = head_instr(s);
    return i && i->as<T>();
}

// Callee sitting under the CALL's arguments, if the stash is deep enough.
const Value* callee(const State& s) {
    const Instruction* i = head_instr(s);
    if (!i || !i->as<Call>()) {
        return nullptr;
    }
    const std::size_t n = i->as<Call>()->arity;
    if (s.stash.size() < n + 1) {
        return nullptr;
    }
    return &s.stash[s.stash.size() - 1 - n];
}

bool is_callcc_marker(const Value& v) {
    const auto* p = v.as<const PrimitiveSpec*>();
    return p && (*p)->fn == nullptr;
}

std::size_t call_arity(const State& s) { return head_instr(s)->as<Call>()->arity; }

using Predicate = std::function<bool(const State&)>;

const std::vector<std::pair<rule, Predicate>>& premises() {
    static const std::vector<std::pair<rule, Predicate>> table{
        {rule::decompose_call, expr_is<App>},
        {rule::construct_closure, expr_is<Lambda>},
        {rule::decompose_define, expr_is<Define>},
        {rule::decompose_set, expr_is<SetBang>},
        {rule::decompose_if, expr_is<If>},
        {rule::decompose_sequence, expr_is<Sequence>},
        {rule::decompose_begin, expr_is<Begin>},
        {rule::evaluate_primitive,
         [](const State& s) {
             return expr_is<NumberLit>(s) || expr_is<StringLit>(s) || expr_is<BoolLit>(s) ||
                    expr_is<SymbolLit>(s) || expr_is<UnspecifiedLit>(s);
         }},
        {rule::lookup_variable, expr_is<cse::Var>},
        {rule::apply_primitive,
         [](const State& s) {
             const Value* f = callee(s);
             if (!f) return false;
             if (is_callcc_marker(*f)) return call_arity(s) != 1;
             return f->is<const PrimitiveSpec*>() || !f->callable();
         }},
        {rule::apply_closure,
         [](const State& s) {
             const Value* f = callee(s);
             return f && f->is<ClosurePtr>();
         }},
        {rule::apply_callcc,
         [](const State& s) {
             const Value* f = callee(s);
             return f && is_callcc_marker(*f) && call_arity(s) == 1;
         }},
        {rule::apply_continuation,
         [](const State& s) {
             const Value* f = callee(s);
             return f && f->is<ContinuationPtr>();
         }},
        {rule::restore_environment, instr_is<EnvRestore>},
        {rule::assign, [](const State& s) { return instr_is<Asgn>(s) && !s.stash.empty(); }},
        {rule::branch_consequent,
         [](const State& s) { return instr_is<Branch>(s) && !s.stash.empty() && s.stash.back().truthy(); }},
        {rule::branch_alternative,
         [](const State& s) { return instr_is<Branch>(s) && !s.stash.empty() && !s.stash.back().truthy(); }},
        {rule::remove_unused, [](const State& s) { return instr_is<Pop>(s) && !s.stash.empty(); }},
    };
    return table;
}

std::string describe(const std::vector<rule>& rules) {
    std::string out;
    for (rule r : rules) {
        out += std::string(out.empty() ? "" : ", ") + rule_name(r);
    }
    return out.empty() ? "none" : out;
}

}  // namespace

std::vector<rule> matching_rules(const State& state) {
    std::vector<rule> out;
    for (const auto& [r, premise] : premises()) {
        if (premise(state)) {
            out.push_back(r);
        }
    }
    return out;
}

Check check_determinism(std::string_view source, const MachineConfig& config) {
    Check result;
    std::optional<rule> predicted;
    std::uint64_t checked = 0;
    State state = inject(parse_program(source));
    try {
        drive(state, config, [&](const State& s, std::optional<rule> applied) {
            if (!result.ok) return;
            if (applied && predicted && *applied != *predicted) {
                result = {false, "state " + std::to_string(s.step_number) + " was produced by " +
                                     rule_name(*applied) + ", predicted " + rule_name(*predicted)};
                return;
            }
            predicted.reset();
            if (s.is_final()) return;
            const auto matches = matching_rules(s);
            if (matches.size() != 1) {
                result = {false, "state " + std::to_string(s.step_number) + " matches " + describe(matches)};
                return;
            }
            if (rule_for(s) != matches.front()) {
                result = {false, "state " + std::to_string(s.step_number) + ": rule_for says " +
                                     rule_name(rule_for(s)) + ", premises say " + rule_name(matches.front())};
                return;
            }
            predicted = matches.front();
            ++checked;
        });
    } catch (const eval_error& e) {
        if (result.ok) result = {false, std::string("run failed: ") + e.what()};
    }
    if (result.ok) result.detail = std::to_string(checked) + " states";
    return result;
}

Check check_final_stash(std::string_view source, const MachineConfig& config) {
    try {
        const RunOutcome outcome = run(parse_program(source), config);
        const std::size_t n = outcome.final_state.stash.size();
        return {n == 1, "final stash holds " + std::to_string(n) + " values"};
    } catch (const eval_error& e) {
        return {false, std::string("run failed: ") + e.what()};
    }
}

Check check_replay(std::string_view source, std::uint32_t seed, int samples, const MachineConfig& config) {
    const TraceDocument doc = record(source, config);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, doc.states.size() - 1);
    for (int i = 0; i < samples; ++i) {
        const std::size_t k = pick(rng);
        const std::string replayed = snapshot(replay_to(source, config, k)).dump();
        if (replayed != doc.states[k].dump()) {
            return {false, "state " + std::to_string(k) + " differs on replay"};
        }
    }
    return {true, std::to_string(samples) + " samples of " + std::to_string(doc.states.size())};
}

Check check_env_balance(std::string_view source) {
    std::uint64_t applications = 0;
    std::uint64_t restores = 0;
    State state = inject(parse_program(source));
    try {
        drive(state, MachineConfig{}, [&](const State&, std::optional<rule> applied) {
            if (applied == rule::apply_closure) ++applications;
            if (applied == rule::restore_environment) ++restores;
        });
    } catch (const eval_error& e) {
        return {false, std::string("run failed: ") + e.what()};
    }
    return {applications == restores,
            std::to_string(applications) + " applications, " + std::to_string(restores) + " restores"};
}

bool uses_callcc(std::string_view source) {
    return source.find("call/cc") != std::string_view::npos ||
           source.find("call-with-current-continuation") != std::string_view::npos;
}

}  // namespace props
