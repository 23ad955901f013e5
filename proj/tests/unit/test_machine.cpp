#include "helpers.hpp"

#include "cse/derive.hpp"
#include "cse/error.hpp"
#include "cse/prelude.hpp"

#include <doctest.h>

using namespace cse;

namespace {

State injected(std::string_view source) { return inject(parse_program(source)); }

State advanced(std::string_view source, int steps) {
    State s = injected(source);
    for (int i = 0; i < steps; ++i) advance(s, MachineConfig{});
    return s;
}

error_kind failure_kind(std::string_view source, const MachineConfig& config = {}) {
    try {
        eval_to_string(source, config);
    } catch (const eval_error& e) {
        return e.kind();
    }
    FAIL("expected eval_error for " << source);
    return error_kind::no_rule_applies;
}

}  // namespace

TEST_CASE("inject places the program on control") {
    const State one = injected("(* 2 3)");
    CHECK(one.control.size() == 1);
    CHECK(one.stash.empty());
    CHECK(one.current_env == EnvId{0});
    CHECK(one.step_number == 0);
    CHECK_FALSE(one.last_rule);
    CHECK(render_state(one) == "((* 2 3):ε, ε, E0)");

    const State many = injected("1 2 3");
    REQUIRE(many.control.size() == 1);
    CHECK(std::get<ExprPtr>(many.head())->as<Sequence>());

    const State none = injected("");
    CHECK(none.is_final());
    CHECK(final_value(none).is<Unspecified>());
}

TEST_CASE("rule_for classifies the head of control") {
    CHECK(rule_for(injected("(f 1)")) == rule::decompose_call);
    CHECK(rule_for(injected("(lambda (x) x)")) == rule::construct_closure);
    CHECK(rule_for(injected("(define x 1)")) == rule::decompose_define);
    CHECK(rule_for(injected("(set! x 1)")) == rule::decompose_set);
    CHECK(rule_for(injected("(if 1 2 3)")) == rule::decompose_if);
    CHECK(rule_for(injected("1 2")) == rule::decompose_sequence);
    CHECK(rule_for(injected("(begin 1 2)")) == rule::decompose_begin);
    CHECK(rule_for(injected("42")) == rule::evaluate_primitive);
    CHECK(rule_for(injected("\"s\"")) == rule::evaluate_primitive);
    CHECK(rule_for(injected("x")) == rule::lookup_variable);
    CHECK(rule_for(advanced("(* 2 3)", 4)) == rule::apply_primitive);
    CHECK(rule_for(advanced("((lambda (x) x) 1)", 3)) == rule::apply_closure);
    CHECK(rule_for(advanced("(call/cc (lambda (k) 1))", 3)) == rule::apply_callcc);
    CHECK(rule_for(advanced("(call/cc (lambda (k) 1))", 4)) == rule::apply_closure);
    CHECK(rule_for(advanced("((lambda (x) x) 1)", 5)) == rule::restore_environment);
    CHECK(rule_for(advanced("(define x 1)", 2)) == rule::assign);
    CHECK(rule_for(advanced("(if #t 1 2)", 2)) == rule::branch_consequent);
    CHECK(rule_for(advanced("(if #f 1 2)", 2)) == rule::branch_alternative);
    CHECK(rule_for(advanced("(if 0 1 2)", 2)) == rule::branch_consequent);
    CHECK(rule_for(advanced("1 2", 2)) == rule::remove_unused);
    CHECK_THROWS_AS(rule_for(injected("")), eval_error);
}

TEST_CASE("each rule has a distinct name") {
    std::set<std::string> names;
    for (rule r : all_rules()) names.insert(rule_name(r));
    CHECK(names.size() == 18);
    CHECK(std::string(rule_name(rule::apply_primitive)) == "Apply operator or simple procedure");
    CHECK(std::string(rule_name(rule::assign)) == "Assign variable to value");
    CHECK(std::string(rule_name(rule::remove_unused)) == "Remove unused value");
}

TEST_CASE("step returns successor states and the final value") {
    State s = injected("(* 2 3)");
    int transitions = 0;
    for (;;) {
        StepResult r = step(s, MachineConfig{});
        if (auto* f = std::get_if<Final>(&r)) {
            CHECK(write_value(f->value, s.pairs) == "6");
            break;
        }
        Next& n = std::get<Next>(r);
        CHECK(n.state.step_number == s.step_number + 1);
        CHECK(n.state.last_rule == n.applied);
        s = std::move(n.state);
        ++transitions;
    }
    CHECK(transitions == 5);
}

TEST_CASE("step leaves its input untouched") {
    const State s = injected("((lambda (x) x) 1)");
    const std::string before = render_state(s);
    (void)step(s, MachineConfig{});
    CHECK(render_state(s) == before);
}

TEST_CASE("decomposition pushes operator, operands and CALL in order") {
    const State s = advanced("(f 1 2 3)", 1);
    CHECK(render_control(s.control) == "f:1:2:3:CALL 3:ε");
    const State seq = advanced("1 2 3", 1);
    CHECK(render_control(seq.control) == "1:POP:2:POP:3:ε");
    const State b = advanced("(begin 1 2)", 1);
    CHECK(render_control(b.control) == "1:POP:2:ε");
    const State set = advanced("(define x 1) (set! x 2)", 6);
    CHECK(render_control(set.control) == "2:ASGN x:ε");
}

TEST_CASE("define and set! leave their value on the stash") {
    CHECK(eval_to_string("(define x 5)") == "5");
    CHECK(eval_to_string("(define x 5) (set! x 6)") == "6");
    CHECK(eval_to_string("(define x 5) (set! x 6) x") == "6");
}

TEST_CASE("assignment updates the nearest binding") {
    CHECK(eval_to_string("(define x 1) (define (f) (set! x 2)) (f) x") == "2");
    CHECK(eval_to_string("(define x 1) (define (f x) (set! x 2) x) (list (f 0) x)") == "(2 1)");
    // An unbound set! defines the name in the current frame.
    CHECK(eval_to_string("(set! fresh 3) fresh") == "3");
}

TEST_CASE("closures share their defining frame") {
    CHECK(eval_to_string("(define (make) (define n 0) (lambda () (set! n (+ n 1)) n))"
                         "(define a (make)) (define b (make)) (a) (a) (list (a) (b))") == "(3 1)");
    CHECK(eval_to_string("(define (f) 1) f") == "#<procedure f>");
    CHECK(eval_to_string("(lambda (x) x)") == "#<procedure anonymous>");
}

TEST_CASE("apply closure extends the captured environment") {
    State s = advanced("(define y 10) ((lambda (x) (+ x y)) 1)", 9);
    REQUIRE(s.last_rule == rule::apply_closure);
    const Frame& f = s.envs.frame(s.current_env);
    CHECK(f.parent == EnvId{0});
    CHECK(f.bindings.size() == 1);
    CHECK(f.bindings[0].first == "x");
    CHECK(render_control(s.control) == "(+ x y):ENV E0:ε");
}

TEST_CASE("proper tail calls skip redundant ENV instructions") {
    MachineConfig tail;
    tail.proper_tail_calls = true;
    State s = inject(parse_program("((lambda (x) x) 1)"));
    for (int i = 0; i < 4; ++i) advance(s, tail);
    CHECK(render_control(s.control) == "x:ε");
    const std::string loop = "(define (f n acc) (if (= n 0) acc (f (- n 1) (+ acc 1)))) (f 500 0)";
    CHECK(eval_to_string(loop, tail) == "500");
    CHECK(eval_to_string(loop) == "500");
}

TEST_CASE("call/cc captures the rest of the computation") {
    State s = advanced("(+ 1 (call/cc (lambda (k) 2)))", 7);
    REQUIRE(s.last_rule == rule::apply_callcc);
    CHECK(render_control(s.control) == "CALL 1:CALL 2:ε");
    REQUIRE(s.stash.back().is<ContinuationPtr>());
    const Continuation& k = **s.stash.back().as<ContinuationPtr>();
    CHECK(render_control(k.control) == "CALL 2:ε");
    CHECK(render_stash(k.stash, s.pairs) == "1:plus:ε");
    CHECK(eval_to_string("(+ 1 (call/cc (lambda (k) (+ 10 (k 2)))))") == "3");
    CHECK(eval_to_string("(call-with-current-continuation (lambda (k) (k 'x)))") == "x");
}

TEST_CASE("re-entering a continuation repeats the captured work") {
    CHECK(eval_to_string("(define k #f) (define n 0)"
                         "(define r (+ 100 (call/cc (lambda (c) (set! k c) 1))))"
                         "(set! n (+ n 1)) (if (< n 3) (k n) (list r n))") == "(102 3)");
}

TEST_CASE("apply_continuation installs the captured state") {
    State s = advanced("(+ 1 (call/cc (lambda (k) 2)))", 7);
    const ContinuationPtr k = *s.stash.back().as<ContinuationPtr>();
    const std::size_t frames = s.envs.size();
    const Value args[] = {Value::number(41)};
    apply_continuation(s, *k, args);
    CHECK(render_control(s.control) == "CALL 2:ε");
    CHECK(render_stash(s.stash, s.pairs) == "41:1:plus:ε");
    CHECK(s.current_env == k->env);
    CHECK(s.envs.size() == frames);

    State empty = advanced("(call/cc (lambda (k) 2))", 3);
    apply_continuation(empty, *k, {});
    CHECK(render_stash(empty.stash, empty.pairs) == "1:plus:ε");
}

TEST_CASE("runtime errors name their kind, step and span") {
    CHECK(failure_kind("undefined-name") == error_kind::unbound_variable);
    CHECK(failure_kind("(1 2)") == error_kind::not_callable);
    CHECK(failure_kind("((lambda (x) x))") == error_kind::arity_mismatch);
    CHECK(failure_kind("((lambda (x) x) 1 2)") == error_kind::arity_mismatch);
    CHECK(failure_kind("(error \"boom\")") == error_kind::user_error);
    MachineConfig tiny;
    tiny.step_limit = 5;
    CHECK(failure_kind("(define (f) (f)) (f)", tiny) == error_kind::step_limit_exceeded);
    try {
        eval_to_string("(+ 1\n   (car '()))");
        FAIL("expected eval_error");
    } catch (const eval_error& e) {
        CHECK(e.kind() == error_kind::type_error);
        REQUIRE(e.span());
        CHECK(e.span()->start_line == 2);
        CHECK(e.span()->start_col == 4);
        CHECK(e.step() > 0);
        CHECK(std::string(e.what()).starts_with("TypeError: car"));
    }
}

TEST_CASE("step limit counts states including the first") {
    MachineConfig config;
    config.step_limit = 6;
    CHECK(eval_to_string("(* 2 3)", config) == "6");
    config.step_limit = 5;
    CHECK_THROWS_AS(eval_to_string("(* 2 3)", config), eval_error);
}

TEST_CASE("run reports transitions taken") {
    const RunOutcome r = run(parse_program("((lambda (x) (* x x)) 4)"), MachineConfig{});
    CHECK(r.steps_taken == 10);
    CHECK(r.final_state.step_number == 10);
    CHECK(r.final_state.stash.size() == 1);
}

TEST_CASE("one-armed if yields unspecified") {
    CHECK(eval_to_string("(if #f 1)") == "#<unspecified>");
    CHECK(eval_to_string("(if #t 1)") == "1");
}
