#include "helpers.hpp"
#include "support/big_step.hpp"
#include "support/program_gen.hpp"
#include "support/properties.hpp"

#include <doctest.h>

#include <map>

namespace {

const std::map<std::string, std::pair<std::string, std::string>>& expected_results() {
    // name -> (value, output)
    static const std::map<std::string, std::pair<std::string, std::string>> table{
        {"accumulator", {"(1 2 1)", ""}},
        {"escape", {"11", ""}},
        {"fact", {"120", ""}},
        {"square_lambda", {"16", ""}},
        {"define_square", {"#<procedure square>", ""}},
        {"branch", {"\"1 != 2\"", ""}},
        {"second", {"2", ""}},
        {"early_return", {"\"early\"", ""}},
        {"times", {"6", ""}},
        {"generator", {"(102 3)", ""}},
        {"higher_order", {"(7 4 210 3.5 4 2 #t #f #<unspecified>)", ""}},
        {"lists", {"((1 4 9 16 25) 55 (a (b . c) \"s\" #t 2.5))", ""}},
        {"mutation", {"(10 #t #t #f)", "p = (10 20 30)\n"}},
        {"shadowing", {"(11 6 6)", ""}},
    };
    return table;
}

}  // namespace

TEST_CASE("corpus programs produce their known results") {
    const auto corpus = props::load_corpus();
    CHECK(corpus.size() == expected_results().size());
    for (const auto& p : corpus) {
        CAPTURE(p.name);
        const auto it = expected_results().find(p.name);
        REQUIRE(it != expected_results().end());
        CHECK(eval_to_string(p.source) == it->second.first);
        CHECK(output_of(p.source) == it->second.second);
    }
}

TEST_CASE("corpus programs without call/cc agree with the reference evaluator") {
    for (const auto& p : props::load_corpus()) {
        if (props::uses_callcc(p.source) || p.name == "mutation") continue;
        CAPTURE(p.name);
        const auto expected = oracle::evaluate_source(p.source);
        REQUIRE(expected.ok);
        CHECK(eval_to_string(p.source) == expected.text);
    }
}

TEST_CASE("corpus properties hold with and without tail calls") {
    cse::MachineConfig tail;
    tail.proper_tail_calls = true;
    std::uint32_t seed = 100;
    for (const auto& p : props::load_corpus()) {
        CAPTURE(p.name);
        for (const auto& config : {cse::MachineConfig{}, tail}) {
            const auto det = props::check_determinism(p.source, config);
            CHECK_MESSAGE(det.ok, det.detail);
            const auto fin = props::check_final_stash(p.source, config);
            CHECK_MESSAGE(fin.ok, fin.detail);
            const auto rep = props::check_replay(p.source, seed++, 20, config);
            CHECK_MESSAGE(rep.ok, rep.detail);
            CHECK(eval_to_string(p.source, config) == eval_to_string(p.source));
        }
        if (!props::uses_callcc(p.source)) {
            const auto bal = props::check_env_balance(p.source);
            CHECK_MESSAGE(bal.ok, bal.detail);
        }
    }
}

TEST_CASE("generated programs satisfy the machine properties") {
    for (std::uint32_t seed = 1000; seed < 1100; ++seed) {
        const std::string src = testgen::ProgramGenerator(seed).program();
        CAPTURE(src);
        const auto det = props::check_determinism(src);
        CHECK_MESSAGE(det.ok, det.detail);
        const auto fin = props::check_final_stash(src);
        CHECK_MESSAGE(fin.ok, fin.detail);
        if (!props::uses_callcc(src)) {
            const auto bal = props::check_env_balance(src);
            CHECK_MESSAGE(bal.ok, bal.detail);
        }
    }
}
