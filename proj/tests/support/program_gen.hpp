#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace testgen {

/// Random well-typed programs over the pure core: numbers, booleans,
/// arithmetic, comparisons, `if`, lambdas, top-level defines, lists, `set!`
/// on bound names and escaping `call/cc`. Expression depth never exceeds
/// `max_depth`.
class ProgramGenerator {
public:
    explicit ProgramGenerator(std::uint32_t seed, int max_depth = 5) : rng_(seed), max_depth_(max_depth) {}

    std::string program();

private:
    std::string number_expr(int depth);
    std::string bool_expr(int depth);
    std::string any_expr(int depth);
    std::string fresh(const char* prefix);
    int pick(int n);

    std::mt19937 rng_;
    int max_depth_;
    int counter_ = 0;
    std::vector<std::string> numeric_scope_;
    std::vector<std::pair<std::string, int>> functions_;
};

}  // namespace testgen
