#pragma once

#include "cse/expr.hpp"
#include "cse/number.hpp"
#include "cse/source_span.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace cse {

/// Index of a frame in the EnvStore. Never reused within a run.
struct EnvId {
    std::uint32_t index = 0;
    friend auto operator<=>(const EnvId&, const EnvId&) = default;
};

/// Index of a cell in the PairHeap. Never reused within a run.
struct PairId {
    std::uint32_t index = 0;
    friend auto operator<=>(const PairId&, const PairId&) = default;
};

struct PrimitiveSpec;
struct Closure;
struct Continuation;
using ClosurePtr = std::shared_ptr<const Closure>;
using ContinuationPtr = std::shared_ptr<const Continuation>;

struct Unspecified {
    friend bool operator==(const Unspecified&, const Unspecified&) = default;
};
struct Nil {
    friend bool operator==(const Nil&, const Nil&) = default;
};
struct Boolean {
    bool value;
};
struct String {
    std::string value;
};
struct Symbol {
    std::string name;
};

class Value {
public:
    using Rep = std::variant<Unspecified, Nil, Boolean, Number, String, Symbol, PairId,
                             const PrimitiveSpec*, ClosurePtr, ContinuationPtr>;

    Value() = default;
    Value(Rep rep) : rep_(std::move(rep)) {}

    static Value boolean(bool b) { return Value(Boolean{b}); }
    static Value number(Number n) { return Value(std::move(n)); }
    static Value string(std::string s) { return Value(String{std::move(s)}); }
    static Value symbol(std::string name) { return Value(Symbol{std::move(name)}); }

    template <typename T>
    bool is() const {
        return std::holds_alternative<T>(rep_);
    }
    template <typename T>
    const T* as() const {
        return std::get_if<T>(&rep_);
    }
    const Rep& rep() const { return rep_; }

    /// Only #f is falsy.
    bool truthy() const {
        const Boolean* b = as<Boolean>();
        return !b || b->value;
    }

    bool callable() const {
        return is<const PrimitiveSpec*>() || is<ClosurePtr>() || is<ContinuationPtr>();
    }

    /// Short type name used in error messages and trace descriptors.
    const char* kind_name() const;

private:
    Rep rep_;
};

struct Asgn {
    std::string name;
};
struct Call {
    std::size_t arity = 0;
};
struct EnvRestore {
    EnvId env;
};
struct Branch {
    ExprPtr consequent;
    ExprPtr alternative;
};
struct Pop {};

/// Machine-generated control item. `origin` is the span of the expression whose
/// decomposition produced it.
struct Instruction {
    std::variant<Asgn, Call, EnvRestore, Branch, Pop> op;
    SourceSpan origin;

    template <typename T>
    const T* as() const {
        return std::get_if<T>(&op);
    }
};

using ControlItem = std::variant<ExprPtr, Instruction>;

struct Closure {
    std::uint32_t id;
    ExprPtr lambda;
    EnvId env;

    const Lambda& code() const { return *lambda->as<Lambda>(); }
};

/// Reified machine state. Control and stash are stored bottom-first, like the
/// live state.
struct Continuation {
    std::uint32_t id;
    std::vector<ControlItem> control;
    std::vector<Value> stash;
    EnvId env;
};

}  // namespace cse
