#pragma once

#include "cse/env.hpp"
#include "cse/value.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cse {

struct Arity {
    std::size_t min = 0;
    /// nullopt means variadic beyond `min`.
    std::optional<std::size_t> max;

    static Arity fixed(std::size_t n) { return Arity{n, n}; }
    static Arity at_least(std::size_t n) { return Arity{n, std::nullopt}; }

    bool accepts(std::size_t n) const { return n >= min && (!max || n <= *max); }
    std::string describe() const;
};

enum class effect { pure, heap_allocating, heap_mutating, output, control };

/// What a primitive may touch while running.
struct PrimitiveContext {
    PairHeap& heap;
    std::string& output;
};

using PrimitiveFn = Value (*)(std::span<const Value> args, PrimitiveContext& ctx);

struct PrimitiveSpec {
    std::string_view name;
    /// Name used when the machine state is rendered, e.g. `times` for `*`.
    std::string_view display_name;
    Arity arity;
    effect kind;
    /// Null for the callcc marker, which the machine handles itself.
    PrimitiveFn fn;

    bool is_callcc() const { return kind == effect::control; }
};

/// Every primitive bound in the initial environment, in binding order.
/// `call/cc` and `call-with-current-continuation` share one spec.
std::span<const PrimitiveSpec> primitive_table();

/// The shared callcc marker.
const PrimitiveSpec& callcc_primitive();

struct InitialEnvironment {
    EnvStore envs;
    EnvId global;
};

/// A store holding only the global frame E0.
InitialEnvironment make_initial_environment();

/// Checks arity, then runs the primitive. Throws primitive_error.
Value apply_primitive(const PrimitiveSpec& spec, std::span<const Value> args, PairHeap& heap,
                      std::string& output);

/// Structural equality (`equal?`), deep through pairs.
bool values_equal(const Value& a, const Value& b, const PairHeap& heap);

/// Identity (`eq?`): pairs by PairId, procedures by identity, symbols by name,
/// numbers by exactness and value, strings by content.
bool values_eq(const Value& a, const Value& b);

}  // namespace cse
