#include "cse/prelude.hpp"

#include "cse/error.hpp"
#include "cse/printer.hpp"

#include <cmath>

namespace cse {

std::string Arity::describe() const {
    const auto plural = [](std::size_t n) {
        return std::to_string(n) + (n == 1 ? " argument" : " arguments");
    };
    if (!max) {
        return "at least " + plural(min);
    }
    return plural(min);
}

namespace {

using Args = std::span<const Value>;

[[noreturn]] void type_error(std::string_view who, std::string_view expected, const Value& got) {
    throw primitive_error(error_kind::type_error, std::string(who) + ": expected " +
                                                      std::string(expected) + ", got " +
                                                      got.kind_name());
}

const Number& number_arg(std::string_view who, const Value& v) {
    const Number* n = v.as<Number>();
    if (!n) {
        type_error(who, "a number", v);
    }
    return *n;
}

const Integer& integer_arg(std::string_view who, const Value& v) {
    const Number& n = number_arg(who, v);
    if (!n.is_exact()) {
        type_error(who, "an exact integer", v);
    }
    return n.exact();
}

PairId pair_arg(std::string_view who, const Value& v) {
    const PairId* p = v.as<PairId>();
    if (!p) {
        type_error(who, "a pair", v);
    }
    return *p;
}

Value num(Number n) { return Value::number(std::move(n)); }

Value add(Args args, PrimitiveContext&) {
    Number sum(0);
    for (const Value& v : args) {
        sum = sum + number_arg("+", v);
    }
    return num(sum);
}

Value mul(Args args, PrimitiveContext&) {
    Number product(1);
    for (const Value& v : args) {
        product = product * number_arg("*", v);
    }
    return num(product);
}

Value sub(Args args, PrimitiveContext&) {
    Number acc = number_arg("-", args[0]);
    if (args.size() == 1) {
        return num(negate(acc));
    }
    for (std::size_t i = 1; i < args.size(); ++i) {
        acc = acc - number_arg("-", args[i]);
    }
    return num(acc);
}

Value div(Args args, PrimitiveContext&) {
    Number acc = number_arg("/", args[0]);
    if (args.size() == 1) {
        return num(divide(Number(1), acc));
    }
    for (std::size_t i = 1; i < args.size(); ++i) {
        acc = divide(acc, number_arg("/", args[i]));
    }
    return num(acc);
}

template <typename Pred>
Value chain(std::string_view who, Args args, Pred pred) {
    for (const Value& v : args) {
        number_arg(who, v);
    }
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        if (!pred(compare(*args[i].as<Number>(), *args[i + 1].as<Number>()))) {
            return Value::boolean(false);
        }
    }
    return Value::boolean(true);
}

Value num_eq(Args a, PrimitiveContext&) { return chain("=", a, [](auto c) { return c == 0; }); }
Value num_lt(Args a, PrimitiveContext&) { return chain("<", a, [](auto c) { return c < 0; }); }
Value num_gt(Args a, PrimitiveContext&) { return chain(">", a, [](auto c) { return c > 0; }); }
Value num_le(Args a, PrimitiveContext&) { return chain("<=", a, [](auto c) { return c <= 0; }); }
Value num_ge(Args a, PrimitiveContext&) { return chain(">=", a, [](auto c) { return c >= 0; }); }

template <typename Op>
Value integer_division(std::string_view who, Args args, Op op) {
    const Integer& a = integer_arg(who, args[0]);
    const Integer& b = integer_arg(who, args[1]);
    if (b.is_zero()) {
        throw primitive_error(error_kind::division_by_zero, std::string(who) + ": division by zero");
    }
    return num(Number(Integer(op(a, b))));
}

Value remainder(Args a, PrimitiveContext&) {
    return integer_division("remainder", a, [](const Integer& x, const Integer& y) { return Integer(x % y); });
}
Value quotient(Args a, PrimitiveContext&) {
    return integer_division("quotient", a, [](const Integer& x, const Integer& y) { return Integer(x / y); });
}
Value modulo(Args a, PrimitiveContext&) {
    return integer_division("modulo", a, [](const Integer& x, const Integer& y) {
        Integer r = x % y;
        if (!r.is_zero() && ((r < 0) != (y < 0))) {
            r += y;
        }
        return r;
    });
}

Value abs_(Args a, PrimitiveContext&) {
    const Number& n = number_arg("abs", a[0]);
    return num(compare(n, Number(0)) < 0 ? negate(n) : n);
}

template <bool Max>
Value extremum(Args args, PrimitiveContext&) {
    const char* who = Max ? "max" : "min";
    Number best = number_arg(who, args[0]);
    bool inexact = !best.is_exact();
    for (std::size_t i = 1; i < args.size(); ++i) {
        const Number& n = number_arg(who, args[i]);
        inexact = inexact || !n.is_exact();
        const auto c = compare(n, best);
        if (Max ? c > 0 : c < 0) {
            best = n;
        }
    }
    return num(inexact ? Number(best.to_double()) : best);
}

Value zero_p(Args a, PrimitiveContext&) { return Value::boolean(number_arg("zero?", a[0]).is_zero()); }
Value even_p(Args a, PrimitiveContext&) { return Value::boolean(integer_arg("even?", a[0]) % 2 == 0); }
Value odd_p(Args a, PrimitiveContext&) { return Value::boolean(integer_arg("odd?", a[0]) % 2 != 0); }

Value cons(Args a, PrimitiveContext& ctx) { return Value(ctx.heap.allocate(a[0], a[1])); }
Value car(Args a, PrimitiveContext& ctx) { return ctx.heap.cell(pair_arg("car", a[0])).car; }
Value cdr(Args a, PrimitiveContext& ctx) { return ctx.heap.cell(pair_arg("cdr", a[0])).cdr; }

Value list(Args a, PrimitiveContext& ctx) {
    return ctx.heap.make_list(std::vector<Value>(a.begin(), a.end()));
}

Value length(Args a, PrimitiveContext& ctx) {
    long long n = 0;
    Value cursor = a[0];
    while (const PairId* p = cursor.as<PairId>()) {
        ++n;
        cursor = ctx.heap.cell(*p).cdr;
        if (n > static_cast<long long>(ctx.heap.size())) {
            type_error("length", "a proper list", a[0]);
        }
    }
    if (!cursor.is<Nil>()) {
        type_error("length", "a proper list", a[0]);
    }
    return num(Number(n));
}

Value set_car(Args a, PrimitiveContext& ctx) {
    ctx.heap.cell(pair_arg("set-car!", a[0])).car = a[1];
    return Value();
}

Value set_cdr(Args a, PrimitiveContext& ctx) {
    ctx.heap.cell(pair_arg("set-cdr!", a[0])).cdr = a[1];
    return Value();
}

template <typename T>
Value is_a(Args a, PrimitiveContext&) {
    return Value::boolean(a[0].is<T>());
}

Value procedure_p(Args a, PrimitiveContext&) { return Value::boolean(a[0].callable()); }
Value not_(Args a, PrimitiveContext&) { return Value::boolean(!a[0].truthy()); }
Value eq_p(Args a, PrimitiveContext&) { return Value::boolean(values_eq(a[0], a[1])); }
Value equal_p(Args a, PrimitiveContext& ctx) { return Value::boolean(values_equal(a[0], a[1], ctx.heap)); }

Value string_to_symbol(Args a, PrimitiveContext&) {
    const String* s = a[0].as<String>();
    if (!s) {
        type_error("string->symbol", "a string", a[0]);
    }
    return Value::symbol(s->value);
}

Value symbol_to_string(Args a, PrimitiveContext&) {
    const Symbol* s = a[0].as<Symbol>();
    if (!s) {
        type_error("symbol->string", "a symbol", a[0]);
    }
    return Value::string(s->name);
}

Value display(Args a, PrimitiveContext& ctx) {
    ctx.output += display_value(a[0], ctx.heap);
    return Value();
}

Value newline(Args, PrimitiveContext& ctx) {
    ctx.output += '\n';
    return Value();
}

Value error(Args a, PrimitiveContext& ctx) {
    std::string message = display_value(a[0], ctx.heap);
    for (std::size_t i = 1; i < a.size(); ++i) {
        message += " " + write_value(a[i], ctx.heap);
    }
    throw primitive_error(error_kind::user_error, message);
}

constexpr auto fixed = Arity::fixed;
constexpr auto at_least = Arity::at_least;

const PrimitiveSpec table[] = {
    {"+", "plus", at_least(0), effect::pure, add},
    {"-", "minus", at_least(1), effect::pure, sub},
    {"*", "times", at_least(0), effect::pure, mul},
    {"/", "divide", at_least(1), effect::pure, div},
    {"=", "equals", at_least(2), effect::pure, num_eq},
    {"<", "less", at_least(2), effect::pure, num_lt},
    {">", "greater", at_least(2), effect::pure, num_gt},
    {"<=", "less-or-equal", at_least(2), effect::pure, num_le},
    {">=", "greater-or-equal", at_least(2), effect::pure, num_ge},
    {"remainder", "remainder", fixed(2), effect::pure, remainder},
    {"quotient", "quotient", fixed(2), effect::pure, quotient},
    {"modulo", "modulo", fixed(2), effect::pure, modulo},
    {"abs", "abs", fixed(1), effect::pure, abs_},
    {"max", "max", at_least(1), effect::pure, extremum<true>},
    {"min", "min", at_least(1), effect::pure, extremum<false>},
    {"zero?", "zero?", fixed(1), effect::pure, zero_p},
    {"even?", "even?", fixed(1), effect::pure, even_p},
    {"odd?", "odd?", fixed(1), effect::pure, odd_p},
    {"cons", "cons", fixed(2), effect::heap_allocating, cons},
    {"car", "car", fixed(1), effect::pure, car},
    {"cdr", "cdr", fixed(1), effect::pure, cdr},
    {"list", "list", at_least(0), effect::heap_allocating, list},
    {"length", "length", fixed(1), effect::pure, length},
    {"pair?", "pair?", fixed(1), effect::pure, is_a<PairId>},
    {"null?", "null?", fixed(1), effect::pure, is_a<Nil>},
    {"set-car!", "set-car!", fixed(2), effect::heap_mutating, set_car},
    {"set-cdr!", "set-cdr!", fixed(2), effect::heap_mutating, set_cdr},
    {"eq?", "eq?", fixed(2), effect::pure, eq_p},
    {"equal?", "equal?", fixed(2), effect::pure, equal_p},
    {"not", "not", fixed(1), effect::pure, not_},
    {"number?", "number?", fixed(1), effect::pure, is_a<Number>},
    {"boolean?", "boolean?", fixed(1), effect::pure, is_a<Boolean>},
    {"symbol?", "symbol?", fixed(1), effect::pure, is_a<Symbol>},
    {"string?", "string?", fixed(1), effect::pure, is_a<String>},
    {"procedure?", "procedure?", fixed(1), effect::pure, procedure_p},
    {"string->symbol", "string->symbol", fixed(1), effect::pure, string_to_symbol},
    {"symbol->string", "symbol->string", fixed(1), effect::pure, symbol_to_string},
    {"display", "display", fixed(1), effect::output, display},
    {"newline", "newline", fixed(0), effect::output, newline},
    {"error", "error", at_least(1), effect::output, error},
    {"call/cc", "callcc", fixed(1), effect::control, nullptr},
    // aliases of call/cc are bound in make_initial_environment
    {"call-with-current-continuation", "callcc", fixed(1), effect::control, nullptr},
    {"exact->inexact", "exact->inexact", fixed(1), effect::pure,
     [](Args a, PrimitiveContext&) { return num(Number(number_arg("exact->inexact", a[0]).to_double())); }},
};

}  // namespace

std::span<const PrimitiveSpec> primitive_table() { return table; }

const PrimitiveSpec& callcc_primitive() {
    static const PrimitiveSpec* marker = [] {
        for (const PrimitiveSpec& spec : table) {
            if (spec.is_callcc()) {
                return &spec;
            }
        }
        return static_cast<const PrimitiveSpec*>(nullptr);
    }();
    return *marker;
}

InitialEnvironment make_initial_environment() {
    InitialEnvironment init;
    init.global = init.envs.create(std::nullopt);
    for (const PrimitiveSpec& spec : table) {
        const PrimitiveSpec* bound = spec.is_callcc() ? &callcc_primitive() : &spec;
        init.envs.define(init.global, std::string(spec.name), Value(bound));
    }
    return init;
}

Value apply_primitive(const PrimitiveSpec& spec, std::span<const Value> args, PairHeap& heap,
                      std::string& output) {
    if (!spec.arity.accepts(args.size())) {
        throw primitive_error(error_kind::arity_mismatch,
                              std::string(spec.name) + ": expected " + spec.arity.describe() +
                                  ", got " + std::to_string(args.size()));
    }
    if (!spec.fn) {
        throw std::logic_error("callcc is applied by the machine");
    }
    PrimitiveContext ctx{heap, output};
    return spec.fn(args, ctx);
}

bool values_eq(const Value& a, const Value& b) {
    if (a.rep().index() != b.rep().index()) {
        return false;
    }
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = std::get<T>(b.rep());
            if constexpr (std::is_same_v<T, Unspecified> || std::is_same_v<T, Nil>) {
                return true;
            } else if constexpr (std::is_same_v<T, Boolean> || std::is_same_v<T, String>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, Number>) {
                return identical(x, y);
            } else if constexpr (std::is_same_v<T, Symbol>) {
                return x.name == y.name;
            } else {
                return x == y;
            }
        },
        a.rep());
}

bool values_equal(const Value& a, const Value& b, const PairHeap& heap) {
    const PairId* pa = a.as<PairId>();
    const PairId* pb = b.as<PairId>();
    if (pa && pb) {
        if (*pa == *pb) {
            return true;
        }
        const PairCell& ca = heap.cell(*pa);
        const PairCell& cb = heap.cell(*pb);
        return values_equal(ca.car, cb.car, heap) && values_equal(ca.cdr, cb.cdr, heap);
    }
    return values_eq(a, b);
}

}  // namespace cse
