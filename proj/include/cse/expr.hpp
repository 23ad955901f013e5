#pragma once

#include "cse/number.hpp"
#include "cse/source_span.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cse {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NumberLit {
    Number value;
};

struct StringLit {
    std::string value;
};

struct BoolLit {
    bool value;
};

/// A quoted symbol.
struct SymbolLit {
    std::string name;
};

/// Stands in for the missing alternative of a one-armed `if`.
struct UnspecifiedLit {};

struct Var {
    std::string name;
};

struct Lambda {
    std::vector<std::string> params;
    std::vector<ExprPtr> body;
    /// What the machine pushes when the closure is applied: the single body
    /// expression, or a Sequence node when the body has several.
    ExprPtr body_item;
    /// Binding name when the lambda is the value of a `define`.
    std::optional<std::string> name;
};

struct Define {
    std::string name;
    ExprPtr value;
    /// Written as `(define (f x) ...)`; affects rendering only.
    bool procedure_syntax = false;
};

struct SetBang {
    std::string name;
    ExprPtr value;
};

struct If {
    ExprPtr test;
    ExprPtr consequent;
    ExprPtr alternative;
    bool has_alternative = true;
};

struct Begin {
    std::vector<ExprPtr> body;
};

/// How an App came about; quote desugarings render back as quoted data.
enum class app_origin { call, quoted_list, quoted_pair };

struct App {
    ExprPtr op;
    std::vector<ExprPtr> operands;
    app_origin origin = app_origin::call;
};

/// Bare sequence of two or more expressions: a multi-expression program or
/// lambda body.
struct Sequence {
    std::vector<ExprPtr> body;
};

struct Expr {
    using Node = std::variant<NumberLit, StringLit, BoolLit, SymbolLit, UnspecifiedLit, Var,
                              Lambda, Define, SetBang, If, Begin, App, Sequence>;

    Node node;
    SourceSpan span;

    template <typename T>
    const T* as() const {
        return std::get_if<T>(&node);
    }
};

template <typename T>
ExprPtr make_expr(T node, SourceSpan span) {
    return std::make_shared<const Expr>(Expr{std::move(node), span});
}

/// Wraps several expressions as a Sequence; a single expression is returned
/// unchanged. `exprs` must be non-empty.
ExprPtr make_sequence(const std::vector<ExprPtr>& exprs);

/// Renders an expression back to Scheme source. Quote desugarings render in
/// quoted form so the output re-reads to the same tree.
std::string unparse(const Expr& expr);

/// Structural equality ignoring spans.
bool same_structure(const Expr& a, const Expr& b);

}  // namespace cse
