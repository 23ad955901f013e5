#include "cse/expr.hpp"

#include "cse/printer.hpp"

namespace cse {

ExprPtr make_sequence(const std::vector<ExprPtr>& exprs) {
    if (exprs.size() == 1) {
        return exprs.front();
    }
    return make_expr(Sequence{exprs}, cover(exprs.front()->span, exprs.back()->span));
}

namespace {

std::string join(const std::vector<ExprPtr>& exprs, std::string (*render)(const Expr&)) {
    std::string out;
    for (const ExprPtr& e : exprs) {
        if (!out.empty()) {
            out += ' ';
        }
        out += render(*e);
    }
    return out;
}

std::string unparse_expr(const Expr& expr);

/// Text of a desugared quote without the leading `'`.
std::string datum_text(const Expr& expr) {
    if (const auto* sym = expr.as<SymbolLit>()) {
        return sym->name;
    }
    const auto* app = expr.as<App>();
    if (!app || app->origin == app_origin::call) {
        return unparse_expr(expr);
    }
    if (app->origin == app_origin::quoted_list) {
        return "(" + join(app->operands, datum_text) + ")";
    }
    std::string out = "(" + datum_text(*app->operands[0]);
    const Expr* rest = app->operands[1].get();
    while (true) {
        const auto* cell = rest->as<App>();
        if (cell && cell->origin == app_origin::quoted_pair) {
            out += " " + datum_text(*cell->operands[0]);
            rest = cell->operands[1].get();
            continue;
        }
        if (cell && cell->origin == app_origin::quoted_list) {
            for (const ExprPtr& e : cell->operands) {
                out += " " + datum_text(*e);
            }
            return out + ")";
        }
        return out + " . " + datum_text(*rest) + ")";
    }
}

std::string params_text(const std::vector<std::string>& params) {
    std::string out;
    for (const std::string& p : params) {
        if (!out.empty()) {
            out += ' ';
        }
        out += p;
    }
    return out;
}

std::string unparse_expr(const Expr& expr) {
    return std::visit(
        [&](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NumberLit>) {
                return n.value.to_string();
            } else if constexpr (std::is_same_v<T, StringLit>) {
                return write_string(n.value);
            } else if constexpr (std::is_same_v<T, BoolLit>) {
                return n.value ? "#t" : "#f";
            } else if constexpr (std::is_same_v<T, SymbolLit>) {
                return "'" + n.name;
            } else if constexpr (std::is_same_v<T, UnspecifiedLit>) {
                return "#<unspecified>";
            } else if constexpr (std::is_same_v<T, Var>) {
                return n.name;
            } else if constexpr (std::is_same_v<T, Lambda>) {
                return "(lambda (" + params_text(n.params) + ") " + join(n.body, unparse_expr) + ")";
            } else if constexpr (std::is_same_v<T, Define>) {
                const auto* lam = n.value->template as<Lambda>();
                if (n.procedure_syntax && lam) {
                    std::string head = n.name;
                    if (!lam->params.empty()) {
                        head += " " + params_text(lam->params);
                    }
                    return "(define (" + head + ") " + join(lam->body, unparse_expr) + ")";
                }
                return "(define " + n.name + " " + unparse_expr(*n.value) + ")";
            } else if constexpr (std::is_same_v<T, SetBang>) {
                return "(set! " + n.name + " " + unparse_expr(*n.value) + ")";
            } else if constexpr (std::is_same_v<T, If>) {
                std::string out = "(if " + unparse_expr(*n.test) + " " + unparse_expr(*n.consequent);
                if (n.has_alternative) {
                    out += " " + unparse_expr(*n.alternative);
                }
                return out + ")";
            } else if constexpr (std::is_same_v<T, Begin>) {
                return "(begin " + join(n.body, unparse_expr) + ")";
            } else if constexpr (std::is_same_v<T, App>) {
                if (n.origin != app_origin::call) {
                    return "'" + datum_text(expr);
                }
                std::string out = "(" + unparse_expr(*n.op);
                for (const ExprPtr& e : n.operands) {
                    out += " " + unparse_expr(*e);
                }
                return out + ")";
            } else {
                return join(n.body, unparse_expr);
            }
        },
        expr.node);
}

bool same_list(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!same_structure(*a[i], *b[i])) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::string unparse(const Expr& expr) { return unparse_expr(expr); }

bool same_structure(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) {
        return false;
    }
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const T& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, NumberLit>) {
                return identical(x.value, y.value);
            } else if constexpr (std::is_same_v<T, StringLit> || std::is_same_v<T, BoolLit>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, SymbolLit> || std::is_same_v<T, Var>) {
                return x.name == y.name;
            } else if constexpr (std::is_same_v<T, UnspecifiedLit>) {
                return true;
            } else if constexpr (std::is_same_v<T, Lambda>) {
                return x.params == y.params && x.name == y.name && same_list(x.body, y.body);
            } else if constexpr (std::is_same_v<T, Define>) {
                return x.name == y.name && same_structure(*x.value, *y.value);
            } else if constexpr (std::is_same_v<T, SetBang>) {
                return x.name == y.name && same_structure(*x.value, *y.value);
            } else if constexpr (std::is_same_v<T, If>) {
                return x.has_alternative == y.has_alternative && same_structure(*x.test, *y.test) &&
                       same_structure(*x.consequent, *y.consequent) &&
                       same_structure(*x.alternative, *y.alternative);
            } else if constexpr (std::is_same_v<T, App>) {
                return x.origin == y.origin && same_structure(*x.op, *y.op) &&
                       same_list(x.operands, y.operands);
            } else {
                return same_list(x.body, y.body);
            }
        },
        a.node);
}

}  // namespace cse
