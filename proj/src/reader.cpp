#include "cse/reader.hpp"

#include "cse/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace cse {

const char* to_string(token_kind kind) {
    switch (kind) {
    case token_kind::lparen: return "LPAREN";
    case token_kind::rparen: return "RPAREN";
    case token_kind::quote: return "QUOTE";
    case token_kind::number: return "NUMBER";
    case token_kind::string: return "STRING";
    case token_kind::boolean: return "BOOLEAN";
    case token_kind::symbol: return "SYMBOL";
    }
    return "?";
}

namespace {

bool is_delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"' ||
           c == ';' || c == '\'';
}

bool is_identifier_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || std::isalnum(u)) {
        return true;
    }
    return std::string_view("!$%&*/:<=>?^_~+-.@").find(c) != std::string_view::npos;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

/// Lexemes that start like a number must parse as one.
bool looks_numeric(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        i = 1;
    }
    if (i < s.size() && is_digit(s[i])) {
        return true;
    }
    return i + 1 < s.size() && s[i] == '.' && is_digit(s[i + 1]);
}

class Lexer {
public:
    explicit Lexer(std::string_view source) : src_(source) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        while (true) {
            skip_atmosphere();
            if (at_end()) {
                return tokens;
            }
            tokens.push_back(next());
        }
    }

private:
    struct Pos {
        std::size_t offset = 0;
        std::size_t line = 1;
        std::size_t col = 1;
    };

    bool at_end() const { return pos_.offset >= src_.size(); }
    char peek() const { return src_[pos_.offset]; }

    void advance() {
        if (src_[pos_.offset] == '\n') {
            ++pos_.line;
            pos_.col = 1;
        } else {
            ++pos_.col;
        }
        ++pos_.offset;
    }

    SourceSpan span_from(const Pos& start) const {
        return SourceSpan{start.offset, pos_.offset, start.line, start.col, pos_.line, pos_.col};
    }

    void skip_atmosphere() {
        while (!at_end()) {
            const char c = peek();
            if (c == ';') {
                while (!at_end() && peek() != '\n') {
                    advance();
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    Token make(token_kind kind, const Pos& start) const {
        const SourceSpan span = span_from(start);
        return Token{kind, std::string(span.text_in(src_)), span};
    }

    Token next() {
        const Pos start = pos_;
        const char c = peek();
        if (c == '(' || c == ')' || c == '\'') {
            advance();
            return make(c == '(' ? token_kind::lparen
                        : c == ')' ? token_kind::rparen : token_kind::quote,
                        start);
        }
        if (c == '"') {
            return string_token(start);
        }
        while (!at_end() && !is_delimiter(peek())) {
            advance();
        }
        Token token = make(token_kind::symbol, start);
        const std::string& text = token.text;
        if (text[0] == '#') {
            if (text == "#t" || text == "#f" || text == "#true" || text == "#false") {
                token.kind = token_kind::boolean;
                return token;
            }
            throw parse_error("unknown syntax '" + text + "'", token.span);
        }
        if (looks_numeric(text)) {
            if (!Number::parse(text)) {
                throw parse_error("malformed number '" + text + "'", token.span);
            }
            token.kind = token_kind::number;
            return token;
        }
        if (!std::all_of(text.begin(), text.end(), is_identifier_char)) {
            throw parse_error("invalid identifier '" + text + "'", token.span);
        }
        return token;
    }

    Token string_token(const Pos& start) {
        advance();
        while (!at_end()) {
            const char c = peek();
            if (c == '"') {
                advance();
                return make(token_kind::string, start);
            }
            if (c == '\\') {
                const Pos escape_start = pos_;
                advance();
                if (at_end()) {
                    break;
                }
                if (std::string_view("\"\\ntr0ab").find(peek()) == std::string_view::npos) {
                    advance();
                    throw parse_error("unknown string escape", span_from(escape_start));
                }
            }
            advance();
        }
        throw parse_error("unterminated string", span_from(start));
    }

    std::string_view src_;
    Pos pos_;
};

std::string decode_string(std::string_view lexeme) {
    std::string out;
    for (std::size_t i = 1; i + 1 < lexeme.size(); ++i) {
        char c = lexeme[i];
        if (c == '\\') {
            c = lexeme[++i];
            switch (c) {
            case 'n': c = '\n'; break;
            case 't': c = '\t'; break;
            case 'r': c = '\r'; break;
            case '0': c = '\0'; break;
            case 'a': c = '\a'; break;
            case 'b': c = '\b'; break;
            default: break;
            }
        }
        out.push_back(c);
    }
    return out;
}

bool is_symbol(const Datum& d) {
    return d.type == Datum::kind::atom && d.atom.kind == token_kind::symbol;
}


class DatumReader {
public:
    DatumReader(const std::vector<Token>& tokens, std::string_view source)
        : tokens_(tokens), source_(source) {}

    bool done() const { return index_ >= tokens_.size(); }

    Datum read() {
        const Token& tok = tokens_[index_++];
        switch (tok.kind) {
        case token_kind::rparen:
            throw parse_error("unbalanced parentheses: unexpected ')'", tok.span);
        case token_kind::quote: {
            if (done()) {
                throw parse_error("quote without a datum", tok.span);
            }
            Datum quoted = read();
            Datum list;
            list.type = Datum::kind::list;
            list.span = cover(tok.span, quoted.span);
            Datum head;
            head.atom = Token{token_kind::symbol, "quote", tok.span};
            head.span = tok.span;
            list.items.push_back(std::move(head));
            list.items.push_back(std::move(quoted));
            return list;
        }
        case token_kind::lparen:
            return read_list(tok);
        default:
            if (tok.kind == token_kind::symbol && tok.text == ".") {
                throw parse_error("unexpected '.'", tok.span);
            }
            Datum atom;
            atom.atom = tok;
            atom.span = tok.span;
            return atom;
        }
    }

private:
    Datum read_list(const Token& open) {
        Datum list;
        list.type = Datum::kind::list;
        while (true) {
            if (done()) {
                SourceSpan span = open.span;
                span.end_offset = source_.size();
                if (!tokens_.empty()) {
                    span = cover(open.span, tokens_.back().span);
                }
                throw parse_error("unbalanced parentheses: missing ')'", span);
            }
            const Token& tok = tokens_[index_];
            if (tok.kind == token_kind::rparen) {
                ++index_;
                list.span = cover(open.span, tok.span);
                return list;
            }
            if (tok.kind == token_kind::symbol && tok.text == ".") {
                if (list.items.empty() || !list.tail.empty()) {
                    throw parse_error("unexpected '.'", tok.span);
                }
                ++index_;
                if (done() || tokens_[index_].kind == token_kind::rparen) {
                    throw parse_error("missing datum after '.'", tok.span);
                }
                Datum tail = read();
                if (done() || tokens_[index_].kind != token_kind::rparen) {
                    throw parse_error("expected ')' after dotted tail", tail.span);
                }
                // (a . (b c)) reads as (a b c)
                if (tail.type == Datum::kind::list) {
                    for (Datum& item : tail.items) {
                        list.items.push_back(std::move(item));
                    }
                    list.tail = std::move(tail.tail);
                } else {
                    list.tail.push_back(std::move(tail));
                }
                continue;
            }
            list.items.push_back(read());
        }
    }

    const std::vector<Token>& tokens_;
    std::string_view source_;
    std::size_t index_ = 0;
};

ExprPtr literal(const Token& tok) {
    switch (tok.kind) {
    case token_kind::number: return make_expr(NumberLit{*Number::parse(tok.text)}, tok.span);
    case token_kind::string: return make_expr(StringLit{decode_string(tok.text)}, tok.span);
    case token_kind::boolean: return make_expr(BoolLit{tok.text[1] == 't'}, tok.span);
    default: return nullptr;
    }
}

ExprPtr quote_datum(const Datum& datum, SourceSpan span) {
    if (datum.type == Datum::kind::atom) {
        if (datum.atom.kind == token_kind::symbol) {
            return make_expr(SymbolLit{datum.atom.text}, span);
        }
        ExprPtr lit = literal(datum.atom);
        return make_expr(lit->node, span);
    }
    const SourceSpan head_span{span.start_offset, span.start_offset, span.start_line,
                               span.start_col, span.start_line, span.start_col};
    if (datum.tail.empty()) {
        std::vector<ExprPtr> operands;
        for (const Datum& item : datum.items) {
            operands.push_back(quote_datum(item, item.span));
        }
        return make_expr(App{make_expr(Var{"list"}, head_span), std::move(operands),
                             app_origin::quoted_list},
                         span);
    }
    ExprPtr rest = quote_datum(datum.tail.front(), datum.tail.front().span);
    for (auto it = datum.items.rbegin(); it != datum.items.rend(); ++it) {
        const bool outermost = std::next(it) == datum.items.rend();
        const SourceSpan cell_span = outermost ? span : cover(it->span, rest->span);
        const SourceSpan cons_span{cell_span.start_offset, cell_span.start_offset,
                                   cell_span.start_line, cell_span.start_col,
                                   cell_span.start_line, cell_span.start_col};
        std::vector<ExprPtr> operands{quote_datum(*it, it->span), rest};
        rest = make_expr(App{make_expr(Var{"cons"}, cons_span), std::move(operands),
                             app_origin::quoted_pair},
                         cell_span);
    }
    return rest;
}

class Analyzer {
public:
    ExprPtr analyze(const Datum& d) {
        if (d.type == Datum::kind::atom) {
            if (d.atom.kind == token_kind::symbol) {
                return make_expr(Var{d.atom.text}, d.span);
            }
            return literal(d.atom);
        }
        if (!d.tail.empty()) {
            throw parse_error("dotted list is not a valid expression", d.span);
        }
        if (d.items.empty()) {
            throw parse_error("empty application '()'", d.span);
        }
        const Datum& head = d.items.front();
        if (is_symbol(head)) {
            const std::string& keyword = head.atom.text;
            if (keyword == "quote") return analyze_quote(d);
            if (keyword == "lambda") return analyze_lambda(d);
            if (keyword == "define") return analyze_define(d);
            if (keyword == "set!") return analyze_set(d);
            if (keyword == "if") return analyze_if(d);
            if (keyword == "begin") return analyze_begin(d);
        }
        ExprPtr op = analyze(head);
        std::vector<ExprPtr> operands;
        for (std::size_t i = 1; i < d.items.size(); ++i) {
            operands.push_back(analyze(d.items[i]));
        }
        return make_expr(App{std::move(op), std::move(operands)}, d.span);
    }

private:
    ExprPtr analyze_quote(const Datum& d) {
        if (d.items.size() != 2) {
            throw parse_error("quote expects exactly one datum", d.span);
        }
        return desugar_quote(d.items[1], d.span);
    }

    std::vector<std::string> parameters(const Datum& list, std::size_t first) {
        if (list.type != Datum::kind::list || !list.tail.empty()) {
            throw parse_error("lambda parameters must be a proper list of names", list.span);
        }
        std::vector<std::string> names;
        std::set<std::string> seen;
        for (std::size_t i = first; i < list.items.size(); ++i) {
            const Datum& p = list.items[i];
            if (!is_symbol(p)) {
                throw parse_error("parameter must be a name", p.span);
            }
            if (!seen.insert(p.atom.text).second) {
                throw parse_error("duplicate parameter '" + p.atom.text + "'", p.span);
            }
            names.push_back(p.atom.text);
        }
        return names;
    }

    std::vector<ExprPtr> body(const Datum& d, std::size_t first) {
        std::vector<ExprPtr> exprs;
        for (std::size_t i = first; i < d.items.size(); ++i) {
            exprs.push_back(analyze(d.items[i]));
        }
        return exprs;
    }

    ExprPtr make_lambda(std::vector<std::string> params, std::vector<ExprPtr> exprs,
                        std::optional<std::string> name, SourceSpan span) {
        ExprPtr item = make_sequence(exprs);
        return make_expr(Lambda{std::move(params), std::move(exprs), std::move(item), std::move(name)},
                         span);
    }

    ExprPtr analyze_lambda(const Datum& d) {
        if (d.items.size() < 3) {
            throw parse_error("lambda expects a parameter list and a body", d.span);
        }
        return make_lambda(parameters(d.items[1], 0), body(d, 2), std::nullopt, d.span);
    }

    ExprPtr analyze_define(const Datum& d) {
        if (d.items.size() < 3) {
            throw parse_error("define expects a name and a value", d.span);
        }
        const Datum& target = d.items[1];
        if (target.type == Datum::kind::list) {
            if (target.items.empty() || !is_symbol(target.items.front())) {
                throw parse_error("define expects a procedure name", target.span);
            }
            const std::string& name = target.items.front().atom.text;
            ExprPtr lambda = make_lambda(parameters(target, 1), body(d, 2), name, d.span);
            return make_expr(Define{name, std::move(lambda), true}, d.span);
        }
        if (!is_symbol(target)) {
            throw parse_error("define expects a name", target.span);
        }
        if (d.items.size() != 3) {
            throw parse_error("define expects exactly one value", d.span);
        }
        ExprPtr value = analyze(d.items[2]);
        if (const Lambda* lam = value->as<Lambda>(); lam && !lam->name) {
            Lambda named = *lam;
            named.name = target.atom.text;
            value = make_expr(std::move(named), value->span);
        }
        return make_expr(Define{target.atom.text, std::move(value)}, d.span);
    }

    ExprPtr analyze_set(const Datum& d) {
        if (d.items.size() != 3) {
            throw parse_error("set! expects a name and a value", d.span);
        }
        if (!is_symbol(d.items[1])) {
            throw parse_error("set! expects a name", d.items[1].span);
        }
        return make_expr(SetBang{d.items[1].atom.text, analyze(d.items[2])}, d.span);
    }

    ExprPtr analyze_if(const Datum& d) {
        if (d.items.size() != 3 && d.items.size() != 4) {
            throw parse_error("if expects a test, a consequent and an optional alternative", d.span);
        }
        ExprPtr test = analyze(d.items[1]);
        ExprPtr consequent = analyze(d.items[2]);
        if (d.items.size() == 4) {
            return make_expr(If{std::move(test), std::move(consequent), analyze(d.items[3]), true},
                             d.span);
        }
        // zero-width, just before the closing paren
        SourceSpan at_close = d.span;
        at_close.start_offset = at_close.end_offset = d.span.end_offset - 1;
        at_close.start_line = at_close.end_line = d.span.end_line;
        at_close.start_col = at_close.end_col = d.span.end_col - 1;
        return make_expr(If{std::move(test), std::move(consequent),
                            make_expr(UnspecifiedLit{}, at_close), false},
                         d.span);
    }

    ExprPtr analyze_begin(const Datum& d) {
        if (d.items.size() < 2) {
            throw parse_error("empty (begin)", d.span);
        }
        return make_expr(Begin{body(d, 1)}, d.span);
    }
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

ExprPtr desugar_quote(const Datum& datum, SourceSpan quote_span) { return quote_datum(datum, quote_span); }

std::vector<ExprPtr> parse_program(std::string_view source) {
    const std::vector<Token> tokens = tokenize(source);
    DatumReader reader(tokens, source);
    Analyzer analyzer;
    std::vector<ExprPtr> program;
    while (!reader.done()) {
        program.push_back(analyzer.analyze(reader.read()));
    }
    return program;
}

}  // namespace cse
