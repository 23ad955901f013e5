#include "cse/printer.hpp"

#include "cse/prelude.hpp"

#include <algorithm>

namespace cse {

std::string write_string(std::string_view text) {
    std::string out = "\"";
    for (const char c : text) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default: out += c;
        }
    }
    return out + "\"";
}

const char* Value::kind_name() const {
    static constexpr const char* names[] = {"unspecified", "nil",       "boolean",   "number",
                                            "string",      "symbol",    "pair",      "primitive",
                                            "closure",     "continuation"};
    return names[rep_.index()];
}

namespace {

class Printer {
public:
    Printer(const PairHeap& heap, bool display) : heap_(heap), display_(display) {}

    void print(const Value& v) {
        std::visit([&](const auto& x) { print_rep(x); }, v.rep());
    }

    std::string out;

private:
    void print_rep(const Unspecified&) { out += "#<unspecified>"; }
    void print_rep(const Nil&) { out += "()"; }
    void print_rep(const Boolean& b) { out += b.value ? "#t" : "#f"; }
    void print_rep(const Number& n) { out += n.to_string(); }
    void print_rep(const String& s) { out += display_ ? s.value : write_string(s.value); }
    void print_rep(const Symbol& s) { out += s.name; }
    void print_rep(const PrimitiveSpec* p) { out += "#<primitive " + std::string(p->name) + ">"; }
    void print_rep(const ClosurePtr& c) {
        out += "#<procedure " + c->code().name.value_or("anonymous") + ">";
    }
    void print_rep(const ContinuationPtr&) { out += "#<continuation>"; }

    void print_rep(const PairId& first) {
        const std::size_t depth = path_.size();
        out += '(';
        PairId id = first;
        while (true) {
            if (std::find(path_.begin(), path_.end(), id) != path_.end()) {
                out += "...";
                break;
            }
            path_.push_back(id);
            const PairCell& cell = heap_.cell(id);
            print(cell.car);
            if (const PairId* next = cell.cdr.as<PairId>()) {
                out += ' ';
                id = *next;
                continue;
            }
            if (!cell.cdr.is<Nil>()) {
                out += " . ";
                print(cell.cdr);
            }
            break;
        }
        out += ')';
        path_.resize(depth);
    }

    const PairHeap& heap_;
    bool display_;
    std::vector<PairId> path_;
};

}  // namespace

std::string write_value(const Value& value, const PairHeap& heap) {
    Printer p(heap, false);
    p.print(value);
    return std::move(p.out);
}

std::string display_value(const Value& value, const PairHeap& heap) {
    Printer p(heap, true);
    p.print(value);
    return std::move(p.out);
}

}  // namespace cse
