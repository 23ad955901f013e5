#include "cse/number.hpp"

#include "cse/error.hpp"

#include <charconv>
#include <cmath>
#include <regex>

namespace cse {

namespace {

template <typename ExactOp, typename RealOp>
Number arith(const Number& a, const Number& b, ExactOp exact_op, RealOp real_op) {
    if (a.is_exact() && b.is_exact()) {
        return Number(Integer(exact_op(a.exact(), b.exact())));
    }
    return Number(real_op(a.to_double(), b.to_double()));
}

}  // namespace

double Number::to_double() const {
    if (is_exact()) {
        return exact().convert_to<double>();
    }
    return std::get<double>(rep_);
}

bool Number::is_zero() const {
    return is_exact() ? exact().is_zero() : std::get<double>(rep_) == 0.0;
}

Number operator+(const Number& a, const Number& b) {
    return arith(a, b, [](const Integer& x, const Integer& y) { return x + y; },
                 [](double x, double y) { return x + y; });
}

Number operator-(const Number& a, const Number& b) {
    return arith(a, b, [](const Integer& x, const Integer& y) { return x - y; },
                 [](double x, double y) { return x - y; });
}

Number operator*(const Number& a, const Number& b) {
    return arith(a, b, [](const Integer& x, const Integer& y) { return x * y; },
                 [](double x, double y) { return x * y; });
}

Number divide(const Number& a, const Number& b) {
    if (b.is_exact() && b.exact().is_zero()) {
        throw primitive_error(error_kind::division_by_zero, "/: division by zero");
    }
    if (a.is_exact() && b.is_exact()) {
        Integer quotient;
        Integer remainder;
        boost::multiprecision::divide_qr(a.exact(), b.exact(), quotient, remainder);
        if (remainder.is_zero()) {
            return Number(std::move(quotient));
        }
    }
    return Number(a.to_double() / b.to_double());
}

Number negate(const Number& a) {
    if (a.is_exact()) {
        return Number(Integer(-a.exact()));
    }
    return Number(-a.to_double());
}

std::partial_ordering compare(const Number& a, const Number& b) {
    if (a.is_exact() && b.is_exact()) {
        const int c = a.exact().compare(b.exact());
        return c < 0 ? std::partial_ordering::less
                     : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
    }
    return a.to_double() <=> b.to_double();
}

bool identical(const Number& a, const Number& b) {
    if (a.is_exact() != b.is_exact()) {
        return false;
    }
    if (a.is_exact()) {
        return a.exact() == b.exact();
    }
    return a.to_double() == b.to_double();
}

std::string Number::to_string() const {
    if (is_exact()) {
        return exact().str();
    }
    const double value = std::get<double>(rep_);
    if (std::isnan(value)) {
        return "+nan.0";
    }
    if (std::isinf(value)) {
        return value > 0 ? "+inf.0" : "-inf.0";
    }
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    std::string text(buffer, end);
    if (text.find_first_of(".e") == std::string::npos) {
        text += ".0";
    }
    return text;
}

std::optional<Number> Number::parse(std::string_view lexeme) {
    static const std::regex integer_re(R"([+-]?[0-9]+)");
    static const std::regex real_re(R"([+-]?(([0-9]+\.[0-9]*|\.[0-9]+)([eE][+-]?[0-9]+)?|[0-9]+[eE][+-]?[0-9]+))");
    const std::string text(lexeme);
    if (std::regex_match(text, integer_re)) {
        return Number(Integer(text[0] == '+' ? text.substr(1) : text));
    }
    if (std::regex_match(text, real_re)) {
        const char* first = text.data() + (text[0] == '+' ? 1 : 0);
        double value = 0;
        const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
        if (ec == std::errc::result_out_of_range) {
            return Number(std::strtod(text.c_str(), nullptr));
        }
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            return std::nullopt;
        }
        return Number(value);
    }
    return std::nullopt;
}

}  // namespace cse
