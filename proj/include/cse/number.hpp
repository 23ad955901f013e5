#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace cse {

using Integer = boost::multiprecision::cpp_int;

/// Exact integer of arbitrary size or a binary64 real. Mixed operations
/// promote to real.
class Number {
public:
    Number() : rep_(Integer(0)) {}
    Number(Integer value) : rep_(std::move(value)) {}
    Number(double value) : rep_(value) {}
    Number(int value) : rep_(Integer(value)) {}
    Number(long long value) : rep_(Integer(value)) {}

    bool is_exact() const { return std::holds_alternative<Integer>(rep_); }
    const Integer& exact() const { return std::get<Integer>(rep_); }
    double to_double() const;
    bool is_zero() const;

    friend Number operator+(const Number& a, const Number& b);
    friend Number operator-(const Number& a, const Number& b);
    friend Number operator*(const Number& a, const Number& b);

    /// Exact when both are exact and the division leaves no remainder.
    /// Throws primitive_error on an exact zero divisor.
    friend Number divide(const Number& a, const Number& b);
    friend Number negate(const Number& a);

    /// Numeric comparison across exactness (`=`, `<`, ...). NaN compares
    /// unordered.
    friend std::partial_ordering compare(const Number& a, const Number& b);

    /// Same exactness and same value (`eqv?`).
    friend bool identical(const Number& a, const Number& b);

    /// Integers in base 10; reals as the shortest round-trip decimal, always
    /// carrying a `.` or exponent so they read back as reals.
    std::string to_string() const;

    /// Parses a reader number lexeme. Returns nullopt for malformed input.
    static std::optional<Number> parse(std::string_view lexeme);

private:
    std::variant<Integer, double> rep_;
};

}  // namespace cse
