#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace drc {

using Rational = boost::rational<long long>;

enum class Kind { Integer, Rational, String };

std::string_view kind_name(Kind k);
Kind parse_kind(std::string_view s);  // throws SchemaError

inline bool is_numeric(Kind k) { return k != Kind::String; }

// A typed constant. Numeric kinds compare by value regardless of kind.
struct Constant {
    Kind kind = Kind::String;
    Rational num{0};
    std::string str;

    static Constant number(Rational r, Kind k = Kind::Rational) { return {k, r, {}}; }
    static Constant string(std::string s) { return {Kind::String, Rational{0}, std::move(s)}; }

    bool numeric() const { return is_numeric(kind); }
    std::string to_string() const;  // unquoted
    std::string literal() const;    // strings single-quoted
};

std::strong_ordering operator<=>(const Constant& a, const Constant& b);
bool operator==(const Constant& a, const Constant& b);

// Parses an integer or terminating decimal literal exactly.
Rational parse_decimal(std::string_view text);
std::string format_rational(const Rational& r);

struct Null {
    int domain = -1;
    int index = 0;
    auto operator<=>(const Null&) const = default;
};

// A cell or condition operand: labeled null or constant.
struct Value {
    std::variant<Null, Constant> v;

    Value() : v(Null{}) {}
    Value(Null n) : v(n) {}
    Value(Constant c) : v(std::move(c)) {}

    bool is_null() const { return std::holds_alternative<Null>(v); }
    const Null& null() const { return std::get<Null>(v); }
    const Constant& constant() const { return std::get<Constant>(v); }
};

std::strong_ordering operator<=>(const Value& a, const Value& b);
bool operator==(const Value& a, const Value& b);

std::size_t hash_value(const Constant& c);
std::size_t hash_value(const Value& v);

inline void hash_combine(std::size_t& seed, std::size_t h) {
    seed ^= h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class SchemaError : public Error {
public:
    using Error::Error;
};
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace drc

template <>
struct std::hash<drc::Value> {
    std::size_t operator()(const drc::Value& v) const { return drc::hash_value(v); }
};
template <>
struct std::hash<drc::Constant> {
    std::size_t operator()(const drc::Constant& c) const { return drc::hash_value(c); }
};
