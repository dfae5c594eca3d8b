#include "drc/value.hpp"

#include <cctype>
#include <limits>

namespace drc {

std::string_view kind_name(Kind k) {
    switch (k) {
    case Kind::Integer: return "integer";
    case Kind::Rational: return "rational";
    case Kind::String: return "string";
    }
    return "?";
}

Kind parse_kind(std::string_view s) {
    if (s == "integer") return Kind::Integer;
    if (s == "rational") return Kind::Rational;
    if (s == "string") return Kind::String;
    throw SchemaError("unknown domain kind '" + std::string(s) + "'");
}

Rational parse_decimal(std::string_view text) {
    if (text.empty()) throw ParseError("empty number");
    bool neg = false;
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') {
        neg = text[0] == '-';
        i = 1;
    }
    long long num = 0, den = 1;
    bool seen_dot = false, seen_digit = false;
    constexpr long long cap = std::numeric_limits<long long>::max() / 10;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.' && !seen_dot) {
            seen_dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("malformed number '" + std::string(text) + "'");
        if (num > cap || (seen_dot && den > cap))
            throw ParseError("number out of range '" + std::string(text) + "'");
        num = num * 10 + (c - '0');
        if (seen_dot) den *= 10;
        seen_digit = true;
    }
    if (!seen_digit) throw ParseError("malformed number '" + std::string(text) + "'");
    return Rational(neg ? -num : num, den);
}

std::string format_rational(const Rational& r) {
    long long n = r.numerator(), d = r.denominator();
    if (d == 1) return std::to_string(n);
    long long dd = d;
    while (dd % 2 == 0) dd /= 2;
    while (dd % 5 == 0) dd /= 5;
    if (dd != 1) return std::to_string(n) + "/" + std::to_string(d);
    std::string sign = n < 0 ? "-" : "";
    long long a = n < 0 ? -n : n;
    std::string out = sign + std::to_string(a / d) + ".";
    long long rem = a % d;
    while (rem != 0) {
        rem *= 10;
        out += static_cast<char>('0' + rem / d);
        rem %= d;
    }
    return out;
}

std::string Constant::to_string() const { return numeric() ? format_rational(num) : str; }

std::string Constant::literal() const {
    if (numeric()) return format_rational(num);
    std::string out = "'";
    for (char c : str) {
        if (c == '\'') out += '\'';
        out += c;
    }
    return out + "'";
}

std::strong_ordering operator<=>(const Constant& a, const Constant& b) {
    if (a.numeric() != b.numeric()) return a.numeric() ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.numeric()) {
        if (a.num < b.num) return std::strong_ordering::less;
        if (b.num < a.num) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    return a.str <=> b.str;
}

bool operator==(const Constant& a, const Constant& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Value& a, const Value& b) {
    if (a.is_null() != b.is_null()) return a.is_null() ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.is_null()) return a.null() <=> b.null();
    return a.constant() <=> b.constant();
}

bool operator==(const Value& a, const Value& b) { return (a <=> b) == 0; }

std::size_t hash_value(const Constant& c) {
    if (c.numeric()) {
        std::size_t h = std::hash<long long>{}(c.num.numerator());
        hash_combine(h, std::hash<long long>{}(c.num.denominator()));
        return h;
    }
    return std::hash<std::string>{}(c.str) ^ 0x5bd1e995;
}

std::size_t hash_value(const Value& v) {
    if (v.is_null()) {
        std::size_t h = std::hash<int>{}(v.null().domain);
        hash_combine(h, std::hash<int>{}(v.null().index));
        return h;
    }
    std::size_t h = hash_value(v.constant());
    hash_combine(h, 0x1234567);
    return h;
}

}  // namespace drc
