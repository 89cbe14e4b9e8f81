#include "treebed/rational.hpp"

#include <cctype>

namespace treebed {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

BigInt parse_digits(std::string_view s, std::string_view full) {
    if (!all_digits(s)) {
        throw Error(Errc::parse, "malformed rational: '" + std::string(full) + "'");
    }
    BigInt value = 0;
    for (char c : s) {
        value = value * 10 + (c - '0');
    }
    return value;
}

} // namespace

Rat parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) {
        throw Error(Errc::parse, "malformed rational: '" + std::string(text) + "'");
    }

    Rat value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_digits(s.substr(0, slash), text);
        BigInt den = parse_digits(s.substr(slash + 1), text);
        if (den == 0) {
            throw Error(Errc::parse, "zero denominator: '" + std::string(text) + "'");
        }
        value = Rat(num, den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if (whole.empty() && frac.empty()) {
            throw Error(Errc::parse, "malformed rational: '" + std::string(text) + "'");
        }
        BigInt num = whole.empty() ? BigInt(0) : parse_digits(whole, text);
        BigInt den = 1;
        for (char c : frac) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                throw Error(Errc::parse, "malformed rational: '" + std::string(text) + "'");
            }
            num = num * 10 + (c - '0');
            den *= 10;
        }
        value = Rat(num, den);
    } else {
        value = Rat(parse_digits(s, text));
    }
    return negative ? Rat(-value) : value;
}

std::string format_rational(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

} // namespace treebed
