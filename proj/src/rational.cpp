#include "ceq/rational.hpp"

#include "ceq/error.hpp"

#include <cctype>

namespace ceq {

Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) {
        throw ParseError("rational with zero denominator");
    }
    // The (mpz, mpz) constructor canonicalizes; the string constructor does not.
    return Rational(num, den);
}

namespace {

bool looks_like_integer(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    const std::string num_part = text.substr(0, slash);
    const std::string den_part = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!looks_like_integer(num_part) || !looks_like_integer(den_part)) {
        throw ParseError("not a rational: '" + text + "'");
    }
    return make_rational(Int(num_part), Int(den_part));
}

std::string to_fraction(const Rational& value) {
    return numerator(value).str() + "/" + denominator(value).str();
}

double to_double(const Rational& value) {
    return value.convert_to<double>();
}

}  // namespace ceq
