#include "exact.hpp"

#include <cctype>

namespace toric {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Integer parse_integer(std::string_view s) {
    if (s[0] == '+') s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text, const std::string& field) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    if (!is_integer_literal(num))
        throw InputError(field, field + ": malformed rational \"" + std::string(text) + "\"");
    Rational q;
    if (slash == std::string_view::npos) {
        q = Rational(parse_integer(num));
    } else {
        std::string_view den = text.substr(slash + 1);
        if (!is_integer_literal(den) || den[0] == '-')
            throw InputError(field, field + ": malformed rational \"" + std::string(text) + "\"");
        Integer d = parse_integer(den);
        if (d == 0) throw InputError(field, field + ": zero denominator in \"" + std::string(text) + "\"");
        q = Rational(parse_integer(num), d);
    }
    q.canonicalize();
    return q;
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal(const Rational& q, int places) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    Integer num = abs(q.get_num()) * scale;
    const Integer& den = q.get_den();
    Integer quot = num / den;
    Integer rem = num - quot * den;
    if (2 * rem >= den) quot += 1;

    std::string digits = quot.get_str();
    if (static_cast<int>(digits.size()) <= places)
        digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    std::string out;
    if (q < 0 && quot != 0) out += '-';
    out += digits.substr(0, digits.size() - static_cast<std::size_t>(places));
    if (places > 0) {
        out += '.';
        out += digits.substr(digits.size() - static_cast<std::size_t>(places));
    }
    return out;
}

}  // namespace toric
