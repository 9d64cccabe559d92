#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace toric {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised for malformed or out-of-contract input. `field()` names the
/// offending input field; the message already mentions it.
class InputError : public std::runtime_error {
public:
    InputError(std::string field, const std::string& what)
        : std::runtime_error(what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws InputError.
Rational parse_rational(std::string_view text, const std::string& field);

/// Canonical "p/q" (or "p" when q = 1).
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Decimal expansion rounded half away from zero to `places` digits.
std::string to_decimal(const Rational& q, int places);

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace toric
