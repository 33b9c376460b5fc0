#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace stagetree {

using Rational = mpq_class;

// Accepts "3", "-3", "3/4", "-3/4" with optional surrounding blanks; the
// result is canonicalized. Throws stagetree::Error on malformed input or a
// zero denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

} // namespace stagetree
