#include "stagetree/rational.hpp"

#include "stagetree/errors.hpp"

#include <cctype>

namespace stagetree {

namespace {

bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
        s.remove_prefix(1);
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = trim(text);
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+')
        throw Error("malformed rational '" + std::string(text) + "'");
    std::string n(num.front() == '+' ? num.substr(1) : num);
    mpz_class numerator(n, 10);
    mpz_class denominator(std::string(den), 10);
    if (denominator == 0)
        throw Error("zero denominator in '" + std::string(text) + "'");
    Rational q(numerator, denominator);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

} // namespace stagetree
