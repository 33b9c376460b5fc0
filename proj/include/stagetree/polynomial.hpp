#pragma once

#include "stagetree/errors.hpp"
#include "stagetree/rational.hpp"
#include "stagetree/symbol.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stagetree {

// Power product of symbols. Factors are kept sorted by symbol id and never
// carry a zero exponent, so equal monomials have equal representations.
class Monomial {
public:
    struct Factor {
        SymbolId symbol;
        std::uint32_t exponent;

        friend bool operator==(const Factor&, const Factor&) = default;
    };

    Monomial() = default;
    explicit Monomial(SymbolId s, std::uint32_t exponent = 1);
    // Factors may come in any order and may repeat; zero exponents are dropped.
    explicit Monomial(std::vector<Factor> factors);

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    std::uint32_t degree() const { return degree_; }
    std::uint32_t exponent(SymbolId s) const;

    // True iff every exponent of *this is at most the one in `other`.
    bool divides(const Monomial& other) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<Factor> factors_;
    std::uint32_t degree_ = 0;
};

// Degree-reverse-lexicographic order with symbol id 0 as the largest variable.
std::strong_ordering degrevlex(const Monomial& a, const Monomial& b);

struct DegRevLexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return degrevlex(a, b) > 0; }
};

// Total order usable as a map key (any strict order works; degrevlex is used).
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return degrevlex(a, b) < 0; }
};

// Sparse multivariate polynomial over Q in canonical form: terms sorted by
// strictly decreasing degrevlex monomial, no zero coefficients.
class Polynomial {
public:
    struct Term {
        Monomial monomial;
        Rational coefficient;

        friend bool operator==(const Term&, const Term&) = default;
    };

    Polynomial() = default;
    Polynomial(long c); // NOLINT(google-explicit-constructor): constants read naturally
    Polynomial(const Rational& c); // NOLINT(google-explicit-constructor)
    explicit Polynomial(SymbolId s);
    Polynomial(Monomial m, Rational c);

    // Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    static Polynomial from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    bool is_constant() const;
    // Degree of the zero polynomial is reported as 0.
    std::uint32_t total_degree() const;
    bool is_homogeneous() const;
    // Leading term in the display order. Requires !is_zero().
    const Term& leading_term() const { return terms_.front(); }
    std::vector<SymbolId> symbols() const;

    // Multiplies by -1 when needed so the leading coefficient is positive.
    Polynomial sign_normalized() const;

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(Polynomial a);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    std::vector<Term> terms_;
};

Polynomial pow(const Polynomial& base, std::uint32_t exponent);

// Total order on canonical polynomials: leading terms first, then coefficients.
std::strong_ordering compare(const Polynomial& a, const Polynomial& b);

struct PolynomialLess {
    bool operator()(const Polynomial& a, const Polynomial& b) const { return compare(a, b) < 0; }
};

using Substitution = std::map<SymbolId, Polynomial>;
using Assignment = std::map<SymbolId, Rational>;

// Simultaneous substitution; symbols absent from the map are kept.
Polynomial substitute(const Polynomial& f, const Substitution& subst);

// Throws UnboundSymbol if a symbol of f is missing from the point.
Rational evaluate(const Polynomial& f, const Assignment& point);

// At most two terms. The zero polynomial and monomials count as binomial.
bool is_binomial(const Polynomial& f);

Polynomial sum_of(std::span<const SymbolId> symbols);

// Renders as e.g. "p1*p3^2 - 2*p4 + 1/2" using names from the table.
std::string to_string(const Polynomial& f, const SymbolTable& table);
std::string to_string(const Monomial& m, const SymbolTable& table);

// Parses the rendering above and the usual infix extras: parentheses,
// implicit multiplication ("p1(p5+p6)", "p1p5"), "^" with integer exponents,
// division by constants and the unicode minus sign. An unknown identifier is
// split at the longest known prefix followed by a letter, otherwise it is an
// error. Throws PolynomialParseError.
Polynomial parse_polynomial(std::string_view text, const SymbolTable& table);

class PolynomialParseError : public Error {
public:
    PolynomialParseError(const std::string& what, std::size_t offset)
        : Error(what), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

} // namespace stagetree
