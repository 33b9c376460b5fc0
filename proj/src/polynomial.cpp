#include "stagetree/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace stagetree {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(SymbolId s, std::uint32_t exponent)
{
    if (exponent > 0) {
        factors_.push_back({s, exponent});
        degree_ = exponent;
    }
}

Monomial::Monomial(std::vector<Factor> factors)
{
    std::sort(factors.begin(), factors.end(),
              [](const Factor& a, const Factor& b) { return a.symbol < b.symbol; });
    for (const Factor& f : factors) {
        if (f.exponent == 0)
            continue;
        if (!factors_.empty() && factors_.back().symbol == f.symbol)
            factors_.back().exponent += f.exponent;
        else
            factors_.push_back(f);
        degree_ += f.exponent;
    }
}

std::uint32_t Monomial::exponent(SymbolId s) const
{
    auto it = std::lower_bound(factors_.begin(), factors_.end(), s,
                               [](const Factor& f, SymbolId id) { return f.symbol < id; });
    return it != factors_.end() && it->symbol == s ? it->exponent : 0;
}

bool Monomial::divides(const Monomial& other) const
{
    if (degree_ > other.degree_)
        return false;
    for (const Factor& f : factors_)
        if (other.exponent(f.symbol) < f.exponent)
            return false;
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial out;
    out.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
        if (j == b.factors_.end() || (i != a.factors_.end() && i->symbol < j->symbol)) {
            out.factors_.push_back(*i++);
        } else if (i == a.factors_.end() || j->symbol < i->symbol) {
            out.factors_.push_back(*j++);
        } else {
            out.factors_.push_back({i->symbol, i->exponent + j->exponent});
            ++i;
            ++j;
        }
    }
    out.degree_ = a.degree_ + b.degree_;
    return out;
}

std::strong_ordering degrevlex(const Monomial& a, const Monomial& b)
{
    if (a.degree() != b.degree())
        return a.degree() <=> b.degree();
    // Same degree: the larger monomial has the smaller exponent in the
    // last (highest id) symbol where the two differ.
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    auto i = fa.rbegin();
    auto j = fb.rbegin();
    while (i != fa.rend() && j != fb.rend()) {
        if (i->symbol == j->symbol) {
            if (i->exponent != j->exponent)
                return j->exponent <=> i->exponent;
            ++i;
            ++j;
        } else if (i->symbol > j->symbol) {
            return std::strong_ordering::less;
        } else {
            return std::strong_ordering::greater;
        }
    }
    if (i != fa.rend())
        return std::strong_ordering::less;
    if (j != fb.rend())
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(long c)
{
    if (c != 0)
        terms_.push_back({Monomial{}, Rational(c)});
}

Polynomial::Polynomial(const Rational& c)
{
    if (c != 0)
        terms_.push_back({Monomial{}, c});
}

Polynomial::Polynomial(SymbolId s)
{
    terms_.push_back({Monomial{s}, Rational(1)});
}

Polynomial::Polynomial(Monomial m, Rational c)
{
    if (c != 0)
        terms_.push_back({std::move(m), std::move(c)});
}

Polynomial Polynomial::from_terms(std::vector<Term> terms)
{
    std::map<Monomial, Rational, DegRevLexGreater> acc;
    for (Term& t : terms) {
        auto [it, inserted] = acc.try_emplace(std::move(t.monomial), t.coefficient);
        if (!inserted)
            it->second += t.coefficient;
    }
    Polynomial out;
    out.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0)
            out.terms_.push_back({m, c});
    return out;
}

bool Polynomial::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

std::uint32_t Polynomial::total_degree() const
{
    return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

bool Polynomial::is_homogeneous() const
{
    return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) {
        return t.monomial.degree() == terms_.front().monomial.degree();
    });
}

std::vector<SymbolId> Polynomial::symbols() const
{
    std::vector<SymbolId> out;
    for (const Term& t : terms_)
        for (const auto& f : t.monomial.factors())
            out.push_back(f.symbol);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Polynomial Polynomial::sign_normalized() const
{
    if (!terms_.empty() && sgn(terms_.front().coefficient) < 0)
        return -*this;
    return *this;
}

namespace {

// Merges two canonical term lists; `sign` is +1 for addition, -1 for subtraction.
std::vector<Polynomial::Term> merge(const std::vector<Polynomial::Term>& a,
                                    const std::vector<Polynomial::Term>& b, int sign)
{
    std::vector<Polynomial::Term> out;
    out.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        auto ord = degrevlex(i->monomial, j->monomial);
        if (ord > 0) {
            out.push_back(*i++);
        } else if (ord < 0) {
            out.push_back({j->monomial, sign > 0 ? j->coefficient : Rational(-j->coefficient)});
            ++j;
        } else {
            Rational c = sign > 0 ? Rational(i->coefficient + j->coefficient)
                                  : Rational(i->coefficient - j->coefficient);
            if (c != 0)
                out.push_back({i->monomial, std::move(c)});
            ++i;
            ++j;
        }
    }
    for (; i != a.end(); ++i)
        out.push_back(*i);
    for (; j != b.end(); ++j)
        out.push_back({j->monomial, sign > 0 ? j->coefficient : Rational(-j->coefficient)});
    return out;
}

} // namespace

Polynomial& Polynomial::operator+=(const Polynomial& other)
{
    terms_ = merge(terms_, other.terms_, +1);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other)
{
    terms_ = merge(terms_, other.terms_, -1);
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other)
{
    *this = *this * other;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::map<Monomial, Rational, DegRevLexGreater> acc;
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            Rational c = ta.coefficient * tb.coefficient;
            auto [it, inserted] = acc.try_emplace(ta.monomial * tb.monomial, c);
            if (!inserted)
                it->second += c;
        }
    }
    Polynomial out;
    out.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0)
            out.terms_.push_back({m, c});
    return out;
}

Polynomial operator-(Polynomial a)
{
    for (auto& t : a.terms_)
        t.coefficient = -t.coefficient;
    return a;
}

Polynomial pow(const Polynomial& base, std::uint32_t exponent)
{
    Polynomial result(1L);
    Polynomial square = base;
    while (exponent > 0) {
        if (exponent & 1U)
            result *= square;
        exponent >>= 1U;
        if (exponent > 0)
            square = square * square;
    }
    return result;
}

std::strong_ordering compare(const Polynomial& a, const Polynomial& b)
{
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    for (std::size_t k = 0; k < ta.size() && k < tb.size(); ++k) {
        if (auto ord = degrevlex(ta[k].monomial, tb[k].monomial); ord != 0)
            return 0 <=> ord; // larger leading monomial sorts first
        int c = cmp(ta[k].coefficient, tb[k].coefficient);
        if (c != 0)
            return c < 0 ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return tb.size() <=> ta.size();
}

Polynomial substitute(const Polynomial& f, const Substitution& subst)
{
    Polynomial out;
    for (const auto& term : f.terms()) {
        Polynomial product(term.coefficient);
        std::vector<Monomial::Factor> kept;
        for (const auto& factor : term.monomial.factors()) {
            auto it = subst.find(factor.symbol);
            if (it == subst.end())
                kept.push_back(factor);
            else
                product *= pow(it->second, factor.exponent);
        }
        if (!kept.empty())
            product *= Polynomial(Monomial(std::move(kept)), Rational(1));
        out += product;
    }
    return out;
}

Rational evaluate(const Polynomial& f, const Assignment& point)
{
    Rational total = 0;
    for (const auto& term : f.terms()) {
        Rational value = term.coefficient;
        for (const auto& factor : term.monomial.factors()) {
            auto it = point.find(factor.symbol);
            if (it == point.end())
                throw UnboundSymbol("symbol id " + std::to_string(factor.symbol.value) +
                                    " has no value in the evaluation point");
            for (std::uint32_t e = 0; e < factor.exponent; ++e)
                value *= it->second;
        }
        total += value;
    }
    return total;
}

bool is_binomial(const Polynomial& f)
{
    return f.size() <= 2;
}

Polynomial sum_of(std::span<const SymbolId> symbols)
{
    std::vector<Polynomial::Term> terms;
    terms.reserve(symbols.size());
    for (SymbolId s : symbols)
        terms.push_back({Monomial{s}, Rational(1)});
    return Polynomial::from_terms(std::move(terms));
}

// --------------------------------------------------------------- rendering

std::string to_string(const Monomial& m, const SymbolTable& table)
{
    std::string out;
    for (const auto& f : m.factors()) {
        if (!out.empty())
            out += '*';
        out += table.name(f.symbol);
        if (f.exponent > 1)
            out += '^' + std::to_string(f.exponent);
    }
    return out.empty() ? "1" : out;
}

std::string to_string(const Polynomial& f, const SymbolTable& table)
{
    if (f.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& t : f.terms()) {
        Rational magnitude = abs(t.coefficient);
        bool negative = sgn(t.coefficient) < 0;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        if (t.monomial.is_one()) {
            out += to_string(magnitude);
        } else {
            if (magnitude != 1)
                out += to_string(magnitude) + "*";
            out += to_string(t.monomial, table);
        }
    }
    return out;
}

// ----------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    Parser(std::string_view text, const SymbolTable& table) : text_(text), table_(table) {}

    Polynomial parse()
    {
        Polynomial p = expression();
        skip_blanks();
        if (pos_ != text_.size())
            fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    std::string_view text_;
    const SymbolTable& table_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw PolynomialParseError(what + " at offset " + std::to_string(pos_), pos_);
    }

    void skip_blanks()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    // Returns the byte length of a minus sign at the cursor (ASCII or U+2212).
    std::size_t minus_at() const
    {
        if (pos_ < text_.size() && text_[pos_] == '-')
            return 1;
        if (text_.substr(pos_, 3) == "\xE2\x88\x92")
            return 3;
        return 0;
    }

    // Byte length of an identifier character at `at`, 0 if there is none.
    // Non-ASCII UTF-8 sequences count as letters, except the minus sign.
    std::size_t identifier_char(std::size_t at, bool first) const
    {
        if (at >= text_.size())
            return 0;
        auto c = static_cast<unsigned char>(text_[at]);
        if (std::isalpha(c) || c == '_' || (!first && std::isdigit(c)))
            return 1;
        if (c < 0xC0 || text_.substr(at, 3) == "\xE2\x88\x92")
            return 0;
        std::size_t n = c >= 0xF0 ? 4 : c >= 0xE0 ? 3 : 2;
        return at + n <= text_.size() ? n : 0;
    }

    bool starts_primary()
    {
        skip_blanks();
        if (pos_ >= text_.size())
            return false;
        char c = text_[pos_];
        return c == '(' || std::isdigit(static_cast<unsigned char>(c)) || identifier_char(pos_, true) > 0;
    }

    Polynomial expression()
    {
        skip_blanks();
        Polynomial acc;
        bool negate = false;
        if (std::size_t n = minus_at(); n > 0) {
            pos_ += n;
            negate = true;
        } else if (pos_ < text_.size() && text_[pos_] == '+') {
            ++pos_;
        }
        acc = term();
        if (negate)
            acc = -acc;
        for (;;) {
            skip_blanks();
            if (pos_ < text_.size() && text_[pos_] == '+') {
                ++pos_;
                acc += term();
            } else if (std::size_t n = minus_at(); n > 0) {
                pos_ += n;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Polynomial term()
    {
        Polynomial acc = power();
        for (;;) {
            skip_blanks();
            if (pos_ < text_.size() && text_[pos_] == '*') {
                ++pos_;
                acc *= power();
            } else if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                std::size_t at = pos_;
                Polynomial divisor = power();
                if (!divisor.is_constant() || divisor.is_zero()) {
                    pos_ = at;
                    fail("division is only defined by nonzero constants");
                }
                Rational inverse = 1 / divisor.leading_term().coefficient;
                acc *= Polynomial(inverse);
            } else if (starts_primary()) {
                acc *= power();
            } else {
                return acc;
            }
        }
    }

    Polynomial power()
    {
        Polynomial base = primary();
        skip_blanks();
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            skip_blanks();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected a nonnegative integer exponent");
            auto e = std::stoul(std::string(text_.substr(start, pos_ - start)));
            return pow(base, static_cast<std::uint32_t>(e));
        }
        return base;
    }

    Polynomial primary()
    {
        skip_blanks();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        char c = text_[pos_];
        if (std::size_t n = minus_at(); n > 0) {
            pos_ += n;
            return -power();
        }
        if (c == '(') {
            ++pos_;
            Polynomial inner = expression();
            skip_blanks();
            if (pos_ >= text_.size() || text_[pos_] != ')')
                fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            return Polynomial(Rational(mpz_class(std::string(text_.substr(start, pos_ - start)), 10)));
        }
        if (identifier_char(pos_, true) > 0) {
            std::size_t start = pos_;
            std::vector<std::size_t> letters; // offsets where a new identifier could begin
            for (bool first = true; std::size_t n = identifier_char(pos_, first); first = false) {
                if (identifier_char(pos_, true) > 0)
                    letters.push_back(pos_ - start);
                pos_ += n;
            }
            std::string_view name = text_.substr(start, pos_ - start);
            if (auto id = table_.find(name))
                return Polynomial(*id);
            // Juxtaposed symbols such as "p1p5": take the longest known
            // prefix that is followed by the start of another identifier.
            for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
                std::size_t len = *it;
                if (len == 0)
                    continue;
                if (auto id = table_.find(name.substr(0, len))) {
                    pos_ = start + len;
                    return Polynomial(*id);
                }
            }
            pos_ = start;
            fail("unknown symbol '" + std::string(name) + "'");
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }
};

} // namespace

Polynomial parse_polynomial(std::string_view text, const SymbolTable& table)
{
    return Parser(text, table).parse();
}

} // namespace stagetree
