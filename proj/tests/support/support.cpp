#include "support.hpp"

#include "stagetree/document.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace stagetree::testing {

const std::vector<std::string>& fixture_names()
{
    static const std::vector<std::string> names{
        "same_model_t1",   "same_model_t2",    "same_model_t3",  "eight_leaf_fine",    "eight_leaf_coarse",          "nested_stage",
        "culture_dec", "culture_bn", "culture_full",  "culture_positive", "star_no_positions",
    };
    return names;
}

std::filesystem::path fixture_path(std::string_view name)
{
    return std::filesystem::path(STAGETREE_FIXTURE_DIR) / (std::string(name) + ".json");
}

StagedTree fixture(std::string_view name)
{
    return load_tree_file(fixture_path(name));
}

Polynomial poly(const StagedTree& t, std::string_view text)
{
    return parse_polynomial(text, t.symbols());
}

std::vector<Polynomial> canonical_set(std::vector<Polynomial> ps)
{
    std::vector<Polynomial> out;
    for (const Polynomial& p : ps)
        if (!p.is_zero())
            out.push_back(p.sign_normalized());
    std::sort(out.begin(), out.end(), PolynomialLess{});
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Polynomial> parse_set(const StagedTree& t, std::initializer_list<std::string_view> texts)
{
    std::vector<Polynomial> ps;
    for (std::string_view s : texts)
        ps.push_back(poly(t, s));
    return canonical_set(std::move(ps));
}

std::string render_set(const StagedTree& t, const std::vector<Polynomial>& ps)
{
    std::string out = "{";
    for (std::size_t k = 0; k < ps.size(); ++k)
        out += (k > 0 ? ", " : "") + to_string(ps[k], t.symbols());
    return out + "}";
}

Oracle::Oracle(const StagedTree& t) : t_(t)
{
    const TreeDescription& d = t.description();
    for (const auto& v : d.vertices) {
        children_[v.id];
        for (const auto& e : v.edges) {
            parent_[e.to] = v.id;
            label_in_[e.to] = e.label;
            children_[v.id].push_back(e.to);
        }
    }
    std::function<void(const std::string&)> walk = [&](const std::string& v) {
        if (children_[v].empty())
            leaves_.push_back(v);
        for (const std::string& c : children_[v])
            walk(c);
    };
    walk(d.root);
}

bool Oracle::is_leaf(const std::string& v) const
{
    return children_.at(v).empty();
}

bool Oracle::ancestor_or_self(const std::string& a, const std::string& v) const
{
    std::string x = v;
    while (true) {
        if (x == a)
            return true;
        auto it = parent_.find(x);
        if (it == parent_.end())
            return false;
        x = it->second;
    }
}

std::vector<std::string> Oracle::labels_between(const std::string& top, const std::string& v) const
{
    std::vector<std::string> labels;
    for (std::string x = v; x != top; x = parent_.at(x))
        labels.push_back(label_in_.at(x));
    std::sort(labels.begin(), labels.end());
    return labels;
}

std::vector<std::string> Oracle::descendants_or_self(const std::string& v) const
{
    std::vector<std::string> out{v};
    for (std::size_t k = 0; k < out.size(); ++k)
        for (const std::string& c : children_.at(out[k]))
            out.push_back(c);
    return out;
}

Polynomial Oracle::p_bracket(const std::string& v) const
{
    Polynomial sum;
    for (std::size_t i = 0; i < leaves_.size(); ++i)
        if (ancestor_or_self(v, leaves_[i]))
            sum += Polynomial(t_.atoms()[i].symbol);
    return sum;
}

Polynomial Oracle::t_by_paths(const std::string& v) const
{
    Polynomial sum;
    for (const std::string& leaf : leaves_) {
        if (!ancestor_or_self(v, leaf))
            continue;
        Polynomial product(1L);
        for (const std::string& label : labels_between(v, leaf))
            product *= Polynomial(*t_.symbols().find(label));
        sum += product;
    }
    return sum;
}

long Oracle::free_parameters() const
{
    std::set<std::string> labels;
    std::set<std::vector<std::string>> label_sets;
    for (const auto& v : t_.description().vertices) {
        if (v.edges.empty())
            continue;
        std::vector<std::string> set;
        for (const auto& e : v.edges) {
            labels.insert(e.label);
            set.push_back(e.label);
        }
        std::sort(set.begin(), set.end());
        label_sets.insert(set);
    }
    return static_cast<long>(labels.size()) - static_cast<long>(label_sets.size());
}

std::vector<std::array<std::string, 4>> Oracle::maximal_extensions(const PathPair& seed) const
{
    std::array<std::string, 4> s{t_.vertex_name(seed.first.head), t_.vertex_name(seed.first.tail),
                                 t_.vertex_name(seed.second.head), t_.vertex_name(seed.second.tail)};
    // Descendants of endpoint k that do not walk back along the path to its partner.
    auto candidates = [&](std::size_t k) {
        const std::string& x = s[k];
        const std::string& other = s[k ^ 1U];
        std::vector<std::string> out;
        for (const std::string& d : descendants_or_self(x)) {
            if (d != x) {
                std::string step = d;
                while (parent_.at(step) != x)
                    step = parent_.at(step);
                if (ancestor_or_self(step, other))
                    continue;
            }
            out.push_back(d);
        }
        return out;
    };
    auto merged = [](std::vector<std::string> a, const std::vector<std::string>& b) {
        a.insert(a.end(), b.begin(), b.end());
        std::sort(a.begin(), a.end());
        return a;
    };

    std::array<std::vector<std::string>, 4> c{candidates(0), candidates(1), candidates(2), candidates(3)};
    std::vector<std::array<std::string, 4>> valid;
    for (const auto& a : c[0])
        for (const auto& b : c[1]) {
            auto left = merged(labels_between(s[0], a), labels_between(s[1], b));
            for (const auto& x : c[2])
                for (const auto& y : c[3])
                    if (left == merged(labels_between(s[2], x), labels_between(s[3], y)))
                        valid.push_back({a, b, x, y});
        }

    std::vector<std::array<std::string, 4>> maximal;
    for (const auto& p : valid) {
        bool dominated = false;
        for (const auto& q : valid) {
            if (q == p)
                continue;
            bool below = true;
            for (std::size_t k = 0; k < 4; ++k)
                below = below && ancestor_or_self(p[k], q[k]);
            dominated = dominated || below;
        }
        if (!dominated)
            maximal.push_back(p);
    }
    std::sort(maximal.begin(), maximal.end());
    return maximal;
}

Polynomial random_polynomial(std::mt19937& rng, const std::vector<SymbolId>& symbols, int terms)
{
    std::uniform_int_distribution<int> count(0, terms);
    std::uniform_int_distribution<std::size_t> pick(0, symbols.size() - 1);
    std::uniform_int_distribution<std::uint32_t> exponent(1, 3);
    std::uniform_int_distribution<int> factors(0, 3);
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 5);
    std::vector<Polynomial::Term> out;
    for (int k = count(rng); k > 0; --k) {
        std::vector<Monomial::Factor> fs;
        for (int f = factors(rng); f > 0; --f)
            fs.push_back({symbols[pick(rng)], exponent(rng)});
        Rational c(num(rng), den(rng));
        c.canonicalize();
        out.push_back({Monomial(std::move(fs)), c});
    }
    return Polynomial::from_terms(std::move(out));
}

} // namespace stagetree::testing
