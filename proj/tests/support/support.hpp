#pragma once

#include "stagetree/polynomial.hpp"
#include "stagetree/staged_tree.hpp"
#include "stagetree/ideals.hpp"

#include <array>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace stagetree::testing {

// All fixture names, without the .json suffix.
const std::vector<std::string>& fixture_names();
std::filesystem::path fixture_path(std::string_view name);
StagedTree fixture(std::string_view name);

Polynomial poly(const StagedTree& t, std::string_view text);

// Sign-normalized, deduplicated and sorted; comparable with ==.
std::vector<Polynomial> canonical_set(std::vector<Polynomial> ps);
std::vector<Polynomial> parse_set(const StagedTree& t, std::initializer_list<std::string_view> texts);
std::string render_set(const StagedTree& t, const std::vector<Polynomial>& ps);

// The oracles below read only t.description() and t.symbols(): parent links,
// atom order and label products are recomputed from the raw document.
class Oracle {
public:
    explicit Oracle(const StagedTree& t);

    const std::vector<std::string>& leaves_in_order() const { return leaves_; }
    bool is_leaf(const std::string& v) const;
    // Edge labels from `top` down to `v`, sorted; `top` must be an ancestor.
    std::vector<std::string> labels_between(const std::string& top, const std::string& v) const;
    bool ancestor_or_self(const std::string& a, const std::string& v) const;
    std::vector<std::string> descendants_or_self(const std::string& v) const;

    // Sum of the atoms whose root-to-leaf path visits v.
    Polynomial p_bracket(const std::string& v) const;
    // Sum over v-to-leaf paths of the product of labels.
    Polynomial t_by_paths(const std::string& v) const;
    // Number of distinct labels minus number of distinct label sets.
    long free_parameters() const;
    // Brute-force maximal extensions of a seed, as endpoint name quadruples
    // (first.head, first.tail, second.head, second.tail), sorted.
    std::vector<std::array<std::string, 4>> maximal_extensions(const PathPair& seed) const;

private:
    const StagedTree& t_;
    std::map<std::string, std::string> parent_;
    std::map<std::string, std::string> label_in_;
    std::map<std::string, std::vector<std::string>> children_;
    std::vector<std::string> leaves_;
};

// Random polynomial with up to `terms` terms over the given symbols, small
// integer exponents and rational coefficients.
Polynomial random_polynomial(std::mt19937& rng, const std::vector<SymbolId>& symbols, int terms);

} // namespace stagetree::testing
