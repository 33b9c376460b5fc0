#pragma once

#include "stagetree/ideals.hpp"
#include "stagetree/polynomial.hpp"
#include "stagetree/staged_tree.hpp"

#include <optional>
#include <vector>

namespace stagetree {

// Normal form modulo the sum-to-one relations: per stage class, the last
// label (edge order of the class's first vertex) is replaced by
// 1 - (sum of the other labels of the class).
class SumToOneReduction {
public:
    explicit SumToOneReduction(const StagedTree& t);

    const Substitution& substitution() const { return substitution_; }
    const std::vector<SymbolId>& eliminated() const { return eliminated_; }
    Polynomial reduce(const Polynomial& f) const { return substitute(f, substitution_); }

private:
    Substitution substitution_;
    std::vector<SymbolId> eliminated_;
};

// p_i -> product of labels along the i-th root-to-leaf path, no quotient.
// Throws ForeignSymbol if f uses a symbol that is not an atom of t.
Polynomial phi_toric_image(const StagedTree& t, const Polynomial& f);

// phi_toric_image followed by the sum-to-one reduction.
Polynomial phi_image(const StagedTree& t, const Polynomial& f);

// p_1 + ... + p_n - 1.
Polynomial kernel_sum_element(const StagedTree& t);

struct StarWitness {
    SymbolId label_i;
    SymbolId label_j;
    // t(v_i) t(w_j) - t(w_i) t(v_j)
    Polynomial difference;
};

struct StarResult {
    bool holds = true;
    std::optional<StarWitness> witness;
};

// Checks t(v_i) t(w_j) = t(w_i) t(v_j) in the label ring for all aligned
// label pairs. Throws NotSameStage.
StarResult star_condition(const StagedTree& t, VertexId v, VertexId w);

struct StarFailure {
    VertexId v;
    VertexId w;
    StarWitness witness;
};

struct ToricVerdict {
    bool toric = true;
    std::vector<StarFailure> failures;
    // Every staged pair is also a pair of positions, which alone implies toric.
    bool all_stages_are_positions = true;
};

ToricVerdict is_toric(const StagedTree& t);

struct ContainmentEntry {
    Polynomial generator;
    Polynomial phi;
    // Filled for maximal-path generators only.
    std::optional<Polynomial> phi_toric;
    bool binomial = false;
};

struct ContainmentReport {
    std::vector<ContainmentEntry> model;
    std::vector<ContainmentEntry> paths;
    std::vector<ContainmentEntry> mpaths;

    // Every phi image is zero.
    bool passed() const;
    // Every maximal-path generator is binomial and in the toric kernel.
    bool mpaths_toric_binomial() const;
};

ContainmentReport containment_report(const StagedTree& t);

// Throws InvalidSimplexPoint unless every label has a positive value and
// each stage class sums to one.
std::vector<Rational> psi_evaluate(const StagedTree& t, const Assignment& theta);

} // namespace stagetree
