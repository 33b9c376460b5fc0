#pragma once

#include "stagetree/polynomial.hpp"
#include "stagetree/staged_tree.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace stagetree {

struct GeneratorValue {
    Polynomial generator;
    Rational value;
};

struct MembershipVerdict {
    // Entries sum to one and lie strictly between 0 and 1.
    bool in_simplex = false;
    // Every odds-ratio generator vanishes at the point.
    bool invariants_vanish = false;
    std::vector<GeneratorValue> failures;
    // Diagnostic cross-check against the path-difference generators.
    bool path_differences_vanish = false;

    bool member() const { return in_simplex && invariants_vanish; }
};

// Throws LengthMismatch unless the point has one entry per atom.
MembershipVerdict membership(const StagedTree& t, std::span<const Rational> point);

struct EdgeProbability {
    VertexId parent;
    VertexId child;
    SymbolId label;
    Rational value; // p_[child] / p_[parent]
};

struct LabelDisagreement {
    SymbolId label;
    std::vector<Rational> values; // one per vertex of the stage, in class order
};

struct ConditionalReport {
    std::vector<EdgeProbability> edges;
    std::vector<LabelDisagreement> disagreements;

    bool consistent() const { return disagreements.empty(); }
};

// Recovers every edge label as a ratio of vertex probabilities. Throws
// LengthMismatch, ZeroDenominator when some p_[v] is 0, and
// InvalidSimplexPoint for any other point outside the open simplex.
ConditionalReport conditional_probability_report(const StagedTree& t, std::span<const Rational> point);

// Per stage class, integers drawn in [1, 1000] and divided by their sum.
// The generator is std::mt19937_64, so the stream is fixed for a seed.
Assignment sample_theta(const StagedTree& t, std::uint64_t seed);

} // namespace stagetree
