#pragma once

#include "stagetree/polynomial.hpp"
#include "stagetree/staged_tree.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stagetree {

enum class IdealKind { ModelInvariants, Paths, MaximalPaths };

std::string_view to_string(IdealKind kind);

// Vertex-to-vertex path in the tree; edges are named by their child vertex
// and listed from head to tail.
struct TreePath {
    VertexId head;
    VertexId tail;
    std::vector<VertexId> edges;

    friend bool operator==(const TreePath& a, const TreePath& b) { return a.head == b.head && a.tail == b.tail; }
};

TreePath tree_path(const StagedTree& t, VertexId head, VertexId tail);

// The stage pair v~w and the aligned labels s_i, s_j a pair descends from.
struct SeedOrigin {
    VertexId v;
    VertexId w;
    SymbolId label_i;
    SymbolId label_j;

    friend bool operator==(const SeedOrigin&, const SeedOrigin&) = default;
};

// (v_h -> w_t, w_h -> v_t): `first` runs from the v side to the w side.
struct PathPair {
    TreePath first;
    TreePath second;
    SeedOrigin origin;

    // Pairs are the same when their four endpoints agree.
    friend bool operator==(const PathPair& a, const PathPair& b)
    {
        return a.first == b.first && a.second == b.second;
    }
};

// p_[v_h] p_[w_t] - p_[w_h] p_[v_t], not sign-normalized.
Polynomial path_difference(const StagedTree& t, const PathPair& pair);

// The seed (v_i -> w_j, w_i -> v_j) for labels s_i, s_j of the stage v~w.
// Throws NotSameStage, or Error if a label does not emanate from v.
PathPair seed_pair(const StagedTree& t, VertexId v, VertexId w, SymbolId label_i, SymbolId label_j);

// All seeds of one stage pair, i < j in the edge order of v.
std::vector<PathPair> stage_seeds(const StagedTree& t, VertexId v, VertexId w);

// Every unordered pair of distinct vertices sharing a stage, in class order.
std::vector<std::pair<VertexId, VertexId>> staged_pairs(const StagedTree& t);

struct Provenance {
    VertexId v;
    VertexId w;
    // Shared label for odds ratios; (s_i, s_j) for path differences.
    SymbolId label_i;
    std::optional<SymbolId> label_j;
    std::optional<PathPair> pair;
};

struct Generator {
    Polynomial polynomial;
    std::vector<Provenance> origins;
};

struct GeneratorSet {
    IdealKind kind;
    std::vector<Generator> generators;
    // Notes from the extension search (only filled for maximal paths).
    std::vector<std::string> diagnostics;

    std::vector<Polynomial> polynomials() const;
    std::size_t size() const { return generators.size(); }
    bool empty() const { return generators.empty(); }
};

// Odds-ratio differences p_[v] p_[w'] - p_[v'] p_[w] for every staged pair and shared label.
GeneratorSet model_invariant_generators(const StagedTree& t);

// p_[v_i] p_[w_j] - p_[w_i] p_[v_j] for i < j, sign-normalized. Throws NotSameStage.
std::vector<Polynomial> stage_path_generators(const StagedTree& t, VertexId v, VertexId w);

GeneratorSet paths_ideal_generators(const StagedTree& t);

// Pairs obtained by adding one child edge at an endpoint of each path, the
// two new edges carrying the same label.
std::vector<PathPair> extend_pair(const StagedTree& t, const PathPair& pair);

struct ExtensionSearch {
    std::vector<PathPair> maximal;
    // Set when the one-edge-at-a-time closure and the exhaustive
    // product-equality search disagree.
    std::vector<std::string> diagnostics;
};

// Maximal extensions of a pair. The result is the exhaustive answer; the
// stepwise closure runs alongside it and any disagreement is reported.
ExtensionSearch search_maximal_extensions(const StagedTree& t, const PathPair& seed);

inline std::vector<PathPair> maximal_extensions(const StagedTree& t, const PathPair& seed)
{
    return search_maximal_extensions(t, seed).maximal;
}

bool fully_extends(const StagedTree& t, const PathPair& seed);

GeneratorSet mpaths_generators(const StagedTree& t);

// Product of p_[v] over vertices that share their stage with another vertex.
Polynomial denominator_product(const StagedTree& t);

struct DimensionReport {
    long by_stages;           // sum of (k_i - 1)
    long by_edges;            // #E - #V' - sum of (m_i - 1)(k_i - 1)
    std::size_t edges;
    std::size_t internal_vertices;
};

DimensionReport dimension_report(const StagedTree& t);

// Throws Error if the two dimension formulas disagree.
long model_dimension(const StagedTree& t);

} // namespace stagetree
