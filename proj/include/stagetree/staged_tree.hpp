#pragma once

#include "stagetree/errors.hpp"
#include "stagetree/polynomial.hpp"
#include "stagetree/symbol.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace stagetree {

struct VertexId {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(VertexId, VertexId) = default;
};

// Unvalidated tree as read from a document: vertices named by strings,
// edges given per vertex in declaration order.
struct TreeDescription {
    struct Edge {
        std::string to;
        std::string label;

        friend bool operator==(const Edge&, const Edge&) = default;
    };
    struct Vertex {
        std::string id;
        std::vector<Edge> edges;

        friend bool operator==(const Vertex&, const Vertex&) = default;
    };

    std::string root;
    std::vector<Vertex> vertices;
    // Overrides the default atom names p1..pn when non-empty.
    std::vector<std::string> atom_names;

    friend bool operator==(const TreeDescription&, const TreeDescription&) = default;
};

struct Violation {
    enum class Kind {
        EmptyTree,
        DuplicateVertex,
        UnknownRoot,
        UnknownChild,
        MultipleParents,
        RootHasParent,
        Unreachable,
        UnaryVertex,
        DuplicateLabel,
        InconsistentStageLabels,
        AtomNameCount,
        NameClash,
    };

    Kind kind;
    std::string vertex;
    std::string message;
};

std::string_view to_string(Violation::Kind kind);

using ValidationReport = std::vector<Violation>;

// Lists every structural problem; an empty report means the description
// builds a StagedTree.
ValidationReport validate_tree(const TreeDescription& description);

class ValidationError : public Error {
public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

struct Edge {
    VertexId child;
    SymbolId label;
};

struct Atom {
    std::size_t number; // 1-based
    VertexId leaf;
    SymbolId symbol;
    std::vector<VertexId> path; // root first
};

struct StageClass {
    std::vector<VertexId> vertices;
    // Labels in the edge order of the first vertex of the class.
    std::vector<SymbolId> labels;

    std::size_t multiplicity() const { return vertices.size(); }
    std::size_t edges_per_vertex() const { return labels.size(); }
};

struct StagePartition {
    std::vector<StageClass> classes;
};

// Immutable rooted tree with edge labels. Atoms, p_[v] and t(v) are computed
// once at construction, so every query is a const lookup.
class StagedTree {
public:
    // Throws ValidationError when validate_tree reports anything.
    static StagedTree build(const TreeDescription& description);

    const SymbolTable& symbols() const { return *symbols_; }
    std::shared_ptr<const SymbolTable> shared_symbols() const { return symbols_; }

    VertexId root() const { return root_; }
    std::size_t vertex_count() const { return names_.size(); }
    std::size_t edge_count() const { return vertex_count() - 1; }
    const std::string& vertex_name(VertexId v) const;
    // Throws UnknownVertex.
    VertexId vertex(std::string_view name) const;
    bool is_leaf(VertexId v) const { return children(v).empty(); }
    const std::vector<Edge>& children(VertexId v) const;
    std::optional<VertexId> parent(VertexId v) const;
    // Label of the edge into v; nullopt for the root.
    std::optional<SymbolId> incoming_label(VertexId v) const;
    std::optional<VertexId> child_with_label(VertexId v, SymbolId label) const;
    bool is_ancestor_or_self(VertexId ancestor, VertexId v) const;
    std::size_t depth(VertexId v) const;
    // Vertices in depth-first preorder, children in declaration order.
    const std::vector<VertexId>& preorder() const { return preorder_; }

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t atom_count() const { return atoms_.size(); }
    std::vector<SymbolId> atom_symbols() const;
    std::vector<SymbolId> label_symbols() const;

    // 1-based indices of root-to-leaf paths through v.
    std::vector<std::size_t> paths_through(VertexId v) const;
    const Polynomial& p_bracket(VertexId v) const;
    const Polynomial& t_polynomial(VertexId v) const;
    // Product of edge labels from `from` down to its descendant `to`.
    Monomial label_product(VertexId from, VertexId to) const;

    const StagePartition& stages() const { return stages_; }
    bool same_stage(VertexId v, VertexId w) const;
    // Index into stages().classes, nullopt for leaves.
    std::optional<std::size_t> stage_of(VertexId v) const;
    bool same_position(VertexId v, VertexId w) const;
    // Non-leaf vertices grouped by stage and identical t(v).
    std::vector<std::vector<VertexId>> position_classes() const;

    // The description this tree was built from, in declaration order.
    const TreeDescription& description() const { return description_; }

    // Construction is deterministic, so equal descriptions give equal trees.
    friend bool operator==(const StagedTree& a, const StagedTree& b) { return a.description_ == b.description_; }

private:
    StagedTree() = default;
    void check(VertexId v) const;

    TreeDescription description_;
    std::shared_ptr<const SymbolTable> symbols_;
    std::vector<std::string> names_;
    std::vector<std::vector<Edge>> children_;
    std::vector<std::optional<VertexId>> parent_;
    std::vector<std::optional<SymbolId>> incoming_;
    std::vector<std::size_t> depth_;
    std::vector<std::size_t> entry_; // preorder entry time
    std::vector<std::size_t> exit_;  // one past the last descendant's entry time
    std::vector<std::pair<std::size_t, std::size_t>> leaf_range_; // 0-based atom range
    VertexId root_;
    std::vector<VertexId> preorder_;
    std::vector<Atom> atoms_;
    std::vector<Polynomial> p_bracket_;
    std::vector<Polynomial> t_poly_;
    StagePartition stages_;
    std::vector<std::optional<std::size_t>> stage_of_;
};

// Free-function spellings of the tree queries.
inline const std::vector<Atom>& enumerate_atoms(const StagedTree& t) { return t.atoms(); }
inline const StagePartition& stage_classes(const StagedTree& t) { return t.stages(); }

} // namespace stagetree
