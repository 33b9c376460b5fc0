#include "stagetree/staged_tree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace stagetree {

std::string_view to_string(Violation::Kind kind)
{
    switch (kind) {
    case Violation::Kind::EmptyTree: return "empty tree";
    case Violation::Kind::DuplicateVertex: return "duplicate vertex";
    case Violation::Kind::UnknownRoot: return "unknown root";
    case Violation::Kind::UnknownChild: return "unknown child";
    case Violation::Kind::MultipleParents: return "multiple parents";
    case Violation::Kind::RootHasParent: return "root has parent";
    case Violation::Kind::Unreachable: return "unreachable vertex";
    case Violation::Kind::UnaryVertex: return "unary vertex";
    case Violation::Kind::DuplicateLabel: return "duplicate label";
    case Violation::Kind::InconsistentStageLabels: return "inconsistent stage labels";
    case Violation::Kind::AtomNameCount: return "atom name count";
    case Violation::Kind::NameClash: return "name clash";
    }
    return "unknown";
}

namespace {

std::string describe(const ValidationReport& report)
{
    std::string out = "invalid staged tree:";
    for (const auto& v : report) {
        out += "\n  ";
        out += to_string(v.kind);
        if (!v.vertex.empty())
            out += " at '" + v.vertex + "'";
        out += ": " + v.message;
    }
    return out;
}

} // namespace

ValidationError::ValidationError(ValidationReport report)
    : Error(describe(report)), report_(std::move(report))
{
}

ValidationReport validate_tree(const TreeDescription& d)
{
    using Kind = Violation::Kind;
    ValidationReport report;
    if (d.vertices.empty()) {
        report.push_back({Kind::EmptyTree, "", "the document declares no vertices"});
        return report;
    }

    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < d.vertices.size(); ++i) {
        if (!index.emplace(d.vertices[i].id, i).second)
            report.push_back({Kind::DuplicateVertex, d.vertices[i].id, "vertex id declared twice"});
    }
    auto root = index.find(d.root);
    if (root == index.end()) {
        report.push_back({Kind::UnknownRoot, d.root, "root is not a declared vertex"});
        return report;
    }

    std::vector<int> parents(d.vertices.size(), 0);
    for (const auto& v : d.vertices) {
        std::set<std::string> seen;
        for (const auto& e : v.edges) {
            auto it = index.find(e.to);
            if (it == index.end()) {
                report.push_back({Kind::UnknownChild, v.id, "edge to undeclared vertex '" + e.to + "'"});
                continue;
            }
            if (++parents[it->second] == 2)
                report.push_back({Kind::MultipleParents, e.to, "vertex has more than one incoming edge"});
            if (it->second == root->second)
                report.push_back({Kind::RootHasParent, e.to, "the root has an incoming edge"});
            if (!seen.insert(e.label).second)
                report.push_back({Kind::DuplicateLabel, v.id, "label '" + e.label + "' used twice"});
        }
        if (v.edges.size() == 1)
            report.push_back({Kind::UnaryVertex, v.id, "vertex has exactly one emanating edge"});
    }

    // Reachability; with single parents and a parentless root this also rules out cycles.
    std::vector<bool> reached(d.vertices.size(), false);
    std::vector<std::size_t> stack{root->second};
    std::size_t leaves = 0;
    while (!stack.empty()) {
        std::size_t i = stack.back();
        stack.pop_back();
        if (reached[i])
            continue;
        reached[i] = true;
        if (d.vertices[i].edges.empty())
            ++leaves;
        for (const auto& e : d.vertices[i].edges)
            if (auto it = index.find(e.to); it != index.end() && !reached[it->second])
                stack.push_back(it->second);
    }
    for (std::size_t i = 0; i < d.vertices.size(); ++i)
        if (!reached[i])
            report.push_back({Kind::Unreachable, d.vertices[i].id, "vertex is not reachable from the root"});

    // Stage consistency: label sets of two vertices are equal or disjoint.
    std::map<std::string, std::size_t> first_user;
    std::set<std::pair<std::size_t, std::size_t>> reported;
    auto label_set = [&](std::size_t i) {
        std::set<std::string> s;
        for (const auto& e : d.vertices[i].edges)
            s.insert(e.label);
        return s;
    };
    for (std::size_t i = 0; i < d.vertices.size(); ++i) {
        auto mine = label_set(i);
        for (const auto& label : mine) {
            auto [it, inserted] = first_user.emplace(label, i);
            if (inserted)
                continue;
            std::size_t other = it->second;
            if (label_set(other) != mine && reported.emplace(other, i).second) {
                report.push_back({Kind::InconsistentStageLabels, d.vertices[i].id,
                                  "shares label '" + label + "' with '" + d.vertices[other].id +
                                      "' but the label sets differ"});
            }
        }
    }

    // Atom names versus label names.
    std::vector<std::string> atom_names = d.atom_names;
    if (!atom_names.empty() && atom_names.size() != leaves) {
        report.push_back({Kind::AtomNameCount, "",
                          std::to_string(atom_names.size()) + " atom names for " + std::to_string(leaves) +
                              " leaves"});
    }
    if (atom_names.empty())
        for (std::size_t i = 1; i <= leaves; ++i)
            atom_names.push_back("p" + std::to_string(i));
    std::set<std::string> names;
    for (const auto& n : atom_names)
        if (!names.insert(n).second)
            report.push_back({Kind::NameClash, "", "atom name '" + n + "' used twice"});
    for (const auto& [label, user] : first_user)
        if (names.contains(label))
            report.push_back({Kind::NameClash, d.vertices[user].id,
                              "label '" + label + "' collides with an atom name"});
    return report;
}

StagedTree StagedTree::build(const TreeDescription& d)
{
    if (auto report = validate_tree(d); !report.empty())
        throw ValidationError(std::move(report));

    StagedTree t;
    t.description_ = d;
    const std::size_t n = d.vertices.size();
    std::unordered_map<std::string, std::uint32_t> index;
    for (std::uint32_t i = 0; i < n; ++i) {
        index.emplace(d.vertices[i].id, i);
        t.names_.push_back(d.vertices[i].id);
    }
    t.root_ = VertexId{index.at(d.root)};
    t.children_.resize(n);
    t.parent_.resize(n);
    t.incoming_.resize(n);
    t.depth_.assign(n, 0);
    t.entry_.assign(n, 0);
    t.exit_.assign(n, 0);
    t.leaf_range_.assign(n, {0, 0});

    // Preorder walk fixes atom numbering and the label creation order.
    std::vector<VertexId> leaves;
    std::vector<std::string> label_order;
    std::set<std::string> labels_seen;
    std::function<void(VertexId, std::size_t)> walk = [&](VertexId v, std::size_t depth) {
        t.depth_[v.value] = depth;
        t.entry_[v.value] = t.preorder_.size();
        t.preorder_.push_back(v);
        std::size_t first_leaf = leaves.size();
        const auto& edges = d.vertices[v.value].edges;
        if (edges.empty())
            leaves.push_back(v);
        for (const auto& e : edges) {
            if (labels_seen.insert(e.label).second)
                label_order.push_back(e.label);
            VertexId c{index.at(e.to)};
            t.parent_[c.value] = v;
            walk(c, depth + 1);
        }
        t.exit_[v.value] = t.preorder_.size();
        t.leaf_range_[v.value] = {first_leaf, leaves.size()};
    };
    walk(t.root_, 0);

    auto table = std::make_shared<SymbolTable>();
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        std::string name = d.atom_names.empty() ? "p" + std::to_string(i + 1) : d.atom_names[i];
        table->add(std::move(name), SymbolKind::AtomProbability);
    }
    for (const auto& label : label_order)
        table->add(label, SymbolKind::EdgeLabel);
    t.symbols_ = table;

    for (std::uint32_t i = 0; i < n; ++i) {
        for (const auto& e : d.vertices[i].edges) {
            VertexId c{index.at(e.to)};
            SymbolId label = *table->find(e.label);
            t.children_[i].push_back({c, label});
            t.incoming_[c.value] = label;
        }
    }

    for (std::size_t i = 0; i < leaves.size(); ++i) {
        Atom a{i + 1, leaves[i], SymbolId{static_cast<std::uint32_t>(i)}, {}};
        for (std::optional<VertexId> v = leaves[i]; v; v = t.parent_[v->value])
            a.path.push_back(*v);
        std::reverse(a.path.begin(), a.path.end());
        t.atoms_.push_back(std::move(a));
    }

    t.p_bracket_.resize(n);
    t.t_poly_.resize(n);
    for (auto it = t.preorder_.rbegin(); it != t.preorder_.rend(); ++it) {
        VertexId v = *it;
        auto [lo, hi] = t.leaf_range_[v.value];
        std::vector<SymbolId> atoms;
        for (std::size_t k = lo; k < hi; ++k)
            atoms.push_back(t.atoms_[k].symbol);
        t.p_bracket_[v.value] = sum_of(atoms);
        if (t.children_[v.value].empty()) {
            t.t_poly_[v.value] = Polynomial(1L);
        } else {
            Polynomial acc;
            for (const Edge& e : t.children_[v.value])
                acc += Polynomial(e.label) * t.t_poly_[e.child.value];
            t.t_poly_[v.value] = std::move(acc);
        }
    }

    std::map<std::vector<SymbolId>, std::size_t> by_labels;
    t.stage_of_.assign(n, std::nullopt);
    for (VertexId v : t.preorder_) {
        const auto& edges = t.children_[v.value];
        if (edges.empty())
            continue;
        std::vector<SymbolId> key;
        for (const Edge& e : edges)
            key.push_back(e.label);
        std::vector<SymbolId> ordered = key;
        std::sort(key.begin(), key.end());
        auto [it, inserted] = by_labels.emplace(key, t.stages_.classes.size());
        if (inserted)
            t.stages_.classes.push_back({{}, ordered});
        t.stages_.classes[it->second].vertices.push_back(v);
        t.stage_of_[v.value] = it->second;
    }
    return t;
}

void StagedTree::check(VertexId v) const
{
    if (v.value >= names_.size())
        throw UnknownVertex("vertex id " + std::to_string(v.value) + " is not in the tree");
}

const std::string& StagedTree::vertex_name(VertexId v) const
{
    check(v);
    return names_[v.value];
}

VertexId StagedTree::vertex(std::string_view name) const
{
    for (std::uint32_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return VertexId{i};
    throw UnknownVertex("no vertex named '" + std::string(name) + "'");
}

const std::vector<Edge>& StagedTree::children(VertexId v) const
{
    check(v);
    return children_[v.value];
}

std::optional<VertexId> StagedTree::parent(VertexId v) const
{
    check(v);
    return parent_[v.value];
}

std::optional<SymbolId> StagedTree::incoming_label(VertexId v) const
{
    check(v);
    return incoming_[v.value];
}

std::optional<VertexId> StagedTree::child_with_label(VertexId v, SymbolId label) const
{
    for (const Edge& e : children(v))
        if (e.label == label)
            return e.child;
    return std::nullopt;
}

bool StagedTree::is_ancestor_or_self(VertexId ancestor, VertexId v) const
{
    check(ancestor);
    check(v);
    return entry_[ancestor.value] <= entry_[v.value] && entry_[v.value] < exit_[ancestor.value];
}

std::size_t StagedTree::depth(VertexId v) const
{
    check(v);
    return depth_[v.value];
}

std::vector<SymbolId> StagedTree::atom_symbols() const
{
    std::vector<SymbolId> out;
    for (const Atom& a : atoms_)
        out.push_back(a.symbol);
    return out;
}

std::vector<SymbolId> StagedTree::label_symbols() const
{
    std::vector<SymbolId> out;
    for (const Symbol& s : symbols_->symbols())
        if (s.kind == SymbolKind::EdgeLabel)
            out.push_back(s.id);
    return out;
}

std::vector<std::size_t> StagedTree::paths_through(VertexId v) const
{
    check(v);
    auto [lo, hi] = leaf_range_[v.value];
    std::vector<std::size_t> out;
    for (std::size_t k = lo; k < hi; ++k)
        out.push_back(k + 1);
    return out;
}

const Polynomial& StagedTree::p_bracket(VertexId v) const
{
    check(v);
    return p_bracket_[v.value];
}

const Polynomial& StagedTree::t_polynomial(VertexId v) const
{
    check(v);
    return t_poly_[v.value];
}

Monomial StagedTree::label_product(VertexId from, VertexId to) const
{
    if (!is_ancestor_or_self(from, to))
        throw Error("'" + vertex_name(from) + "' is not an ancestor of '" + vertex_name(to) + "'");
    std::vector<Monomial::Factor> factors;
    for (VertexId v = to; v != from; v = *parent_[v.value])
        factors.push_back({*incoming_[v.value], 1});
    return Monomial(std::move(factors));
}

std::optional<std::size_t> StagedTree::stage_of(VertexId v) const
{
    check(v);
    return stage_of_[v.value];
}

bool StagedTree::same_stage(VertexId v, VertexId w) const
{
    if (v == w) {
        check(v);
        return true;
    }
    auto a = stage_of(v);
    auto b = stage_of(w);
    return a && b && *a == *b;
}

bool StagedTree::same_position(VertexId v, VertexId w) const
{
    return same_stage(v, w) && t_poly_[v.value] == t_poly_[w.value];
}

std::vector<std::vector<VertexId>> StagedTree::position_classes() const
{
    std::vector<std::vector<VertexId>> out;
    for (const StageClass& c : stages_.classes) {
        std::vector<std::vector<VertexId>> split;
        for (VertexId v : c.vertices) {
            auto it = std::find_if(split.begin(), split.end(), [&](const std::vector<VertexId>& group) {
                return t_poly_[group.front().value] == t_poly_[v.value];
            });
            if (it == split.end())
                split.push_back({v});
            else
                it->push_back(v);
        }
        for (auto& group : split)
            out.push_back(std::move(group));
    }
    return out;
}

} // namespace stagetree
