#include "stagetree/ideals.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>

namespace stagetree {

std::string_view to_string(IdealKind kind)
{
    switch (kind) {
    case IdealKind::ModelInvariants: return "model";
    case IdealKind::Paths: return "paths";
    case IdealKind::MaximalPaths: return "mpaths";
    }
    return "unknown";
}

std::vector<Polynomial> GeneratorSet::polynomials() const
{
    std::vector<Polynomial> out;
    out.reserve(generators.size());
    for (const auto& g : generators)
        out.push_back(g.polynomial);
    return out;
}

TreePath tree_path(const StagedTree& t, VertexId head, VertexId tail)
{
    TreePath path{head, tail, {}};
    std::vector<VertexId> down;
    VertexId a = head;
    VertexId b = tail;
    while (t.depth(a) > t.depth(b)) {
        path.edges.push_back(a);
        a = *t.parent(a);
    }
    while (t.depth(b) > t.depth(a)) {
        down.push_back(b);
        b = *t.parent(b);
    }
    while (a != b) {
        path.edges.push_back(a);
        down.push_back(b);
        a = *t.parent(a);
        b = *t.parent(b);
    }
    path.edges.insert(path.edges.end(), down.rbegin(), down.rend());
    return path;
}

Polynomial path_difference(const StagedTree& t, const PathPair& pair)
{
    return t.p_bracket(pair.first.head) * t.p_bracket(pair.first.tail) -
           t.p_bracket(pair.second.head) * t.p_bracket(pair.second.tail);
}

PathPair seed_pair(const StagedTree& t, VertexId v, VertexId w, SymbolId label_i, SymbolId label_j)
{
    if (v == w || !t.same_stage(v, w))
        throw NotSameStage("'" + t.vertex_name(v) + "' and '" + t.vertex_name(w) +
                           "' are not two vertices of one stage");
    auto vi = t.child_with_label(v, label_i);
    auto vj = t.child_with_label(v, label_j);
    auto wi = t.child_with_label(w, label_i);
    auto wj = t.child_with_label(w, label_j);
    if (!vi || !vj || !wi || !wj)
        throw Error("label does not emanate from the staged vertices");
    return PathPair{tree_path(t, *vi, *wj), tree_path(t, *wi, *vj), SeedOrigin{v, w, label_i, label_j}};
}

std::vector<PathPair> stage_seeds(const StagedTree& t, VertexId v, VertexId w)
{
    if (v == w || !t.same_stage(v, w))
        throw NotSameStage("'" + t.vertex_name(v) + "' and '" + t.vertex_name(w) +
                           "' are not two vertices of one stage");
    const auto& edges = t.children(v);
    std::vector<PathPair> out;
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j)
            out.push_back(seed_pair(t, v, w, edges[i].label, edges[j].label));
    return out;
}

std::vector<std::pair<VertexId, VertexId>> staged_pairs(const StagedTree& t)
{
    std::vector<std::pair<VertexId, VertexId>> out;
    for (const StageClass& c : t.stages().classes)
        for (std::size_t a = 0; a < c.vertices.size(); ++a)
            for (std::size_t b = a + 1; b < c.vertices.size(); ++b)
                out.emplace_back(c.vertices[a], c.vertices[b]);
    return out;
}

namespace {

// Sign-normalizes, drops zeros, merges duplicates and sorts.
GeneratorSet canonicalize(IdealKind kind, std::vector<std::pair<Polynomial, Provenance>> raw)
{
    std::map<Polynomial, std::vector<Provenance>, PolynomialLess> merged;
    for (auto& [p, origin] : raw) {
        if (p.is_zero())
            continue;
        merged[p.sign_normalized()].push_back(std::move(origin));
    }
    GeneratorSet set{kind, {}, {}};
    for (auto& [p, origins] : merged)
        set.generators.push_back({p, std::move(origins)});
    return set;
}

} // namespace

GeneratorSet model_invariant_generators(const StagedTree& t)
{
    std::vector<std::pair<Polynomial, Provenance>> raw;
    for (auto [v, w] : staged_pairs(t)) {
        for (const Edge& e : t.children(v)) {
            VertexId v_child = e.child;
            VertexId w_child = *t.child_with_label(w, e.label);
            Polynomial g = t.p_bracket(v) * t.p_bracket(w_child) - t.p_bracket(v_child) * t.p_bracket(w);
            raw.push_back({std::move(g), Provenance{v, w, e.label, std::nullopt, std::nullopt}});
        }
    }
    return canonicalize(IdealKind::ModelInvariants, std::move(raw));
}

std::vector<Polynomial> stage_path_generators(const StagedTree& t, VertexId v, VertexId w)
{
    std::vector<Polynomial> out;
    for (const PathPair& seed : stage_seeds(t, v, w))
        out.push_back(path_difference(t, seed).sign_normalized());
    return out;
}

GeneratorSet paths_ideal_generators(const StagedTree& t)
{
    std::vector<std::pair<Polynomial, Provenance>> raw;
    for (auto [v, w] : staged_pairs(t)) {
        for (const PathPair& seed : stage_seeds(t, v, w)) {
            raw.push_back({path_difference(t, seed),
                           Provenance{v, w, seed.origin.label_i, seed.origin.label_j, seed}});
        }
    }
    return canonicalize(IdealKind::Paths, std::move(raw));
}

namespace {

using Endpoints = std::array<VertexId, 4>; // first.head, first.tail, second.head, second.tail

Endpoints endpoints(const PathPair& p)
{
    return {p.first.head, p.first.tail, p.second.head, p.second.tail};
}

struct EndpointsLess {
    bool operator()(const Endpoints& a, const Endpoints& b) const
    {
        for (std::size_t k = 0; k < 4; ++k)
            if (a[k] != b[k])
                return a[k] < b[k];
        return false;
    }
};

PathPair make_pair_from(const StagedTree& t, const Endpoints& e, const SeedOrigin& origin)
{
    return PathPair{tree_path(t, e[0], e[1]), tree_path(t, e[2], e[3]), origin};
}

// Children of x whose edge is not already on the path from x to `other`.
std::vector<Edge> free_children(const StagedTree& t, VertexId x, VertexId other)
{
    std::vector<Edge> out;
    for (const Edge& e : t.children(x))
        if (!t.is_ancestor_or_self(e.child, other))
            out.push_back(e);
    return out;
}

struct Reach {
    VertexId vertex;
    Monomial added;
};

// x itself plus every descendant reachable without reusing a path edge.
std::vector<Reach> free_descendants(const StagedTree& t, VertexId x, VertexId other)
{
    std::vector<Reach> out{{x, Monomial{}}};
    std::vector<Reach> stack;
    for (const Edge& e : free_children(t, x, other))
        stack.push_back({e.child, Monomial{e.label}});
    while (!stack.empty()) {
        Reach r = std::move(stack.back());
        stack.pop_back();
        for (const Edge& e : t.children(r.vertex))
            stack.push_back({e.child, r.added * Monomial{e.label}});
        out.push_back(std::move(r));
    }
    return out;
}

std::string describe(const StagedTree& t, const Endpoints& e)
{
    return "(" + t.vertex_name(e[0]) + "->" + t.vertex_name(e[1]) + ", " + t.vertex_name(e[2]) + "->" +
           t.vertex_name(e[3]) + ")";
}

bool extends(const StagedTree& t, const Endpoints& longer, const Endpoints& shorter)
{
    for (std::size_t k = 0; k < 4; ++k)
        if (!t.is_ancestor_or_self(shorter[k], longer[k]))
            return false;
    return true;
}

} // namespace

std::vector<PathPair> extend_pair(const StagedTree& t, const PathPair& pair)
{
    const Endpoints e = endpoints(pair);
    std::vector<PathPair> out;
    std::set<Endpoints, EndpointsLess> seen;
    for (std::size_t x = 0; x < 2; ++x) {
        for (const Edge& a : free_children(t, e[x], e[1 - x])) {
            for (std::size_t y = 2; y < 4; ++y) {
                for (const Edge& b : free_children(t, e[y], e[5 - y])) {
                    if (a.label != b.label)
                        continue;
                    Endpoints next = e;
                    next[x] = a.child;
                    next[y] = b.child;
                    if (seen.insert(next).second)
                        out.push_back(make_pair_from(t, next, pair.origin));
                }
            }
        }
    }
    return out;
}

ExtensionSearch search_maximal_extensions(const StagedTree& t, const PathPair& seed)
{
    const Endpoints s = endpoints(seed);

    // Exhaustive pass: all endpoint descents whose added label products agree.
    std::map<Monomial, std::vector<std::pair<VertexId, VertexId>>, MonomialLess> second_side;
    auto c_reach = free_descendants(t, s[2], s[3]);
    auto d_reach = free_descendants(t, s[3], s[2]);
    for (const Reach& c : c_reach)
        for (const Reach& d : d_reach)
            second_side[c.added * d.added].emplace_back(c.vertex, d.vertex);

    std::vector<Endpoints> extensions;
    auto a_reach = free_descendants(t, s[0], s[1]);
    auto b_reach = free_descendants(t, s[1], s[0]);
    for (const Reach& a : a_reach) {
        for (const Reach& b : b_reach) {
            auto it = second_side.find(a.added * b.added);
            if (it == second_side.end())
                continue;
            for (auto [c, d] : it->second)
                extensions.push_back({a.vertex, b.vertex, c, d});
        }
    }
    std::vector<Endpoints> exhaustive;
    for (const Endpoints& p : extensions) {
        bool dominated = std::any_of(extensions.begin(), extensions.end(),
                                     [&](const Endpoints& q) { return q != p && extends(t, q, p); });
        if (!dominated)
            exhaustive.push_back(p);
    }
    std::sort(exhaustive.begin(), exhaustive.end(), EndpointsLess{});

    // Stepwise pass: closure under equal-label one-edge extensions.
    std::set<Endpoints, EndpointsLess> visited{s};
    std::deque<PathPair> queue{seed};
    std::vector<Endpoints> stepwise;
    while (!queue.empty()) {
        PathPair current = std::move(queue.front());
        queue.pop_front();
        auto next = extend_pair(t, current);
        if (next.empty())
            stepwise.push_back(endpoints(current));
        for (PathPair& p : next)
            if (visited.insert(endpoints(p)).second)
                queue.push_back(std::move(p));
    }
    std::sort(stepwise.begin(), stepwise.end(), EndpointsLess{});

    ExtensionSearch result;
    for (const Endpoints& e : exhaustive)
        result.maximal.push_back(make_pair_from(t, e, seed.origin));
    for (const Endpoints& e : stepwise)
        if (!std::binary_search(exhaustive.begin(), exhaustive.end(), e, EndpointsLess{}))
            result.diagnostics.push_back("stepwise-maximal pair " + describe(t, e) +
                                         " admits a multi-edge completion with equal label product");
    for (const Endpoints& e : exhaustive)
        if (!std::binary_search(stepwise.begin(), stepwise.end(), e, EndpointsLess{}))
            result.diagnostics.push_back("maximal pair " + describe(t, e) +
                                         " is not reachable by equal-label single-edge steps");
    return result;
}

bool fully_extends(const StagedTree& t, const PathPair& seed)
{
    auto maximal = maximal_extensions(t, seed);
    return std::all_of(maximal.begin(), maximal.end(), [&](const PathPair& p) {
        return t.is_leaf(p.first.head) && t.is_leaf(p.first.tail) && t.is_leaf(p.second.head) &&
               t.is_leaf(p.second.tail);
    });
}

GeneratorSet mpaths_generators(const StagedTree& t)
{
    std::vector<std::pair<Polynomial, Provenance>> raw;
    std::vector<std::string> diagnostics;
    for (auto [v, w] : staged_pairs(t)) {
        for (const PathPair& seed : stage_seeds(t, v, w)) {
            auto search = search_maximal_extensions(t, seed);
            for (PathPair& p : search.maximal) {
                Polynomial g = path_difference(t, p);
                raw.push_back({std::move(g), Provenance{v, w, seed.origin.label_i, seed.origin.label_j,
                                                        std::move(p)}});
            }
            for (auto& d : search.diagnostics)
                diagnostics.push_back(std::move(d));
        }
    }
    GeneratorSet set = canonicalize(IdealKind::MaximalPaths, std::move(raw));
    set.diagnostics = std::move(diagnostics);
    return set;
}

Polynomial denominator_product(const StagedTree& t)
{
    Polynomial product(1L);
    for (const StageClass& c : t.stages().classes)
        if (c.multiplicity() >= 2)
            for (VertexId v : c.vertices)
                product *= t.p_bracket(v);
    return product;
}

DimensionReport dimension_report(const StagedTree& t)
{
    DimensionReport r{0, 0, t.edge_count(), 0};
    long correction = 0;
    for (const StageClass& c : t.stages().classes) {
        long k = static_cast<long>(c.edges_per_vertex());
        long m = static_cast<long>(c.multiplicity());
        r.by_stages += k - 1;
        r.internal_vertices += c.multiplicity();
        correction += (m - 1) * (k - 1);
    }
    r.by_edges = static_cast<long>(r.edges) - static_cast<long>(r.internal_vertices) - correction;
    return r;
}

long model_dimension(const StagedTree& t)
{
    DimensionReport r = dimension_report(t);
    if (r.by_stages != r.by_edges)
        throw Error("dimension formulas disagree: " + std::to_string(r.by_stages) + " vs " +
                    std::to_string(r.by_edges));
    return r.by_stages;
}

} // namespace stagetree
