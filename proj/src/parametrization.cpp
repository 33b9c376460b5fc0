#include "stagetree/parametrization.hpp"

#include <algorithm>

namespace stagetree {

SumToOneReduction::SumToOneReduction(const StagedTree& t)
{
    for (const StageClass& c : t.stages().classes) {
        SymbolId last = c.labels.back();
        Polynomial replacement(1L);
        for (SymbolId s : c.labels)
            if (s != last)
                replacement -= Polynomial(s);
        substitution_.emplace(last, std::move(replacement));
        eliminated_.push_back(last);
    }
}

Polynomial phi_toric_image(const StagedTree& t, const Polynomial& f)
{
    Substitution subst;
    for (SymbolId s : f.symbols()) {
        if (!t.symbols().contains(s) || t.symbols().at(s).kind != SymbolKind::AtomProbability)
            throw ForeignSymbol("symbol id " + std::to_string(s.value) + " is not an atom of the tree");
        const Atom& atom = t.atoms()[s.value];
        subst.emplace(s, Polynomial(t.label_product(t.root(), atom.leaf), Rational(1)));
    }
    return substitute(f, subst);
}

Polynomial phi_image(const StagedTree& t, const Polynomial& f)
{
    return SumToOneReduction(t).reduce(phi_toric_image(t, f));
}

Polynomial kernel_sum_element(const StagedTree& t)
{
    return sum_of(t.atom_symbols()) - Polynomial(1L);
}

StarResult star_condition(const StagedTree& t, VertexId v, VertexId w)
{
    if (!t.same_stage(v, w) || t.is_leaf(v))
        throw NotSameStage("'" + t.vertex_name(v) + "' and '" + t.vertex_name(w) + "' are not in one stage");
    const auto& edges = t.children(v);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            SymbolId si = edges[i].label;
            SymbolId sj = edges[j].label;
            VertexId vi = edges[i].child;
            VertexId vj = edges[j].child;
            VertexId wi = *t.child_with_label(w, si);
            VertexId wj = *t.child_with_label(w, sj);
            Polynomial diff = t.t_polynomial(vi) * t.t_polynomial(wj) - t.t_polynomial(wi) * t.t_polynomial(vj);
            if (!diff.is_zero())
                return StarResult{false, StarWitness{si, sj, std::move(diff)}};
        }
    }
    return StarResult{};
}

ToricVerdict is_toric(const StagedTree& t)
{
    ToricVerdict verdict;
    for (auto [v, w] : staged_pairs(t)) {
        if (!t.same_position(v, w))
            verdict.all_stages_are_positions = false;
        StarResult r = star_condition(t, v, w);
        if (!r.holds) {
            verdict.toric = false;
            verdict.failures.push_back({v, w, std::move(*r.witness)});
        }
    }
    return verdict;
}

bool ContainmentReport::passed() const
{
    auto zero = [](const ContainmentEntry& e) { return e.phi.is_zero(); };
    return std::all_of(model.begin(), model.end(), zero) && std::all_of(paths.begin(), paths.end(), zero) &&
           std::all_of(mpaths.begin(), mpaths.end(), zero);
}

bool ContainmentReport::mpaths_toric_binomial() const
{
    return std::all_of(mpaths.begin(), mpaths.end(), [](const ContainmentEntry& e) {
        return e.binomial && e.phi_toric && e.phi_toric->is_zero();
    });
}

ContainmentReport containment_report(const StagedTree& t)
{
    SumToOneReduction reduction(t);
    ContainmentReport report;
    auto fill = [&](const GeneratorSet& set, std::vector<ContainmentEntry>& out, bool toric) {
        for (const Generator& g : set.generators) {
            Polynomial image = phi_toric_image(t, g.polynomial);
            ContainmentEntry e{g.polynomial, reduction.reduce(image), std::nullopt, is_binomial(g.polynomial)};
            if (toric)
                e.phi_toric = std::move(image);
            out.push_back(std::move(e));
        }
    };
    fill(model_invariant_generators(t), report.model, false);
    fill(paths_ideal_generators(t), report.paths, false);
    fill(mpaths_generators(t), report.mpaths, true);
    return report;
}

std::vector<Rational> psi_evaluate(const StagedTree& t, const Assignment& theta)
{
    for (const StageClass& c : t.stages().classes) {
        Rational sum = 0;
        for (SymbolId s : c.labels) {
            auto it = theta.find(s);
            if (it == theta.end())
                throw InvalidSimplexPoint("label '" + t.symbols().name(s) + "' has no value");
            if (sgn(it->second) <= 0)
                throw InvalidSimplexPoint("label '" + t.symbols().name(s) + "' is not positive");
            sum += it->second;
        }
        if (sum != 1)
            throw InvalidSimplexPoint("labels of the stage of '" + t.vertex_name(c.vertices.front()) +
                                      "' sum to " + to_string(sum));
    }
    std::vector<Rational> point;
    point.reserve(t.atom_count());
    for (const Atom& a : t.atoms()) {
        Rational p = 1;
        for (std::size_t k = 1; k < a.path.size(); ++k)
            p *= theta.at(*t.incoming_label(a.path[k]));
        point.push_back(std::move(p));
    }
    return point;
}

} // namespace stagetree
