#include "stagetree/model.hpp"

#include "stagetree/ideals.hpp"

#include <random>

namespace stagetree {

namespace {

Assignment atom_point(const StagedTree& t, std::span<const Rational> point)
{
    if (point.size() != t.atom_count())
        throw LengthMismatch("point has " + std::to_string(point.size()) + " entries, the tree has " +
                             std::to_string(t.atom_count()) + " atoms");
    Assignment a;
    for (const Atom& atom : t.atoms())
        a.emplace(atom.symbol, point[atom.number - 1]);
    return a;
}

bool in_open_simplex(std::span<const Rational> point)
{
    Rational sum = 0;
    for (const Rational& x : point) {
        if (sgn(x) <= 0 || x >= 1)
            return false;
        sum += x;
    }
    return sum == 1;
}

} // namespace

MembershipVerdict membership(const StagedTree& t, std::span<const Rational> point)
{
    Assignment a = atom_point(t, point);
    MembershipVerdict verdict;
    verdict.in_simplex = in_open_simplex(point);
    // A single atom has the trivial open simplex {1}.
    if (point.size() == 1)
        verdict.in_simplex = point[0] == 1;
    for (const Generator& g : model_invariant_generators(t).generators) {
        Rational value = evaluate(g.polynomial, a);
        if (value != 0)
            verdict.failures.push_back({g.polynomial, value});
    }
    verdict.invariants_vanish = verdict.failures.empty();
    verdict.path_differences_vanish = true;
    for (const Generator& g : paths_ideal_generators(t).generators)
        if (evaluate(g.polynomial, a) != 0)
            verdict.path_differences_vanish = false;
    return verdict;
}

ConditionalReport conditional_probability_report(const StagedTree& t, std::span<const Rational> point)
{
    Assignment a = atom_point(t, point);
    std::vector<Rational> mass(t.vertex_count());
    for (VertexId v : t.preorder()) {
        mass[v.value] = evaluate(t.p_bracket(v), a);
        if (!t.is_leaf(v) && mass[v.value] == 0)
            throw ZeroDenominator("p_[" + t.vertex_name(v) + "] vanishes at the point");
    }
    if (point.size() > 1 && !in_open_simplex(point))
        throw InvalidSimplexPoint("point is not in the open probability simplex");

    ConditionalReport report;
    for (VertexId v : t.preorder())
        for (const Edge& e : t.children(v))
            report.edges.push_back({v, e.child, e.label, Rational(mass[e.child.value] / mass[v.value])});

    for (const StageClass& c : t.stages().classes) {
        if (c.multiplicity() < 2)
            continue;
        for (SymbolId label : c.labels) {
            LabelDisagreement d{label, {}};
            for (VertexId v : c.vertices) {
                VertexId child = *t.child_with_label(v, label);
                d.values.push_back(mass[child.value] / mass[v.value]);
            }
            bool agree = true;
            for (const Rational& x : d.values)
                agree = agree && x == d.values.front();
            if (!agree)
                report.disagreements.push_back(std::move(d));
        }
    }
    return report;
}

Assignment sample_theta(const StagedTree& t, std::uint64_t seed)
{
    std::mt19937_64 engine(seed);
    Assignment theta;
    for (const StageClass& c : t.stages().classes) {
        std::vector<long> draws;
        long total = 0;
        for (std::size_t k = 0; k < c.labels.size(); ++k) {
            long x = 1 + static_cast<long>(engine() % 1000U);
            draws.push_back(x);
            total += x;
        }
        for (std::size_t k = 0; k < c.labels.size(); ++k) {
            Rational q(draws[k], total);
            q.canonicalize();
            theta.emplace(c.labels[k], std::move(q));
        }
    }
    return theta;
}

} // namespace stagetree
