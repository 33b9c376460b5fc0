#include "stagetree/model.hpp"

#include "stagetree/ideals.hpp"
#include "stagetree/parametrization.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

namespace stagetree {
namespace {

using testing::fixture;
using testing::fixture_names;
using testing::poly;

std::vector<Rational> point(std::initializer_list<const char*> values)
{
    std::vector<Rational> out;
    for (const char* v : values)
        out.push_back(parse_rational(v));
    return out;
}

TEST(Membership, Examples)
{
    StagedTree t = fixture("same_model_t2");
    MembershipVerdict member = membership(t, point({"1/12", "1/6", "1/4", "1/12", "1/6", "1/4"}));
    EXPECT_TRUE(member.member());
    EXPECT_TRUE(member.path_differences_vanish);

    MembershipVerdict off = membership(t, point({"1/2", "1/10", "1/10", "1/10", "1/10", "1/10"}));
    EXPECT_TRUE(off.in_simplex);
    EXPECT_FALSE(off.invariants_vanish);
    EXPECT_FALSE(off.member());
    ASSERT_EQ(off.failures.size(), 3U);
    bool found = false;
    for (const GeneratorValue& f : off.failures) {
        Polynomial g = poly(t, "p1(p5+p6)-p4(p2+p3)");
        if (f.generator == g)
            found = f.value == Rational(2, 25);
        if (f.generator == -g)
            found = f.value == Rational(-2, 25);
    }
    EXPECT_TRUE(found);

    EXPECT_TRUE(membership(t, point({"1/6", "1/6", "1/6", "1/6", "1/6", "1/6"})).member());
    EXPECT_THROW(membership(t, point({"1/2", "1/2"})), LengthMismatch);
}

TEST(Membership, SimplexBoundary)
{
    StagedTree t = fixture("same_model_t2");
    // Invariants vanish on this boundary point but it is not in the open simplex.
    MembershipVerdict v = membership(t, point({"1/2", "1/2", "0", "0", "0", "0"}));
    EXPECT_FALSE(v.in_simplex);
    EXPECT_TRUE(v.invariants_vanish);
    EXPECT_FALSE(v.member());
    EXPECT_FALSE(membership(t, point({"1/6", "1/6", "1/6", "1/6", "1/6", "1/5"})).in_simplex);
}

TEST(Conditionals, MemberPoint)
{
    StagedTree t = fixture("same_model_t2");
    ConditionalReport r = conditional_probability_report(t, point({"1/12", "1/6", "1/4", "1/12", "1/6", "1/4"}));
    EXPECT_TRUE(r.consistent());
    auto value = [&](const char* parent, const char* child) {
        for (const EdgeProbability& e : r.edges)
            if (e.parent == t.vertex(parent) && e.child == t.vertex(child))
                return e.value;
        return Rational(-1);
    };
    // Recomputed by hand as p_[child] / p_[parent].
    EXPECT_EQ(value("v0", "v1"), Rational(1, 2));
    EXPECT_EQ(value("v1", "l1"), Rational(1, 6));
    EXPECT_EQ(value("v1", "l3"), Rational(1, 2));
    EXPECT_EQ(value("v2", "l5"), Rational(1, 3));
    EXPECT_EQ(r.edges.size(), t.edge_count());
}

TEST(Conditionals, NonMemberDisagrees)
{
    StagedTree t = fixture("same_model_t2");
    ConditionalReport r = conditional_probability_report(t, point({"1/2", "1/10", "1/10", "1/10", "1/10", "1/10"}));
    EXPECT_FALSE(r.consistent());
    ASSERT_EQ(r.disagreements.size(), 3U);
    EXPECT_EQ(r.disagreements[0].values, (std::vector<Rational>{Rational(5, 7), Rational(1, 3)}));
}

TEST(Conditionals, Errors)
{
    StagedTree t = fixture("same_model_t2");
    EXPECT_THROW(conditional_probability_report(t, point({"1/2", "1/2", "0", "0", "0", "0"})), ZeroDenominator);
    EXPECT_THROW(conditional_probability_report(t, point({"1/2", "1/2", "1/2", "1/6", "1/6", "1/6"})),
                 InvalidSimplexPoint);
    EXPECT_THROW(conditional_probability_report(t, point({"1"})), LengthMismatch);
}

TEST(Conditionals, StageSumsToOne)
{
    StagedTree t = fixture("culture_positive");
    std::vector<Rational> p = psi_evaluate(t, sample_theta(t, 3));
    ConditionalReport r = conditional_probability_report(t, p);
    for (VertexId v : t.preorder()) {
        if (t.is_leaf(v))
            continue;
        Rational sum = 0;
        for (const EdgeProbability& e : r.edges)
            if (e.parent == v)
                sum += e.value;
        EXPECT_EQ(sum, 1);
    }
}

TEST(Sampling, DeterministicAndNormalized)
{
    StagedTree t = fixture("culture_full");
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Assignment a = sample_theta(t, seed);
        EXPECT_EQ(a, sample_theta(t, seed));
        for (const StageClass& c : t.stages().classes) {
            Rational sum = 0;
            for (SymbolId s : c.labels) {
                EXPECT_GT(sgn(a.at(s)), 0);
                sum += a.at(s);
            }
            EXPECT_EQ(sum, 1);
        }
    }
    EXPECT_NE(sample_theta(t, 1), sample_theta(t, 2));
}

TEST(Sampling, SeedStreamGivesMembers)
{
    StagedTree t = fixture("culture_positive");
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        std::vector<Rational> p = psi_evaluate(t, sample_theta(t, seed));
        EXPECT_TRUE(membership(t, p).member()) << seed;
    }
}

// psi(theta) is a member, every generator of every ideal vanishes there, and
// the recovered conditional probabilities are theta itself.
TEST(Sampling, RoundTripOnEveryFixture)
{
    for (const std::string& name : fixture_names()) {
        StagedTree t = fixture(name);
        std::vector<Polynomial> all;
        for (const GeneratorSet& set : {model_invariant_generators(t), paths_ideal_generators(t), mpaths_generators(t)})
            for (const Polynomial& g : set.polynomials())
                all.push_back(g);
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            Assignment theta = sample_theta(t, seed);
            std::vector<Rational> p = psi_evaluate(t, theta);
            Rational total = 0;
            Assignment at;
            for (const Atom& a : t.atoms()) {
                total += p[a.number - 1];
                at.emplace(a.symbol, p[a.number - 1]);
            }
            EXPECT_EQ(total, 1);
            for (const Polynomial& g : all)
                EXPECT_EQ(evaluate(g, at), 0) << name;
            MembershipVerdict v = membership(t, p);
            EXPECT_TRUE(v.member()) << name;
            ConditionalReport r = conditional_probability_report(t, p);
            EXPECT_TRUE(r.consistent());
            for (const EdgeProbability& e : r.edges)
                EXPECT_EQ(e.value, theta.at(e.label)) << name;
        }
    }
}

} // namespace
} // namespace stagetree
