#include "stagetree/document.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

namespace stagetree {
namespace {

using testing::fixture_names;
using testing::fixture_path;

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

TEST(Document, ParsesFixture)
{
    StagedTree t = load_tree_file(fixture_path("same_model_t2"));
    EXPECT_EQ(t.vertex_count(), 9U);
    EXPECT_EQ(t.atom_count(), 6U);
    EXPECT_EQ(t.vertex_name(t.root()), "v0");
}

TEST(Document, LeavesMayOmitEdges)
{
    StagedTree t = parse_tree_document(R"({"root": "r", "vertices": [
        {"id": "r", "edges": [{"to": "a", "label": "x"}, {"to": "b", "label": "y"}]},
        {"id": "a"}, {"id": "b", "edges": []}]})");
    EXPECT_EQ(t.atom_count(), 2U);
    EXPECT_EQ(t.symbols().at(t.atoms()[0].symbol).name, "p1");
}

TEST(Document, SyntaxErrorCarriesLine)
{
    try {
        parse_tree_description("{\"root\": \"r\",\n\"vertices\": [\n{\"id\": }\n]}");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3U);
    }
}

TEST(Document, SchemaErrorsNameTheField)
{
    auto field_of = [](std::string_view text) {
        try {
            parse_tree_description(text);
        } catch (const ParseError& e) {
            EXPECT_EQ(e.line(), 0U);
            return e.field();
        }
        return std::string("no error");
    };
    EXPECT_EQ(field_of(R"({"vertices": []})"), "root");
    EXPECT_EQ(field_of(R"({"root": 3, "vertices": []})"), "root");
    EXPECT_EQ(field_of(R"({"root": "r", "vertices": [], "extra": 1})"), "extra");
    EXPECT_EQ(field_of(R"({"root": "r", "vertices": [{"id": "r", "edges": [{"to": "a"}]}]})"), "vertices[0].edges[0].label");
    EXPECT_EQ(field_of(R"([1, 2])"), "");
}

TEST(Document, ValidationErrorsSurface)
{
    EXPECT_THROW(parse_tree_document(R"({"root": "r", "vertices": [
        {"id": "r", "edges": [{"to": "a", "label": "x"}]}, {"id": "a"}]})"),
                 ValidationError);
    try {
        parse_tree_document(R"({"root": "r", "vertices": [
            {"id": "r", "edges": [{"to": "a", "label": "x"}, {"to": "b", "label": "y"}]},
            {"id": "a", "edges": [{"to": "c", "label": "x"}, {"to": "d", "label": "z"}]},
            {"id": "b"}, {"id": "c"}, {"id": "d"}]})");
        FAIL();
    } catch (const ValidationError& e) {
        ASSERT_FALSE(e.report().empty());
        EXPECT_EQ(to_string(e.report()[0].kind), "inconsistent stage labels");
    }
}

TEST(Document, MissingFile)
{
    EXPECT_THROW(load_tree_file("/nonexistent/tree.json"), ParseError);
}

TEST(Document, WriterRoundTripsFixturesByteForByte)
{
    for (const std::string& name : fixture_names()) {
        std::string original = read_file(fixture_path(name));
        StagedTree t = parse_tree_document(original);
        std::string written = write_tree_document(t);
        EXPECT_EQ(written, original) << name;
        EXPECT_TRUE(parse_tree_document(written) == t) << name;
    }
}

TEST(Document, ParsePoint)
{
    std::vector<Rational> expected{Rational(1, 12), Rational(1, 6), Rational(1, 4)};
    EXPECT_EQ(parse_point("1/12 1/6 1/4"), expected);
    EXPECT_EQ(parse_point("1/12,1/6,\n2/8 # comment 5\n"), expected);
    EXPECT_TRUE(parse_point("# nothing\n").empty());
    try {
        parse_point("1/2\n1/x\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2U);
    }
}

TEST(Export, TextListsRingAndIdeals)
{
    StagedTree t = testing::fixture("same_model_t1");
    std::string text = export_text(t, {IdealKind::ModelInvariants, true});
    EXPECT_EQ(text.rfind("ring QQ[p1,p4,p2,p5,p3,p6]\n", 0), 0U) << text;
    EXPECT_NE(text.find("# stage "), std::string::npos);
    EXPECT_NE(text.find("ideal model (3 generators)"), std::string::npos);
    EXPECT_EQ(text.find("ideal paths"), std::string::npos);
}

TEST(Export, M2)
{
    StagedTree t = testing::fixture("same_model_t1");
    std::string m2 = export_m2(t, {});
    EXPECT_EQ(m2.rfind("R = QQ[p1,p4,p2,p5,p3,p6];\n", 0), 0U) << m2;
    EXPECT_NE(m2.find("Imodel = ideal(\n"), std::string::npos);
    EXPECT_NE(m2.find("Ipaths = ideal("), std::string::npos);
    EXPECT_NE(m2.find("Impaths = ideal("), std::string::npos);

    StagedTree flat = StagedTree::build(TreeDescription{"r", {{"r", {{"a", "x"}, {"b", "y"}}}, {"a", {}}, {"b", {}}}, {}});
    EXPECT_NE(export_m2(flat, {}).find("ideal(0_R);"), std::string::npos);

    StagedTree odd = StagedTree::build(
        TreeDescription{"r", {{"r", {{"a", "x"}, {"b", "y"}}}, {"a", {}}, {"b", {}}}, {"p-1", "p2"}});
    EXPECT_THROW(export_m2(odd, {}), Error);
}

} // namespace
} // namespace stagetree
