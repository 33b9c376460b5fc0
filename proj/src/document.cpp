#include "stagetree/document.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace stagetree {

using nlohmann::json;

ParseError::ParseError(std::size_t line, std::string field, const std::string& message)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                     : (field.empty() ? message : field + ": " + message)),
      line_(line), field_(std::move(field))
{
}

namespace {

std::size_t line_of(std::string_view text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

void only_keys(const json& object, const std::string& field, std::initializer_list<std::string_view> keys)
{
    for (const auto& [key, value] : object.items())
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ParseError(0, field.empty() ? key : field + "." + key, "unknown field");
}

const json& require(const json& object, const std::string& field, const char* key)
{
    auto it = object.find(key);
    std::string name = field.empty() ? key : field + "." + key;
    if (it == object.end())
        throw ParseError(0, name, "missing");
    return *it;
}

std::string string_field(const json& value, const std::string& field)
{
    if (!value.is_string())
        throw ParseError(0, field, "expected a string");
    return value.get<std::string>();
}

std::string quoted(const std::string& s)
{
    return json(s).dump();
}

} // namespace

TreeDescription parse_tree_description(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::string what = e.what();
        // nlohmann prefixes "[json.exception.parse_error.101] parse error at line 1, column 2: ".
        auto colon = what.find(": ");
        std::string message = colon == std::string::npos ? what : what.substr(colon + 2);
        throw ParseError(line_of(text, e.byte == 0 ? 0 : e.byte - 1), "", message);
    }
    if (!doc.is_object())
        throw ParseError(0, "", "document must be an object");
    only_keys(doc, "", {"root", "vertices", "atom_names"});

    TreeDescription d;
    d.root = string_field(require(doc, "", "root"), "root");
    const json& vertices = require(doc, "", "vertices");
    if (!vertices.is_array())
        throw ParseError(0, "vertices", "expected an array");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        std::string field = "vertices[" + std::to_string(i) + "]";
        const json& v = vertices[i];
        if (!v.is_object())
            throw ParseError(0, field, "expected an object");
        only_keys(v, field, {"id", "edges"});
        TreeDescription::Vertex vertex;
        vertex.id = string_field(require(v, field, "id"), field + ".id");
        if (auto it = v.find("edges"); it != v.end()) {
            if (!it->is_array())
                throw ParseError(0, field + ".edges", "expected an array");
            for (std::size_t k = 0; k < it->size(); ++k) {
                std::string ef = field + ".edges[" + std::to_string(k) + "]";
                const json& e = (*it)[k];
                if (!e.is_object())
                    throw ParseError(0, ef, "expected an object");
                only_keys(e, ef, {"to", "label"});
                vertex.edges.push_back({string_field(require(e, ef, "to"), ef + ".to"),
                                        string_field(require(e, ef, "label"), ef + ".label")});
            }
        }
        d.vertices.push_back(std::move(vertex));
    }
    if (auto it = doc.find("atom_names"); it != doc.end()) {
        if (!it->is_array())
            throw ParseError(0, "atom_names", "expected an array");
        for (std::size_t k = 0; k < it->size(); ++k)
            d.atom_names.push_back(string_field((*it)[k], "atom_names[" + std::to_string(k) + "]"));
    }
    return d;
}

StagedTree parse_tree_document(std::string_view text)
{
    return StagedTree::build(parse_tree_description(text));
}

StagedTree load_tree_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(0, "", "cannot read '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_tree_document(buffer.str());
}

std::string write_tree_document(const StagedTree& t)
{
    const TreeDescription& d = t.description();
    std::ostringstream out;
    out << "{\n  \"root\": " << quoted(d.root) << ",\n  \"vertices\": [\n";
    for (std::size_t i = 0; i < d.vertices.size(); ++i) {
        const auto& v = d.vertices[i];
        out << "    {\"id\": " << quoted(v.id);
        if (!v.edges.empty()) {
            out << ", \"edges\": [";
            for (std::size_t k = 0; k < v.edges.size(); ++k) {
                if (k > 0)
                    out << ", ";
                out << "{\"to\": " << quoted(v.edges[k].to) << ", \"label\": " << quoted(v.edges[k].label) << "}";
            }
            out << "]";
        }
        out << "}" << (i + 1 < d.vertices.size() ? "," : "") << "\n";
    }
    out << "  ]";
    if (!d.atom_names.empty()) {
        out << ",\n  \"atom_names\": [";
        for (std::size_t k = 0; k < d.atom_names.size(); ++k)
            out << (k > 0 ? ", " : "") << quoted(d.atom_names[k]);
        out << "]";
    }
    out << "\n}\n";
    return out.str();
}

std::vector<Rational> parse_point(std::string_view text)
{
    std::vector<Rational> point;
    std::string token;
    std::size_t line = 1;
    auto flush = [&] {
        if (token.empty())
            return;
        try {
            point.push_back(parse_rational(token));
        } catch (const Error& e) {
            throw ParseError(line, "", e.what());
        }
        token.clear();
    };
    bool comment = false;
    for (char c : text) {
        if (c == '#') {
            flush();
            comment = true;
        } else if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else if (!comment) {
            token += c;
        }
        if (c == '\n') {
            comment = false;
            ++line;
        }
    }
    flush();
    return point;
}

namespace {

std::vector<IdealKind> selected(const ExportOptions& options)
{
    if (options.ideal)
        return {*options.ideal};
    return {IdealKind::ModelInvariants, IdealKind::Paths, IdealKind::MaximalPaths};
}

GeneratorSet generators_of(const StagedTree& t, IdealKind kind)
{
    switch (kind) {
    case IdealKind::ModelInvariants:
        return model_invariant_generators(t);
    case IdealKind::Paths:
        return paths_ideal_generators(t);
    case IdealKind::MaximalPaths:
        return mpaths_generators(t);
    }
    return {};
}

std::vector<std::string> stage_lines(const StagedTree& t)
{
    std::vector<std::string> lines;
    for (std::size_t i = 0; i < t.stages().classes.size(); ++i) {
        const StageClass& c = t.stages().classes[i];
        std::string line = "stage " + std::to_string(i + 1) + ": {";
        for (std::size_t k = 0; k < c.vertices.size(); ++k)
            line += (k > 0 ? ", " : "") + t.vertex_name(c.vertices[k]);
        line += "} labels ";
        for (std::size_t k = 0; k < c.labels.size(); ++k)
            line += (k > 0 ? ", " : "") + t.symbols().name(c.labels[k]);
        lines.push_back(std::move(line));
    }
    return lines;
}

bool m2_identifier(const std::string& name)
{
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
        return false;
    return std::all_of(name.begin(), name.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '\''; });
}

std::string ring_variables(const StagedTree& t)
{
    std::string out;
    for (const Atom& a : t.atoms())
        out += (a.number > 1 ? "," : "") + t.symbols().name(a.symbol);
    return out;
}

} // namespace

std::string export_text(const StagedTree& t, const ExportOptions& options)
{
    std::ostringstream out;
    out << "ring QQ[" << ring_variables(t) << "]\n";
    if (options.annotate_stages)
        for (const std::string& line : stage_lines(t))
            out << "# " << line << "\n";
    for (IdealKind kind : selected(options)) {
        GeneratorSet set = generators_of(t, kind);
        out << "ideal " << to_string(kind) << " (" << set.size() << " generators)\n";
        for (const Generator& g : set.generators)
            out << "  " << to_string(g.polynomial, t.symbols()) << "\n";
    }
    return out.str();
}

std::string export_m2(const StagedTree& t, const ExportOptions& options)
{
    for (const Atom& a : t.atoms())
        if (!m2_identifier(t.symbols().name(a.symbol)))
            throw Error("atom name '" + t.symbols().name(a.symbol) + "' is not a Macaulay2 identifier");
    std::ostringstream out;
    out << "R = QQ[" << ring_variables(t) << "];\n";
    if (options.annotate_stages)
        for (const std::string& line : stage_lines(t))
            out << "-- " << line << "\n";
    for (IdealKind kind : selected(options)) {
        GeneratorSet set = generators_of(t, kind);
        out << "I" << to_string(kind) << " = ideal(";
        if (set.empty()) {
            out << "0_R);\n";
            continue;
        }
        out << "\n";
        for (std::size_t k = 0; k < set.size(); ++k)
            out << "  " << to_string(set.generators[k].polynomial, t.symbols()) << (k + 1 < set.size() ? ",\n" : "\n");
        out << ");\n";
    }
    return out.str();
}

} // namespace stagetree
