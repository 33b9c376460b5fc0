#include "stagetree/cli.hpp"

#include "stagetree/document.hpp"
#include "stagetree/ideals.hpp"
#include "stagetree/model.hpp"
#include "stagetree/parametrization.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace stagetree::cli {

using nlohmann::ordered_json;

namespace {

struct Options {
    std::string tree;
    bool json = false;
    std::string ideal = "model";
    bool provenance = false;
    std::string point;
    bool conditionals = false;
    std::uint64_t seed = 0;
    std::size_t count = 1;
    std::string format = "text";
    std::string export_ideal;
    bool stages = false;
};

// Output channel that writes either plain text or one JSON document.
struct Reporter {
    std::ostream& out;
    std::ostream& err;
    bool json;

    void emit(const ordered_json& doc) const { out << doc.dump(2) << "\n"; }

    int fail(int status, const std::string& kind, const std::string& message, ordered_json extra = {}) const
    {
        if (json) {
            ordered_json e{{"kind", kind}, {"message", message}};
            for (auto& [key, value] : extra.items())
                e[key] = value;
            emit({{"status", status}, {"error", e}});
        } else {
            err << "error: " << message << "\n";
        }
        return status;
    }
};

IdealKind ideal_kind(const std::string& name)
{
    if (name == "model")
        return IdealKind::ModelInvariants;
    if (name == "paths")
        return IdealKind::Paths;
    return IdealKind::MaximalPaths;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string vertex_list(const StagedTree& t, const std::vector<VertexId>& vs)
{
    std::string s = "{";
    for (std::size_t k = 0; k < vs.size(); ++k)
        s += (k > 0 ? ", " : "") + t.vertex_name(vs[k]);
    return s + "}";
}

ordered_json names_json(const StagedTree& t, const std::vector<VertexId>& vs)
{
    ordered_json a = ordered_json::array();
    for (VertexId v : vs)
        a.push_back(t.vertex_name(v));
    return a;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(0, "", "cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int cmd_validate(const StagedTree& t, const Reporter& r)
{
    if (r.json) {
        r.emit({{"valid", true},
                {"vertices", t.vertex_count()},
                {"edges", t.edge_count()},
                {"atoms", t.atom_count()},
                {"stages", t.stages().classes.size()}});
    } else {
        r.out << "valid: " << t.vertex_count() << " vertices, " << t.edge_count() << " edges, " << t.atom_count()
              << " atoms, " << t.stages().classes.size() << " stages\n";
    }
    return Success;
}

int cmd_atoms(const StagedTree& t, const Reporter& r)
{
    ordered_json list = ordered_json::array();
    for (const Atom& a : t.atoms()) {
        std::string name = t.symbols().name(a.symbol);
        std::string product = to_string(t.label_product(t.root(), a.leaf), t.symbols());
        if (r.json) {
            list.push_back({{"atom", name}, {"leaf", t.vertex_name(a.leaf)}, {"path", names_json(t, a.path)},
                            {"parametrization", product}});
        } else {
            r.out << name << " = " << product << "  path";
            for (VertexId v : a.path)
                r.out << " " << t.vertex_name(v);
            r.out << "\n";
        }
    }
    if (r.json)
        r.emit({{"atoms", list}});
    return Success;
}

std::string provenance_text(const StagedTree& t, const Provenance& p)
{
    const SymbolTable& s = t.symbols();
    std::string text = t.vertex_name(p.v) + " ~ " + t.vertex_name(p.w) + " label " + s.name(p.label_i);
    if (p.label_j)
        text += ", " + s.name(*p.label_j);
    if (p.pair)
        text += " paths (" + t.vertex_name(p.pair->first.head) + " -> " + t.vertex_name(p.pair->first.tail) + ", " +
                t.vertex_name(p.pair->second.head) + " -> " + t.vertex_name(p.pair->second.tail) + ")";
    return text;
}

int cmd_generators(const StagedTree& t, const Options& o, const Reporter& r)
{
    IdealKind kind = ideal_kind(o.ideal);
    GeneratorSet set;
    switch (kind) {
    case IdealKind::ModelInvariants: set = model_invariant_generators(t); break;
    case IdealKind::Paths: set = paths_ideal_generators(t); break;
    case IdealKind::MaximalPaths: set = mpaths_generators(t); break;
    }
    if (r.json) {
        ordered_json gens = ordered_json::array();
        for (const Generator& g : set.generators) {
            ordered_json entry{{"polynomial", to_string(g.polynomial, t.symbols())}};
            if (o.provenance) {
                ordered_json origins = ordered_json::array();
                for (const Provenance& p : g.origins)
                    origins.push_back(provenance_text(t, p));
                entry["origins"] = origins;
            }
            gens.push_back(entry);
        }
        r.emit({{"ideal", std::string(to_string(kind))}, {"generators", gens}, {"diagnostics", set.diagnostics}});
        return Success;
    }
    for (const Generator& g : set.generators) {
        r.out << to_string(g.polynomial, t.symbols()) << "\n";
        if (o.provenance)
            for (const Provenance& p : g.origins)
                r.out << "  from " << provenance_text(t, p) << "\n";
    }
    for (const std::string& d : set.diagnostics)
        r.err << "note: " << d << "\n";
    return Success;
}

int cmd_toric(const StagedTree& t, const Reporter& r)
{
    ToricVerdict verdict = is_toric(t);
    const SymbolTable& s = t.symbols();
    if (r.json) {
        ordered_json failures = ordered_json::array();
        for (const StarFailure& f : verdict.failures)
            failures.push_back({{"v", t.vertex_name(f.v)},
                                {"w", t.vertex_name(f.w)},
                                {"labels", {s.name(f.witness.label_i), s.name(f.witness.label_j)}},
                                {"difference", to_string(f.witness.difference, s)}});
        r.emit({{"toric", verdict.toric},
                {"stages_are_positions", verdict.all_stages_are_positions},
                {"witnesses", failures}});
        return Success;
    }
    r.out << (verdict.toric ? "toric" : "not toric") << "\n";
    r.out << "stages are positions: " << yes_no(verdict.all_stages_are_positions) << "\n";
    for (const StarFailure& f : verdict.failures)
        r.out << "witness (" << t.vertex_name(f.v) << ", " << t.vertex_name(f.w) << ") labels "
              << s.name(f.witness.label_i) << ", " << s.name(f.witness.label_j) << ": "
              << to_string(f.witness.difference, s) << "\n";
    return Success;
}

int cmd_dim(const StagedTree& t, const Reporter& r)
{
    DimensionReport d = dimension_report(t);
    bool agree = d.by_stages == d.by_edges;
    if (r.json) {
        r.emit({{"dimension", d.by_stages},
                {"by_stages", d.by_stages},
                {"by_edges", d.by_edges},
                {"edges", d.edges},
                {"internal_vertices", d.internal_vertices},
                {"agree", agree}});
    } else {
        r.out << "dimension " << d.by_stages << "\n";
        r.out << "sum over stages of (k - 1): " << d.by_stages << "\n";
        r.out << "edges - internal vertices - sum of (m - 1)(k - 1): " << d.by_edges << " (" << d.edges
              << " edges, " << d.internal_vertices << " internal vertices)\n";
    }
    if (!agree && !r.json)
        r.err << "error: the dimension formulas disagree\n";
    return agree ? Success : DomainFailure;
}

int cmd_positions(const StagedTree& t, const Reporter& r)
{
    ordered_json list = ordered_json::array();
    auto classes = t.position_classes();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        std::size_t stage = *t.stage_of(classes[i].front()) + 1;
        if (r.json)
            list.push_back({{"vertices", names_json(t, classes[i])}, {"stage", stage}});
        else
            r.out << "position " << i + 1 << ": " << vertex_list(t, classes[i]) << " stage " << stage << "\n";
    }
    if (r.json)
        r.emit({{"positions", list}});
    return Success;
}

int cmd_membership(const StagedTree& t, const Options& o, const Reporter& r)
{
    std::vector<Rational> point = parse_point(read_file(o.point));
    MembershipVerdict v = membership(t, point);
    std::optional<ConditionalReport> conditionals;
    if (o.conditionals && v.in_simplex)
        conditionals = conditional_probability_report(t, point);
    const SymbolTable& s = t.symbols();

    if (r.json) {
        ordered_json failures = ordered_json::array();
        for (const GeneratorValue& f : v.failures)
            failures.push_back({{"generator", to_string(f.generator, s)}, {"value", to_string(f.value)}});
        ordered_json doc{{"member", v.member()},
                         {"in_simplex", v.in_simplex},
                         {"invariants_vanish", v.invariants_vanish},
                         {"path_differences_vanish", v.path_differences_vanish},
                         {"failures", failures}};
        if (conditionals) {
            ordered_json edges = ordered_json::array();
            for (const EdgeProbability& e : conditionals->edges)
                edges.push_back({{"parent", t.vertex_name(e.parent)},
                                 {"child", t.vertex_name(e.child)},
                                 {"label", s.name(e.label)},
                                 {"value", to_string(e.value)}});
            ordered_json dis = ordered_json::array();
            for (const LabelDisagreement& d : conditionals->disagreements) {
                ordered_json values = ordered_json::array();
                for (const Rational& q : d.values)
                    values.push_back(to_string(q));
                dis.push_back({{"label", s.name(d.label)}, {"values", values}});
            }
            doc["conditionals"] = edges;
            doc["disagreements"] = dis;
        }
        r.emit(doc);
    } else {
        r.out << (v.member() ? "member" : "not a member") << "\n";
        r.out << "in simplex: " << yes_no(v.in_simplex) << "\n";
        r.out << "invariants vanish: " << yes_no(v.invariants_vanish) << "\n";
        r.out << "path differences vanish: " << yes_no(v.path_differences_vanish) << "\n";
        for (const GeneratorValue& f : v.failures)
            r.out << "  " << to_string(f.generator, s) << " = " << to_string(f.value) << "\n";
        if (conditionals) {
            for (const EdgeProbability& e : conditionals->edges)
                r.out << t.vertex_name(e.parent) << " -> " << t.vertex_name(e.child) << " [" << s.name(e.label)
                      << "] = " << to_string(e.value) << "\n";
            for (const LabelDisagreement& d : conditionals->disagreements) {
                r.out << "label " << s.name(d.label) << " differs across its stage:";
                for (const Rational& q : d.values)
                    r.out << " " << to_string(q);
                r.out << "\n";
            }
        }
    }
    return v.member() ? Success : DomainFailure;
}

int cmd_sample(const StagedTree& t, const Options& o, const Reporter& r)
{
    ordered_json samples = ordered_json::array();
    for (std::size_t i = 0; i < o.count; ++i) {
        Assignment theta = sample_theta(t, o.seed + i);
        std::vector<Rational> point = psi_evaluate(t, theta);
        if (r.json) {
            ordered_json labels = ordered_json::object();
            for (const auto& [symbol, value] : theta)
                labels[t.symbols().name(symbol)] = to_string(value);
            ordered_json p = ordered_json::array();
            for (const Rational& q : point)
                p.push_back(to_string(q));
            samples.push_back({{"seed", o.seed + i}, {"theta", labels}, {"point", p}});
        } else {
            for (std::size_t k = 0; k < point.size(); ++k)
                r.out << (k > 0 ? ", " : "") << to_string(point[k]);
            r.out << "\n";
        }
    }
    if (r.json)
        r.emit({{"samples", samples}});
    return Success;
}

int cmd_export(const StagedTree& t, const Options& o, const Reporter& r)
{
    ExportOptions e;
    if (!o.export_ideal.empty())
        e.ideal = ideal_kind(o.export_ideal);
    e.annotate_stages = o.stages;
    std::string text;
    if (o.format == "tree")
        text = write_tree_document(t);
    else if (o.format == "m2")
        text = export_m2(t, e);
    else
        text = export_text(t, e);
    if (r.json)
        r.emit({{"format", o.format}, {"content", text}});
    else
        r.out << text;
    return Success;
}

ordered_json violations_json(const ValidationReport& report)
{
    ordered_json list = ordered_json::array();
    for (const Violation& v : report)
        list.push_back({{"kind", std::string(to_string(v.kind))}, {"vertex", v.vertex}, {"message", v.message}});
    return list;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Staged tree toolkit: ideals, toricity and membership for staged tree models", "stagetree"};
    app.require_subcommand(1);
    app.add_flag("--json", o.json, "Structured output, including errors");

    auto add = [&](const char* name, const char* description) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("tree", o.tree, "Tree document (JSON)")->required();
        sub->fallthrough();
        return sub;
    };
    add("validate", "Check the tree and print its size");
    add("atoms", "List atoms with their root-to-leaf paths");
    CLI::App* generators = add("generators", "Print a generator set");
    generators->add_option("--ideal", o.ideal, "model, paths or mpaths")
        ->check(CLI::IsMember({"model", "paths", "mpaths"}));
    generators->add_flag("--provenance", o.provenance, "Show the stage pair each generator comes from");
    add("toric", "Check condition (*) on every staged pair");
    add("dim", "Print the model dimension by both formulas");
    add("positions", "Print position classes");
    CLI::App* member = add("membership", "Test a point for membership in the model");
    member->add_option("--point", o.point, "File of rationals, one per atom")->required();
    member->add_flag("--conditionals", o.conditionals, "Also print recovered edge probabilities");
    CLI::App* sample = add("sample", "Print model points from seeded edge probabilities");
    sample->add_option("--seed", o.seed, "Seed of the first sample; sample i uses seed + i");
    sample->add_option("--count", o.count, "Number of points");
    CLI::App* exporter = add("export", "Emit the tree or its ideals");
    exporter->add_option("--format", o.format, "text, m2 or tree")->check(CLI::IsMember({"text", "m2", "tree"}));
    exporter->add_option("--ideal", o.export_ideal, "Restrict to one ideal")
        ->check(CLI::IsMember({"model", "paths", "mpaths"}));
    exporter->add_flag("--stages", o.stages, "Annotate stage classes");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Success;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Success;
    } catch (const CLI::ParseError& e) {
        bool json = std::find(args.begin(), args.end(), "--json") != args.end();
        Reporter r{out, err, json};
        return r.fail(UsageError, "usage", e.what());
    }

    Reporter r{out, err, o.json};
    std::string name = app.get_subcommands().front()->get_name();
    try {
        StagedTree t = load_tree_file(o.tree);
        if (name == "validate")
            return cmd_validate(t, r);
        if (name == "atoms")
            return cmd_atoms(t, r);
        if (name == "generators")
            return cmd_generators(t, o, r);
        if (name == "toric")
            return cmd_toric(t, r);
        if (name == "dim")
            return cmd_dim(t, r);
        if (name == "positions")
            return cmd_positions(t, r);
        if (name == "membership")
            return cmd_membership(t, o, r);
        if (name == "sample")
            return cmd_sample(t, o, r);
        return cmd_export(t, o, r);
    } catch (const ParseError& e) {
        ordered_json extra;
        if (e.line() > 0)
            extra["line"] = e.line();
        if (!e.field().empty())
            extra["field"] = e.field();
        return r.fail(UsageError, "parse", e.what(), extra);
    } catch (const ValidationError& e) {
        if (!r.json) {
            err << "error: invalid tree\n";
            for (const Violation& v : e.report())
                err << "  " << to_string(v.kind) << (v.vertex.empty() ? "" : " at '" + v.vertex + "'") << ": "
                    << v.message << "\n";
            return DomainFailure;
        }
        return r.fail(DomainFailure, "validation", e.what(), {{"violations", violations_json(e.report())}});
    } catch (const Error& e) {
        return r.fail(DomainFailure, "domain", e.what());
    }
}

} // namespace stagetree::cli
