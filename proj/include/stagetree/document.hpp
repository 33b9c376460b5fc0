#pragma once

#include "stagetree/errors.hpp"
#include "stagetree/ideals.hpp"
#include "stagetree/staged_tree.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace stagetree {

// Malformed tree document. line() is 0 when the problem is in the shape of
// the data rather than its syntax; field() names the offending member then.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::string field, const std::string& message);

    std::size_t line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

// JSON document:
//   {"root": "v0",
//    "vertices": [{"id": "v0", "edges": [{"to": "v1", "label": "a"}, ...]}, ...],
//    "atom_names": ["p1", ...]}
// "edges" may be omitted for leaves and "atom_names" is optional.
TreeDescription parse_tree_description(std::string_view text);

// Throws ParseError or ValidationError.
StagedTree parse_tree_document(std::string_view text);

// Reads a file and parses it; a missing file is a ParseError at line 0.
StagedTree load_tree_file(const std::filesystem::path& path);

// One vertex per line, in declaration order. Re-parsing gives an equal tree.
std::string write_tree_document(const StagedTree& t);

// Rationals separated by whitespace or commas; '#' starts a comment.
std::vector<Rational> parse_point(std::string_view text);

struct ExportOptions {
    // Empty means all three ideals.
    std::optional<IdealKind> ideal;
    // Lists the computed stage classes as comments.
    bool annotate_stages = false;
};

// "R = QQ[...]" style text listing.
std::string export_text(const StagedTree& t, const ExportOptions& options);

// Macaulay2 input: a ring declaration and one ideal(...) per generator set.
std::string export_m2(const StagedTree& t, const ExportOptions& options);

} // namespace stagetree
