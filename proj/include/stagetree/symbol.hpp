#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stagetree {

struct SymbolId {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(SymbolId, SymbolId) = default;
};

enum class SymbolKind { AtomProbability, EdgeLabel };

struct Symbol {
    SymbolId id;
    std::string name;
    SymbolKind kind;
};

// Append-only table of indeterminates. Creation order fixes the variable
// order used by the degrevlex term order (earlier symbol = larger variable).
class SymbolTable {
public:
    // Throws stagetree::Error if the name is already taken.
    SymbolId add(std::string name, SymbolKind kind);

    std::optional<SymbolId> find(std::string_view name) const;
    const Symbol& at(SymbolId id) const;
    bool contains(SymbolId id) const { return id.value < symbols_.size(); }
    const std::string& name(SymbolId id) const { return at(id).name; }
    std::size_t size() const { return symbols_.size(); }
    const std::vector<Symbol>& symbols() const { return symbols_; }

private:
    std::vector<Symbol> symbols_;
    std::unordered_map<std::string, std::uint32_t> by_name_;
};

} // namespace stagetree
