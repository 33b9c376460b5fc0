#include "stagetree/symbol.hpp"

#include "stagetree/errors.hpp"

namespace stagetree {

SymbolId SymbolTable::add(std::string name, SymbolKind kind)
{
    if (by_name_.contains(name))
        throw Error("duplicate symbol name '" + name + "'");
    SymbolId id{static_cast<std::uint32_t>(symbols_.size())};
    by_name_.emplace(name, id.value);
    symbols_.push_back(Symbol{id, std::move(name), kind});
    return id;
}

std::optional<SymbolId> SymbolTable::find(std::string_view name) const
{
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end())
        return std::nullopt;
    return SymbolId{it->second};
}

const Symbol& SymbolTable::at(SymbolId id) const
{
    if (!contains(id))
        throw Error("symbol id " + std::to_string(id.value) + " is not in the table");
    return symbols_[id.value];
}

} // namespace stagetree
