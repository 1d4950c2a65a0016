#ifndef CYCLELAB_SYMBOLS_HPP
#define CYCLELAB_SYMBOLS_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cyclelab {

/// Immutable ordered list of parameter names. Polynomials over the same
/// table share it by pointer; operations on mismatched tables merge them
/// by name, keeping the left operand's declaration order first.
class SymbolTable {
public:
    explicit SymbolTable(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i) index_[names_[i]] = i;
    }

    static std::shared_ptr<const SymbolTable> make(std::vector<std::string> names) {
        return std::make_shared<const SymbolTable>(std::move(names));
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<std::size_t> index(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool same_names(const SymbolTable& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, std::size_t> index_;
};

using SymTab = std::shared_ptr<const SymbolTable>;

inline SymTab merge_tables(const SymTab& a, const SymTab& b) {
    if (a == b || a->same_names(*b)) return a;
    std::vector<std::string> names = a->names();
    for (const auto& n : b->names())
        if (!a->index(n)) names.push_back(n);
    return SymbolTable::make(std::move(names));
}

}  // namespace cyclelab

#endif
