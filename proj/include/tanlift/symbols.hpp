#pragma once

#include "tanlift/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace tanlift {

/// Immutable ordered list of variable names shared by all scalars of a chart.
class SymbolTable {
  public:
    static std::shared_ptr<const SymbolTable> make(std::vector<std::string> names);

    [[nodiscard]] int size() const { return static_cast<int>(names_.size()); }
    [[nodiscard]] const std::string& name(int i) const { return names_.at(i); }
    [[nodiscard]] const std::vector<std::string>& names() const { return names_; }

    /// Index of a name, or -1 when absent.
    [[nodiscard]] int find(const std::string& n) const;
    /// Index of a name; throws EngineError when absent.
    [[nodiscard]] int index_of(const std::string& n) const;

    bool operator==(const SymbolTable& o) const { return names_ == o.names_; }

  private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

using SymbolsPtr = std::shared_ptr<const SymbolTable>;

/// Content equality (tables are value-compared, not pointer-compared).
inline bool same_symbols(const SymbolsPtr& a, const SymbolsPtr& b) {
    return a == b || (a && b && *a == *b);
}

}  // namespace tanlift
