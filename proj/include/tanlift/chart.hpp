#pragma once

#include "tanlift/scalar.hpp"

#include <memory>
#include <string>
#include <vector>

namespace tanlift {

struct Chart;
using ChartPtr = std::shared_ptr<const Chart>;

/// A coordinate chart: named coordinates plus free parameters. The symbol
/// table lists coordinates first, then parameters, so coordinate i is
/// symbol i. Tangent charts remember the chart they double.
struct Chart {
    std::string name;
    std::vector<std::string> coords;
    std::vector<std::string> params;
    SymbolsPtr syms;
    ChartPtr base;  // non-null exactly for tangent charts

    [[nodiscard]] int dim() const { return static_cast<int>(coords.size()); }
    [[nodiscard]] bool is_tangent() const { return base != nullptr; }

    [[nodiscard]] Scalar coord(int i) const { return Scalar::variable(syms, i); }
    [[nodiscard]] Scalar zero() const { return Scalar::zero(syms); }
    [[nodiscard]] Scalar constant(const Rat& c) const { return Scalar::constant(syms, c); }
};

ChartPtr make_chart(std::string name, std::vector<std::string> coords,
                    std::vector<std::string> params = {});

/// Value equality: same name, coordinates, and parameters.
bool same_chart(const ChartPtr& a, const ChartPtr& b);

inline std::string dotted_name(const std::string& c) { return c + "_dot"; }

/// Chart of TM: coordinates (x..., x_dot...), parameters carried over.
/// Rejects charts that are already tangent charts.
ChartPtr tangent_chart(const ChartPtr& c);

}  // namespace tanlift
