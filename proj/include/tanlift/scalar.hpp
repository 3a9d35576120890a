#pragma once

#include "tanlift/rational.hpp"
#include "tanlift/symbols.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tanlift {

/// Exponent vector, one entry per symbol-table variable.
using Exponents = std::vector<int>;

/// Graded lexicographic order: lower total degree first, ties broken
/// lexicographically. Gives every polynomial a canonical term order.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
class Scalar {
  public:
    Scalar() = default;

    static Scalar zero(SymbolsPtr syms);
    static Scalar constant(SymbolsPtr syms, const Rat& c);
    static Scalar variable(SymbolsPtr syms, int idx);
    static Scalar monomial(SymbolsPtr syms, Exponents e, const Rat& c);

    [[nodiscard]] const SymbolsPtr& symbols() const { return syms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const;
    /// The constant term (the full value when is_constant()).
    [[nodiscard]] Rat constant_value() const;
    [[nodiscard]] int total_degree() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    Scalar operator*(const Rat& c) const;
    [[nodiscard]] Scalar pow(int k) const;

    /// d/dx_idx.
    [[nodiscard]] Scalar partial(int idx) const;

    /// Full evaluation; point.size() must equal the table size.
    [[nodiscard]] Rat eval(const std::vector<Rat>& point) const;

    /// Substitutes repl[i] for variable i where engaged; other variables stay.
    /// Replacements must live on the same symbol table.
    [[nodiscard]] Scalar substitute(const std::vector<std::optional<Scalar>>& repl) const;

    /// Reindexes onto another table; index_map[i] is the target index of
    /// variable i, or -1 if the variable must not occur (throws when it does).
    [[nodiscard]] Scalar transport(SymbolsPtr target, const std::vector<int>& index_map) const;

    /// Transport matching variables by name; every occurring variable must
    /// exist in the target table.
    [[nodiscard]] Scalar transport_by_name(SymbolsPtr target) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Canonical text: terms in descending grlex order, e.g. "2*x^2*y - 1/2".
    [[nodiscard]] std::string str() const;

    [[nodiscard]] const std::map<Exponents, Rat, GrlexLess>& terms() const { return terms_; }
    void add_term(const Exponents& e, const Rat& c);

  private:
    SymbolsPtr syms_;
    std::map<Exponents, Rat, GrlexLess> terms_;
};

}  // namespace tanlift
