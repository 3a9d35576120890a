#pragma once

#include "tanlift/chart.hpp"
#include "tanlift/multiindex.hpp"

#include <map>
#include <string>

namespace tanlift {

struct MvTag;
struct FormTag;

/// Antisymmetric contravariant (MvTag) or covariant (FormTag) tensor field on
/// a chart, stored as nonzero components on the strict increasing basis.
/// Degree 0 is a plain scalar carried in the empty-index component.
template <class Tag>
class GTensor {
  public:
    GTensor() = default;

    static GTensor zero(ChartPtr chart, int degree);
    static GTensor from_scalar(ChartPtr chart, const Scalar& s);
    /// Degree-1 basis element for coordinate i.
    static GTensor generator(ChartPtr chart, int i);

    [[nodiscard]] const ChartPtr& chart() const { return chart_; }
    [[nodiscard]] int degree() const { return deg_; }
    [[nodiscard]] bool is_zero() const { return comps_.empty(); }
    [[nodiscard]] Scalar to_scalar() const;

    /// Adds c on the basis element labeled by idx (any order, signed
    /// normalization applied; repeated indices contribute nothing).
    void add_term(MultiIndex idx, const Scalar& c);
    [[nodiscard]] Scalar comp(const MultiIndex& idx) const;

    GTensor operator-() const;
    GTensor& operator+=(const GTensor& o);
    GTensor& operator-=(const GTensor& o);
    friend GTensor operator+(GTensor a, const GTensor& b) { return a += b; }
    friend GTensor operator-(GTensor a, const GTensor& b) { return a -= b; }
    [[nodiscard]] GTensor scale(const Scalar& f) const;
    [[nodiscard]] GTensor scale(const Rat& c) const;

    bool operator==(const GTensor& o) const;
    bool operator!=(const GTensor& o) const { return !(*this == o); }

    /// Canonical text, e.g. "(x^2)*@x^@y_dot + (2*x)*@x_dot^@y_dot".
    [[nodiscard]] std::string str() const;

    [[nodiscard]] const std::map<MultiIndex, Scalar>& comps() const { return comps_; }

  private:
    ChartPtr chart_;
    int deg_ = 0;
    std::map<MultiIndex, Scalar> comps_;
};

using Multivector = GTensor<MvTag>;
using Form = GTensor<FormTag>;

Multivector wedge(const Multivector& a, const Multivector& b);
Form wedge(const Form& a, const Form& b);

/// Full pairing of equal degrees: <X, mu> = sum over strict J of X^J mu_J.
Scalar pair_full(const Multivector& X, const Form& mu);

/// i_mu X with <i_mu X, eta> = <X, mu wedge eta>.
Multivector contract_form_into_mv(const Form& mu, const Multivector& X);

/// i_X mu with <Y, i_X mu> = <X wedge Y, mu>.
Form contract_mv_into_form(const Multivector& X, const Form& mu);

}  // namespace tanlift
