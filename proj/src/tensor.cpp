#include "tanlift/tensor.hpp"

#include <algorithm>
#include <sstream>

namespace tanlift {

ChartPtr make_chart(std::string name, std::vector<std::string> coords,
                    std::vector<std::string> params) {
    auto c = std::make_shared<Chart>();
    c->name = std::move(name);
    c->coords = std::move(coords);
    c->params = std::move(params);
    std::vector<std::string> names = c->coords;
    names.insert(names.end(), c->params.begin(), c->params.end());
    c->syms = SymbolTable::make(std::move(names));
    return c;
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->name == b->name && a->coords == b->coords && a->params == b->params;
}

ChartPtr tangent_chart(const ChartPtr& c) {
    if (c->is_tangent())
        throw EngineError("tangent_chart: chart " + c->name + " is already a tangent chart");
    std::vector<std::string> coords = c->coords;
    for (const auto& x : c->coords) coords.push_back(dotted_name(x));
    auto t = std::make_shared<Chart>();
    t->name = "T" + c->name;
    t->coords = std::move(coords);
    t->params = c->params;
    std::vector<std::string> names = t->coords;
    names.insert(names.end(), t->params.begin(), t->params.end());
    t->syms = SymbolTable::make(std::move(names));
    t->base = c;
    return t;
}

int normalize_sign(MultiIndex& idx) {
    int sign = 1;
    // Insertion sort, counting swaps; fine at exterior-algebra sizes.
    for (size_t i = 1; i < idx.size(); ++i) {
        for (size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
            std::swap(idx[j], idx[j - 1]);
            sign = -sign;
        }
    }
    for (size_t i = 1; i < idx.size(); ++i)
        if (idx[i] == idx[i - 1]) return 0;
    return sign;
}

int merge_sign(const MultiIndex& a, const MultiIndex& b, MultiIndex& out) {
    out.clear();
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    int sign = 1;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return 0;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining entries of a.
            if ((a.size() - i) % 2 == 1) sign = -sign;
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return sign;
}

bool is_subset(const MultiIndex& a, const MultiIndex& b) {
    size_t j = 0;
    for (int x : a) {
        while (j < b.size() && b[j] < x) ++j;
        if (j == b.size() || b[j] != x) return false;
        ++j;
    }
    return true;
}

MultiIndex set_minus(const MultiIndex& b, const MultiIndex& a) {
    MultiIndex out;
    size_t i = 0;
    for (int x : b) {
        if (i < a.size() && a[i] == x)
            ++i;
        else
            out.push_back(x);
    }
    return out;
}

std::vector<MultiIndex> all_multiindices(int n, int r) {
    std::vector<MultiIndex> out;
    if (r < 0 || r > n) return out;
    MultiIndex cur(r);
    for (int i = 0; i < r; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = r - 1;
        while (i >= 0 && cur[i] == n - r + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < r; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

template <class Tag>
GTensor<Tag> GTensor<Tag>::zero(ChartPtr chart, int degree) {
    if (degree < 0) throw EngineError("tensor degree must be nonnegative");
    GTensor t;
    t.chart_ = std::move(chart);
    t.deg_ = degree;
    return t;
}

template <class Tag>
GTensor<Tag> GTensor<Tag>::from_scalar(ChartPtr chart, const Scalar& s) {
    GTensor t = zero(std::move(chart), 0);
    if (!same_symbols(s.symbols(), t.chart_->syms))
        throw EngineError("from_scalar: scalar lives on a different chart");
    if (!s.is_zero()) t.comps_[MultiIndex{}] = s;
    return t;
}

template <class Tag>
GTensor<Tag> GTensor<Tag>::generator(ChartPtr chart, int i) {
    GTensor t = zero(std::move(chart), 1);
    if (i < 0 || i >= t.chart_->dim()) throw EngineError("generator index out of range");
    t.comps_[MultiIndex{i}] = Scalar::constant(t.chart_->syms, 1);
    return t;
}

template <class Tag>
Scalar GTensor<Tag>::to_scalar() const {
    if (deg_ != 0) throw EngineError("to_scalar: tensor degree is not 0");
    auto it = comps_.find(MultiIndex{});
    return it == comps_.end() ? Scalar::zero(chart_->syms) : it->second;
}

template <class Tag>
void GTensor<Tag>::add_term(MultiIndex idx, const Scalar& c) {
    if (static_cast<int>(idx.size()) != deg_)
        throw EngineError("add_term: index length differs from tensor degree");
    if (!same_symbols(c.symbols(), chart_->syms))
        throw EngineError("add_term: coefficient lives on a different chart");
    if (c.is_zero()) return;
    for (int i : idx)
        if (i < 0 || i >= chart_->dim()) throw EngineError("add_term: index out of range");
    int sign = normalize_sign(idx);
    if (sign == 0) return;
    Scalar add = sign == 1 ? c : -c;
    auto [it, inserted] = comps_.try_emplace(idx, add);
    if (!inserted) {
        it->second += add;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

template <class Tag>
Scalar GTensor<Tag>::comp(const MultiIndex& idx) const {
    auto it = comps_.find(idx);
    return it == comps_.end() ? Scalar::zero(chart_->syms) : it->second;
}

template <class Tag>
GTensor<Tag> GTensor<Tag>::operator-() const {
    GTensor t = *this;
    for (auto& [k, v] : t.comps_) v = -v;
    return t;
}

template <class Tag>
static void require_compatible(const GTensor<Tag>& a, const GTensor<Tag>& b) {
    if (!same_chart(a.chart(), b.chart()))
        throw EngineError("tensor operands live on different charts");
    if (a.degree() != b.degree()) throw EngineError("tensor operands have different degrees");
}

template <class Tag>
GTensor<Tag>& GTensor<Tag>::operator+=(const GTensor& o) {
    require_compatible(*this, o);
    for (const auto& [k, v] : o.comps_) {
        auto [it, inserted] = comps_.try_emplace(k, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }
    return *this;
}

template <class Tag>
GTensor<Tag>& GTensor<Tag>::operator-=(const GTensor& o) {
    return *this += -o;
}

template <class Tag>
GTensor<Tag> GTensor<Tag>::scale(const Scalar& f) const {
    GTensor t = zero(chart_, deg_);
    if (f.is_zero()) return t;
    for (const auto& [k, v] : comps_) {
        Scalar s = v * f;
        if (!s.is_zero()) t.comps_[k] = std::move(s);
    }
    return t;
}

template <class Tag>
GTensor<Tag> GTensor<Tag>::scale(const Rat& c) const {
    return scale(Scalar::constant(chart_->syms, c));
}

template <class Tag>
bool GTensor<Tag>::operator==(const GTensor& o) const {
    return same_chart(chart_, o.chart_) && deg_ == o.deg_ && comps_ == o.comps_;
}

template <class Tag>
static const char* basis_prefix();
template <>
const char* basis_prefix<MvTag>() {
    return "@";
}
template <>
const char* basis_prefix<FormTag>() {
    return "d";
}

template <class Tag>
std::string GTensor<Tag>::str() const {
    if (comps_.empty()) return "0";
    if (deg_ == 0) return to_scalar().str();
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, v] : comps_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << v.str() << ")*";
        for (size_t i = 0; i < k.size(); ++i) {
            if (i) out << "^";
            out << basis_prefix<Tag>() << chart_->coords[k[i]];
        }
    }
    return out.str();
}

template class GTensor<MvTag>;
template class GTensor<FormTag>;

template <class Tag>
static GTensor<Tag> wedge_impl(const GTensor<Tag>& a, const GTensor<Tag>& b) {
    if (!same_chart(a.chart(), b.chart()))
        throw EngineError("wedge: operands live on different charts");
    GTensor<Tag> t = GTensor<Tag>::zero(a.chart(), a.degree() + b.degree());
    MultiIndex merged;
    for (const auto& [ka, va] : a.comps()) {
        for (const auto& [kb, vb] : b.comps()) {
            int sign = merge_sign(ka, kb, merged);
            if (sign == 0) continue;
            Scalar c = va * vb;
            if (sign < 0) c = -c;
            t.add_term(merged, c);
        }
    }
    return t;
}

Multivector wedge(const Multivector& a, const Multivector& b) { return wedge_impl(a, b); }
Form wedge(const Form& a, const Form& b) { return wedge_impl(a, b); }

Scalar pair_full(const Multivector& X, const Form& mu) {
    if (!same_chart(X.chart(), mu.chart()))
        throw EngineError("pair: operands live on different charts");
    if (X.degree() != mu.degree()) throw EngineError("pair: degrees differ");
    Scalar acc = Scalar::zero(X.chart()->syms);
    for (const auto& [k, v] : X.comps()) {
        auto it = mu.comps().find(k);
        if (it != mu.comps().end()) acc += v * it->second;
    }
    return acc;
}

// Shared kernel: contract the degree-a index set of `lower` into `upper`.
// On basis elements: i_{e_J} e_K = merge_sign(J, K\J) e_{K\J} when J is a
// subset of K, else 0. Serves both directions because the defining
// adjunctions pin the same shuffle sign.
template <class TagU, class TagL>
static GTensor<TagU> interior(const GTensor<TagL>& lower, const GTensor<TagU>& upper) {
    if (!same_chart(lower.chart(), upper.chart()))
        throw EngineError("contract: operands live on different charts");
    if (lower.degree() > upper.degree())
        throw EngineError("contract: contracting degree exceeds target degree");
    GTensor<TagU> t = GTensor<TagU>::zero(upper.chart(), upper.degree() - lower.degree());
    MultiIndex rest, back;
    for (const auto& [kj, vj] : lower.comps()) {
        for (const auto& [kk, vk] : upper.comps()) {
            if (!is_subset(kj, kk)) continue;
            rest = set_minus(kk, kj);
            int sign = merge_sign(kj, rest, back);
            Scalar c = vj * vk;
            if (sign < 0) c = -c;
            t.add_term(rest, c);
        }
    }
    return t;
}

Multivector contract_form_into_mv(const Form& mu, const Multivector& X) {
    return interior(mu, X);
}

Form contract_mv_into_form(const Multivector& X, const Form& mu) {
    return interior(X, mu);
}

}  // namespace tanlift
