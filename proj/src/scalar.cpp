#include "tanlift/scalar.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace tanlift {

Rat rat_parse(const std::string& s) {
    if (s.empty()) throw EngineError("empty rational literal");
    try {
        Rat r(s);
        return r;
    } catch (const std::exception&) {
        throw EngineError("malformed rational literal: " + s);
    }
}

std::shared_ptr<const SymbolTable> SymbolTable::make(std::vector<std::string> names) {
    auto t = std::make_shared<SymbolTable>();
    std::set<std::string> seen;
    for (size_t i = 0; i < names.size(); ++i) {
        if (names[i].empty()) throw EngineError("empty symbol name");
        if (!seen.insert(names[i]).second)
            throw EngineError("duplicate symbol name: " + names[i]);
        t->index_[names[i]] = static_cast<int>(i);
    }
    t->names_ = std::move(names);
    return t;
}

int SymbolTable::find(const std::string& n) const {
    auto it = index_.find(n);
    return it == index_.end() ? -1 : it->second;
}

int SymbolTable::index_of(const std::string& n) const {
    int i = find(n);
    if (i < 0) throw EngineError("unknown symbol: " + n);
    return i;
}

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return a < b;
}

Scalar Scalar::zero(SymbolsPtr syms) {
    Scalar s;
    s.syms_ = std::move(syms);
    return s;
}

Scalar Scalar::constant(SymbolsPtr syms, const Rat& c) {
    Scalar s = zero(std::move(syms));
    if (c != 0) s.terms_[Exponents(s.syms_->size(), 0)] = c;
    return s;
}

Scalar Scalar::variable(SymbolsPtr syms, int idx) {
    Scalar s = zero(std::move(syms));
    if (idx < 0 || idx >= s.syms_->size()) throw EngineError("variable index out of range");
    Exponents e(s.syms_->size(), 0);
    e[idx] = 1;
    s.terms_[e] = 1;
    return s;
}

Scalar Scalar::monomial(SymbolsPtr syms, Exponents e, const Rat& c) {
    Scalar s = zero(std::move(syms));
    if (static_cast<int>(e.size()) != s.syms_->size())
        throw EngineError("monomial exponent length mismatch");
    if (c != 0) s.terms_[std::move(e)] = c;
    return s;
}

bool Scalar::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Exponents& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

Rat Scalar::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw EngineError("scalar is not constant");
    return terms_.begin()->second;
}

int Scalar::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_)
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

void Scalar::add_term(const Exponents& e, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

static void require_same_table(const Scalar& a, const Scalar& b) {
    if (!same_symbols(a.symbols(), b.symbols()))
        throw EngineError("scalar operands live on different symbol tables");
}

Scalar& Scalar::operator+=(const Scalar& o) {
    require_same_table(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    require_same_table(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    require_same_table(a, b);
    Scalar r = Scalar::zero(a.symbols());
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            Exponents e(ea);
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Scalar Scalar::operator*(const Rat& c) const {
    Scalar r = zero(syms_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
}

Scalar Scalar::pow(int k) const {
    if (k < 0) throw EngineError("negative exponent");
    Scalar r = constant(syms_, 1);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

Scalar Scalar::partial(int idx) const {
    if (idx < 0 || idx >= syms_->size()) throw EngineError("partial: index out of range");
    Scalar r = zero(syms_);
    for (const auto& [e, c] : terms_) {
        if (e[idx] == 0) continue;
        Exponents d(e);
        d[idx] -= 1;
        r.add_term(d, c * e[idx]);
    }
    return r;
}

Rat Scalar::eval(const std::vector<Rat>& point) const {
    if (static_cast<int>(point.size()) != syms_->size())
        throw EngineError("eval: point dimension mismatch");
    Rat acc(0);
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

Scalar Scalar::substitute(const std::vector<std::optional<Scalar>>& repl) const {
    if (static_cast<int>(repl.size()) != syms_->size())
        throw EngineError("substitute: replacement vector length mismatch");
    for (const auto& r : repl)
        if (r && !same_symbols(r->symbols(), syms_))
            throw EngineError("substitute: replacement on a different symbol table");
    Scalar acc = zero(syms_);
    for (const auto& [e, c] : terms_) {
        Scalar t = constant(syms_, c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (repl[i])
                t = t * repl[i]->pow(e[i]);
            else
                t = t * variable(syms_, static_cast<int>(i)).pow(e[i]);
        }
        acc += t;
    }
    return acc;
}

Scalar Scalar::transport(SymbolsPtr target, const std::vector<int>& index_map) const {
    if (static_cast<int>(index_map.size()) != syms_->size())
        throw EngineError("transport: index map length mismatch");
    Scalar r = zero(std::move(target));
    int m = r.syms_->size();
    for (const auto& [e, c] : terms_) {
        Exponents f(m, 0);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            int j = index_map[i];
            if (j < 0 || j >= m)
                throw EngineError("transport: variable " + syms_->name(static_cast<int>(i)) +
                                  " has no image in the target table");
            f[j] += e[i];
        }
        r.add_term(f, c);
    }
    return r;
}

Scalar Scalar::transport_by_name(SymbolsPtr target) const {
    std::vector<int> map(syms_->size());
    for (int i = 0; i < syms_->size(); ++i) map[i] = target->find(syms_->name(i));
    return transport(std::move(target), map);
}

bool Scalar::operator==(const Scalar& o) const {
    return same_symbols(syms_, o.syms_) && terms_ == o.terms_;
}

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Descending grlex: highest-degree terms first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rat a = c;
        if (first) {
            if (a < 0) {
                out << "-";
                a = -a;
            }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool has_vars = std::any_of(e.begin(), e.end(), [](int k) { return k != 0; });
        bool coeff_shown = !has_vars || a != 1;
        if (coeff_shown) out << rat_str(a);
        bool need_star = coeff_shown;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (need_star) out << "*";
            out << syms_->name(static_cast<int>(i));
            if (e[i] > 1) out << "^" << e[i];
            need_star = true;
        }
    }
    return out.str();
}

}  // namespace tanlift
