#include "tanlift/cartan.hpp"

#include <sstream>

namespace tanlift {

Form exterior_d(const Form& mu) {
    Form out = Form::zero(mu.chart(), mu.degree() + 1);
    int n = mu.chart()->dim();
    for (const auto& [idx, f] : mu.comps()) {
        for (int k = 0; k < n; ++k) {
            Scalar df = f.partial(k);
            if (df.is_zero()) continue;
            MultiIndex ext;
            ext.reserve(idx.size() + 1);
            ext.push_back(k);
            ext.insert(ext.end(), idx.begin(), idx.end());
            out.add_term(std::move(ext), df);
        }
    }
    return out;
}

Form differential(const Scalar& f, const ChartPtr& chart) {
    return exterior_d(Form::from_scalar(chart, f));
}

namespace {

// Left derivative with respect to the odd generator theta_k: a component
// K -> f with k at position m contributes (-1)^m f on K \ {k}.
Multivector theta_partial(const Multivector& P, int k) {
    Multivector out = Multivector::zero(P.chart(), P.degree() - 1);
    for (const auto& [idx, f] : P.comps()) {
        for (size_t m = 0; m < idx.size(); ++m) {
            if (idx[m] != k) continue;
            MultiIndex rest;
            rest.reserve(idx.size() - 1);
            for (size_t i = 0; i < idx.size(); ++i)
                if (i != m) rest.push_back(idx[i]);
            out.add_term(std::move(rest), m % 2 == 0 ? f : -f);
            break;
        }
    }
    return out;
}

// Coefficientwise d/dx^k.
Multivector coeff_partial(const Multivector& P, int k) {
    Multivector out = Multivector::zero(P.chart(), P.degree());
    for (const auto& [idx, f] : P.comps()) {
        Scalar df = f.partial(k);
        if (!df.is_zero()) out.add_term(MultiIndex(idx), df);
    }
    return out;
}

int parity_sign(int e) { return ((e % 2) + 2) % 2 == 0 ? 1 : -1; }

}  // namespace

Multivector schouten(const Multivector& P, const Multivector& Q) {
    if (!same_chart(P.chart(), Q.chart()))
        throw EngineError("schouten: operands live on different charts");
    int p = P.degree(), q = Q.degree();
    if (p == 0 && q == 0) return Multivector::zero(P.chart(), 0);
    Multivector out = Multivector::zero(P.chart(), p + q - 1);
    int n = P.chart()->dim();
    int s1 = parity_sign(p - 1);
    int s2 = -parity_sign((p - 1) * (q - 1) + (q - 1));
    for (int k = 0; k < n; ++k) {
        if (p > 0) {
            Multivector t = wedge(theta_partial(P, k), coeff_partial(Q, k));
            out += s1 == 1 ? t : -t;
        }
        if (q > 0) {
            Multivector t = wedge(theta_partial(Q, k), coeff_partial(P, k));
            out += s2 == 1 ? t : -t;
        }
    }
    return out;
}

Multivector lie_derivative_mv(const Multivector& X, const Multivector& P) {
    if (X.degree() != 1) throw EngineError("lie_derivative: X must have degree 1");
    return schouten(X, P);
}

Form lie_derivative_form(const Multivector& X, const Form& mu) {
    if (X.degree() != 1) throw EngineError("lie_derivative: X must have degree 1");
    Form t = contract_mv_into_form(X, exterior_d(mu));
    if (mu.degree() > 0) t += exterior_d(contract_mv_into_form(X, mu));
    return t;
}

PolyMap make_poly_map(ChartPtr src, ChartPtr dst, std::vector<Scalar> comps) {
    if (static_cast<int>(comps.size()) != dst->dim())
        throw EngineError("map: component count differs from target dimension");
    for (const auto& c : comps)
        if (!same_symbols(c.symbols(), src->syms))
            throw EngineError("map: component lives off the source chart");
    for (const auto& p : dst->params)
        if (src->syms->find(p) < 0)
            throw EngineError("map: target parameter " + p + " missing from source chart");
    return PolyMap{std::move(src), std::move(dst), std::move(comps)};
}

Scalar pullback_scalar(const PolyMap& phi, const Scalar& f) {
    if (!same_symbols(f.symbols(), phi.dst->syms))
        throw EngineError("pullback: scalar lives off the target chart");
    int nd = phi.dst->dim();
    Scalar acc = Scalar::zero(phi.src->syms);
    for (const auto& [e, c] : f.terms()) {
        Scalar t = Scalar::constant(phi.src->syms, c);
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (static_cast<int>(i) < nd) {
                t = t * phi.comps[i].pow(e[i]);
            } else {
                int j = phi.src->syms->index_of(phi.dst->syms->name(static_cast<int>(i)));
                t = t * Scalar::variable(phi.src->syms, j).pow(e[i]);
            }
        }
        acc += t;
    }
    return acc;
}

Form pullback_form(const PolyMap& phi, const Form& mu) {
    Form out = Form::zero(phi.src, mu.degree());
    int n = phi.src->dim();
    for (const auto& [idx, f] : mu.comps()) {
        Form factor = Form::from_scalar(phi.src, pullback_scalar(phi, f));
        for (int a : idx) {
            Form dphi = Form::zero(phi.src, 1);
            for (int k = 0; k < n; ++k) {
                Scalar d = phi.comps[a].partial(k);
                if (!d.is_zero()) dphi.add_term(MultiIndex{k}, d);
            }
            factor = wedge(factor, dphi);
        }
        out += factor;
    }
    return out;
}

Scalar poly_det(const std::vector<std::vector<Scalar>>& m, SymbolsPtr syms) {
    size_t n = m.size();
    if (n == 0) return Scalar::constant(std::move(syms), 1);
    if (n == 1) return m[0][0];
    Scalar acc = Scalar::zero(syms);
    // Laplace expansion along the first column; n stays tiny here.
    for (size_t i = 0; i < n; ++i) {
        if (m[i][0].is_zero()) continue;
        std::vector<std::vector<Scalar>> sub;
        sub.reserve(n - 1);
        for (size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            std::vector<Scalar> row(m[r].begin() + 1, m[r].end());
            sub.push_back(std::move(row));
        }
        Scalar term = m[i][0] * poly_det(sub, syms);
        acc += i % 2 == 0 ? term : -term;
    }
    return acc;
}

bool multivector_related(const PolyMap& phi, const Multivector& P, const Multivector& Q,
                         std::string* witness) {
    if (!same_chart(P.chart(), phi.src) || !same_chart(Q.chart(), phi.dst))
        throw EngineError("relatedness: structures live off the map's charts");
    if (P.degree() != Q.degree()) throw EngineError("relatedness: degrees differ");
    int r = P.degree();
    int ns = phi.src->dim(), nd = phi.dst->dim();
    std::vector<std::vector<Scalar>> jac(nd, std::vector<Scalar>(ns, Scalar::zero(phi.src->syms)));
    for (int a = 0; a < nd; ++a)
        for (int k = 0; k < ns; ++k) jac[a][k] = phi.comps[a].partial(k);

    for (const auto& L : all_multiindices(nd, r)) {
        Scalar lhs = Scalar::zero(phi.src->syms);
        for (const auto& [K, c] : P.comps()) {
            std::vector<std::vector<Scalar>> sub(r, std::vector<Scalar>(r, Scalar::zero(phi.src->syms)));
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) sub[i][j] = jac[L[i]][K[j]];
            Scalar d = poly_det(sub, phi.src->syms);
            if (!d.is_zero()) lhs += c * d;
        }
        Scalar rhs = pullback_scalar(phi, Q.comp(L));
        if (lhs != rhs) {
            if (witness) {
                std::ostringstream os;
                os << "component (";
                for (size_t i = 0; i < L.size(); ++i)
                    os << (i ? "," : "") << phi.dst->coords[L[i]];
                os << "): pushforward " << lhs.str() << " vs " << rhs.str();
                *witness = os.str();
            }
            return false;
        }
    }
    return true;
}

}  // namespace tanlift
