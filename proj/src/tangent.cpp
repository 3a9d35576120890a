#include "tanlift/tangent.hpp"

namespace tanlift {

namespace {

const ChartPtr& base_of(const ChartPtr& tm) {
    if (!tm->is_tangent()) throw EngineError("expected a tangent chart, got " + tm->name);
    return tm->base;
}

void require_base_chart(const ChartPtr& c) {
    if (c->is_tangent())
        throw EngineError("lift input must live on a base chart, got " + c->name);
}

}  // namespace

Scalar vT_scalar(const ChartPtr& tm, const Scalar& f) {
    base_of(tm);
    return f.transport_by_name(tm->syms);
}

Scalar dT_scalar(const ChartPtr& tm, const Scalar& f) {
    const ChartPtr& m = base_of(tm);
    if (!same_symbols(f.symbols(), m->syms))
        throw EngineError("dT_scalar: scalar lives off the base chart");
    int n = m->dim();
    Scalar acc = Scalar::zero(tm->syms);
    for (int k = 0; k < n; ++k) {
        Scalar d = f.partial(k);
        if (d.is_zero()) continue;
        acc += d.transport_by_name(tm->syms) * Scalar::variable(tm->syms, n + k);
    }
    return acc;
}

Form vT_form(const Form& mu) {
    require_base_chart(mu.chart());
    ChartPtr tm = tangent_chart(mu.chart());
    Form out = Form::zero(tm, mu.degree());
    for (const auto& [idx, f] : mu.comps()) out.add_term(MultiIndex(idx), vT_scalar(tm, f));
    return out;
}

Multivector vT_mv(const Multivector& X) {
    require_base_chart(X.chart());
    ChartPtr tm = tangent_chart(X.chart());
    int n = X.chart()->dim();
    Multivector out = Multivector::zero(tm, X.degree());
    for (const auto& [idx, f] : X.comps()) {
        MultiIndex dotted(idx);
        for (int& i : dotted) i += n;
        out.add_term(std::move(dotted), vT_scalar(tm, f));
    }
    return out;
}

Multivector second_order_field(const ChartPtr& tm, std::vector<Scalar> f) {
    int n = base_of(tm)->dim();
    if (f.empty()) f.assign(n, Scalar::zero(tm->syms));
    if (static_cast<int>(f.size()) != n)
        throw EngineError("second_order_field: one fiber component per base coordinate");
    Multivector g = Multivector::zero(tm, 1);
    for (int k = 0; k < n; ++k) {
        g.add_term(MultiIndex{k}, Scalar::variable(tm->syms, n + k));
        if (!same_symbols(f[k].symbols(), tm->syms))
            throw EngineError("second_order_field: component lives off the tangent chart");
        g.add_term(MultiIndex{n + k}, f[k]);
    }
    return g;
}

Form iota_T_with(const Form& mu, const Multivector& gamma) {
    if (mu.degree() == 0) {
        require_base_chart(mu.chart());
        return Form::zero(tangent_chart(mu.chart()), 0);
    }
    return contract_mv_into_form(gamma, vT_form(mu));
}

Form iota_T(const Form& mu) {
    if (mu.degree() == 0) {
        require_base_chart(mu.chart());
        return Form::zero(tangent_chart(mu.chart()), 0);
    }
    return iota_T_with(mu, second_order_field(tangent_chart(mu.chart())));
}

Form dT_form(const Form& mu) {
    require_base_chart(mu.chart());
    ChartPtr tm = tangent_chart(mu.chart());
    int n = mu.chart()->dim();
    Form out = Form::zero(tm, mu.degree());
    if (mu.degree() == 0) {
        Scalar s = dT_scalar(tm, mu.to_scalar());
        if (!s.is_zero()) out.add_term(MultiIndex{}, s);
        return out;
    }
    for (const auto& [idx, f] : mu.comps()) {
        out.add_term(MultiIndex(idx), dT_scalar(tm, f));
        Scalar v = vT_scalar(tm, f);
        for (size_t m = 0; m < idx.size(); ++m) {
            MultiIndex shifted(idx);
            shifted[m] += n;
            out.add_term(std::move(shifted), v);
        }
    }
    return out;
}

Multivector dT_mv(const Multivector& X) {
    require_base_chart(X.chart());
    ChartPtr tm = tangent_chart(X.chart());
    int n = X.chart()->dim();
    Multivector out = Multivector::zero(tm, X.degree());
    if (X.degree() == 0) {
        Scalar s = dT_scalar(tm, X.to_scalar());
        if (!s.is_zero()) out.add_term(MultiIndex{}, s);
        return out;
    }
    for (const auto& [idx, f] : X.comps()) {
        MultiIndex dotted(idx);
        for (int& i : dotted) i += n;
        out.add_term(MultiIndex(dotted), dT_scalar(tm, f));
        Scalar v = vT_scalar(tm, f);
        for (size_t m = 0; m < idx.size(); ++m) {
            MultiIndex mixed(dotted);
            mixed[m] -= n;
            out.add_term(std::move(mixed), v);
        }
    }
    return out;
}

PolyMap section_of_field(const Multivector& X) {
    if (X.degree() != 1) throw EngineError("section: X must have degree 1");
    require_base_chart(X.chart());
    ChartPtr m = X.chart();
    ChartPtr tm = tangent_chart(m);
    std::vector<Scalar> comps;
    comps.reserve(2 * m->dim());
    for (int i = 0; i < m->dim(); ++i) comps.push_back(m->coord(i));
    for (int i = 0; i < m->dim(); ++i) comps.push_back(X.comp(MultiIndex{i}));
    return make_poly_map(m, tm, std::move(comps));
}

Scalar restrict_to_section(const Multivector& X, const Scalar& f) {
    return pullback_scalar(section_of_field(X), f);
}

Form pullback_form_along_field(const Multivector& X, const Form& mu) {
    return pullback_form(section_of_field(X), mu);
}

Multivector pullback_mv_along_field(const Multivector& X, const Multivector& Y) {
    if (X.degree() != 1) throw EngineError("pullback along field: X must have degree 1");
    require_base_chart(X.chart());
    ChartPtr m = X.chart();
    ChartPtr tm = tangent_chart(m);
    if (!same_chart(Y.chart(), tm))
        throw EngineError("pullback along field: Y must live on the tangent chart of X");
    int n = m->dim();
    // Images of the tangent-chart generators under the vertical projection
    // along the section, with d/dx_dot^i identified with d/dx^i.
    std::vector<Multivector> img;
    img.reserve(2 * n);
    for (int j = 0; j < n; ++j) {
        Multivector g = Multivector::zero(m, 1);
        for (int k = 0; k < n; ++k) {
            Scalar d = X.comp(MultiIndex{k}).partial(j);
            if (!d.is_zero()) g.add_term(MultiIndex{k}, -d);
        }
        img.push_back(std::move(g));
    }
    for (int i = 0; i < n; ++i) img.push_back(Multivector::generator(m, i));

    Multivector out = Multivector::zero(m, Y.degree());
    for (const auto& [idx, f] : Y.comps()) {
        Multivector w = Multivector::from_scalar(m, restrict_to_section(X, f));
        for (int i : idx) w = wedge(w, img[i]);
        out += w;
    }
    return out;
}

Form x_plus(const Multivector& X, const Form& mu) {
    return dT_form(mu) - vT_form(lie_derivative_form(X, mu));
}

Form x_star(const Multivector& X, const Form& mu) {
    require_base_chart(mu.chart());
    ChartPtr m = mu.chart();
    ChartPtr tm = tangent_chart(m);
    Form out = Form::zero(tm, mu.degree());
    for (const auto& [idx, f] : mu.comps()) {
        Form w = Form::from_scalar(tm, vT_scalar(tm, f));
        for (int i : idx) {
            Form basis = Form::zero(m, 1);
            basis.add_term(MultiIndex{i}, Scalar::constant(m->syms, 1));
            w = wedge(w, x_plus(X, basis));
        }
        out += w;
    }
    return out;
}

}  // namespace tanlift
