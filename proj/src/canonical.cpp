#include "tanlift/canonical.hpp"

#include <sstream>

namespace tanlift {

// ============================= numeric points ==============================

BasePt make_base_pt(ChartPtr chart, Vec vals) {
    if (static_cast<int>(vals.size()) != chart->syms->size())
        throw EngineError("point of " + chart->name + ": " + std::to_string(vals.size()) +
                          " values for " + std::to_string(chart->syms->size()) + " symbols");
    return BasePt{std::move(chart), std::move(vals)};
}

bool same_base_pt(const BasePt& a, const BasePt& b) {
    return same_chart(a.chart, b.chart) && a.vals == b.vals;
}

Rat eval_at(const Scalar& f, const BasePt& b) {
    if (!same_symbols(f.symbols(), b.chart->syms))
        throw EngineError("eval_at: scalar lives off the point's chart");
    return f.eval(b.vals);
}

void comp_put(FiberComps& m, MultiIndex idx, const Rat& c) {
    if (c == 0) return;
    int sign = normalize_sign(idx);
    if (sign == 0) return;
    Rat& slot = m[idx];
    slot += sign > 0 ? c : -c;
    if (slot == 0) m.erase(idx);
}

FiberComps comp_add(FiberComps a, const FiberComps& b) {
    for (const auto& [idx, c] : b) comp_put(a, idx, c);
    return a;
}

FiberComps comp_scale(FiberComps a, const Rat& c) {
    if (c == 0) return {};
    for (auto& [idx, v] : a) v *= c;
    return a;
}

FiberComps comp_wedge(const FiberComps& a, const FiberComps& b) {
    FiberComps out;
    for (const auto& [ja, ca] : a)
        for (const auto& [jb, cb] : b) {
            MultiIndex merged;
            int sign = merge_sign(ja, jb, merged);
            if (sign == 0) continue;
            comp_put(out, merged, ca * cb * Rat(sign));
        }
    return out;
}

bool eq(const MvPt& a, const MvPt& b) {
    return same_base_pt(a.b, b.b) && a.r == b.r && a.w == b.w;
}

bool eq(const FormPt& a, const FormPt& b) {
    return same_base_pt(a.b, b.b) && a.r == b.r && a.p == b.p;
}

bool eq(const TMvPt& a, const TMvPt& b) {
    return eq(a.pt, b.pt) && a.dx == b.dx && a.dw == b.dw;
}

bool eq(const TFormPt& a, const TFormPt& b) {
    return eq(a.pt, b.pt) && a.dx == b.dx && a.dp == b.dp;
}

namespace {

void print_comps(std::ostringstream& os, const FiberComps& m) {
    bool first = true;
    for (const auto& [idx, c] : m) {
        if (!first) os << ", ";
        first = false;
        os << "{";
        for (size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
        os << "}:" << c;
    }
    if (first) os << "0";
}

void print_vec(std::ostringstream& os, const Vec& v) {
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
}

}  // namespace

std::string str(const MvPt& u) {
    std::ostringstream os;
    os << u.b.chart->name << "(";
    print_vec(os, u.b.vals);
    os << "; ";
    print_comps(os, u.w);
    os << ")";
    return os.str();
}

std::string str(const FormPt& a) {
    std::ostringstream os;
    os << a.b.chart->name << "(";
    print_vec(os, a.b.vals);
    os << "; ";
    print_comps(os, a.p);
    os << ")";
    return os.str();
}

std::string str(const TMvPt& v) {
    std::ostringstream os;
    os << str(v.pt) << " + d(";
    print_vec(os, v.dx);
    os << "; ";
    print_comps(os, v.dw);
    os << ")";
    return os.str();
}

std::string str(const TFormPt& z) {
    std::ostringstream os;
    os << str(z.pt) << " + d(";
    print_vec(os, z.dx);
    os << "; ";
    print_comps(os, z.dp);
    os << ")";
    return os.str();
}

MvPt wedge(const MvPt& a, const MvPt& b) {
    if (!same_base_pt(a.b, b.b)) throw EngineError("wedge: foot points differ");
    return MvPt{a.b, a.r + b.r, comp_wedge(a.w, b.w)};
}

FormPt wedge(const FormPt& a, const FormPt& b) {
    if (!same_base_pt(a.b, b.b)) throw EngineError("wedge: foot points differ");
    return FormPt{a.b, a.r + b.r, comp_wedge(a.p, b.p)};
}

TMvPt t_wedge(const TMvPt& a, const TMvPt& b) {
    if (a.dx != b.dx) throw EngineError("t_wedge: base velocities differ");
    TMvPt out;
    out.pt = wedge(a.pt, b.pt);
    out.dx = a.dx;
    out.dw = comp_add(comp_wedge(a.dw, b.pt.w), comp_wedge(a.pt.w, b.dw));
    return out;
}

TFormPt t_wedge(const TFormPt& a, const TFormPt& b) {
    if (a.dx != b.dx) throw EngineError("t_wedge: base velocities differ");
    TFormPt out;
    out.pt = wedge(a.pt, b.pt);
    out.dx = a.dx;
    out.dp = comp_add(comp_wedge(a.dp, b.pt.p), comp_wedge(a.pt.p, b.dp));
    return out;
}

Rat pairing(const FormPt& a, const MvPt& u) {
    if (!same_base_pt(a.b, u.b) || a.r != u.r)
        throw EngineError("pairing: incompatible points");
    Rat out(0);
    for (const auto& [idx, c] : a.p) {
        auto it = u.w.find(idx);
        if (it != u.w.end()) out += c * it->second;
    }
    return out;
}

Rat tangent_pairing(const TFormPt& z, const TMvPt& v) {
    if (!same_base_pt(z.pt.b, v.pt.b) || z.dx != v.dx || z.pt.r != v.pt.r)
        throw EngineError("tangent_pairing: incompatible tangent vectors");
    Rat out(0);
    for (const auto& [idx, c] : z.dp) {
        auto it = v.pt.w.find(idx);
        if (it != v.pt.w.end()) out += c * it->second;
    }
    for (const auto& [idx, c] : z.pt.p) {
        auto it = v.dw.find(idx);
        if (it != v.dw.end()) out += c * it->second;
    }
    return out;
}

MvPt eval_mv(const Multivector& X, const BasePt& b) {
    if (!same_chart(X.chart(), b.chart)) throw EngineError("eval_mv: chart mismatch");
    MvPt out{b, X.degree(), {}};
    for (const auto& [idx, c] : X.comps()) comp_put(out.w, idx, c.eval(b.vals));
    return out;
}

FormPt eval_form(const Form& mu, const BasePt& b) {
    if (!same_chart(mu.chart(), b.chart)) throw EngineError("eval_form: chart mismatch");
    FormPt out{b, mu.degree(), {}};
    for (const auto& [idx, c] : mu.comps()) comp_put(out.p, idx, c.eval(b.vals));
    return out;
}

// On basis elements (as in the symbolic kernel): i_{e_J} e_K =
// merge_sign(J, K\J) e_{K\J} whenever J is a subset of K.
FormPt contract_at(const Form& mu, const MvPt& u) {
    if (!same_chart(mu.chart(), u.b.chart)) throw EngineError("contract_at: chart mismatch");
    if (u.r > mu.degree()) throw EngineError("contract_at: degree of the argument too high");
    FormPt out{u.b, mu.degree() - u.r, {}};
    for (const auto& [bigk, c] : mu.comps()) {
        Rat cv = c.eval(u.b.vals);
        if (cv == 0) continue;
        for (const auto& [j, uj] : u.w) {
            if (!is_subset(j, bigk)) continue;
            MultiIndex rest = set_minus(bigk, j);
            MultiIndex merged;
            int sign = merge_sign(j, rest, merged);
            comp_put(out.p, rest, cv * uj * Rat(sign));
        }
    }
    return out;
}

MvPt contract_at(const Multivector& X, const FormPt& a) {
    if (!same_chart(X.chart(), a.b.chart)) throw EngineError("contract_at: chart mismatch");
    if (a.r > X.degree()) throw EngineError("contract_at: degree of the argument too high");
    MvPt out{a.b, X.degree() - a.r, {}};
    for (const auto& [bigk, c] : X.comps()) {
        Rat cv = c.eval(a.b.vals);
        if (cv == 0) continue;
        for (const auto& [j, aj] : a.p) {
            if (!is_subset(j, bigk)) continue;
            MultiIndex rest = set_minus(bigk, j);
            MultiIndex merged;
            int sign = merge_sign(j, rest, merged);
            comp_put(out.w, rest, cv * aj * Rat(sign));
        }
    }
    return out;
}

BasePt random_base_pt(const ChartPtr& chart, Rng& rng) {
    Vec vals;
    vals.reserve(chart->syms->size());
    for (int i = 0; i < chart->syms->size(); ++i) vals.push_back(rng.rational());
    return BasePt{chart, std::move(vals)};
}

namespace {

FiberComps random_comps(int dim, int r, Rng& rng) {
    FiberComps out;
    for (const auto& idx : all_multiindices(dim, r)) comp_put(out, idx, rng.rational());
    return out;
}

Vec random_vec(int n, Rng& rng) {
    Vec out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(rng.rational());
    return out;
}

MvPt random_mv_pt_at(const BasePt& b, int r, Rng& rng) {
    return MvPt{b, r, random_comps(b.chart->dim(), r, rng)};
}

FormPt random_form_pt_at(const BasePt& b, int r, Rng& rng) {
    return FormPt{b, r, random_comps(b.chart->dim(), r, rng)};
}

}  // namespace

MvPt random_mv_pt(const ChartPtr& chart, int r, Rng& rng) {
    return random_mv_pt_at(random_base_pt(chart, rng), r, rng);
}

FormPt random_form_pt(const ChartPtr& chart, int r, Rng& rng) {
    return random_form_pt_at(random_base_pt(chart, rng), r, rng);
}

TMvPt random_tmv_pt(const ChartPtr& chart, int r, Rng& rng) {
    TMvPt out;
    out.pt = random_mv_pt(chart, r, rng);
    out.dx = random_vec(chart->dim(), rng);
    out.dw = random_comps(chart->dim(), r, rng);
    return out;
}

TFormPt random_tform_pt(const ChartPtr& chart, int r, Rng& rng) {
    TFormPt out;
    out.pt = random_form_pt(chart, r, rng);
    out.dx = random_vec(chart->dim(), rng);
    out.dp = random_comps(chart->dim(), r, rng);
    return out;
}

// ============================= canonical maps ==============================

namespace {

// Splits a strict index over a tangent chart into plain part and the dotted
// part shifted back to base indices.
void split_dotted(const MultiIndex& idx, int n, MultiIndex& plain, MultiIndex& dotted) {
    plain.clear();
    dotted.clear();
    for (int i : idx)
        (i < n ? plain : dotted).push_back(i < n ? i : i - n);
}

ChartPtr require_tangent(const ChartPtr& c, const char* who) {
    if (!c->is_tangent()) throw EngineError(std::string(who) + ": expects a tangent chart");
    return c->base;
}

BasePt foot_on_base(const BasePt& b, const ChartPtr& m) {
    int n = m->dim();
    Vec vals(b.vals.begin(), b.vals.begin() + n);
    vals.insert(vals.end(), b.vals.begin() + 2 * n, b.vals.end());
    return BasePt{m, std::move(vals)};
}

Vec dotted_part(const BasePt& b, int n) {
    return Vec(b.vals.begin() + n, b.vals.begin() + 2 * n);
}

BasePt foot_on_tangent(const BasePt& b, const Vec& dx) {
    ChartPtr tm = tangent_chart(b.chart);
    int n = b.chart->dim();
    Vec vals(b.vals.begin(), b.vals.begin() + n);
    vals.insert(vals.end(), dx.begin(), dx.end());
    vals.insert(vals.end(), b.vals.begin() + n, b.vals.end());
    return BasePt{tm, std::move(vals)};
}

}  // namespace

TMvPt kappa_r(const MvPt& u) {
    ChartPtr m = require_tangent(u.b.chart, "tangent flip");
    int n = m->dim();
    TMvPt out;
    out.pt = MvPt{foot_on_base(u.b, m), u.r, {}};
    out.dx = dotted_part(u.b, n);
    MultiIndex plain, dotted;
    for (const auto& [idx, c] : u.w) {
        split_dotted(idx, n, plain, dotted);
        if (dotted.empty()) {
            comp_put(out.pt.w, plain, c);
        } else if (dotted.size() == 1) {
            // Bubbling the dotted slot to the end costs (-1)^{r-m} for slot
            // position m in the merged label; that is the shuffle sign of
            // concat(plain, dotted). Collisions are annihilated.
            MultiIndex merged;
            int sign = merge_sign(plain, dotted, merged);
            if (sign != 0) comp_put(out.dw, merged, c * Rat(sign));
        }
    }
    return out;
}

TFormPt eps_r(const FormPt& a) {
    ChartPtr m = require_tangent(a.b.chart, "cotangent flip");
    int n = m->dim();
    TFormPt out;
    out.pt = FormPt{foot_on_base(a.b, m), a.r, {}};
    out.dx = dotted_part(a.b, n);
    MultiIndex plain, dotted;
    for (const auto& [idx, c] : a.p) {
        split_dotted(idx, n, plain, dotted);
        if (plain.empty()) {
            comp_put(out.pt.p, dotted, c);
        } else if (plain.size() == 1) {
            // The plain slot at position m of the merged label carries
            // (-1)^{m-1}, the shuffle sign of concat(plain, dotted).
            MultiIndex merged;
            int sign = merge_sign(plain, dotted, merged);
            if (sign != 0) comp_put(out.dp, merged, c * Rat(sign));
        }
    }
    return out;
}

FormPt kappa_r_dual(const TFormPt& z) {
    const ChartPtr& m = z.pt.b.chart;
    if (m->is_tangent()) throw EngineError("tangent flip dual: expects a base chart");
    int n = m->dim();
    FormPt out{foot_on_tangent(z.pt.b, z.dx), z.pt.r, {}};
    for (const auto& [idx, c] : z.dp) comp_put(out.p, idx, c);
    for (const auto& [idx, c] : z.pt.p) {
        for (int m1 = 1; m1 <= static_cast<int>(idx.size()); ++m1) {
            MultiIndex flat;
            for (int i : idx)
                if (i != idx[m1 - 1]) flat.push_back(i);
            flat.push_back(idx[m1 - 1] + n);
            int sign = (z.pt.r - m1) % 2 == 0 ? 1 : -1;
            comp_put(out.p, flat, c * Rat(sign));
        }
    }
    return out;
}

MvPt eps_r_dual(const TMvPt& v) {
    const ChartPtr& m = v.pt.b.chart;
    if (m->is_tangent()) throw EngineError("cotangent flip dual: expects a base chart");
    int n = m->dim();
    MvPt out{foot_on_tangent(v.pt.b, v.dx), v.pt.r, {}};
    for (const auto& [idx, c] : v.dw) {
        MultiIndex flat;
        for (int i : idx) flat.push_back(i + n);
        comp_put(out.w, flat, c);
    }
    for (const auto& [idx, c] : v.pt.w) {
        for (int m1 = 1; m1 <= static_cast<int>(idx.size()); ++m1) {
            MultiIndex flat{idx[m1 - 1]};
            for (int i : idx)
                if (i != idx[m1 - 1]) flat.push_back(i + n);
            int sign = (m1 - 1) % 2 == 0 ? 1 : -1;
            comp_put(out.w, flat, c * Rat(sign));
        }
    }
    return out;
}

MvPt as_iterated_point(const TMvPt& v) {
    if (v.pt.r != 1) throw EngineError("iterated-point view needs degree 1");
    const ChartPtr& m = v.pt.b.chart;
    int n = m->dim();
    Vec fiber(n, Rat(0));
    for (const auto& [idx, c] : v.pt.w) fiber[idx[0]] = c;
    MvPt out{foot_on_tangent(v.pt.b, fiber), 1, {}};
    for (int k = 0; k < n; ++k) comp_put(out.w, {k}, v.dx[k]);
    for (const auto& [idx, c] : v.dw) comp_put(out.w, {idx[0] + n}, c);
    return out;
}

TMvPt as_tangent_of_tangent(const MvPt& u) {
    if (u.r != 1) throw EngineError("tangent-of-tangent view needs degree 1");
    ChartPtr m = require_tangent(u.b.chart, "tangent-of-tangent view");
    int n = m->dim();
    TMvPt out;
    out.pt = MvPt{foot_on_base(u.b, m), 1, {}};
    for (int k = 0; k < n; ++k) comp_put(out.pt.w, {k}, u.b.vals[n + k]);
    out.dx = Vec(n, Rat(0));
    out.dw = {};
    for (const auto& [idx, c] : u.w) {
        if (idx[0] < n)
            out.dx[idx[0]] = c;
        else
            comp_put(out.dw, {idx[0] - n}, c);
    }
    return out;
}

FormPt alpha_classic(const TFormPt& z) {
    if (z.pt.r != 1) throw EngineError("classical covector flip needs degree 1");
    const ChartPtr& m = z.pt.b.chart;
    if (m->is_tangent()) throw EngineError("classical covector flip: expects a base chart");
    int n = m->dim();
    FormPt out{foot_on_tangent(z.pt.b, z.dx), 1, {}};
    for (const auto& [idx, c] : z.dp) comp_put(out.p, {idx[0]}, c);
    for (const auto& [idx, c] : z.pt.p) comp_put(out.p, {idx[0] + n}, c);
    return out;
}

TFormPt eps_classic(const FormPt& a) {
    if (a.r != 1) throw EngineError("classical covector flip needs degree 1");
    ChartPtr m = require_tangent(a.b.chart, "classical covector flip");
    int n = m->dim();
    TFormPt out;
    out.pt = FormPt{foot_on_base(a.b, m), 1, {}};
    out.dx = dotted_part(a.b, n);
    for (const auto& [idx, c] : a.p) {
        if (idx[0] < n)
            comp_put(out.dp, idx, c);
        else
            comp_put(out.pt.p, {idx[0] - n}, c);
    }
    return out;
}

// ============================ fibered charts ===============================

namespace {

FiberBundle bundle_impl(const ChartPtr& m, int r, const std::string& prefix,
                        const std::string& tag) {
    FiberBundle fb;
    fb.base = m;
    fb.r = r;
    fb.idxs = all_multiindices(m->dim(), r);
    std::vector<std::string> coords = m->coords;
    for (const auto& idx : fb.idxs) {
        std::string name = prefix;
        for (int i : idx) name += "_" + m->coords[i];
        coords.push_back(std::move(name));
    }
    fb.flat = make_chart(tag + m->name, std::move(coords), m->params);
    for (size_t k = 0; k < fb.idxs.size(); ++k)
        fb.pos[fb.idxs[k]] = m->dim() + static_cast<int>(k);
    return fb;
}

}  // namespace

FiberBundle mv_bundle(const ChartPtr& m, int r) {
    if (r == 1) {
        FiberBundle fb;
        fb.base = m;
        fb.r = 1;
        fb.flat = tangent_chart(m);
        fb.idxs = all_multiindices(m->dim(), 1);
        for (size_t k = 0; k < fb.idxs.size(); ++k)
            fb.pos[fb.idxs[k]] = m->dim() + static_cast<int>(k);
        return fb;
    }
    return bundle_impl(m, r, "w", "W" + std::to_string(r));
}

FiberBundle form_bundle(const ChartPtr& m, int r) {
    if (r == 1) return bundle_impl(m, r, "p", "T*");
    return bundle_impl(m, r, "p", "P" + std::to_string(r));
}

ChartPtr cotangent_chart(const ChartPtr& m) { return form_bundle(m, 1).flat; }

namespace {

Vec flatten_impl(const FiberBundle& fb, const BasePt& b, int r, const FiberComps& comps,
                 const char* who) {
    if (!same_chart(b.chart, fb.base)) throw EngineError(std::string(who) + ": chart mismatch");
    if (r != fb.r) throw EngineError(std::string(who) + ": degree mismatch");
    int n = fb.base->dim();
    Vec out(b.vals.begin(), b.vals.begin() + n);
    out.resize(n + fb.idxs.size(), Rat(0));
    for (const auto& [idx, c] : comps) out[fb.pos.at(idx)] = c;
    out.insert(out.end(), b.vals.begin() + n, b.vals.end());
    return out;
}

Vec fiber_vel(const FiberBundle& fb, const Vec& dx, const FiberComps& dcomps) {
    int n = fb.base->dim();
    if (static_cast<int>(dx.size()) != n) throw EngineError("flatten: base velocity size");
    Vec out = dx;
    out.resize(n + fb.idxs.size(), Rat(0));
    for (const auto& [idx, c] : dcomps) out[fb.pos.at(idx)] = c;
    return out;
}

}  // namespace

Vec flatten(const FiberBundle& fb, const MvPt& u) {
    return flatten_impl(fb, u.b, u.r, u.w, "flatten multivector point");
}

Vec flatten(const FiberBundle& fb, const FormPt& a) {
    return flatten_impl(fb, a.b, a.r, a.p, "flatten form point");
}

MvPt unflatten_mv(const FiberBundle& fb, const Vec& v) {
    if (static_cast<int>(v.size()) != fb.flat->syms->size())
        throw EngineError("unflatten: value count off the bundle chart");
    int n = fb.base->dim();
    Vec base(v.begin(), v.begin() + n);
    base.insert(base.end(), v.begin() + fb.flat->dim(), v.end());
    MvPt out{BasePt{fb.base, std::move(base)}, fb.r, {}};
    for (const auto& [idx, slot] : fb.pos) comp_put(out.w, idx, v[slot]);
    return out;
}

FormPt unflatten_form(const FiberBundle& fb, const Vec& v) {
    MvPt u = unflatten_mv(fb, v);
    return FormPt{std::move(u.b), u.r, std::move(u.w)};
}

TPt flatten(const FiberBundle& fb, const TMvPt& v) {
    return TPt{flatten(fb, v.pt), fiber_vel(fb, v.dx, v.dw)};
}

TPt flatten(const FiberBundle& fb, const TFormPt& z) {
    return TPt{flatten(fb, z.pt), fiber_vel(fb, z.dx, z.dp)};
}

TMvPt unflatten_tmv(const FiberBundle& fb, const TPt& v) {
    if (static_cast<int>(v.vel.size()) != fb.flat->dim())
        throw EngineError("unflatten: velocity count off the bundle chart");
    int n = fb.base->dim();
    TMvPt out;
    out.pt = unflatten_mv(fb, v.pt);
    out.dx = Vec(v.vel.begin(), v.vel.begin() + n);
    for (const auto& [idx, slot] : fb.pos) comp_put(out.dw, idx, v.vel[slot]);
    return out;
}

TFormPt unflatten_tform(const FiberBundle& fb, const TPt& v) {
    TMvPt u = unflatten_tmv(fb, v);
    return TFormPt{FormPt{std::move(u.pt.b), u.pt.r, std::move(u.pt.w)}, std::move(u.dx),
                   std::move(u.dw)};
}

// ======================== maps and their tangents ==========================

Vec eval_map(const PolyMap& phi, const Vec& at) {
    if (static_cast<int>(at.size()) != phi.src->syms->size())
        throw EngineError("eval_map: value count off the source chart");
    Vec out;
    out.reserve(phi.dst->syms->size());
    for (const Scalar& comp : phi.comps) out.push_back(comp.eval(at));
    for (const std::string& par : phi.dst->params)
        out.push_back(at[phi.src->syms->index_of(par)]);
    return out;
}

TPt t_apply(const PolyMap& phi, const TPt& v) {
    if (static_cast<int>(v.vel.size()) != phi.src->dim())
        throw EngineError("t_apply: velocity count off the source chart");
    TPt out;
    out.pt = eval_map(phi, v.pt);
    out.vel.reserve(phi.dst->dim());
    for (const Scalar& comp : phi.comps) {
        Rat d(0);
        for (int k = 0; k < phi.src->dim(); ++k) {
            if (v.vel[k] == 0) continue;
            d += comp.partial(k).eval(v.pt) * v.vel[k];
        }
        out.vel.push_back(d);
    }
    return out;
}

PolyMap compose(const PolyMap& g, const PolyMap& f) {
    if (!same_chart(g.src, f.dst)) throw EngineError("compose: middle charts differ");
    std::vector<Scalar> comps;
    comps.reserve(g.comps.size());
    for (const Scalar& comp : g.comps) comps.push_back(pullback_scalar(f, comp));
    return make_poly_map(f.src, g.dst, std::move(comps));
}

PolyMap tangent_poly_map(const PolyMap& phi) {
    ChartPtr tsrc = tangent_chart(phi.src);
    ChartPtr tdst = tangent_chart(phi.dst);
    std::vector<Scalar> comps;
    comps.reserve(2 * phi.comps.size());
    for (const Scalar& comp : phi.comps) comps.push_back(comp.transport_by_name(tsrc->syms));
    for (const Scalar& comp : phi.comps) comps.push_back(dT_scalar(tsrc, comp));
    return make_poly_map(tsrc, tdst, std::move(comps));
}

FormPt pullback_covector(const PolyMap& phi, const FormPt& xi, const BasePt& at) {
    if (!same_chart(at.chart, phi.src)) throw EngineError("pullback_covector: source mismatch");
    if (!same_chart(xi.b.chart, phi.dst) || xi.r != 1)
        throw EngineError("pullback_covector: needs a covector on the target chart");
    if (xi.b.vals != eval_map(phi, at.vals))
        throw EngineError("pullback_covector: covector not attached over the source point");
    FormPt out{at, 1, {}};
    for (int i = 0; i < phi.src->dim(); ++i) {
        Rat d(0);
        for (const auto& [idx, c] : xi.p) {
            if (idx[0] >= phi.dst->dim()) continue;
            d += c * phi.comps[idx[0]].partial(i).eval(at.vals);
        }
        comp_put(out.p, {i}, d);
    }
    return out;
}

PolyMap tilde_form_map(const Form& mu, int i) {
    const ChartPtr& m = mu.chart();
    int r = mu.degree();
    if (i < 0 || i > r) throw EngineError("contraction map: level out of range");
    FiberBundle src = mv_bundle(m, i);
    FiberBundle dst = form_bundle(m, r - i);
    Multivector generic = Multivector::zero(src.flat, i);
    for (const auto& idx : src.idxs)
        generic.add_term(idx, Scalar::variable(src.flat->syms, src.pos.at(idx)));
    Form lifted = Form::zero(src.flat, r);
    for (const auto& [idx, c] : mu.comps())
        lifted.add_term(idx, c.transport_by_name(src.flat->syms));
    Form contracted = contract_mv_into_form(generic, lifted);
    std::vector<Scalar> comps;
    comps.reserve(dst.flat->dim());
    for (int a = 0; a < m->dim(); ++a) comps.push_back(src.flat->coord(a));
    for (const auto& idx : dst.idxs) comps.push_back(contracted.comp(idx));
    return make_poly_map(src.flat, dst.flat, std::move(comps));
}

PolyMap tilde_mv_map(const Multivector& X, int i) {
    const ChartPtr& m = X.chart();
    int r = X.degree();
    if (i < 0 || i > r) throw EngineError("contraction map: level out of range");
    FiberBundle src = form_bundle(m, i);
    FiberBundle dst = mv_bundle(m, r - i);
    Form generic = Form::zero(src.flat, i);
    for (const auto& idx : src.idxs)
        generic.add_term(idx, Scalar::variable(src.flat->syms, src.pos.at(idx)));
    Multivector lifted = Multivector::zero(src.flat, r);
    for (const auto& [idx, c] : X.comps())
        lifted.add_term(idx, c.transport_by_name(src.flat->syms));
    Multivector contracted = contract_form_into_mv(generic, lifted);
    std::vector<Scalar> comps;
    comps.reserve(dst.flat->dim());
    for (int a = 0; a < m->dim(); ++a) comps.push_back(src.flat->coord(a));
    for (const auto& idx : dst.idxs) comps.push_back(contracted.comp(idx));
    return make_poly_map(src.flat, dst.flat, std::move(comps));
}

PolyMap wedge_tangent_map(const PolyMap& phi, int r) {
    FiberBundle src = mv_bundle(phi.src, r);
    FiberBundle dst = mv_bundle(phi.dst, r);
    SymbolsPtr syms = src.flat->syms;
    int ns = phi.src->dim(), nd = phi.dst->dim();
    std::vector<std::vector<Scalar>> jac(nd, std::vector<Scalar>(ns, Scalar::zero(syms)));
    for (int a = 0; a < nd; ++a)
        for (int k = 0; k < ns; ++k)
            jac[a][k] = phi.comps[a].partial(k).transport_by_name(syms);
    std::vector<Scalar> comps;
    comps.reserve(dst.flat->dim());
    for (const Scalar& comp : phi.comps) comps.push_back(comp.transport_by_name(syms));
    for (const auto& bigl : dst.idxs) {
        Scalar acc = Scalar::zero(syms);
        for (const auto& bigk : src.idxs) {
            std::vector<std::vector<Scalar>> sub(r, std::vector<Scalar>(r, Scalar::zero(syms)));
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) sub[a][b] = jac[bigl[a]][bigk[b]];
            Scalar d = poly_det(sub, syms);
            if (!d.is_zero()) acc += d * Scalar::variable(syms, src.pos.at(bigk));
        }
        comps.push_back(acc);
    }
    return make_poly_map(src.flat, dst.flat, std::move(comps));
}

MvPt wedge_jacobian_apply(const PolyMap& psi, const MvPt& u) {
    if (!same_chart(u.b.chart, psi.src))
        throw EngineError("wedge_jacobian_apply: point off the source chart");
    int ns = psi.src->dim(), nd = psi.dst->dim();
    Mat jac = mat_zero(nd, ns);
    for (int a = 0; a < nd; ++a)
        for (int k = 0; k < ns; ++k) jac[a][k] = psi.comps[a].partial(k).eval(u.b.vals);
    MvPt out{BasePt{psi.dst, eval_map(psi, u.b.vals)}, u.r, {}};
    for (const auto& bigl : all_multiindices(nd, u.r)) {
        Rat acc(0);
        for (const auto& [bigk, c] : u.w) {
            Mat sub(u.r, Vec(u.r, Rat(0)));
            for (int a = 0; a < u.r; ++a)
                for (int b = 0; b < u.r; ++b) sub[a][b] = jac[bigl[a]][bigk[b]];
            acc += determinant(sub) * c;
        }
        comp_put(out.w, bigl, acc);
    }
    return out;
}

// ===================== tautological and canonical forms ====================

Form liouville_form(const ChartPtr& m, int k) {
    if (k < 0) throw EngineError("tautological form: negative degree");
    FiberBundle fb = form_bundle(m, k);
    Form out = Form::zero(fb.flat, k);
    for (const auto& idx : fb.idxs)
        out.add_term(idx, Scalar::variable(fb.flat->syms, fb.pos.at(idx)));
    return out;
}

Form canonical_symplectic(const ChartPtr& m) { return exterior_d(liouville_form(m, 1)); }

Multivector canonical_poisson(const ChartPtr& m) {
    ChartPtr cot = cotangent_chart(m);
    Multivector out = Multivector::zero(cot, 2);
    for (int i = 0; i < m->dim(); ++i)
        out.add_term({i, m->dim() + i}, cot->constant(1));
    return out;
}

// ============================ property checks ==============================

namespace {

// Degree-one flip on raw (point, velocity) data over a tangent chart with n
// base coordinates: swap the dotted half of the point with the plain half of
// the velocity.
TPt flip_tpt(int n, const TPt& v) {
    TPt out;
    out.pt = Vec(v.pt.begin(), v.pt.begin() + n);
    out.pt.insert(out.pt.end(), v.vel.begin(), v.vel.begin() + n);
    out.pt.insert(out.pt.end(), v.pt.begin() + 2 * n, v.pt.end());
    out.vel = Vec(v.pt.begin() + n, v.pt.begin() + 2 * n);
    out.vel.insert(out.vel.end(), v.vel.begin() + n, v.vel.end());
    return out;
}

std::string trial_tag(int t) { return "trial " + std::to_string(t) + ": "; }

}  // namespace

CheckResult check_flip_involution(const ChartPtr& m, Rng& rng, int trials) {
    ChartPtr tm = tangent_chart(m);
    for (int t = 0; t < trials; ++t) {
        MvPt u = random_mv_pt(tm, 1, rng);
        MvPt twice = as_iterated_point(kappa_r(as_iterated_point(kappa_r(u))));
        if (!eq(twice, u))
            return {false, trial_tag(t) + "double flip moved " + str(u) + " to " + str(twice)};
    }
    return {};
}

CheckResult check_flip_duality(const ChartPtr& m, Rng& rng, int trials) {
    ChartPtr tm = tangent_chart(m);
    int n = m->dim();
    for (int t = 0; t < trials; ++t) {
        TFormPt z = random_tform_pt(m, 1, rng);
        if (!eq(eps_classic(alpha_classic(z)), z))
            return {false, trial_tag(t) + "inversion failed after the covector flip of " + str(z)};
        FormPt a1 = random_form_pt(tm, 1, rng);
        if (!eq(alpha_classic(eps_classic(a1)), a1))
            return {false, trial_tag(t) + "inversion failed before the covector flip of " + str(a1)};
        if (!eq(kappa_r_dual(z), alpha_classic(z)))
            return {false, trial_tag(t) + "degree-1 dual flip differs from the classical map"};
        if (!eq(eps_r(a1), eps_classic(a1)))
            return {false, trial_tag(t) + "degree-1 cotangent flip differs from the classical map"};
        for (int r = 0; r <= std::min(3, n); ++r) {
            MvPt u = random_mv_pt(tm, r, rng);
            TMvPt ku = kappa_r(u);
            TFormPt zr{FormPt{ku.pt.b, r, random_comps(n, r, rng)}, ku.dx,
                       random_comps(n, r, rng)};
            if (tangent_pairing(zr, ku) != pairing(kappa_r_dual(zr), u))
                return {false, trial_tag(t) + "tangent-flip duality at degree " +
                                   std::to_string(r) + ", " + str(u)};
            FormPt b = random_form_pt(tm, r, rng);
            TFormPt eb = eps_r(b);
            TMvPt v{MvPt{eb.pt.b, r, random_comps(n, r, rng)}, eb.dx, random_comps(n, r, rng)};
            if (tangent_pairing(eb, v) != pairing(b, eps_r_dual(v)))
                return {false, trial_tag(t) + "cotangent-flip duality at degree " +
                                   std::to_string(r) + ", " + str(b)};
        }
    }
    return {};
}

CheckResult check_flip_wedge(const ChartPtr& m, int i, int j, Rng& rng, int trials) {
    ChartPtr tm = tangent_chart(m);
    for (int t = 0; t < trials; ++t) {
        BasePt b = random_base_pt(tm, rng);
        MvPt u = random_mv_pt_at(b, i, rng);
        MvPt v = random_mv_pt_at(b, j, rng);
        if (!eq(kappa_r(wedge(u, v)), t_wedge(kappa_r(u), kappa_r(v))))
            return {false, trial_tag(t) + "split flip at " + str(wedge(u, v))};
        int k = i + j;
        if (k >= 1) {
            MvPt prod = random_mv_pt_at(b, 1, rng);
            TMvPt chain = kappa_r(prod);
            for (int f = 1; f < k; ++f) {
                MvPt fac = random_mv_pt_at(b, 1, rng);
                prod = wedge(prod, fac);
                chain = t_wedge(chain, kappa_r(fac));
            }
            if (!eq(kappa_r(prod), chain))
                return {false, trial_tag(t) + "decomposable flip at " + str(prod)};
        }
    }
    return {};
}

CheckResult check_cotangent_flip_wedge(const ChartPtr& m, int i, int j, Rng& rng, int trials) {
    ChartPtr tm = tangent_chart(m);
    for (int t = 0; t < trials; ++t) {
        BasePt b = random_base_pt(tm, rng);
        FormPt u = random_form_pt_at(b, i, rng);
        FormPt v = random_form_pt_at(b, j, rng);
        if (!eq(eps_r(wedge(u, v)), t_wedge(eps_r(u), eps_r(v))))
            return {false, trial_tag(t) + "split cotangent flip at " + str(wedge(u, v))};
        int k = i + j;
        if (k >= 1) {
            FormPt prod = random_form_pt_at(b, 1, rng);
            TFormPt chain = eps_r(prod);
            for (int f = 1; f < k; ++f) {
                FormPt fac = random_form_pt_at(b, 1, rng);
                prod = wedge(prod, fac);
                chain = t_wedge(chain, eps_r(fac));
            }
            if (!eq(eps_r(prod), chain))
                return {false, trial_tag(t) + "decomposable cotangent flip at " + str(prod)};
        }
    }
    return {};
}

CheckResult check_flip_naturality(const PolyMap& phi, int r, Rng& rng, int trials) {
    PolyMap tphi = tangent_poly_map(phi);
    PolyMap wmap = wedge_tangent_map(phi, r);
    FiberBundle srcb = mv_bundle(phi.src, r);
    FiberBundle dstb = mv_bundle(phi.dst, r);
    for (int t = 0; t < trials; ++t) {
        MvPt u = random_mv_pt(tphi.src, r, rng);
        TMvPt lhs = kappa_r(wedge_jacobian_apply(tphi, u));
        TMvPt rhs = unflatten_tmv(dstb, t_apply(wmap, flatten(srcb, kappa_r(u))));
        if (!eq(lhs, rhs)) return {false, trial_tag(t) + "flip naturality at " + str(u)};
    }
    return {};
}

CheckResult check_lift_form_facet(const Form& mu, int i, Rng& rng, int trials) {
    const ChartPtr& m = mu.chart();
    Form dmu = dT_form(mu);
    PolyMap tmap = tilde_form_map(mu, i);
    FiberBundle srcb = mv_bundle(m, i);
    FiberBundle dstb = form_bundle(m, mu.degree() - i);
    for (int t = 0; t < trials; ++t) {
        MvPt u = random_mv_pt(dmu.chart(), i, rng);
        FormPt lhs = contract_at(dmu, u);
        FormPt rhs = kappa_r_dual(unflatten_tform(dstb, t_apply(tmap, flatten(srcb, kappa_r(u)))));
        if (!eq(lhs, rhs))
            return {false, trial_tag(t) + "form-lift facet " + std::to_string(i) + " at " +
                               str(u) + ": " + str(lhs) + " vs " + str(rhs)};
    }
    return {};
}

CheckResult check_lift_mv_facet(const Multivector& X, int i, Rng& rng, int trials) {
    const ChartPtr& m = X.chart();
    Multivector dX = dT_mv(X);
    PolyMap tmap = tilde_mv_map(X, i);
    FiberBundle srcb = form_bundle(m, i);
    FiberBundle dstb = mv_bundle(m, X.degree() - i);
    for (int t = 0; t < trials; ++t) {
        FormPt a = random_form_pt(dX.chart(), i, rng);
        MvPt lhs = contract_at(dX, a);
        MvPt rhs = eps_r_dual(unflatten_tmv(dstb, t_apply(tmap, flatten(srcb, eps_r(a)))));
        if (!eq(lhs, rhs))
            return {false, trial_tag(t) + "field-lift facet " + std::to_string(i) + " at " +
                               str(a) + ": " + str(lhs) + " vs " + str(rhs)};
    }
    return {};
}

CheckResult check_iota_tautological(const Form& mu) {
    if (mu.degree() < 1) throw EngineError("tautological comparison needs degree >= 1");
    Form lhs = iota_T(mu);
    Form rhs = pullback_form(tilde_form_map(mu, 1), liouville_form(mu.chart(), mu.degree() - 1));
    if (lhs != rhs)
        return {false, "vertical contraction " + lhs.str() + " vs pulled-back tautological form " +
                           rhs.str()};
    return {};
}

CheckResult check_lift_symplectic_pullback(const Form& mu) {
    if (mu.degree() != 2) throw EngineError("canonical-2-form comparison needs a 2-form");
    Form lhs = dT_form(mu);
    Form rhs = pullback_form(tilde_form_map(mu, 1), canonical_symplectic(mu.chart()));
    bool equal = lhs == rhs;
    bool closed = exterior_d(mu).is_zero();
    if (equal != closed)
        return {false, std::string("lift ") + (equal ? "matches" : "differs from") +
                           " the pulled-back canonical 2-form but d mu is " +
                           (closed ? "zero" : "nonzero")};
    return {};
}

CheckResult check_two_form_diagram(const Form& omega, Rng& rng, int trials) {
    const ChartPtr& m = omega.chart();
    int n = m->dim();
    PolyMap nu = tilde_form_map(omega, 1);
    Form om = canonical_symplectic(m);
    FiberBundle cotb = form_bundle(m, 1);
    for (int t = 0; t < trials; ++t) {
        TPt v{random_base_pt(nu.src, rng).vals, random_vec(2 * n, rng)};
        FormPt lhs = alpha_classic(unflatten_tform(cotb, t_apply(nu, flip_tpt(n, v))));
        TPt z2 = t_apply(nu, v);
        MvPt zvel{BasePt{om.chart(), z2.pt}, 1, {}};
        for (int k = 0; k < 2 * n; ++k) comp_put(zvel.w, {k}, z2.vel[k]);
        FormPt xi = contract_at(om, zvel);
        FormPt rhs = pullback_covector(nu, xi, BasePt{nu.src, v.pt});
        if (!eq(lhs, rhs))
            return {false, trial_tag(t) + "two-form diagram: " + str(lhs) + " vs " + str(rhs)};
    }
    return {};
}

RelationResult check_bivector_relation(const Multivector& P, Rng& rng, int trials) {
    if (P.degree() != 2) throw EngineError("bivector relation needs degree 2");
    const ChartPtr& m = P.chart();
    int n = m->dim();
    PolyMap lam = tilde_mv_map(P, 1);
    Multivector lamM = canonical_poisson(m);
    FiberBundle cotb = form_bundle(m, 1);
    RelationResult res;
    for (int t = 0; t < trials && res.forward && res.fiber_independent; ++t) {
        Vec q = random_base_pt(lam.src, rng).vals;
        Vec w = eval_map(lam, q);
        FormPt a{BasePt{lam.dst, w}, 1, random_comps(2 * n, 1, rng)};
        auto through = [&](const Vec& qq) {
            FormPt xi = pullback_covector(lam, a, BasePt{lam.src, qq});
            MvPt u = contract_at(lamM, FormPt{BasePt{lamM.chart(), xi.b.vals}, 1, xi.p});
            Vec vel(2 * n, Rat(0));
            for (const auto& [idx, c] : u.w) vel[idx[0]] = c;
            return t_apply(lam, TPt{qq, vel});
        };
        TPt out1 = through(q);
        TPt out2 = flip_tpt(n, t_apply(lam, flatten(cotb, eps_classic(a))));
        if (out1.pt != out2.pt || out1.vel != out2.vel) {
            res.forward = false;
            res.witness = trial_tag(t) + "routes disagree at covector " + str(a);
            break;
        }
        // The contraction map is linear on cotangent fibers; directions in
        // the kernel of its fiber matrix lift the same covector.
        Mat fiber(n, Vec(n, Rat(0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                fiber[i][j] = lam.comps[n + i].partial(n + j).eval(q);
        for (const Vec& k : kernel_basis(fiber)) {
            Vec q2 = q;
            for (int j = 0; j < n; ++j) q2[n + j] += k[j];
            TPt out1b = through(q2);
            if (out1b.pt != out1.pt || out1b.vel != out1.vel) {
                res.fiber_independent = false;
                res.witness = trial_tag(t) + "kernel shift moved the image at " + str(a);
                break;
            }
        }
    }
    return res;
}

}  // namespace tanlift
