#include "tanlift/runner.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tanlift {

namespace {

// ------------------------- formatting helpers ------------------------------

std::string rat_str(const Rat& c) {
    std::ostringstream os;
    os << c;
    return os.str();
}

/// Signed linear combination over named basis terms, e.g. "e1^e2 - 2*e2^e3".
std::string combo_str(const std::vector<std::pair<Rat, std::string>>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [c, b] : terms) {
        if (c == 0) continue;
        const Rat a = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (a != 1) out += rat_str(a) + "*";
        out += b;
    }
    if (first) return "0";
    return out;
}

std::string bivector_combo(const Mat& r, const std::vector<std::string>& names) {
    std::vector<std::pair<Rat, std::string>> terms;
    const int n = static_cast<int>(names.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (r[i][j] != 0) terms.push_back({r[i][j], names[i] + "^" + names[j]});
    return combo_str(terms);
}

std::string deg1_combo(const std::vector<Rat>& v, const std::vector<std::string>& names) {
    std::vector<std::pair<Rat, std::string>> terms;
    for (size_t i = 0; i < names.size(); ++i)
        if (v[i] != 0) terms.push_back({v[i], names[i]});
    return combo_str(terms);
}

std::string trivector_combo(const Cubic& t, const std::vector<std::string>& names) {
    std::vector<std::pair<Rat, std::string>> terms;
    const int n = static_cast<int>(names.size());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (t[a][b][c] != 0)
                    terms.push_back({t[a][b][c], names[a] + "^" + names[b] + "^" + names[c]});
    return combo_str(terms);
}

std::vector<std::string> algebra_table(const LieAlgebra& g) {
    std::vector<std::string> out;
    const int n = g.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            std::vector<Rat> v(static_cast<size_t>(n));
            bool nonzero = false;
            for (int k = 0; k < n; ++k) {
                v[k] = g.c[i][j][k];
                if (v[k] != 0) nonzero = true;
            }
            if (nonzero)
                out.push_back("[" + g.names[i] + ", " + g.names[j] + "] = " +
                              deg1_combo(v, g.names));
        }
    if (out.empty()) out.push_back("all brackets vanish");
    return out;
}

std::vector<std::string> cobracket_table(const Cobracket& cb) {
    std::vector<std::string> out;
    const int n = cb.g.dim();
    for (int k = 0; k < n; ++k) {
        Mat slice = mat_zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) slice[i][j] = cb.d[i][j][k];
        out.push_back("delta(" + cb.g.names[k] + ") = " + bivector_combo(slice, cb.g.names));
    }
    return out;
}

// ----------------------------- expression eval -----------------------------

using EvalVal = std::variant<Rat, Scalar, Form, Multivector>;

struct EvalCtx {
    const std::map<std::string, Value>* env = nullptr;
    ChartPtr chart;                   // coordinate context
    const LieAlgebra* alg = nullptr;  // algebra context
};

int coord_index(const ChartPtr& c, const std::string& n) {
    for (size_t i = 0; i < c->coords.size(); ++i)
        if (c->coords[i] == n) return static_cast<int>(i);
    return -1;
}

int param_index(const ChartPtr& c, const std::string& n) {
    for (size_t i = 0; i < c->params.size(); ++i)
        if (c->params[i] == n) return static_cast<int>(i);
    return -1;
}

Scalar to_scalar_val(const EvalVal& v, const ChartPtr& chart, const char* what) {
    if (std::holds_alternative<Rat>(v)) return chart->constant(std::get<Rat>(v));
    if (std::holds_alternative<Scalar>(v)) return std::get<Scalar>(v);
    throw EngineError(std::string(what) + ": expected a scalar value");
}

EvalVal eval_expr(const Expr& e, const EvalCtx& ctx);

EvalVal eval_binary(const Expr& e, const EvalCtx& ctx) {
    EvalVal A = eval_expr(*e.a, ctx);
    EvalVal B = eval_expr(*e.b, ctx);
    const bool add = e.op == ExOp::Add;
    auto chart = ctx.chart;

    if (e.op == ExOp::Add || e.op == ExOp::Sub) {
        if (std::holds_alternative<Rat>(A) && std::holds_alternative<Rat>(B))
            return add ? Rat(std::get<Rat>(A) + std::get<Rat>(B))
                       : Rat(std::get<Rat>(A) - std::get<Rat>(B));
        if (std::holds_alternative<Form>(A) || std::holds_alternative<Form>(B)) {
            if (!std::holds_alternative<Form>(A) || !std::holds_alternative<Form>(B))
                throw EngineError("cannot mix forms with other values in a sum");
            return add ? std::get<Form>(A) + std::get<Form>(B)
                       : std::get<Form>(A) - std::get<Form>(B);
        }
        if (std::holds_alternative<Multivector>(A) || std::holds_alternative<Multivector>(B)) {
            if (!std::holds_alternative<Multivector>(A) ||
                !std::holds_alternative<Multivector>(B))
                throw EngineError("cannot mix multivectors with other values in a sum");
            return add ? std::get<Multivector>(A) + std::get<Multivector>(B)
                       : std::get<Multivector>(A) - std::get<Multivector>(B);
        }
        Scalar a = to_scalar_val(A, chart, "sum"), b = to_scalar_val(B, chart, "sum");
        return add ? a + b : a - b;
    }

    if (e.op == ExOp::Mul) {
        // scalars multiply scalars and scale tensors; tensors never multiply
        if (std::holds_alternative<Form>(A) && !std::holds_alternative<Form>(B))
            std::swap(A, B);
        if (std::holds_alternative<Multivector>(A) && !std::holds_alternative<Multivector>(B))
            std::swap(A, B);
        if (std::holds_alternative<Form>(B)) {
            if (std::holds_alternative<Form>(A) )
                throw EngineError("use '^' for exterior products of forms");
            return std::get<Form>(B).scale(to_scalar_val(A, chart, "product"));
        }
        if (std::holds_alternative<Multivector>(B)) {
            if (std::holds_alternative<Multivector>(A))
                throw EngineError("use '^' for exterior products of multivectors");
            return std::get<Multivector>(B).scale(to_scalar_val(A, chart, "product"));
        }
        if (std::holds_alternative<Rat>(A) && std::holds_alternative<Rat>(B))
            return std::get<Rat>(A) * std::get<Rat>(B);
        return to_scalar_val(A, chart, "product") * to_scalar_val(B, chart, "product");
    }

    if (e.op == ExOp::Div) {
        Rat den;
        if (std::holds_alternative<Rat>(B)) {
            den = std::get<Rat>(B);
        } else if (std::holds_alternative<Scalar>(B) && std::get<Scalar>(B).is_constant()) {
            den = std::get<Scalar>(B).constant_value();
        } else {
            throw EngineError("division requires a constant divisor");
        }
        if (den == 0) throw EngineError("division by zero");
        const Rat inv = Rat(1) / den;
        if (std::holds_alternative<Rat>(A)) return std::get<Rat>(A) * inv;
        if (std::holds_alternative<Scalar>(A)) return std::get<Scalar>(A) * inv;
        if (std::holds_alternative<Form>(A)) return std::get<Form>(A).scale(inv);
        return std::get<Multivector>(A).scale(inv);
    }

    // Caret: wedge on tensors, power on scalars
    if (std::holds_alternative<Form>(A) && std::holds_alternative<Form>(B))
        return wedge(std::get<Form>(A), std::get<Form>(B));
    if (std::holds_alternative<Multivector>(A) && std::holds_alternative<Multivector>(B))
        return wedge(std::get<Multivector>(A), std::get<Multivector>(B));
    if ((std::holds_alternative<Rat>(A) || std::holds_alternative<Scalar>(A)) &&
        std::holds_alternative<Rat>(B)) {
        const Rat k = std::get<Rat>(B);
        if (denominator(k) != 1 || k < 0)
            throw EngineError("power requires a nonnegative integer exponent");
        const int kk = static_cast<int>(numerator(k).convert_to<long long>());
        if (std::holds_alternative<Rat>(A)) {
            Rat out(1);
            for (int i = 0; i < kk; ++i) out *= std::get<Rat>(A);
            return out;
        }
        return std::get<Scalar>(A).pow(kk);
    }
    throw EngineError("'^' needs two forms, two multivectors, or a scalar and an integer");
}

EvalVal eval_expr(const Expr& e, const EvalCtx& ctx) {
    switch (e.op) {
        case ExOp::Number: return e.num;
        case ExOp::Name: {
            if (ctx.alg != nullptr) {
                for (size_t i = 0; i < ctx.alg->names.size(); ++i)
                    if (ctx.alg->names[i] == e.name)
                        return Multivector::generator(ctx.chart, static_cast<int>(i));
                throw EngineError("'" + e.name + "' is not a basis element of the algebra");
            }
            if (!ctx.chart) throw EngineError("no chart in scope for '" + e.name + "'");
            if (int i = coord_index(ctx.chart, e.name); i >= 0) return ctx.chart->coord(i);
            if (int i = param_index(ctx.chart, e.name); i >= 0)
                return Scalar::variable(ctx.chart->syms, ctx.chart->dim() + i);
            if (e.name.size() > 1 && e.name[0] == 'd') {
                if (int i = coord_index(ctx.chart, e.name.substr(1)); i >= 0)
                    return Form::generator(ctx.chart, i);
            }
            if (ctx.env != nullptr) {
                auto it = ctx.env->find(e.name);
                if (it != ctx.env->end()) {
                    if (const auto* sv = std::get_if<ScalarVal>(&it->second)) {
                        if (!same_chart(sv->chart, ctx.chart))
                            throw EngineError("'" + e.name + "' lives on another chart");
                        return sv->s;
                    }
                    if (const auto* f = std::get_if<Form>(&it->second)) {
                        if (!same_chart(f->chart(), ctx.chart))
                            throw EngineError("'" + e.name + "' lives on another chart");
                        return *f;
                    }
                    if (const auto* m = std::get_if<Multivector>(&it->second)) {
                        if (!same_chart(m->chart(), ctx.chart))
                            throw EngineError("'" + e.name + "' lives on another chart");
                        return *m;
                    }
                    throw EngineError("'" + e.name + "' cannot appear in an expression");
                }
            }
            throw EngineError("unknown name '" + e.name + "'");
        }
        case ExOp::VGen: {
            if (ctx.alg != nullptr)
                throw EngineError("'@' generators belong to chart expressions");
            if (!ctx.chart) throw EngineError("no chart in scope for '@" + e.name + "'");
            int i = coord_index(ctx.chart, e.name);
            if (i < 0) throw EngineError("'" + e.name + "' is not a coordinate");
            return Multivector::generator(ctx.chart, i);
        }
        case ExOp::Neg: {
            EvalVal a = eval_expr(*e.a, ctx);
            if (std::holds_alternative<Rat>(a)) return Rat(-std::get<Rat>(a));
            if (std::holds_alternative<Scalar>(a)) return -std::get<Scalar>(a);
            if (std::holds_alternative<Form>(a)) return -std::get<Form>(a);
            return -std::get<Multivector>(a);
        }
        default: return eval_binary(e, ctx);
    }
}

}  // namespace

// --------------------------------- session ---------------------------------

void Session::execute(const Statement& st) {
    CommandResult res;
    res.index = next_index_++;
    res.text = print_statement(st);
    try {
        dispatch(st, res);
    } catch (const EngineError& err) {
        res.status = "error";
        res.output.push_back(err.what());
    }
    rep_.commands.push_back(std::move(res));
}

void Session::execute_all(const Script& s) {
    for (const auto& st : s.statements) execute(st);
}

void Session::dispatch(const Statement& st, CommandResult& res) {
    if (st.kind == StKind::Command) {
        command(st, res);
    } else {
        res.kind = "decl";
        res.status = "ok";
        declare(st, res);
    }
}

namespace {

/// Constant coefficient of a scalar, rejecting genuine polynomials; used to
/// read structure constants out of evaluated algebra expressions.
Rat constant_of(const Scalar& s, const char* what) {
    if (s.is_zero()) return Rat(0);
    if (!s.is_constant())
        throw EngineError(std::string(what) + ": coefficients must be constants");
    return s.constant_value();
}

}  // namespace

void Session::declare(const Statement& st, CommandResult& res) {
    if (env_.count(st.name)) throw EngineError("'" + st.name + "' is already declared");

    auto chart_of = [&](const std::string& n) -> ChartPtr {
        auto it = env_.find(n);
        if (it == env_.end() || !std::holds_alternative<ChartPtr>(it->second))
            throw EngineError("'" + n + "' is not a declared chart");
        return std::get<ChartPtr>(it->second);
    };
    auto algebra_of = [&](const std::string& n) -> const LieAlgebra& {
        auto it = env_.find(n);
        if (it == env_.end() || !std::holds_alternative<LieAlgebra>(it->second))
            throw EngineError("'" + n + "' is not a declared Lie algebra");
        return std::get<LieAlgebra>(it->second);
    };

    switch (st.kind) {
        case StKind::DeclChart: {
            env_[st.name] = make_chart(st.name, st.words, st.params);
            res.output.push_back("chart with " + std::to_string(st.words.size()) +
                                 " coordinates");
            break;
        }
        case StKind::DeclScalar: {
            ChartPtr c = chart_of(st.chart);
            EvalCtx ctx{&env_, c, nullptr};
            Scalar s = to_scalar_val(eval_expr(*st.exprs[0], ctx), c, "scalar");
            res.output.push_back(st.name + " = " + s.str());
            env_[st.name] = ScalarVal{c, s};
            break;
        }
        case StKind::DeclForm:
        case StKind::DeclMv: {
            ChartPtr c = chart_of(st.chart);
            EvalCtx ctx{&env_, c, nullptr};
            EvalVal v = eval_expr(*st.exprs[0], ctx);
            const bool want_form = st.kind == StKind::DeclForm;
            auto scalar_like = [&]() -> Scalar { return to_scalar_val(v, c, "tensor"); };
            if (want_form) {
                Form out;
                if (std::holds_alternative<Form>(v)) {
                    out = std::get<Form>(v);
                } else if (scalar_like().is_zero()) {
                    out = Form::zero(c, st.degree);
                } else if (st.degree == 0) {
                    out = Form::from_scalar(c, scalar_like());
                } else {
                    throw EngineError("expression is not a form");
                }
                if (out.degree() != st.degree)
                    throw EngineError("declared degree " + std::to_string(st.degree) +
                                      " but the expression has degree " +
                                      std::to_string(out.degree()));
                res.output.push_back(st.name + " = " + out.str());
                env_[st.name] = out;
            } else {
                Multivector out;
                if (std::holds_alternative<Multivector>(v)) {
                    out = std::get<Multivector>(v);
                } else if (scalar_like().is_zero()) {
                    out = Multivector::zero(c, st.degree);
                } else if (st.degree == 0) {
                    out = Multivector::from_scalar(c, scalar_like());
                } else {
                    throw EngineError("expression is not a multivector");
                }
                if (out.degree() != st.degree)
                    throw EngineError("declared degree " + std::to_string(st.degree) +
                                      " but the expression has degree " +
                                      std::to_string(out.degree()));
                res.output.push_back(st.name + " = " + out.str());
                env_[st.name] = out;
            }
            break;
        }
        case StKind::DeclPoisson: {
            ChartPtr c = chart_of(st.chart);
            EvalCtx ctx{&env_, c, nullptr};
            EvalVal v = eval_expr(*st.exprs[0], ctx);
            if (!std::holds_alternative<Multivector>(v) ||
                std::get<Multivector>(v).degree() != 2)
                throw EngineError("a Poisson declaration needs a bivector expression");
            Multivector biv = std::get<Multivector>(v);
            JacobiVerdict jv = jacobi_verdict(biv);
            if (!jv.cyclic_ok)
                throw EngineError("not a Poisson structure; Jacobi defect = " +
                                  jv.cyclic_defect.str());
            res.output.push_back(st.name + " = " + biv.str());
            res.output.push_back("Jacobi identity holds");
            env_[st.name] = biv;
            break;
        }
        case StKind::DeclLieAlg: {
            const int n = static_cast<int>(st.words.size());
            ChartPtr ac = make_chart(st.name, st.words);
            EvalCtx ctx{nullptr, ac, nullptr};
            LieAlgebra tmp{st.words, cubic_zero(n)};
            ctx.alg = &tmp;
            Cubic c = cubic_zero(n);
            std::set<std::pair<int, int>> seen;
            for (const auto& rel : st.rels) {
                int i = -1, j = -1;
                for (int k = 0; k < n; ++k) {
                    if (st.words[k] == rel.lhs[0]) i = k;
                    if (st.words[k] == rel.lhs[1]) j = k;
                }
                if (i < 0 || j < 0) throw EngineError("bracket names must be basis elements");
                if (i == j) throw EngineError("[x, x] is zero by antisymmetry; omit it");
                if (!seen.insert({std::min(i, j), std::max(i, j)}).second)
                    throw EngineError("duplicate bracket for [" + rel.lhs[0] + ", " +
                                      rel.lhs[1] + "]");
                EvalVal v = eval_expr(*rel.rhs, ctx);
                if (std::holds_alternative<Rat>(v)) {
                    if (std::get<Rat>(v) != 0)
                        throw EngineError("bracket values are algebra elements or 0");
                    continue;
                }
                if (!std::holds_alternative<Multivector>(v) ||
                    std::get<Multivector>(v).degree() != 1)
                    throw EngineError("bracket values must be linear in the basis");
                const Multivector& val = std::get<Multivector>(v);
                for (int k = 0; k < n; ++k) {
                    Rat ck = constant_of(val.comp({k}), "liealg");
                    c[i][j][k] = ck;
                    c[j][i][k] = -ck;
                }
            }
            LieAlgebra g = make_lie_algebra(st.words, c);  // throws if Jacobi fails
            for (auto& line : algebra_table(g)) res.output.push_back(line);
            env_[st.name] = std::move(g);
            break;
        }
        case StKind::DeclCobracket: {
            const LieAlgebra& g = algebra_of(st.chart);
            const int n = g.dim();
            ChartPtr ac = algebra_chart(g, st.chart);
            EvalCtx ctx{nullptr, ac, &g};
            Cubic d = cubic_zero(n);
            for (const auto& rel : st.rels) {
                int k = -1;
                for (int i = 0; i < n; ++i)
                    if (g.names[i] == rel.lhs[0]) k = i;
                if (k < 0) throw EngineError("'" + rel.lhs[0] + "' is not a basis element");
                EvalVal v = eval_expr(*rel.rhs, ctx);
                if (std::holds_alternative<Rat>(v)) {
                    if (std::get<Rat>(v) != 0)
                        throw EngineError("cobracket values are bivectors or 0");
                    continue;
                }
                if (!std::holds_alternative<Multivector>(v) ||
                    std::get<Multivector>(v).degree() != 2)
                    throw EngineError("cobracket values must be bivectors over the basis");
                const Multivector& val = std::get<Multivector>(v);
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j) {
                        Rat cij = constant_of(val.comp({i, j}), "cobracket");
                        d[i][j][k] = cij;
                        d[j][i][k] = -cij;
                    }
            }
            Cobracket cb = make_cobracket(g, d);
            for (auto& line : cobracket_table(cb)) res.output.push_back(line);
            env_[st.name] = std::move(cb);
            break;
        }
        case StKind::DeclRMatrix: {
            const LieAlgebra& g = algebra_of(st.chart);
            const int n = g.dim();
            ChartPtr ac = algebra_chart(g, st.chart);
            EvalCtx ctx{nullptr, ac, &g};
            EvalVal v = eval_expr(*st.exprs[0], ctx);
            Mat r = rmatrix_zero(n);
            if (std::holds_alternative<Multivector>(v) &&
                std::get<Multivector>(v).degree() == 2) {
                const Multivector& val = std::get<Multivector>(v);
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j) {
                        Rat cij = constant_of(val.comp({i, j}), "rmatrix");
                        r[i][j] = cij;
                        r[j][i] = -cij;
                    }
            } else if (!(std::holds_alternative<Rat>(v) && std::get<Rat>(v) == 0)) {
                throw EngineError("an r-matrix is a constant bivector over the basis");
            }
            res.output.push_back(st.name + " = " + bivector_combo(r, g.names));
            env_[st.name] = RMatrixVal{g, r};
            break;
        }
        case StKind::DeclMap: {
            ChartPtr src = chart_of(st.chart);
            ChartPtr dst = chart_of(st.chart2);
            if (st.exprs.size() != dst->coords.size())
                throw EngineError("map needs one component per target coordinate");
            EvalCtx ctx{&env_, src, nullptr};
            std::vector<Scalar> comps;
            comps.reserve(st.exprs.size());
            for (const auto& e : st.exprs)
                comps.push_back(to_scalar_val(eval_expr(*e, ctx), src, "map"));
            env_[st.name] = make_poly_map(src, dst, std::move(comps));
            res.output.push_back("map " + st.chart + " -> " + st.chart2);
            break;
        }
        case StKind::DeclPoint: {
            ChartPtr c = chart_of(st.chart);
            if (st.exprs.size() != c->coords.size())
                throw EngineError("point needs one entry per coordinate");
            EvalCtx ctx{&env_, c, nullptr};
            std::vector<Scalar> entries;
            std::string shown = "(";
            for (size_t k = 0; k < st.exprs.size(); ++k) {
                Scalar s = to_scalar_val(eval_expr(*st.exprs[k], ctx), c, "point");
                for (const auto& [e, coef] : s.terms()) {
                    (void)coef;
                    for (int i = 0; i < c->dim(); ++i)
                        if (e[i] != 0)
                            throw EngineError("point entries may use parameters only");
                }
                if (k) shown += ", ";
                shown += s.str();
                entries.push_back(std::move(s));
            }
            shown += ")";
            res.output.push_back(st.name + " = " + shown);
            env_[st.name] = PointVal{c, std::move(entries)};
            break;
        }
        case StKind::Command: break;  // unreachable
    }
}

namespace {

std::string value_kind(const Value& v) {
    if (std::holds_alternative<ChartPtr>(v)) return "chart";
    if (std::holds_alternative<ScalarVal>(v)) return "scalar";
    if (std::holds_alternative<Form>(v)) return "form";
    if (std::holds_alternative<Multivector>(v)) return "multivector";
    if (std::holds_alternative<LieAlgebra>(v)) return "Lie algebra";
    if (std::holds_alternative<Cobracket>(v)) return "cobracket";
    if (std::holds_alternative<RMatrixVal>(v)) return "r-matrix";
    if (std::holds_alternative<PolyMap>(v)) return "map";
    return "point";
}

}  // namespace

void Session::command(const Statement& st, CommandResult& res) {
    const std::string& verb = st.name;
    auto lookup = [&](const std::string& n) -> const Value& {
        auto it = env_.find(n);
        if (it == env_.end()) throw EngineError("unknown name '" + n + "'");
        return it->second;
    };
    auto as_mv = [&](const std::string& n, int deg, const char* role) -> const Multivector& {
        const Value& v = lookup(n);
        const auto* m = std::get_if<Multivector>(&v);
        if (m == nullptr || (deg >= 0 && m->degree() != deg))
            throw EngineError("'" + n + "' is not a " + role + " (found " + value_kind(v) + ")");
        return *m;
    };
    auto as_scalar = [&](const std::string& n) -> const ScalarVal& {
        const Value& v = lookup(n);
        const auto* s = std::get_if<ScalarVal>(&v);
        if (s == nullptr)
            throw EngineError("'" + n + "' is not a scalar (found " + value_kind(v) + ")");
        return *s;
    };
    auto as_cobracket = [&](const std::string& n) -> const Cobracket& {
        const Value& v = lookup(n);
        const auto* cb = std::get_if<Cobracket>(&v);
        if (cb == nullptr)
            throw EngineError("'" + n + "' is not a cobracket (found " + value_kind(v) + ")");
        return *cb;
    };
    auto as_rmatrix = [&](const std::string& n) -> const RMatrixVal& {
        const Value& v = lookup(n);
        const auto* r = std::get_if<RMatrixVal>(&v);
        if (r == nullptr)
            throw EngineError("'" + n + "' is not an r-matrix (found " + value_kind(v) + ")");
        return *r;
    };
    auto as_point = [&](const std::string& n) -> const PointVal& {
        const Value& v = lookup(n);
        const auto* p = std::get_if<PointVal>(&v);
        if (p == nullptr)
            throw EngineError("'" + n + "' is not a point (found " + value_kind(v) + ")");
        return *p;
    };
    auto set_check = [&](bool pass) {
        res.kind = "check";
        res.status = pass ? "pass" : "fail";
    };

    res.kind = "compute";
    res.status = "ok";

    if (verb == "dt" || verb == "vt") {
        const bool complete = verb == "dt";
        const char* label = complete ? "d_T " : "v_T ";
        const Value& v = lookup(st.words[0]);
        if (const auto* sv = std::get_if<ScalarVal>(&v)) {
            ChartPtr tm = tangent_chart(sv->chart);
            Scalar out = complete ? dT_scalar(tm, sv->s) : vT_scalar(tm, sv->s);
            res.output.push_back(label + st.words[0] + " = " + out.str());
        } else if (const auto* f = std::get_if<Form>(&v)) {
            Form out = complete ? dT_form(*f) : vT_form(*f);
            res.output.push_back(label + st.words[0] + " = " + out.str());
        } else if (const auto* m = std::get_if<Multivector>(&v)) {
            Multivector out = complete ? dT_mv(*m) : vT_mv(*m);
            res.output.push_back(label + st.words[0] + " = " + out.str());
        } else {
            throw EngineError("'" + st.words[0] + "' is not liftable (found " + value_kind(v) +
                              ")");
        }
    } else if (verb == "it") {
        const Value& v = lookup(st.words[0]);
        const auto* f = std::get_if<Form>(&v);
        if (f == nullptr)
            throw EngineError("'" + st.words[0] + "' is not a form (found " + value_kind(v) +
                              ")");
        res.output.push_back("i_T " + st.words[0] + " = " + iota_T(*f).str());
    } else if (verb == "lift-complete" || verb == "lift-vertical") {
        const Multivector& X = as_mv(st.words[0], 1, "vector field");
        Multivector out = verb == "lift-complete" ? dT_mv(X) : vT_mv(X);
        res.output.push_back((verb == "lift-complete" ? "complete lift of "
                                                      : "vertical lift of ") +
                             st.words[0] + " = " + out.str());
    } else if (verb == "jacobi") {
        const Multivector& biv = as_mv(st.words[0], 2, "bivector");
        JacobiVerdict jv = jacobi_verdict(biv);
        set_check(jv.cyclic_ok);
        if (jv.cyclic_ok)
            res.output.push_back("self-bracket = 0");
        else
            res.output.push_back("Jacobi defect = " + jv.cyclic_defect.str());
    } else if (verb == "bracket") {
        const Multivector& biv = as_mv(st.words[0], 2, "bivector");
        const Value& a = lookup(st.words[1]);
        if (std::holds_alternative<ScalarVal>(a)) {
            const ScalarVal& f = as_scalar(st.words[1]);
            const ScalarVal& g = as_scalar(st.words[2]);
            Scalar out = poisson_bracket(biv, f.s, g.s);
            res.output.push_back("{" + st.words[1] + ", " + st.words[2] + "} = " + out.str());
        } else {
            const Value& bv = lookup(st.words[2]);
            const auto* mu = std::get_if<Form>(&a);
            const auto* eta = std::get_if<Form>(&bv);
            if (mu == nullptr || eta == nullptr || mu->degree() != 1 || eta->degree() != 1)
                throw EngineError("bracket arguments must be two scalars or two 1-forms");
            Form out = one_form_bracket(biv, *mu, *eta);
            res.output.push_back("{" + st.words[1] + ", " + st.words[2] + "} = " + out.str());
        }
    } else if (verb == "ham") {
        const Multivector& biv = as_mv(st.words[0], 2, "bivector");
        const ScalarVal& f = as_scalar(st.words[1]);
        res.output.push_back("hamiltonian field of " + st.words[1] + " = " +
                             hamiltonian_field(biv, f.s).str());
    } else if (verb == "tangent-poisson") {
        const Multivector& biv = as_mv(st.words[0], 2, "bivector");
        res.output.push_back("tangent structure of " + st.words[0] + " = " +
                             tangent_poisson(biv).str());
    } else if (verb == "casimir") {
        const Multivector& biv = as_mv(st.words[0], 2, "bivector");
        const ScalarVal& f = as_scalar(st.words[1]);
        const bool ok = is_casimir(biv, f.s);
        set_check(ok);
        res.output.push_back(ok ? st.words[1] + " is a Casimir function"
                                : st.words[1] + " is not a Casimir function");
    } else if (verb == "rank" || verb == "linearize") {
        const Multivector& biv = as_mv(st.words[0], 2, "bivector");
        const PointVal& p = as_point(st.words[1]);
        if (!same_chart(p.chart, biv.chart()))
            throw EngineError("point and bivector live on different charts");
        if (verb == "rank") {
            if (!p.chart->params.empty())
                throw EngineError("rank needs a fully numeric point; the chart has parameters");
            Vec pt;
            for (const auto& s : p.entries) pt.push_back(s.constant_value());
            res.output.push_back("rank = " + std::to_string(rank_at(biv, pt)));
        } else {
            Multivector lin = linearize_at(biv, p.entries);
            res.output.push_back("linearization of " + st.words[0] + " at " + st.words[1] +
                                 " = " + lin.str());
        }
    } else if (verb == "canonical-field") {
        const Multivector& X = as_mv(st.words[0], 1, "vector field");
        const Multivector& biv = as_mv(st.words[1], 2, "bivector");
        CheckResult cr = canonical_field_check(X, biv);
        set_check(cr.ok);
        res.output.push_back(cr.ok ? st.words[0] + " preserves " + st.words[1]
                                   : cr.witness);
    } else if (verb == "poisson-map") {
        const Value& v = lookup(st.words[0]);
        const auto* phi = std::get_if<PolyMap>(&v);
        if (phi == nullptr)
            throw EngineError("'" + st.words[0] + "' is not a map (found " + value_kind(v) +
                              ")");
        const Multivector& src = as_mv(st.words[1], 2, "bivector");
        const Multivector& dst = as_mv(st.words[2], 2, "bivector");
        std::string witness;
        const bool ok = poisson_map_check(*phi, src, dst, &witness);
        set_check(ok);
        res.output.push_back(ok ? st.words[0] + " is a Poisson map" : witness);
    } else if (verb == "check-diagram") {
        const std::string suite = "diagram-" + st.words[0];
        RunOptions eff = opts_;
        SuiteResult sr = run_suite(suite, eff);
        set_check(sr.pass);
        res.kind = "verify";
        res.trials = sr.trials;
        for (auto& l : sr.lines) res.output.push_back(l);
    } else if (verb == "bialgebra") {
        const Cobracket& cb = as_cobracket(st.words[0]);
        if (st.sub == "validate") {
            BialgebraVerdict v = bialgebra_verdict(cb);
            set_check(v.cocycle && v.cojacobi);
            res.output.push_back(std::string("cocycle condition: ") +
                                 (v.cocycle ? "holds" : "fails"));
            res.output.push_back(std::string("co-Jacobi identity: ") +
                                 (v.cojacobi ? "holds" : "fails"));
        } else if (st.sub == "dual") {
            std::vector<std::string> dual_names;
            for (const auto& n : cb.g.names) dual_names.push_back(n + "_star");
            LieAlgebra dual = dual_algebra(cb, dual_names);
            for (auto& line : algebra_table(dual)) res.output.push_back(line);
        } else {  // tangent
            Cobracket tcb = tangent_cobracket(cb);
            for (auto& line : cobracket_table(tcb)) res.output.push_back(line);
        }
    } else if (verb == "rmatrix") {
        const RMatrixVal& rv = as_rmatrix(st.words[0]);
        if (st.sub == "gybe") {
            const bool ok = gybe_check(rv.g, rv.r);
            set_check(ok);
            res.output.push_back(ok ? "ad-invariance of [r, r] holds"
                                    : "[r, r] is not ad-invariant");
        } else if (st.sub == "cobracket") {
            Cobracket cb = coboundary_cobracket(rv.g, rv.r);
            for (auto& line : cobracket_table(cb)) res.output.push_back(line);
        } else if (st.sub == "lift") {
            Mat lifted = lift_rmatrix(rv.g, rv.r);
            res.output.push_back("lift = " +
                                 bivector_combo(lifted, tangent_lie_algebra(rv.g).names));
        } else {  // schouten
            const RMatrixVal& rv2 = as_rmatrix(st.words[1]);
            Cubic t = algebraic_schouten(rv.g, rv.r, rv2.r);
            res.output.push_back("[" + st.words[0] + ", " + st.words[1] + "] = " +
                                 trivector_combo(t, rv.g.names));
        }
    } else if (verb == "print") {
        const Value& v = lookup(st.words[0]);
        if (const auto* c = std::get_if<ChartPtr>(&v)) {
            std::string line = st.words[0] + ": chart with coordinates (";
            for (size_t i = 0; i < (*c)->coords.size(); ++i)
                line += (i ? ", " : "") + (*c)->coords[i];
            line += ")";
            res.output.push_back(line);
        } else if (const auto* s = std::get_if<ScalarVal>(&v)) {
            res.output.push_back(st.words[0] + " = " + s->s.str());
        } else if (const auto* f = std::get_if<Form>(&v)) {
            res.output.push_back(st.words[0] + " = " + f->str());
        } else if (const auto* m = std::get_if<Multivector>(&v)) {
            res.output.push_back(st.words[0] + " = " + m->str());
        } else if (const auto* g = std::get_if<LieAlgebra>(&v)) {
            for (auto& line : algebra_table(*g)) res.output.push_back(line);
        } else if (const auto* cb = std::get_if<Cobracket>(&v)) {
            for (auto& line : cobracket_table(*cb)) res.output.push_back(line);
        } else if (const auto* r = std::get_if<RMatrixVal>(&v)) {
            res.output.push_back(st.words[0] + " = " + bivector_combo(r->r, r->g.names));
        } else if (const auto* phi = std::get_if<PolyMap>(&v)) {
            std::string line = st.words[0] + " = (";
            for (size_t i = 0; i < phi->comps.size(); ++i)
                line += (i ? ", " : "") + phi->comps[i].str();
            line += ")";
            res.output.push_back(line);
        } else if (const auto* p = std::get_if<PointVal>(&v)) {
            std::string line = st.words[0] + " = (";
            for (size_t i = 0; i < p->entries.size(); ++i)
                line += (i ? ", " : "") + p->entries[i].str();
            line += ")";
            res.output.push_back(line);
        }
    } else if (verb == "verify") {
        RunOptions eff = opts_;
        for (const auto& o : st.options) {
            if (o.name == "trials") eff.trials = static_cast<int>(o.value);
            if (o.name == "dim") eff.dim = static_cast<int>(o.value);
            if (o.name == "seed") eff.seed = o.value;
        }
        res.kind = "verify";
        res.trials = static_cast<std::uint64_t>(eff.trials);
        bool all_pass = true;
        if (st.words[0] == "all") {
            for (const auto& name : suite_names()) {
                SuiteResult sr = run_suite(name, eff);
                all_pass = all_pass && sr.pass;
                res.output.push_back((sr.pass ? "pass " : "FAIL ") + name + " (trials " +
                                     std::to_string(sr.trials) + ")");
                for (auto& l : sr.lines) res.output.push_back("  " + l);
            }
        } else {
            SuiteResult sr = run_suite(st.words[0], eff);
            all_pass = sr.pass;
            res.trials = sr.trials;
            for (auto& l : sr.lines) res.output.push_back(l);
        }
        res.status = all_pass ? "pass" : "fail";
    } else {
        throw EngineError("unknown command '" + verb + "'");
    }
}

Report run_script(const Script& s, const RunOptions& opts) {
    Session sess(opts);
    sess.execute_all(s);
    return sess.report();
}

}  // namespace tanlift
