#include "tanlift/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace tanlift {

namespace {

// --------------------------------- lexer -----------------------------------

enum class Tok : std::uint8_t {
    Ident,
    Number,
    VGen,    // @name
    Option,  // --name
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Equal,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Arrow,
    Dot,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
    size_t start = 0;  // byte offsets, used for adjacency-sensitive merging
    size_t end = 0;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : s_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_blank();
            Token t = next();
            out.push_back(t);
            if (t.kind == Tok::End) break;
        }
        return out;
    }

  private:
    void skip_blank() {
        while (i_ < s_.size()) {
            char c = s_[i_];
            if (c == '#') {
                while (i_ < s_.size() && s_[i_] != '\n') ++i_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++i_;
                ++col_;
            } else if (c == '\n') {
                ++i_;
                ++line_;
                col_ = 1;
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    static bool word_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool word_char(char c) { return word_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

    std::string read_word() {
        size_t b = i_;
        while (i_ < s_.size() && word_char(s_[i_])) ++i_;
        return s_.substr(b, i_ - b);
    }

    Token next() {
        Token t;
        t.line = line_;
        t.col = col_;
        t.start = i_;
        if (i_ >= s_.size()) {
            t.kind = Tok::End;
            t.end = i_;
            return t;
        }
        char c = s_[i_];
        auto single = [&](Tok k) {
            ++i_;
            t.kind = k;
            t.text = std::string(1, c);
        };
        if (word_start(c)) {
            t.kind = Tok::Ident;
            t.text = read_word();
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t b = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            t.kind = Tok::Number;
            t.text = s_.substr(b, i_ - b);
        } else if (c == '@') {
            ++i_;
            if (i_ >= s_.size() || !word_start(s_[i_])) fail("expected a name after '@'");
            t.kind = Tok::VGen;
            t.text = read_word();
        } else if (c == '-' && i_ + 1 < s_.size() && s_[i_ + 1] == '-') {
            // '--name' lexes as an option flag; a doubled minus in an
            // expression therefore needs a space or parentheses between.
            i_ += 2;
            if (i_ >= s_.size() || !word_start(s_[i_])) fail("expected a name after '--'");
            t.kind = Tok::Option;
            t.text = read_word();
        } else if (c == '-' && i_ + 1 < s_.size() && s_[i_ + 1] == '>') {
            i_ += 2;
            t.kind = Tok::Arrow;
            t.text = "->";
        } else {
            switch (c) {
                case '(': single(Tok::LParen); break;
                case ')': single(Tok::RParen); break;
                case '{': single(Tok::LBrace); break;
                case '}': single(Tok::RBrace); break;
                case '[': single(Tok::LBracket); break;
                case ']': single(Tok::RBracket); break;
                case ',': single(Tok::Comma); break;
                case ';': single(Tok::Semi); break;
                case ':': single(Tok::Colon); break;
                case '=': single(Tok::Equal); break;
                case '+': single(Tok::Plus); break;
                case '-': single(Tok::Minus); break;
                case '*': single(Tok::Star); break;
                case '/': single(Tok::Slash); break;
                case '^': single(Tok::Caret); break;
                case '.': single(Tok::Dot); break;
                default: fail(std::string("unexpected character '") + c + "'");
            }
        }
        col_ += static_cast<int>(i_ - t.start);
        t.end = i_;
        return t;
    }

    const std::string& s_;
    size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

// --------------------------------- parser ----------------------------------

const std::set<std::string> kDeclKeywords = {"chart",     "scalar", "form", "mv",  "poisson",
                                             "liealg", "cobracket", "rmatrix", "map", "point"};

const std::set<std::string> kReserved = {
    "chart",   "scalar",   "form",   "mv",       "poisson", "liealg",  "cobracket", "rmatrix",
    "map",     "point",    "on",     "at",       "params",  "dt",      "vt",        "it",
    "jacobi",  "bracket",  "ham",    "casimir",  "rank",    "linearize", "verify",  "print",
    "bialgebra", "validate", "dual", "tangent",  "gybe",    "lift",    "schouten",  "all"};

const std::set<std::string> kRmatrixSubs = {"gybe", "cobracket", "lift", "schouten"};
const std::set<std::string> kBialgebraSubs = {"validate", "dual", "tangent"};

class Parser {
  public:
    explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

    Script run() {
        Script s;
        while (peek().kind != Tok::End) s.statements.push_back(statement());
        return s;
    }

  private:
    const Token& peek(size_t ahead = 0) const {
        size_t k = std::min(p_ + ahead, t_.size() - 1);
        return t_[k];
    }
    Token take() { return t_[std::min(p_++, t_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, peek().line, peek().col);
    }

    Token expect(Tok k, const char* what) {
        if (peek().kind != k) fail(std::string("expected ") + what);
        return take();
    }

    std::string name_token(const char* what) {
        Token t = expect(Tok::Ident, what);
        return t.text;
    }

    std::string fresh_name(const char* what) {
        std::string n = name_token(what);
        if (kReserved.count(n)) fail("'" + n + "' is a reserved word");
        return n;
    }

    /// Ident or Number continued through directly adjacent '-' and '.'
    /// joints, e.g. theorem-2.5 or lift-complete.
    std::string merged_word() {
        if (peek().kind != Tok::Ident && peek().kind != Tok::Number)
            fail("expected a word");
        Token first = take();
        std::string word = first.text;
        size_t tail = first.end;
        for (;;) {
            const Token& j = peek();
            if ((j.kind != Tok::Minus && j.kind != Tok::Dot) || j.start != tail) break;
            const Token& nxt = peek(1);
            if ((nxt.kind != Tok::Ident && nxt.kind != Tok::Number) || nxt.start != j.end) break;
            word += j.kind == Tok::Minus ? "-" : ".";
            take();
            Token w = take();
            word += w.text;
            tail = w.end;
        }
        return word;
    }

    std::vector<std::string> name_list() {
        std::vector<std::string> out;
        expect(Tok::LParen, "'('");
        if (peek().kind != Tok::RParen) {
            out.push_back(fresh_name("a name"));
            while (peek().kind == Tok::Comma) {
                take();
                out.push_back(fresh_name("a name"));
            }
        }
        expect(Tok::RParen, "')'");
        return out;
    }

    // expr := term (('+'|'-') term)*
    ExprPtr expr() {
        ExprPtr a = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            ExOp op = take().kind == Tok::Plus ? ExOp::Add : ExOp::Sub;
            ExprPtr e = std::make_unique<Expr>();
            e->op = op;
            e->a = std::move(a);
            e->b = term();
            a = std::move(e);
        }
        return a;
    }

    // term := factor (('*'|'/') factor)*
    ExprPtr term() {
        ExprPtr a = factor();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            ExOp op = take().kind == Tok::Star ? ExOp::Mul : ExOp::Div;
            ExprPtr e = std::make_unique<Expr>();
            e->op = op;
            e->a = std::move(a);
            e->b = factor();
            a = std::move(e);
        }
        return a;
    }

    // factor := unary ('^' unary)*
    ExprPtr factor() {
        ExprPtr a = unary();
        while (peek().kind == Tok::Caret) {
            take();
            ExprPtr e = std::make_unique<Expr>();
            e->op = ExOp::Caret;
            e->a = std::move(a);
            e->b = unary();
            a = std::move(e);
        }
        return a;
    }

    ExprPtr unary() {
        if (peek().kind == Tok::Minus) {
            take();
            ExprPtr e = std::make_unique<Expr>();
            e->op = ExOp::Neg;
            e->a = unary();
            return e;
        }
        return atom();
    }

    ExprPtr atom() {
        ExprPtr e = std::make_unique<Expr>();
        switch (peek().kind) {
            case Tok::Number: {
                Token t = take();
                e->op = ExOp::Number;
                e->num = Rat(boost::multiprecision::cpp_int(t.text));
                return e;
            }
            case Tok::Ident: {
                Token t = take();
                e->op = ExOp::Name;
                e->name = t.text;
                return e;
            }
            case Tok::VGen: {
                Token t = take();
                e->op = ExOp::VGen;
                e->name = t.text;
                return e;
            }
            case Tok::LParen: {
                take();
                ExprPtr inner = expr();
                expect(Tok::RParen, "')'");
                return inner;
            }
            default: fail("expected an expression");
        }
    }

    std::vector<ExprPtr> paren_expr_list() {
        std::vector<ExprPtr> out;
        expect(Tok::LParen, "'('");
        out.push_back(expr());
        while (peek().kind == Tok::Comma) {
            take();
            out.push_back(expr());
        }
        expect(Tok::RParen, "')'");
        return out;
    }

    Statement statement() {
        if (peek().kind != Tok::Ident) fail("expected a statement");
        int line = peek().line;
        std::string head = merged_word();
        Statement st;
        st.line = line;
        if (head == "rmatrix" && peek().kind == Tok::Ident && kRmatrixSubs.count(peek().text))
            return command_statement(std::move(st), head);
        if (kDeclKeywords.count(head)) return decl_statement(std::move(st), head);
        return command_statement(std::move(st), head);
    }

    Statement decl_statement(Statement st, const std::string& head) {
        if (head == "chart") {
            st.kind = StKind::DeclChart;
            st.name = fresh_name("chart name");
            st.words = name_list();
            if (peek().kind == Tok::Ident && peek().text == "params") {
                take();
                st.params = name_list();
            }
        } else if (head == "scalar" || head == "poisson") {
            st.kind = head == "scalar" ? StKind::DeclScalar : StKind::DeclPoisson;
            st.name = fresh_name("name");
            keyword("on");
            st.chart = name_token("chart name");
            expect(Tok::Equal, "'='");
            st.exprs.push_back(expr());
        } else if (head == "form" || head == "mv") {
            st.kind = head == "form" ? StKind::DeclForm : StKind::DeclMv;
            st.name = fresh_name("name");
            expect(Tok::Colon, "':'");
            Token d = expect(Tok::Number, "a degree");
            st.degree = std::stoi(d.text);
            keyword("on");
            st.chart = name_token("chart name");
            expect(Tok::Equal, "'='");
            st.exprs.push_back(expr());
        } else if (head == "liealg") {
            st.kind = StKind::DeclLieAlg;
            st.name = fresh_name("algebra name");
            if (peek().kind == Tok::LParen) st.words = name_list();
            expect(Tok::LBrace, "'{'");
            while (peek().kind != Tok::RBrace) {
                BlockRel rel;
                expect(Tok::LBracket, "'['");
                rel.lhs.push_back(name_token("a basis name"));
                expect(Tok::Comma, "','");
                rel.lhs.push_back(name_token("a basis name"));
                expect(Tok::RBracket, "']'");
                expect(Tok::Equal, "'='");
                rel.rhs = expr();
                expect(Tok::Semi, "';'");
                st.rels.push_back(std::move(rel));
            }
            take();
            if (st.words.empty()) {
                // implicit basis: order of first appearance in the relations
                std::set<std::string> seen;
                for (const auto& rel : st.rels)
                    for (const auto& n : rel.lhs)
                        if (seen.insert(n).second) st.words.push_back(n);
            }
            return st;  // no trailing semicolon after '}'
        } else if (head == "cobracket") {
            st.kind = StKind::DeclCobracket;
            st.name = fresh_name("cobracket name");
            keyword("on");
            st.chart = name_token("algebra name");
            expect(Tok::LBrace, "'{'");
            while (peek().kind != Tok::RBrace) {
                BlockRel rel;
                expect(Tok::LBracket, "'['");
                rel.lhs.push_back(name_token("a basis name"));
                expect(Tok::RBracket, "']'");
                expect(Tok::Equal, "'='");
                rel.rhs = expr();
                expect(Tok::Semi, "';'");
                st.rels.push_back(std::move(rel));
            }
            take();
            return st;
        } else if (head == "rmatrix") {
            st.kind = StKind::DeclRMatrix;
            st.name = fresh_name("name");
            keyword("on");
            st.chart = name_token("algebra name");
            expect(Tok::Equal, "'='");
            st.exprs.push_back(expr());
        } else if (head == "map") {
            st.kind = StKind::DeclMap;
            st.name = fresh_name("map name");
            expect(Tok::Colon, "':'");
            st.chart = name_token("source chart");
            expect(Tok::Arrow, "'->'");
            st.chart2 = name_token("target chart");
            expect(Tok::Equal, "'='");
            st.exprs = paren_expr_list();
        } else {  // point
            st.kind = StKind::DeclPoint;
            st.name = fresh_name("point name");
            keyword("on");
            st.chart = name_token("chart name");
            expect(Tok::Equal, "'='");
            st.exprs = paren_expr_list();
        }
        expect(Tok::Semi, "';'");
        return st;
    }

    void keyword(const char* kw) {
        if (peek().kind != Tok::Ident || peek().text != kw)
            fail(std::string("expected '") + kw + "'");
        take();
    }

    Statement command_statement(Statement st, const std::string& verb) {
        st.kind = StKind::Command;
        st.name = verb;
        auto arg = [&] { st.words.push_back(name_token("an argument name")); };
        if (verb == "dt" || verb == "vt" || verb == "it" || verb == "lift-complete" ||
            verb == "lift-vertical" || verb == "jacobi" || verb == "tangent-poisson" ||
            verb == "print") {
            arg();
        } else if (verb == "ham" || verb == "casimir" || verb == "canonical-field") {
            arg();
            arg();
        } else if (verb == "bracket" || verb == "poisson-map") {
            arg();
            arg();
            arg();
        } else if (verb == "rank" || verb == "linearize") {
            arg();
            keyword("at");
            arg();
        } else if (verb == "check-diagram") {
            st.words.push_back(merged_word());
        } else if (verb == "bialgebra") {
            if (peek().kind != Tok::Ident || !kBialgebraSubs.count(peek().text))
                fail("expected validate, dual, or tangent");
            st.sub = take().text;
            arg();
        } else if (verb == "rmatrix") {
            if (peek().kind != Tok::Ident || !kRmatrixSubs.count(peek().text))
                fail("expected gybe, cobracket, lift, or schouten");
            st.sub = take().text;
            arg();
            if (st.sub == "schouten") arg();
        } else if (verb == "verify") {
            st.words.push_back(merged_word());
            while (peek().kind == Tok::Option) {
                CmdOption opt;
                opt.name = take().text;
                if (opt.name != "trials" && opt.name != "dim" && opt.name != "seed")
                    fail("unknown option --" + opt.name);
                Token v = expect(Tok::Number, "a number");
                opt.value = std::stoull(v.text);
                st.options.push_back(opt);
            }
        } else {
            fail("unknown command '" + verb + "'");
        }
        expect(Tok::Semi, "';'");
        return st;
    }

    std::vector<Token> t_;
    size_t p_ = 0;
};

// --------------------------------- printer ---------------------------------

// Precedence levels: 1 add/sub, 2 mul/div, 3 caret and unary minus, 4 atom.
int level_of(const Expr& e) {
    switch (e.op) {
        case ExOp::Add:
        case ExOp::Sub: return 1;
        case ExOp::Mul:
        case ExOp::Div: return 2;
        case ExOp::Caret:
        case ExOp::Neg: return 3;
        default: return 4;
    }
}

void print_rec(const Expr& e, int min_level, std::string& out) {
    const bool parens = level_of(e) < min_level;
    if (parens) out += "(";
    switch (e.op) {
        case ExOp::Number: {
            std::ostringstream os;
            os << e.num;
            out += os.str();
            break;
        }
        case ExOp::Name: out += e.name; break;
        case ExOp::VGen:
            out += "@";
            out += e.name;
            break;
        case ExOp::Neg:
            out += "-";
            print_rec(*e.a, 4, out);
            break;
        case ExOp::Add:
        case ExOp::Sub:
            print_rec(*e.a, 1, out);
            out += e.op == ExOp::Add ? " + " : " - ";
            print_rec(*e.b, 2, out);
            break;
        case ExOp::Mul:
        case ExOp::Div:
            print_rec(*e.a, 2, out);
            out += e.op == ExOp::Mul ? "*" : "/";
            print_rec(*e.b, 3, out);
            break;
        case ExOp::Caret:
            print_rec(*e.a, 3, out);
            out += "^";
            print_rec(*e.b, 4, out);
            break;
    }
    if (parens) out += ")";
}

std::string join(const std::vector<std::string>& v, const char* sep) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v[i];
    }
    return out;
}

}  // namespace

std::string print_expr(const Expr& e) {
    std::string out;
    print_rec(e, 1, out);
    return out;
}

Script parse_script(const std::string& source) {
    Lexer lx(source);
    Parser ps(lx.run());
    return ps.run();
}

std::string print_statement(const Statement& st) {
    std::ostringstream os;
    switch (st.kind) {
        case StKind::DeclChart:
            os << "chart " << st.name << "(" << join(st.words, ", ") << ")";
            if (!st.params.empty()) os << " params (" << join(st.params, ", ") << ")";
            break;
        case StKind::DeclScalar:
            os << "scalar " << st.name << " on " << st.chart << " = " << print_expr(*st.exprs[0]);
            break;
        case StKind::DeclForm:
        case StKind::DeclMv:
            os << (st.kind == StKind::DeclForm ? "form " : "mv ") << st.name << " : " << st.degree
               << " on " << st.chart << " = " << print_expr(*st.exprs[0]);
            break;
        case StKind::DeclPoisson:
            os << "poisson " << st.name << " on " << st.chart << " = "
               << print_expr(*st.exprs[0]);
            break;
        case StKind::DeclLieAlg: {
            os << "liealg " << st.name << " (" << join(st.words, ", ") << ") {";
            for (const auto& rel : st.rels)
                os << " [" << rel.lhs[0] << ", " << rel.lhs[1] << "] = " << print_expr(*rel.rhs)
                   << ";";
            os << " }";
            break;
        }
        case StKind::DeclCobracket: {
            os << "cobracket " << st.name << " on " << st.chart << " {";
            for (const auto& rel : st.rels)
                os << " [" << rel.lhs[0] << "] = " << print_expr(*rel.rhs) << ";";
            os << " }";
            break;
        }
        case StKind::DeclRMatrix:
            os << "rmatrix " << st.name << " on " << st.chart << " = "
               << print_expr(*st.exprs[0]);
            break;
        case StKind::DeclMap: {
            os << "map " << st.name << " : " << st.chart << " -> " << st.chart2 << " = (";
            for (size_t i = 0; i < st.exprs.size(); ++i) {
                if (i) os << ", ";
                os << print_expr(*st.exprs[i]);
            }
            os << ")";
            break;
        }
        case StKind::DeclPoint: {
            os << "point " << st.name << " on " << st.chart << " = (";
            for (size_t i = 0; i < st.exprs.size(); ++i) {
                if (i) os << ", ";
                os << print_expr(*st.exprs[i]);
            }
            os << ")";
            break;
        }
        case StKind::Command: {
            os << st.name;
            if (!st.sub.empty()) os << " " << st.sub;
            if (st.name == "rank" || st.name == "linearize") {
                os << " " << st.words[0] << " at " << st.words[1];
            } else {
                for (const auto& w : st.words) os << " " << w;
            }
            for (const auto& o : st.options) os << " --" << o.name << " " << o.value;
            break;
        }
    }
    return os.str();
}

std::string print_script(const Script& s) {
    std::string out;
    for (const auto& st : s.statements) {
        out += print_statement(st);
        out += (st.kind == StKind::DeclLieAlg || st.kind == StKind::DeclCobracket) ? "\n" : ";\n";
    }
    return out;
}

const std::vector<std::string>& command_verbs() {
    static const std::vector<std::string> verbs = {
        "dt",        "vt",       "it",        "lift-complete", "lift-vertical",
        "jacobi",    "bracket",  "ham",       "tangent-poisson", "casimir",
        "rank",      "linearize", "canonical-field", "poisson-map", "check-diagram",
        "bialgebra", "rmatrix",  "print",     "verify"};
    return verbs;
}

}  // namespace tanlift
