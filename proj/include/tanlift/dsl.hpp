#pragma once

#include "tanlift/rational.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace tanlift {

/// Parse-time diagnostic with a 1-based source location.
struct ParseError : EngineError {
    int line;
    int col;
    ParseError(std::string msg, int line_, int col_)
        : EngineError(std::move(msg)), line(line_), col(col_) {}
};

// ------------------------------- expressions -------------------------------

enum class ExOp : std::uint8_t {
    Number,  // rational literal (integer token; fractions arise from Div)
    Name,    // identifier, resolved against the evaluation context
    VGen,    // @name, a coordinate vector generator
    Neg,
    Add,
    Sub,
    Mul,
    Div,    // rhs must evaluate to a nonzero constant
    Caret,  // wedge on tensors, power on scalars with constant exponent
};

struct Expr {
    ExOp op = ExOp::Number;
    Rat num;           // Number
    std::string name;  // Name, VGen
    std::unique_ptr<Expr> a, b;
};

using ExprPtr = std::unique_ptr<Expr>;

[[nodiscard]] std::string print_expr(const Expr& e);

// ------------------------------- statements --------------------------------

enum class StKind : std::uint8_t {
    DeclChart,
    DeclScalar,
    DeclForm,
    DeclMv,
    DeclPoisson,
    DeclLieAlg,
    DeclCobracket,
    DeclRMatrix,
    DeclMap,
    DeclPoint,
    Command,
};

/// A [lhs...] = rhs entry of a liealg or cobracket block; lhs holds two
/// basis names for brackets, one for cobracket values.
struct BlockRel {
    std::vector<std::string> lhs;
    ExprPtr rhs;
};

/// One flag of a verify command, e.g. --trials 50.
struct CmdOption {
    std::string name;
    std::uint64_t value = 0;
};

struct Statement {
    StKind kind = StKind::Command;
    std::string name;                 // declared name, or command verb
    std::string sub;                  // command subverb (validate, gybe, ...)
    int degree = -1;                  // form/mv declarations
    std::string chart;                // 'on'/'src' chart or algebra name
    std::string chart2;               // map destination
    std::vector<std::string> words;   // chart coords / command arguments
    std::vector<std::string> params;  // chart parameters
    std::vector<ExprPtr> exprs;       // rhs expression(s)
    std::vector<BlockRel> rels;       // liealg / cobracket blocks
    std::vector<CmdOption> options;   // verify flags
    int line = 0;
};

struct Script {
    std::vector<Statement> statements;
};

/// Parses a script; throws ParseError with location on malformed input.
[[nodiscard]] Script parse_script(const std::string& source);

/// Canonical text of one statement (no trailing newline or semicolon).
[[nodiscard]] std::string print_statement(const Statement& st);

/// Canonical text of the whole script, one statement per line with trailing
/// semicolons; reparsing yields a script that prints identically.
[[nodiscard]] std::string print_script(const Script& s);

/// Statement verbs a script may invoke, in registry order; used by the
/// coverage test that every library verb is reachable from the language.
[[nodiscard]] const std::vector<std::string>& command_verbs();

}  // namespace tanlift
