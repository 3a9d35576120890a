#pragma once

#include "tanlift/bialgebra.hpp"
#include "tanlift/canonical.hpp"
#include "tanlift/dsl.hpp"
#include "tanlift/jsonio.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace tanlift {

// ------------------------------ session values -----------------------------

struct ScalarVal {
    ChartPtr chart;
    Scalar s;
};

struct RMatrixVal {
    LieAlgebra g;
    Mat r;
};

struct PointVal {
    ChartPtr chart;
    std::vector<Scalar> entries;  // one per coordinate; may involve parameters
};

using Value = std::variant<ChartPtr, ScalarVal, Form, Multivector, LieAlgebra, Cobracket,
                           RMatrixVal, PolyMap, PointVal>;

// --------------------------------- running ---------------------------------

struct RunOptions {
    std::uint64_t seed = 0;
    int trials = 50;
    int dim = 3;
};

/// Executes statements against a growing environment, recording one
/// CommandResult per statement. Errors are recorded and execution continues.
class Session {
  public:
    explicit Session(RunOptions opts = {}) : opts_(opts) { rep_.seed = opts.seed; }

    void execute(const Statement& st);
    void execute_all(const Script& s);

    [[nodiscard]] const Report& report() const { return rep_; }
    [[nodiscard]] const std::map<std::string, Value>& env() const { return env_; }

  private:
    void dispatch(const Statement& st, CommandResult& res);
    void declare(const Statement& st, CommandResult& res);
    void command(const Statement& st, CommandResult& res);

    std::map<std::string, Value> env_;
    RunOptions opts_;
    Report rep_;
    int next_index_ = 1;
};

[[nodiscard]] Report run_script(const Script& s, const RunOptions& opts);

// ---------------------------- verification suites --------------------------

struct SuiteResult {
    bool pass = true;
    std::uint64_t trials = 0;
    std::vector<std::string> lines;  // witnesses and notes, indented under the verdict
};

/// Registry order is the execution order of `verify all`.
[[nodiscard]] const std::vector<std::string>& suite_names();

/// Runs one suite; the effective generator seed is derived from the suite
/// name and opts.seed, so results do not depend on execution order.
/// Throws EngineError for unknown names.
[[nodiscard]] SuiteResult run_suite(const std::string& name, const RunOptions& opts);

}  // namespace tanlift
