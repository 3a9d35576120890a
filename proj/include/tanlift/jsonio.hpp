#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tanlift {

/// One executed statement. status: "ok" (declaration or computation),
/// "pass"/"fail" (checks and verify suites), "error" (diagnostic).
struct CommandResult {
    int index = 0;
    std::string text;
    std::string kind;    // "decl" | "compute" | "check" | "verify"
    std::string status;  // "ok" | "pass" | "fail" | "error"
    std::vector<std::string> output;
    std::uint64_t trials = 0;  // verify commands only
};

/// Full run record. Identical (script, seed) pairs render byte-identically
/// in both text and JSON.
struct Report {
    std::uint64_t seed = 0;
    std::vector<CommandResult> commands;

    [[nodiscard]] int count(const std::string& status) const;
    [[nodiscard]] bool all_ok() const;
    [[nodiscard]] std::string text() const;
    [[nodiscard]] std::string json() const;
};

}  // namespace tanlift
