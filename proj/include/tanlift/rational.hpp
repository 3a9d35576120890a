#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace tanlift {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Error type for all engine-level failures (bad input, mismatched charts, ...).
struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Canonical text form: "n" or "n/d" with d > 0, gcd-reduced.
inline std::string rat_str(const Rat& r) { return r.str(); }

/// Parses "n", "-n", "n/d". Throws EngineError on malformed input.
Rat rat_parse(const std::string& s);

}  // namespace tanlift
