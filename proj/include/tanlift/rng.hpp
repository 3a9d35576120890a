#pragma once

#include "tanlift/rational.hpp"
#include "tanlift/scalar.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace tanlift {

/// Deterministic random source. Draws reduce raw engine output with explicit
/// modulo so streams are identical across platforms and library versions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    [[nodiscard]] std::uint64_t raw() { return eng_(); }

    /// Uniform-enough integer in [lo, hi], lo <= hi.
    [[nodiscard]] long long integer(long long lo, long long hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(eng_() % span);
    }

    [[nodiscard]] Rat rational(long long lo = -4, long long hi = 4, long long den_max = 3) {
        Rat num(integer(lo, hi));
        Rat den(integer(1, den_max));
        return num / den;
    }

    /// Random polynomial over the chart table: up to `terms` monomials of
    /// total degree at most `deg` in the first `nvars` variables.
    [[nodiscard]] Scalar polynomial(const SymbolsPtr& syms, int nvars, int deg, int terms = 3) {
        Scalar out = Scalar::zero(syms);
        for (int t = 0; t < terms; ++t) {
            Exponents e(syms->size(), 0);
            int budget = static_cast<int>(integer(0, deg));
            for (int d = 0; d < budget; ++d) e[integer(0, nvars - 1)] += 1;
            out += Scalar::monomial(syms, e, rational());
        }
        return out;
    }

  private:
    std::mt19937_64 eng_;
};

/// FNV-1a, used to derive stable per-suite seeds from a run seed.
[[nodiscard]] inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

[[nodiscard]] inline std::uint64_t suite_seed(const std::string& name, std::uint64_t seed) {
    return fnv1a(name) ^ seed;
}

}  // namespace tanlift
