#pragma once

#include "tanlift/rational.hpp"

#include <optional>
#include <vector>

namespace tanlift {

using Vec = std::vector<Rat>;
using Mat = std::vector<std::vector<Rat>>;

[[nodiscard]] Mat mat_zero(int rows, int cols);
[[nodiscard]] Mat mat_identity(int n);
[[nodiscard]] Mat mat_mul(const Mat& a, const Mat& b);
[[nodiscard]] Vec mat_apply(const Mat& a, const Vec& v);

[[nodiscard]] int rank(Mat m);

/// Exact determinant of a square matrix.
[[nodiscard]] Rat determinant(Mat m);

/// Basis of the null space {v : m v = 0}.
[[nodiscard]] std::vector<Vec> kernel_basis(Mat m);

/// Solves a x = b exactly; nullopt when inconsistent. With a singular but
/// consistent system an arbitrary solution is returned (free variables 0).
[[nodiscard]] std::optional<Vec> solve(Mat a, Vec b);

/// Column spans coincide: rank A = rank B = rank [A | B].
[[nodiscard]] bool same_column_span(const Mat& a, const Mat& b);

/// Column span of a contains every column of b.
[[nodiscard]] bool span_contains(const Mat& a, const Mat& b);

}  // namespace tanlift
