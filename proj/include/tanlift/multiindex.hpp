#pragma once

#include <vector>

namespace tanlift {

/// Strictly increasing list of coordinate indices; the canonical label of an
/// exterior-algebra basis element.
using MultiIndex = std::vector<int>;

/// Sorts idx in place, returning the permutation sign (+1/-1), or 0 when an
/// index repeats.
int normalize_sign(MultiIndex& idx);

/// Merges two disjoint strictly increasing sequences; returns the sign of the
/// shuffle concat(a,b) -> sorted, or 0 when they intersect.
int merge_sign(const MultiIndex& a, const MultiIndex& b, MultiIndex& out);

/// True when a is a subset of b (both strictly increasing).
bool is_subset(const MultiIndex& a, const MultiIndex& b);

/// Set difference b \ a (both strictly increasing, a subset of b).
MultiIndex set_minus(const MultiIndex& b, const MultiIndex& a);

/// All strictly increasing r-element subsets of {0,...,n-1} in lexicographic
/// order.
std::vector<MultiIndex> all_multiindices(int n, int r);

}  // namespace tanlift
