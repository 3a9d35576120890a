#include "tanlift/linalg.hpp"

namespace tanlift {

Mat mat_zero(int rows, int cols) { return Mat(rows, Vec(cols, Rat(0))); }

Mat mat_identity(int n) {
    Mat m = mat_zero(n, n);
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.empty() || b.empty()) return {};
    if (a[0].size() != b.size()) throw EngineError("mat_mul: inner dimensions differ");
    Mat out = mat_zero(static_cast<int>(a.size()), static_cast<int>(b[0].size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

Vec mat_apply(const Mat& a, const Vec& v) {
    if (!a.empty() && a[0].size() != v.size())
        throw EngineError("mat_apply: dimensions differ");
    Vec out(a.size(), Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    return out;
}

namespace {

// Row echelon by plain rational elimination; returns pivot columns.
std::vector<int> echelon(Mat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rat inv = m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] /= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

}  // namespace

int rank(Mat m) { return static_cast<int>(echelon(m).size()); }

Rat determinant(Mat m) {
    size_t n = m.size();
    for (const Vec& row : m)
        if (row.size() != n) throw EngineError("determinant: matrix not square");
    Rat det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) return Rat(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rat f = m[i][c] / m[c][c];
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

std::vector<Vec> kernel_basis(Mat m) {
    if (m.empty()) return {};
    size_t cols = m[0].size();
    std::vector<int> pivots = echelon(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Vec v(cols, Rat(0));
        v[free] = 1;
        // Echelon rows have a unit pivot; back-substitute the free column.
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(Mat a, Vec b) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    if (b.size() != rows) throw EngineError("solve: dimension mismatch");
    for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    std::vector<int> pivots = echelon(a);
    // A pivot in the appended column means 0 = 1 somewhere.
    for (int c : pivots)
        if (c == static_cast<int>(cols)) return std::nullopt;
    Vec x(cols, Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
    return x;
}

namespace {

Mat concat_cols(const Mat& a, const Mat& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.size() != b.size()) throw EngineError("span: row counts differ");
    Mat out = a;
    for (size_t i = 0; i < a.size(); ++i)
        out[i].insert(out[i].end(), b[i].begin(), b[i].end());
    return out;
}

}  // namespace

bool same_column_span(const Mat& a, const Mat& b) {
    int ra = rank(a), rb = rank(b);
    if (ra != rb) return false;
    return rank(concat_cols(a, b)) == ra;
}

bool span_contains(const Mat& a, const Mat& b) {
    return rank(concat_cols(a, b)) == rank(a);
}

}  // namespace tanlift
