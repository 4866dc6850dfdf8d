#pragma once

#include <cassert>
#include <optional>
#include <vector>

#include "hdx/field.hpp"

namespace hdx {

// Dense matrix over F_p, row-major, entries kept reduced in [0, p).
struct ExactMatrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<u32> a;

    ExactMatrix() = default;
    ExactMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, 0) {}

    u32& at(size_t i, size_t j) { return a[i * cols + j]; }
    u32 at(size_t i, size_t j) const { return a[i * cols + j]; }

    static ExactMatrix identity(size_t n) {
        ExactMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
};

struct RankResult {
    size_t rank = 0;
    // Canonical nullspace basis from the RREF free columns, ascending.
    std::vector<std::vector<u32>> nullspace;
    // Set when a right-hand side was supplied.
    bool has_solution = false;
    std::vector<u32> solution;
};

namespace detail {

// Working rows hold unreduced accumulations; every read of a logical entry
// goes through % p. Growth stays below 2 * rows * (p-1)^2, which the caller
// bounds against u32.
inline void axpy(u32* dst, const u32* src, u32 f, size_t n) {
    for (size_t j = 0; j < n; ++j) dst[j] += f * src[j];
}

inline void reduce_row(u32* r, size_t n, u32 p) {
    for (size_t j = 0; j < n; ++j) r[j] %= p;
}

}  // namespace detail

// Exact GF(p) rank, canonical nullspace basis, and (when rhs is given) a
// particular solution of M x = rhs or a report of inconsistency.
//
// Gauss-Jordan with pivot = first row holding a nonzero in the sweep column;
// deterministic for fixed input.
inline RankResult rank_nullspace(const ExactMatrix& M, i64 p, const std::vector<u32>* rhs = nullptr,
                                 bool want_nullspace = true) {
    if (rhs && rhs->size() != M.rows) throw std::invalid_argument("rank_nullspace: rhs length mismatch");
    const size_t rows = M.rows, cols = M.cols;
    const size_t width = cols + (rhs ? 1 : 0);
    const u32 up = static_cast<u32>(p);
    // Unreduced accumulation must not overflow u32.
    if (2.0 * double(rows + 1) * double(p - 1) * double(p - 1) > 4.0e9)
        throw std::invalid_argument("rank_nullspace: rows * p^2 too large for the accumulator");

    std::vector<u32> w(rows * width);
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) w[i * width + j] = M.at(i, j) % up;
        if (rhs) w[i * width + cols] = (*rhs)[i] % up;
    }

    std::vector<size_t> pivot_col;
    std::vector<size_t> pivot_of_col(cols, SIZE_MAX);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pr = SIZE_MAX;
        for (size_t i = r; i < rows; ++i) {
            if (w[i * width + c] % up != 0) {
                pr = i;
                break;
            }
        }
        if (pr == SIZE_MAX) continue;
        if (pr != r)
            for (size_t j = 0; j < width; ++j) std::swap(w[pr * width + j], w[r * width + j]);
        u32* prow = &w[r * width];
        detail::reduce_row(prow, width, up);
        const u32 inv = static_cast<u32>(inv_mod(prow[c], p));
        if (inv != 1)
            for (size_t j = 0; j < width; ++j) prow[j] = prow[j] * inv % up;
        for (size_t i = r + 1; i < rows; ++i) {
            const u32 f = w[i * width + c] % up;
            if (f) detail::axpy(&w[i * width + c], prow + c, up - f, width - c);
        }
        pivot_of_col[c] = r;
        pivot_col.push_back(c);
        ++r;
    }
    const size_t rank = r;

    RankResult res;
    res.rank = rank;

    if (rhs) {
        bool ok = true;
        for (size_t i = rank; i < rows && ok; ++i)
            if (w[i * width + cols] % up != 0) ok = false;
        res.has_solution = ok;
    }

    const bool need_rref = want_nullspace || (rhs && res.has_solution);
    if (need_rref) {
        // Back-eliminate from the last pivot upward. Row k is final once its
        // turn comes, so it can be reduced before use as the pivot row.
        for (size_t k = rank; k-- > 0;) {
            const size_t c = pivot_col[k];
            u32* prow = &w[k * width];
            detail::reduce_row(prow, width, up);
            for (size_t i = 0; i < k; ++i) {
                const u32 f = w[i * width + c] % up;
                if (f) detail::axpy(&w[i * width + c], prow + c, up - f, width - c);
            }
        }
    }

    if (want_nullspace) {
        for (size_t c = 0; c < cols; ++c) {
            if (pivot_of_col[c] != SIZE_MAX) continue;
            std::vector<u32> v(cols, 0);
            v[c] = 1;
            for (size_t k = 0; k < rank; ++k) {
                const u32 e = w[k * width + c];
                if (e) v[pivot_col[k]] = (up - e) % up;
            }
            res.nullspace.push_back(std::move(v));
        }
    }

    if (rhs && res.has_solution) {
        res.solution.assign(cols, 0);
        for (size_t k = 0; k < rank; ++k) res.solution[pivot_col[k]] = w[k * width + cols];
    }
    return res;
}

inline size_t gf_rank(const ExactMatrix& M, i64 p) { return rank_nullspace(M, p, nullptr, false).rank; }

// y = M x over F_p.
inline std::vector<u32> mat_vec(const ExactMatrix& M, const std::vector<u32>& x, i64 p) {
    assert(x.size() == M.cols);
    std::vector<u32> y(M.rows, 0);
    for (size_t i = 0; i < M.rows; ++i) {
        u64 acc = 0;
        for (size_t j = 0; j < M.cols; ++j) {
            acc += static_cast<u64>(M.at(i, j)) * x[j];
            if (acc >= (u64(1) << 62)) acc %= p;
        }
        y[i] = static_cast<u32>(acc % p);
    }
    return y;
}

}  // namespace hdx
