#pragma once

#include <set>
#include <vector>

#include "hdx/matrix.hpp"

namespace hdx {

// Dual basis of RS(q, d) on the full evaluation set {0, ..., q-1}: row j is
// the monomial vector (a^j)_a for j = 0..q-d-2, with 0^0 = 1. These rows
// annihilate exactly the evaluations of polynomials of degree <= d.
inline ExactMatrix rs_parity_rows(i64 q, i64 d) {
    if (!is_prime(q)) throw std::invalid_argument("rs_parity_rows: q must be prime");
    if (d < 0 || d >= q) throw std::invalid_argument("rs_parity_rows: degree must satisfy 0 <= d <= q-1");
    const size_t rows = static_cast<size_t>(q - d - 1);
    ExactMatrix M(rows, static_cast<size_t>(q));
    for (size_t j = 0; j < rows; ++j)
        for (i64 a = 0; a < q; ++a) M.at(j, a) = static_cast<u32>(pow_mod(a, j, q));
    return M;
}

// Weight-(d+2) parity check of RS(q, d) supported on the given points: the
// coefficient at a is prod_{b in support, b != a} (a - b)^(-1). This is the
// classical divided-difference functional, zero on all degree <= d
// polynomials.
inline std::vector<u32> rs_sparse_check(i64 q, i64 d, const std::vector<i64>& support) {
    if (static_cast<i64>(support.size()) != d + 2)
        throw std::invalid_argument("rs_sparse_check: support must have d+2 points");
    std::set<i64> uniq(support.begin(), support.end());
    if (static_cast<i64>(uniq.size()) != d + 2) throw std::invalid_argument("rs_sparse_check: repeated support points");
    for (i64 a : support)
        if (a < 0 || a >= q) throw std::invalid_argument("rs_sparse_check: point outside field");

    std::vector<u32> row(static_cast<size_t>(q), 0);
    for (i64 a : support) {
        i64 prod = 1;
        for (i64 b : support) {
            if (b == a) continue;
            prod = prod * mod_sub(a, b, q) % q;
        }
        row[a] = static_cast<u32>(inv_mod(prod, q));
    }
    return row;
}

// Evaluations of sum coeffs[j] x^j over all of F_q.
inline std::vector<u32> poly_evals(const std::vector<u32>& coeffs, i64 q) {
    std::vector<u32> vals(static_cast<size_t>(q), 0);
    for (i64 x = 0; x < q; ++x) {
        i64 acc = 0, xp = 1;
        for (u32 c : coeffs) {
            acc = (acc + i64(c) * xp) % q;
            xp = xp * x % q;
        }
        vals[x] = static_cast<u32>(acc);
    }
    return vals;
}

// Coefficients of the unique degree < q interpolant of values on 0..q-1.
inline std::vector<u32> poly_interpolate(const std::vector<u32>& values, i64 q) {
    if (static_cast<i64>(values.size()) != q) throw std::invalid_argument("poly_interpolate: need q values");
    // Lagrange: f = sum_a values[a] * l_a(x), built incrementally.
    std::vector<i64> coeffs(q, 0);
    for (i64 a = 0; a < q; ++a) {
        if (values[a] == 0) continue;
        std::vector<i64> la{1};
        i64 denom = 1;
        for (i64 b = 0; b < q; ++b) {
            if (b == a) continue;
            la.push_back(0);
            for (i64 t = static_cast<i64>(la.size()) - 1; t >= 1; --t)
                la[t] = ((la[t - 1] - la[t] * b) % q + q) % q;
            la[0] = (la[0] * (q - b)) % q;
            denom = denom * mod_sub(a, b, q) % q;
        }
        const i64 scale = i64(values[a]) * inv_mod(denom, q) % q;
        for (size_t t = 0; t < la.size(); ++t) coeffs[t] = (coeffs[t] + scale * la[t]) % q;
    }
    return std::vector<u32>(coeffs.begin(), coeffs.end());
}

inline i64 poly_degree(const std::vector<u32>& coeffs) {
    for (i64 j = static_cast<i64>(coeffs.size()) - 1; j >= 0; --j)
        if (coeffs[j]) return j;
    return -1;  // zero polynomial
}

inline bool is_rs_codeword(const std::vector<u32>& values, i64 q, i64 d) {
    return poly_degree(poly_interpolate(values, q)) <= d;
}

}  // namespace hdx
