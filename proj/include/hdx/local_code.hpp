#pragma once

#include <array>
#include <tuple>

#include "hdx/rs.hpp"

namespace hdx {

// The vertex-local code C_{d_x,d_y} on the grid F_p^3: functions of degree
// <= d_x on every row line (., b, c) and degree <= d_y on every skew line
// (a, ., a*.+c). Points are indexed x + p*y + p^2*z; coefficient tensors
// c_{ijk} (0 <= i <= d_x, 0 <= j,k <= p-1) are indexed (i*p + j)*p + k.
struct LocalCodeSpec {
    i64 p = 0;
    i64 dx = 0, dy = 0;
    size_t dim = 0;
    std::vector<std::vector<u32>> basis_coeffs;
    std::vector<std::vector<u8>> basis_eval;
    bool formula_checked = false;  // p >= dx + dy + 2, where the closed-form dimension applies
};

inline i64 local_dim_formula(i64 dx, i64 dy) {
    if (dx < 0 || dy < 0) throw std::invalid_argument("local_dim_formula: degrees must be nonnegative");
    return (dx + 1) * (dy + 1) * (dx + dy + 2) / 2;
}

inline size_t grid_index(i64 x, i64 y, i64 z, i64 p) {
    return static_cast<size_t>(x + p * y + p * p * z);
}

inline std::vector<std::array<i64, 3>> row_line_points(i64 b, i64 c, i64 p) {
    std::vector<std::array<i64, 3>> pts;
    pts.reserve(p);
    for (i64 x = 0; x < p; ++x) pts.push_back({x, b, c});
    return pts;
}

// The skew line {(a, y, a*y + c) : y in F_p}, ordered by y.
inline std::vector<std::array<i64, 3>> skew_line_points(i64 a, i64 c, i64 p) {
    std::vector<std::array<i64, 3>> pts;
    pts.reserve(p);
    for (i64 y = 0; y < p; ++y) pts.push_back({a, y, (a * y + c) % p});
    return pts;
}

// Degree-bound check of a grid word on both line families, via the monomial
// dual rows of the line code: sum_t t^s f(line(t)) = 0 for s <= p-d-2.
inline bool local_membership(const std::vector<u8>& word, i64 p, i64 dx, i64 dy,
                             std::vector<std::pair<char, std::pair<i64, i64>>>* violations = nullptr) {
    if (static_cast<i64>(word.size()) != p * p * p) throw std::invalid_argument("local_membership: word length");
    std::vector<std::vector<i64>> pw(p, std::vector<i64>(p));
    for (i64 t = 0; t < p; ++t) {
        pw[t][0] = 1;
        for (i64 s = 1; s < p; ++s) pw[t][s] = pw[t][s - 1] * t % p;
    }
    bool ok = true;
    for (i64 b = 0; b < p; ++b)
        for (i64 c = 0; c < p; ++c)
            for (i64 s = 0; s <= p - dx - 2; ++s) {
                i64 acc = 0;
                for (i64 x = 0; x < p; ++x) acc += pw[x][s] * word[grid_index(x, b, c, p)];
                if (acc % p) {
                    ok = false;
                    if (violations) violations->push_back({'x', {b, c}});
                    s = p;  // one violation per line is enough
                }
            }
    for (i64 a = 0; a < p; ++a)
        for (i64 c = 0; c < p; ++c)
            for (i64 s = 0; s <= p - dy - 2; ++s) {
                i64 acc = 0;
                for (i64 y = 0; y < p; ++y) acc += pw[y][s] * word[grid_index(a, y, (a * y + c) % p, p)];
                if (acc % p) {
                    ok = false;
                    if (violations) violations->push_back({'y', {a, c}});
                    s = p;
                }
            }
    return ok;
}

// Evaluate a coefficient tensor (degree <= deg_x in x) on the grid, one
// variable at a time.
inline std::vector<u8> eval_coeff_tensor(const std::vector<u32>& coeffs, i64 p, i64 deg_x) {
    const i64 nx = deg_x + 1;
    if (static_cast<i64>(coeffs.size()) != nx * p * p) throw std::invalid_argument("eval_coeff_tensor: size");
    std::vector<std::vector<i64>> pw(p, std::vector<i64>(p));
    for (i64 t = 0; t < p; ++t) {
        pw[t][0] = 1;
        for (i64 s = 1; s < p; ++s) pw[t][s] = pw[t][s - 1] * t % p;
    }
    // contract k against z, then j against y, then i against x
    std::vector<i64> a1(nx * p * p);  // (i, j, z)
    for (i64 i = 0; i < nx; ++i)
        for (i64 j = 0; j < p; ++j)
            for (i64 z = 0; z < p; ++z) {
                i64 acc = 0;
                for (i64 k = 0; k < p; ++k) acc += i64(coeffs[(i * p + j) * p + k]) * pw[z][k];
                a1[(i * p + j) * p + z] = acc % p;
            }
    std::vector<i64> a2(nx * p * p);  // (i, y, z)
    for (i64 i = 0; i < nx; ++i)
        for (i64 y = 0; y < p; ++y)
            for (i64 z = 0; z < p; ++z) {
                i64 acc = 0;
                for (i64 j = 0; j < p; ++j) acc += a1[(i * p + j) * p + z] * pw[y][j];
                a2[(i * p + y) * p + z] = acc % p;
            }
    std::vector<u8> out(static_cast<size_t>(p) * p * p);
    for (i64 x = 0; x < p; ++x)
        for (i64 y = 0; y < p; ++y)
            for (i64 z = 0; z < p; ++z) {
                i64 acc = 0;
                for (i64 i = 0; i < nx; ++i) acc += a2[(i * p + y) * p + z] * pw[x][i];
                out[grid_index(x, y, z, p)] = static_cast<u8>(acc % p);
            }
    return out;
}

// Full trivariate interpolation of a grid word: per-variable inverse
// Vandermonde passes. Result indexed (i*p + j)*p + k with 0 <= i,j,k <= p-1.
inline std::vector<u32> interpolate_grid(const std::vector<u8>& word, i64 p) {
    if (static_cast<i64>(word.size()) != p * p * p) throw std::invalid_argument("interpolate_grid: word length");
    // vinv[s][x]: coefficient s of the Lagrange basis polynomial at x.
    std::vector<std::vector<u32>> vinv(p);
    for (i64 x = 0; x < p; ++x) {
        std::vector<u32> unit(p, 0);
        unit[x] = 1;
        const auto col = poly_interpolate(unit, p);
        for (i64 s = 0; s < p; ++s) {
            if (vinv[s].empty()) vinv[s].assign(p, 0);
            vinv[s][x] = col[s];
        }
    }
    auto pass = [&](const std::vector<i64>& in, int axis) {
        std::vector<i64> out(in.size());
        for (i64 u = 0; u < p; ++u)
            for (i64 v = 0; v < p; ++v)
                for (i64 s = 0; s < p; ++s) {
                    i64 acc = 0;
                    for (i64 t = 0; t < p; ++t) {
                        i64 idx;
                        if (axis == 0) idx = (t * p + u) * p + v;
                        else if (axis == 1) idx = (u * p + t) * p + v;
                        else idx = (u * p + v) * p + t;
                        acc += i64(vinv[s][t]) * in[idx];
                    }
                    i64 odx;
                    if (axis == 0) odx = (s * p + u) * p + v;
                    else if (axis == 1) odx = (u * p + s) * p + v;
                    else odx = (u * p + v) * p + s;
                    out[odx] = acc % p;
                }
        return out;
    };
    std::vector<i64> cur(word.size());
    for (i64 x = 0; x < p; ++x)
        for (i64 y = 0; y < p; ++y)
            for (i64 z = 0; z < p; ++z) cur[(x * p + y) * p + z] = word[grid_index(x, y, z, p)];
    cur = pass(cur, 2);  // z -> k
    cur = pass(cur, 1);  // y -> j
    cur = pass(cur, 0);  // x -> i
    return std::vector<u32>(cur.begin(), cur.end());
}

// Assemble C_{d_x,d_y}. The row-line constraints force f to be a polynomial
// of degree <= d_x in x (and < p in y, z); the skew-line RS checks are then
// imposed on that coefficient space by exact elimination. Every basis vector
// is re-verified against both line families before returning.
inline LocalCodeSpec build_local_code(i64 p, i64 dx, i64 dy) {
    if (!is_prime(p)) throw std::invalid_argument("build_local_code: p must be prime");
    if (dx < 0 || dx > p - 1 || dy < 0 || dy > p - 1)
        throw std::invalid_argument("build_local_code: degrees must lie in [0, p-1]");

    const i64 nx = dx + 1;
    const size_t cols = static_cast<size_t>(nx) * p * p;
    const size_t rows_per_line = static_cast<size_t>(p - dy - 1);
    ExactMatrix M(static_cast<size_t>(p) * p * rows_per_line, cols);

    std::vector<std::vector<i64>> pw(p, std::vector<i64>(2 * p));
    for (i64 t = 0; t < p; ++t) {
        pw[t][0] = 1;
        for (i64 s = 1; s < 2 * p; ++s) pw[t][s] = pw[t][s - 1] * t % p;
    }

    size_t r = 0;
    std::vector<i64> T(2 * p * p);  // T[u*p + k] = sum_y y^u (a y + c)^k
    for (i64 a = 0; a < p; ++a)
        for (i64 c = 0; c < p; ++c) {
            std::fill(T.begin(), T.end(), 0);
            for (i64 y = 0; y < p; ++y) {
                const i64 z = (a * y + c) % p;
                for (i64 u = 0; u < 2 * p - 1; ++u) {
                    const i64 yu = pw[y][u];
                    if (!yu) continue;
                    i64* row = &T[u * p];
                    for (i64 k = 0; k < p; ++k) row[k] = (row[k] + yu * pw[z][k]) % p;
                }
            }
            for (size_t s = 0; s < rows_per_line; ++s, ++r)
                for (i64 i = 0; i < nx; ++i) {
                    const i64 ai = pw[a][i];
                    if (!ai) continue;
                    for (i64 j = 0; j < p; ++j) {
                        const i64 u = s + j;
                        for (i64 k = 0; k < p; ++k) {
                            const i64 e = ai * T[u * p + k] % p;
                            if (e) M.at(r, (i * p + j) * p + k) = static_cast<u32>(e);
                        }
                    }
                }
        }

    auto ns = rank_nullspace(M, p);
    LocalCodeSpec spec;
    spec.p = p;
    spec.dx = dx;
    spec.dy = dy;
    spec.dim = ns.nullspace.size();
    spec.formula_checked = p >= dx + dy + 2;
    spec.basis_coeffs = std::move(ns.nullspace);
    spec.basis_eval.reserve(spec.dim);
    for (const auto& coeffs : spec.basis_coeffs) {
        auto word = eval_coeff_tensor(coeffs, p, dx);
        if (!local_membership(word, p, dx, dy))
            throw std::logic_error("build_local_code: basis vector fails a line constraint");
        spec.basis_eval.push_back(std::move(word));
    }
    return spec;
}

struct SupportCheckResult {
    bool checked = false;  // false when p < dx + dy + 2 (support bound does not apply)
    bool ok = false;
    // (basis index, i, j, k) of violating coefficients
    std::vector<std::tuple<size_t, i64, i64, i64>> violations;
};

// Checks c_{ijk} = 0 for j + k > dx + dy on every basis tensor.
inline SupportCheckResult coeff_support_check(const LocalCodeSpec& spec) {
    SupportCheckResult res;
    if (spec.p < spec.dx + spec.dy + 2) return res;  // skipped, hypothesis violated
    res.checked = true;
    res.ok = true;
    const i64 p = spec.p;
    for (size_t b = 0; b < spec.basis_coeffs.size(); ++b)
        for (i64 i = 0; i <= spec.dx; ++i)
            for (i64 j = 0; j < p; ++j)
                for (i64 k = 0; k < p; ++k)
                    if (j + k > spec.dx + spec.dy && spec.basis_coeffs[b][(i * p + j) * p + k]) {
                        res.ok = false;
                        res.violations.emplace_back(b, i, j, k);
                    }
    return res;
}

struct BinomialMatrixResult {
    ExactMatrix matrix;
    bool full_rank = false;
    bool hypothesis_ok = false;  // r <= k <= m < p
};

// The (r+1) x (r+1) matrix with entry (i, j) = C(m-i, k-j) mod p.
inline BinomialMatrixResult binomial_matrix_rank(i64 m, i64 k, i64 r, i64 p) {
    if (r < 0) throw std::invalid_argument("binomial_matrix_rank: r must be nonnegative");
    BinomialMatrixResult res;
    res.hypothesis_ok = r <= k && k <= m && m < p;
    res.matrix = ExactMatrix(static_cast<size_t>(r) + 1, static_cast<size_t>(r) + 1);
    for (i64 i = 0; i <= r; ++i)
        for (i64 j = 0; j <= r; ++j) res.matrix.at(i, j) = static_cast<u32>(binom_mod(m - i, k - j, p));
    res.full_rank = gf_rank(res.matrix, p) == static_cast<size_t>(r) + 1;
    return res;
}

}  // namespace hdx
