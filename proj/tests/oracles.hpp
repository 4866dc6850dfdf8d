// Test-only brute-force oracles, kept independent of the library's
// construction paths.
#pragma once

#include "hdx/local_code.hpp"
#include "hdx/rng.hpp"
#include "hdx/rs.hpp"

namespace hdx::oracle {

// The literal constraint system of C_{dx,dy} over all p^3 evaluation
// columns: the (p-dx-1) monomial checks of every row line followed by the
// (p-dy-1) checks of every skew line ordered by y.
inline ExactMatrix full_local_constraints(i64 p, i64 dx, i64 dy) {
    const size_t rows = static_cast<size_t>(p) * p * (p - dx - 1) + static_cast<size_t>(p) * p * (p - dy - 1);
    ExactMatrix M(rows, static_cast<size_t>(p) * p * p);
    size_t r = 0;
    const auto par_x = rs_parity_rows(p, dx);
    const auto par_y = rs_parity_rows(p, dy);
    for (i64 b = 0; b < p; ++b)
        for (i64 c = 0; c < p; ++c)
            for (size_t s = 0; s < par_x.rows; ++s, ++r)
                for (i64 x = 0; x < p; ++x) M.at(r, grid_index(x, b, c, p)) = par_x.at(s, x);
    for (i64 a = 0; a < p; ++a)
        for (i64 c = 0; c < p; ++c)
            for (size_t s = 0; s < par_y.rows; ++s, ++r)
                for (i64 y = 0; y < p; ++y) M.at(r, grid_index(a, y, (a * y + c) % p, p)) = par_y.at(s, y);
    return M;
}

inline std::vector<u32> random_rs_codeword(i64 q, i64 d, CounterRng& rng) {
    std::vector<u32> coeffs(d + 1);
    for (auto& c : coeffs) c = static_cast<u32>(rng.field_element(q));
    return poly_evals(coeffs, q);
}

// Random member of C_{dx,dy} as a random combination of the basis.
inline std::vector<u8> random_local_codeword(const LocalCodeSpec& spec, CounterRng& rng) {
    std::vector<u8> w(static_cast<size_t>(spec.p) * spec.p * spec.p, 0);
    for (size_t b = 0; b < spec.dim; ++b) {
        const u32 c = static_cast<u32>(rng.field_element(spec.p));
        if (!c) continue;
        for (size_t i = 0; i < w.size(); ++i)
            w[i] = static_cast<u8>((w[i] + c * spec.basis_eval[b][i]) % spec.p);
    }
    return w;
}

}  // namespace hdx::oracle
