#pragma once

#include "hdx/complex.hpp"

namespace hdx {

// The embedding of a group element into F_q^{9n}: the nine matrix entries
// read row-major, each as its n coefficients with t^0 first. This is exactly
// the canonical serialization, so iota is the identity on bytes.
using EmbeddedPoint = std::vector<u8>;

inline EmbeddedPoint iota(const GroupElem& g) { return g; }

inline EmbeddedPoint embed_add(const EmbeddedPoint& a, const EmbeddedPoint& b, i64 q) {
    EmbeddedPoint out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = static_cast<u8>((a[i] + b[i]) % q);
    return out;
}

inline EmbeddedPoint embed_scale(i64 c, const EmbeddedPoint& a, i64 q) {
    const u8 cc = static_cast<u8>(((c % q) + q) % q);
    EmbeddedPoint out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = static_cast<u8>(cc * a[i] % q);
    return out;
}

// The star of an edge of type i embeds as the affine line v0 + alpha * v_i,
// where v0 = iota(rep) and v_i holds t * (a column of rep) in the column the
// multiplication by h_i(alpha) updates.
struct AffineLine {
    int type = 0;
    u32 edge = 0;
    EmbeddedPoint v0, dir;
    std::vector<u32> alpha_to_triangle;  // q entries

    EmbeddedPoint point(i64 alpha, i64 q) const { return embed_add(v0, embed_scale(alpha, dir, q), q); }
};

inline AffineLine line_of_edge(const ComplexInstance& X, u32 eid) {
    const auto& ctx = X.ctx;
    const auto& e = X.edges[eid];
    const GroupElem& g = X.triangles[e.rep];

    // type 1: t*g3 into column 1; type 2: t*g1 into column 2; type 3: t*g2
    // into column 3 (1-based columns)
    const int src_col = e.type == 1 ? 2 : e.type - 2;  // 0-based: 2, 0, 1
    const int dst_col = e.type - 1;                    // 0-based: 0, 1, 2

    AffineLine L;
    L.type = e.type;
    L.edge = eid;
    L.v0 = iota(g);
    L.dir.assign(9 * ctx.n, 0);
    u8 prod[15];
    for (int r = 0; r < 3; ++r) {
        ctx.mul_raw(prod, ctx.t_red.data(), entry(ctx, g, r, src_col));
        std::copy(prod, prod + ctx.n, L.dir.begin() + (3 * r + dst_col) * ctx.n);
    }
    if (std::all_of(L.dir.begin(), L.dir.end(), [](u8 v) { return v == 0; }))
        throw std::logic_error("line_of_edge: zero direction vector");

    L.alpha_to_triangle = e.star;
    for (i64 a = 0; a < ctx.q; ++a)
        if (iota(X.triangles[e.star[a]]) != L.point(a, ctx.q))
            throw std::logic_error("line_of_edge: star does not match the affine parameterization");
    return L;
}

// Multivariate polynomial over F_q in nvars variables, as a term list.
struct MultiPoly {
    size_t nvars = 0;
    i64 q = 0;
    struct Term {
        std::vector<u32> expo;
        u32 coeff;
    };
    std::vector<Term> terms;

    i64 total_degree() const {
        i64 d = 0;
        for (const auto& t : terms) {
            if (!t.coeff) continue;
            i64 s = 0;
            for (u32 e : t.expo) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    u32 eval(const std::vector<u8>& point) const {
        if (point.size() != nvars) throw std::invalid_argument("MultiPoly::eval: wrong point size");
        i64 acc = 0;
        for (const auto& t : terms) {
            i64 m = t.coeff % q;
            for (size_t v = 0; v < nvars && m; ++v)
                if (t.expo[v]) m = m * pow_mod(point[v], t.expo[v], q) % q;
            acc = (acc + m) % q;
        }
        return static_cast<u32>(acc);
    }

    static MultiPoly constant(size_t nvars, i64 q, u32 c) {
        MultiPoly p;
        p.nvars = nvars;
        p.q = q;
        p.terms.push_back({std::vector<u32>(nvars, 0), c});
        return p;
    }

    static MultiPoly variable(size_t nvars, i64 q, size_t idx) {
        MultiPoly p;
        p.nvars = nvars;
        p.q = q;
        std::vector<u32> e(nvars, 0);
        e[idx] = 1;
        p.terms.push_back({std::move(e), 1});
        return p;
    }
};

// Evaluate the polynomial at every embedded triangle: a word on X(2).
inline std::vector<u8> rm_restrict(const MultiPoly& poly, const ComplexInstance& X) {
    if (poly.nvars != static_cast<size_t>(9 * X.ctx.n)) throw std::invalid_argument("rm_restrict: variable count");
    std::vector<u8> word(X.triangles.size());
    for (size_t t = 0; t < X.triangles.size(); ++t) word[t] = static_cast<u8>(poly.eval(X.triangles[t]));
    return word;
}

// Variable indices of the three strictly upper-triangular coordinate slots
// (coefficient l of entries (1,2), (1,3), (2,3)).
inline std::array<size_t, 3> upper_slot_vars(int n, int l = 0) {
    return {static_cast<size_t>(1 * n + l), static_cast<size_t>(2 * n + l), static_cast<size_t>(5 * n + l)};
}

}  // namespace hdx
