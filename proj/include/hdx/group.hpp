#pragma once

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_set>
#include <vector>

#include "hdx/ring.hpp"

namespace hdx {

// A group element is a 3x3 matrix over R_n, serialized as 9n bytes: entries
// row-major, each entry n base-q digits with the t^0 coefficient first.
// Lexicographic order on these bytes fixes every tie-break in the project.
using GroupElem = std::vector<u8>;

struct SubgroupKind {
    enum Family : u8 { K, H };
    Family family;
    int index;  // 1, 2 or 3
};

inline GroupElem mat_identity(const RingCtx& ctx) {
    GroupElem g(9 * ctx.n, 0);
    const u8 one = static_cast<u8>(1 % ctx.q);
    for (int d = 0; d < 3; ++d) g[(3 * d + d) * ctx.n] = one;
    return g;
}

inline const u8* entry(const RingCtx& ctx, const GroupElem& g, int i, int j) {
    return g.data() + (3 * i + j) * ctx.n;
}
inline u8* entry(const RingCtx& ctx, GroupElem& g, int i, int j) { return g.data() + (3 * i + j) * ctx.n; }

inline GroupElem mat_mul(const RingCtx& ctx, const GroupElem& a, const GroupElem& b) {
    const int n = ctx.n;
    GroupElem c(9 * n, 0);
    u8 prod[15];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            u8* out = c.data() + (3 * i + j) * n;
            for (int k = 0; k < 3; ++k) {
                ctx.mul_raw(prod, a.data() + (3 * i + k) * n, b.data() + (3 * k + j) * n);
                for (int l = 0; l < n; ++l) out[l] = static_cast<u8>((out[l] + prod[l]) % ctx.q);
            }
        }
    return c;
}

inline RingElem mat_det(const RingCtx& ctx, const GroupElem& g) {
    auto e = [&](int i, int j) { return RingElem(entry(ctx, g, i, j), entry(ctx, g, i, j) + ctx.n); };
    auto mul = [&](const RingElem& a, const RingElem& b) { return ctx.mul(a, b); };
    RingElem det = ctx.zero();
    det = ctx.add(det, mul(e(0, 0), ctx.add(mul(e(1, 1), e(2, 2)), ctx.smul(-1, mul(e(1, 2), e(2, 1))))));
    det = ctx.add(det, ctx.smul(-1, mul(e(0, 1), ctx.add(mul(e(1, 0), e(2, 2)), ctx.smul(-1, mul(e(1, 2), e(2, 0)))))));
    det = ctx.add(det, mul(e(0, 2), ctx.add(mul(e(1, 0), e(2, 1)), ctx.smul(-1, mul(e(1, 1), e(2, 0))))));
    return det;
}

// Inverse of a determinant-1 element: the adjugate.
inline GroupElem mat_inv(const RingCtx& ctx, const GroupElem& g) {
    if (!ctx.is_one(mat_det(ctx, g).data())) throw std::invalid_argument("mat_inv: determinant is not 1");
    auto e = [&](int i, int j) { return RingElem(entry(ctx, g, i, j), entry(ctx, g, i, j) + ctx.n); };
    GroupElem inv(9 * ctx.n, 0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const int r1 = (i + 1) % 3, r2 = (i + 2) % 3, c1 = (j + 1) % 3, c2 = (j + 2) % 3;
            // cofactor with the cyclic index trick absorbing the sign
            const RingElem cof =
                ctx.add(ctx.mul(e(r1, c1), e(r2, c2)), ctx.smul(-1, ctx.mul(e(r1, c2), e(r2, c1))));
            std::copy(cof.begin(), cof.end(), entry(ctx, inv, j, i));  // transpose
        }
    return inv;
}

// h_1(a) = e_31(a t), h_2(a) = e_12(a t), h_3(a) = e_23(a t): identity plus
// a*t at the off-diagonal slot that generates H_i.
inline GroupElem h_gen(const RingCtx& ctx, int i, i64 alpha) {
    GroupElem g = mat_identity(ctx);
    const RingElem at = ctx.smul(alpha, ctx.t_red);
    int r = 0, c = 0;
    switch (i) {
        case 1: r = 2, c = 0; break;
        case 2: r = 0, c = 1; break;
        case 3: r = 1, c = 2; break;
        default: throw std::invalid_argument("h_gen: index must be 1..3");
    }
    std::copy(at.begin(), at.end(), entry(ctx, g, r, c));
    return g;
}

// K_i parameterized by (a, b, c): entries a*t, b*t, c*t^2 in the pattern of
// the defining matrix families.
inline GroupElem k_elem(const RingCtx& ctx, int i, i64 a, i64 b, i64 c) {
    GroupElem g = mat_identity(ctx);
    const RingElem at = ctx.smul(a, ctx.t_red);
    const RingElem bt = ctx.smul(b, ctx.t_red);
    const RingElem ct2 = ctx.smul(c, ctx.t2_red);
    auto put = [&](const RingElem& v, int r, int col) { std::copy(v.begin(), v.end(), entry(ctx, g, r, col)); };
    switch (i) {
        case 1: put(at, 0, 1), put(ct2, 0, 2), put(bt, 1, 2); break;
        case 2: put(ct2, 1, 0), put(at, 1, 2), put(bt, 2, 0); break;
        case 3: put(at, 0, 1), put(bt, 2, 0), put(ct2, 2, 1); break;
        default: throw std::invalid_argument("k_elem: index must be 1..3");
    }
    return g;
}

inline std::vector<GroupElem> enumerate_subgroup(const RingCtx& ctx, SubgroupKind kind) {
    std::vector<GroupElem> out;
    if (kind.family == SubgroupKind::H) {
        out.reserve(ctx.q);
        for (i64 a = 0; a < ctx.q; ++a) out.push_back(h_gen(ctx, kind.index, a));
    } else {
        out.reserve(ctx.q * ctx.q * ctx.q);
        for (i64 a = 0; a < ctx.q; ++a)
            for (i64 b = 0; b < ctx.q; ++b)
                for (i64 c = 0; c < ctx.q; ++c) out.push_back(k_elem(ctx, kind.index, a, b, c));
    }
    return out;
}

// Lexicographically smallest serialized element of g * <subgroup>.
inline GroupElem canonical_coset_rep(const RingCtx& ctx, const GroupElem& g, SubgroupKind kind) {
    GroupElem best;
    for (const auto& s : enumerate_subgroup(ctx, kind)) {
        GroupElem cand = mat_mul(ctx, g, s);
        if (best.empty() || cand < best) best = std::move(cand);
    }
    return best;
}

// Expected |SL_3(F_Q)| for Q = q^n.
inline u64 sl3_order(u64 Q) {
    const u64 Q3 = Q * Q * Q;
    return (Q3 - 1) / (Q - 1) * (Q3 - Q) * (Q3 - Q * Q);
}

// BFS closure of {h_i(a) : i in 1..3, a != 0} under right multiplication,
// returned sorted by serialization. When phi is primitive and 3 does not
// divide q^n - 1 the result must be all of SL_3(R_n); that size is asserted.
inline std::vector<GroupElem> generate_group(const RingCtx& ctx, u64 budget = 500000) {
    std::vector<GroupElem> gens;
    for (int i = 1; i <= 3; ++i)
        for (i64 a = 1; a < ctx.q; ++a) gens.push_back(h_gen(ctx, i, a));

    std::unordered_set<std::string> seen;
    std::deque<GroupElem> queue;
    std::vector<GroupElem> elems;
    auto push = [&](GroupElem g) {
        std::string key(g.begin(), g.end());
        if (seen.insert(std::move(key)).second) {
            if (seen.size() > budget) throw BudgetError("generate_group: closure too large", seen.size(), budget);
            elems.push_back(g);
            queue.push_back(std::move(g));
        }
    };
    push(mat_identity(ctx));
    while (!queue.empty()) {
        GroupElem cur = std::move(queue.front());
        queue.pop_front();
        for (const auto& gen : gens) push(mat_mul(ctx, cur, gen));
    }
    std::sort(elems.begin(), elems.end());

    if (ctx.primitive && ctx.three_coprime) {
        const u64 expect = sl3_order(ctx.ring_order);
        if (elems.size() != expect)
            throw std::logic_error("generate_group: closure size " + std::to_string(elems.size()) +
                                   " does not match |SL3| = " + std::to_string(expect));
    }
    return elems;
}

}  // namespace hdx
