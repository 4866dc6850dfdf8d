#pragma once

#include <cassert>
#include <vector>

#include "hdx/field.hpp"

namespace hdx {

// Elements of R = F_q[t]/<phi> are coefficient vectors of length n, the
// coefficient of t^l at index l.
using RingElem = std::vector<u8>;

inline u64 checked_pow_u64(u64 b, int e) {
    u64 r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > UINT64_MAX / b) throw std::overflow_error("q^n overflow");
        r *= b;
    }
    return r;
}

// Arithmetic context for R_n = F_q[t]/<phi>, phi monic of degree n.
struct RingCtx {
    i64 q = 0;
    int n = 0;
    std::vector<u8> phi;  // length n+1, low-to-high, phi[n] == 1

    // t^(n+m) mod phi for m in [0, n-2]; empty when n == 1.
    std::vector<std::vector<u8>> tred;
    RingElem t_red;   // t mod phi
    RingElem t2_red;  // t^2 mod phi
    u64 ring_order = 0;    // q^n
    bool primitive = false;
    bool three_coprime = false;  // true iff 3 does not divide q^n - 1

    RingCtx() = default;
    RingCtx(i64 q, int n, std::vector<u8> phi_in) : q(q), n(n), phi(std::move(phi_in)) {
        if (!is_prime(q)) throw std::invalid_argument("RingCtx: q must be prime");
        if (n < 1 || int(phi.size()) != n + 1 || phi[n] != 1)
            throw std::invalid_argument("RingCtx: phi must be monic of degree n");
        ring_order = checked_pow_u64(static_cast<u64>(q), n);
        three_coprime = (ring_order - 1) % 3 != 0;

        // t^n = -sum phi[l] t^l; higher powers by repeated shift.
        std::vector<u8> cur(n, 0);
        for (int l = 0; l < n; ++l) cur[l] = static_cast<u8>((q - phi[l] % q) % q);
        for (int m = 0; m + n <= 2 * n - 2; ++m) {
            tred.push_back(cur);
            std::vector<u8> nxt(n, 0);  // t * cur mod phi
            u8 top = cur[n - 1];
            for (int l = n - 1; l >= 1; --l) nxt[l] = cur[l - 1];
            nxt[0] = 0;
            if (top)
                for (int l = 0; l < n; ++l) nxt[l] = static_cast<u8>((nxt[l] + top * tred[0][l]) % q);
            cur = nxt;
        }

        t_red.assign(n, 0);
        if (n == 1)
            t_red[0] = static_cast<u8>((q - phi[0] % q) % q);
        else
            t_red[1] = 1;
        t2_red = mul(t_red, t_red);

        if (phi[0] != 0) primitive = element_order(t_red) == ring_order - 1;
    }

    RingElem zero() const { return RingElem(n, 0); }
    RingElem one() const {
        RingElem e(n, 0);
        e[0] = 1 % q;
        return e;
    }
    RingElem scalar(i64 c) const {
        RingElem e(n, 0);
        e[0] = static_cast<u8>(((c % q) + q) % q);
        return e;
    }

    bool is_zero(const u8* a) const {
        for (int l = 0; l < n; ++l)
            if (a[l]) return false;
        return true;
    }
    bool is_one(const u8* a) const {
        if (a[0] != 1 % q) return false;
        for (int l = 1; l < n; ++l)
            if (a[l]) return false;
        return true;
    }

    void add_into(u8* out, const u8* a) const {
        for (int l = 0; l < n; ++l) out[l] = static_cast<u8>((out[l] + a[l]) % q);
    }

    // out = a * b mod phi. out may not alias a or b.
    void mul_raw(u8* out, const u8* a, const u8* b) const {
        u32 conv[2 * 15] = {0};
        assert(n <= 15);
        for (int i = 0; i < n; ++i) {
            if (!a[i]) continue;
            for (int j = 0; j < n; ++j) conv[i + j] += static_cast<u32>(a[i]) * b[j];
        }
        for (int l = 0; l < n; ++l) out[l] = static_cast<u8>(conv[l] % q);
        for (int m = n; m <= 2 * n - 2; ++m) {
            const u32 c = conv[m] % q;
            if (!c) continue;
            const auto& red = tred[m - n];
            for (int l = 0; l < n; ++l) out[l] = static_cast<u8>((out[l] + c * red[l]) % q);
        }
    }

    RingElem mul(const RingElem& a, const RingElem& b) const {
        if (int(a.size()) != n || int(b.size()) != n) throw std::invalid_argument("ring mul: length mismatch");
        RingElem out(n, 0);
        mul_raw(out.data(), a.data(), b.data());
        return out;
    }

    RingElem add(const RingElem& a, const RingElem& b) const {
        if (int(a.size()) != n || int(b.size()) != n) throw std::invalid_argument("ring add: length mismatch");
        RingElem out(a);
        add_into(out.data(), b.data());
        return out;
    }

    RingElem smul(i64 c, const RingElem& a) const {
        const u8 cc = static_cast<u8>(((c % q) + q) % q);
        RingElem out(n, 0);
        for (int l = 0; l < n; ++l) out[l] = static_cast<u8>(cc * a[l] % q);
        return out;
    }

    RingElem pow(RingElem base, u64 e) const {
        RingElem r = one();
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    // Multiplicative order of a unit; 0 if a is not a unit (never reaches 1).
    u64 element_order(const RingElem& a) const {
        RingElem x = a;
        for (u64 k = 1; k <= ring_order; ++k) {
            if (is_one(x.data())) return k;
            x = mul(x, a);
        }
        return 0;
    }
};

inline RingElem ring_mul(const RingElem& a, const RingElem& b, const RingCtx& ctx) { return ctx.mul(a, b); }

struct PrimitiveModulus {
    std::vector<u8> coeffs;  // length n+1, low-to-high, monic
    bool three_coprime = false;
};

// Lexicographically smallest monic degree-n phi over F_q (coefficients
// compared high-to-low, constant term last) such that t has multiplicative
// order q^n - 1 in F_q[t]/<phi>. Also reports whether 3 does not divide
// q^n - 1.
inline PrimitiveModulus primitive_modulus(i64 q, int n) {
    if (!is_prime(q)) throw std::invalid_argument("primitive_modulus: q must be prime");
    if (n < 1) throw std::invalid_argument("primitive_modulus: n must be >= 1");
    const u64 total = checked_pow_u64(static_cast<u64>(q), n);
    for (u64 code = 0; code < total; ++code) {
        // code's most significant digit is the t^(n-1) coefficient, so
        // ascending codes scan coefficient vectors lexicographically with the
        // constant term as the final tie-break.
        std::vector<u8> phi(n + 1, 0);
        phi[n] = 1;
        u64 c = code;
        for (int l = 0; l < n; ++l) {
            phi[l] = static_cast<u8>(c % q);
            c /= q;
        }
        if (phi[0] == 0) continue;  // t would not be a unit
        RingCtx ctx(q, n, phi);
        if (ctx.primitive) return {phi, ctx.three_coprime};
    }
    throw std::logic_error("primitive_modulus: no primitive polynomial found");
}

}  // namespace hdx
