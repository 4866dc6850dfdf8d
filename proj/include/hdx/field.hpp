#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdx {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;
using u8 = std::uint8_t;

// Thrown when an enumeration/elimination budget is exceeded. Carries the
// offending size so callers can report it.
class BudgetError : public std::runtime_error {
  public:
    BudgetError(const std::string& what, u64 size, u64 budget)
        : std::runtime_error(what + " (size " + std::to_string(size) + " exceeds budget " +
                             std::to_string(budget) + ")"),
          size(size), budget(budget) {}
    u64 size;
    u64 budget;
};

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline i64 mod_add(i64 a, i64 b, i64 p) { return (a + b) % p; }
inline i64 mod_sub(i64 a, i64 b, i64 p) { return ((a - b) % p + p) % p; }
inline i64 mod_mul(i64 a, i64 b, i64 p) { return (a * b) % p; }

// b^e mod p, with 0^0 = 1.
inline i64 pow_mod(i64 b, u64 e, i64 p) {
    b %= p;
    if (b < 0) b += p;
    i64 r = 1 % p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// Multiplicative inverse of a mod prime p.
inline i64 inv_mod(i64 a, i64 p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw std::domain_error("inv_mod: division by zero");
    return pow_mod(a, static_cast<u64>(p - 2), p);
}

// Prime field F_p. Element values live in [0, p).
struct PrimeField {
    i64 p;

    explicit PrimeField(i64 p) : p(p) {
        if (!is_prime(p)) throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) + " is not prime");
    }

    i64 add(i64 a, i64 b) const { return mod_add(a, b, p); }
    i64 sub(i64 a, i64 b) const { return mod_sub(a, b, p); }
    i64 mul(i64 a, i64 b) const { return mod_mul(a, b, p); }
    i64 neg(i64 a) const { return (p - a % p) % p; }
    i64 inv(i64 a) const { return inv_mod(a, p); }
    i64 pow(i64 b, u64 e) const { return pow_mod(b, e, p); }
    i64 reduce(i64 a) const { return (a % p + p) % p; }
};

// C(n, k) mod p via Pascal's rule; exact for any n >= 0, including n >= p.
inline i64 binom_mod(i64 n, i64 k, i64 p) {
    if (k < 0 || k > n) return 0;
    std::vector<i64> row(static_cast<size_t>(k) + 1, 0);
    row[0] = 1 % p;
    for (i64 i = 1; i <= n; ++i)
        for (i64 j = std::min(i, k); j >= 1; --j) row[j] = (row[j] + row[j - 1]) % p;
    return row[k];
}

}  // namespace hdx
