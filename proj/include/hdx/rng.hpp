#pragma once

#include <string>

#include "hdx/field.hpp"

namespace hdx {

// Counter-based generator (splitmix64 over key ^ counter). Streams derived
// from a seed and a name are independent and platform-stable; there is no
// global RNG anywhere in the project.
class CounterRng {
  public:
    explicit CounterRng(u64 seed, const std::string& stream = "") : key_(seed) {
        for (unsigned char ch : stream) key_ = mix(key_ ^ ch);
    }

    u64 next_u64() { return mix(key_ ^ (0x9e3779b97f4a7c15ULL * ++counter_)); }

    // Uniform in [0, n) by rejection; exact, no modulo bias.
    u64 below(u64 n) {
        if (n == 0) throw std::invalid_argument("CounterRng::below(0)");
        const u64 lim = UINT64_MAX - UINT64_MAX % n;
        u64 v;
        do v = next_u64();
        while (v >= lim);
        return v % n;
    }

    i64 field_element(i64 p) { return static_cast<i64>(below(static_cast<u64>(p))); }
    i64 nonzero_field_element(i64 p) { return 1 + static_cast<i64>(below(static_cast<u64>(p) - 1)); }

    // count distinct values from [0, n), ascending.
    std::vector<u64> distinct(u64 n, u64 count) {
        if (count > n) throw std::invalid_argument("CounterRng::distinct: count > n");
        std::vector<u64> picks;
        picks.reserve(count);
        // Floyd's algorithm.
        for (u64 j = n - count; j < n; ++j) {
            u64 t = below(j + 1);
            bool dup = false;
            for (u64 x : picks) dup |= x == t;
            picks.push_back(dup ? j : t);
        }
        std::sort(picks.begin(), picks.end());
        return picks;
    }

  private:
    static u64 mix(u64 z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    u64 key_;
    u64 counter_ = 0;
};

}  // namespace hdx
