#include <catch2/catch_amalgamated.hpp>

#include "hdx/rs.hpp"
#include "oracles.hpp"

using namespace hdx;

TEST_CASE("parity rows of RS at the full evaluation set") {
    auto m = rs_parity_rows(3, 1);
    REQUIRE(m.rows == 1);
    CHECK(m.at(0, 0) == 1);
    CHECK(m.at(0, 1) == 1);
    CHECK(m.at(0, 2) == 1);

    m = rs_parity_rows(5, 2);
    REQUIRE(m.rows == 2);
    CHECK((m.at(0, 0) == 1 && m.at(0, 4) == 1));
    for (i64 a = 0; a < 5; ++a) CHECK(m.at(1, a) == u32(a));

    CHECK(rs_parity_rows(7, 6).rows == 0);  // full space
    CHECK_THROWS_AS(rs_parity_rows(5, 5), std::invalid_argument);
}

TEST_CASE("parity rows annihilate exactly the low-degree evaluations") {
    CounterRng rng(5, "rs-parity");
    for (i64 q : {3, 5, 7, 13}) {
        for (i64 d = 0; d < q; ++d) {
            auto m = rs_parity_rows(q, d);
            for (int trial = 0; trial < 20; ++trial) {
                auto w = oracle::random_rs_codeword(q, d, rng);
                auto y = mat_vec(m, w, q);
                CHECK(std::all_of(y.begin(), y.end(), [](u32 e) { return e == 0; }));
            }
            // a degree d+1 monomial must be caught (unless the code is everything)
            if (d + 1 < q) {
                std::vector<u32> mono(q);
                for (i64 a = 0; a < q; ++a) mono[a] = static_cast<u32>(pow_mod(a, d + 1, q));
                auto y = mat_vec(m, mono, q);
                CHECK(std::any_of(y.begin(), y.end(), [](u32 e) { return e != 0; }));
            }
        }
    }
}

TEST_CASE("sparse weight-(d+2) checks") {
    auto row = rs_sparse_check(5, 1, {0, 1, 2});
    CHECK(row == std::vector<u32>{3, 4, 3, 0, 0});

    // q=3, d=1: support is everything and the check matches the monomial row
    row = rs_sparse_check(3, 1, {0, 1, 2});
    i64 scale = 0;
    for (i64 a = 0; a < 3; ++a)
        if (row[a]) scale = row[a];
    for (i64 a = 0; a < 3; ++a) CHECK(row[a] == u32(scale));

    CHECK_THROWS_AS(rs_sparse_check(5, 1, {0, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(rs_sparse_check(5, 1, {0, 1}), std::invalid_argument);
}

TEST_CASE("sparse checks annihilate random codewords and have exact weight") {
    CounterRng rng(6, "rs-sparse");
    for (i64 q : {5, 7, 11, 13}) {
        for (i64 d : {0L, 1L, 2L, q - 2}) {
            std::vector<i64> support;
            const i64 start = static_cast<i64>(rng.below(q));
            for (i64 t = 0; t < d + 2; ++t) support.push_back((start + t) % q);
            auto row = rs_sparse_check(q, d, support);
            i64 weight = 0;
            for (u32 v : row) weight += v != 0;
            CHECK(weight == d + 2);
            for (int trial = 0; trial < 100; ++trial) {
                auto w = oracle::random_rs_codeword(q, d, rng);
                i64 acc = 0;
                for (i64 a = 0; a < q; ++a) acc += i64(row[a]) * w[a];
                CHECK(acc % q == 0);
            }
        }
    }
}

TEST_CASE("full-support check at d = q-2 spans the one-dimensional dual") {
    for (i64 q : {3, 5, 7}) {
        std::vector<i64> support(q);
        for (i64 a = 0; a < q; ++a) support[a] = a;
        auto sparse = rs_sparse_check(q, q - 2, support);
        auto dense = rs_parity_rows(q, q - 2);
        REQUIRE(dense.rows == 1);
        // proportional rows
        i64 ratio = 0;
        for (i64 a = 0; a < q; ++a) {
            REQUIRE(dense.at(0, a) != 0);
            const i64 r = i64(sparse[a]) * inv_mod(dense.at(0, a), q) % q;
            if (ratio == 0)
                ratio = r;
            else
                CHECK(r == ratio);
        }
    }
}

TEST_CASE("interpolation round trip") {
    CounterRng rng(9, "interp");
    for (i64 q : {2, 3, 5, 17}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<u32> coeffs(q);
            for (auto& c : coeffs) c = static_cast<u32>(rng.field_element(q));
            auto vals = poly_evals(coeffs, q);
            CHECK(poly_interpolate(vals, q) == coeffs);
        }
    }
}
