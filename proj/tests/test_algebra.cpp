#include <catch2/catch_amalgamated.hpp>

#include "hdx/complex.hpp"
#include "hdx/matrix.hpp"
#include "hdx/ring.hpp"
#include "hdx/rng.hpp"
#include "hdx/spectral.hpp"

using namespace hdx;

TEST_CASE("modular inverse") {
    CHECK(inv_mod(3, 7) == 5);
    CHECK(inv_mod(1, 7) == 1);
    CHECK(inv_mod(1, 13) == 1);
    CHECK(inv_mod(2, 5) == 3);
    CHECK_THROWS_AS(inv_mod(0, 7), std::domain_error);
    for (i64 p : {2, 3, 5, 7, 11, 13, 17})
        for (i64 a = 1; a < p; ++a) CHECK(a * inv_mod(a, p) % p == 1);
}

TEST_CASE("primitive modulus search") {
    auto m31 = primitive_modulus(3, 1);
    CHECK(m31.coeffs == std::vector<u8>{1, 1});  // x + 1, t = 2 of order 2
    CHECK(m31.three_coprime);                    // 3 does not divide 3^1 - 1 = 2

    auto m23 = primitive_modulus(2, 3);
    CHECK(m23.coeffs == std::vector<u8>{1, 1, 0, 1});  // x^3 + x + 1, t of order 7

    auto m51 = primitive_modulus(5, 1);
    CHECK(m51.coeffs == std::vector<u8>{2, 1});  // x + 2: x + 1 gives t = 4 of order 2

    // primitivity flag as computed by the context
    RingCtx good(2, 3, {1, 1, 0, 1});
    CHECK(good.primitive);
    RingCtx bad(2, 3, {1, 0, 0, 1});  // x^3 + 1 is reducible
    CHECK_FALSE(bad.primitive);
}

TEST_CASE("ring multiplication") {
    RingCtx r31(3, 1, {1, 1});  // F_3[t]/<t+1>, t = 2
    CHECK(ring_mul(r31.t_red, r31.t_red, r31) == r31.one());

    RingCtx r23(2, 3, {1, 1, 0, 1});
    RingElem t2 = r23.mul(r23.t_red, r23.t_red);
    CHECK(ring_mul(t2, t2, r23) == RingElem{0, 1, 1});  // t^4 = t^2 + t

    CounterRng rng(11, "ring");
    for (int trial = 0; trial < 50; ++trial) {
        RingElem a(3), b(3), c(3);
        for (int l = 0; l < 3; ++l) {
            a[l] = static_cast<u8>(rng.field_element(2));
            b[l] = static_cast<u8>(rng.field_element(2));
            c[l] = static_cast<u8>(rng.field_element(2));
        }
        CHECK(r23.mul(a, r23.one()) == a);
        CHECK(r23.mul(a, b) == r23.mul(b, a));
        CHECK(r23.mul(r23.mul(a, b), c) == r23.mul(a, r23.mul(b, c)));
    }

    CHECK_THROWS_AS(r23.mul(RingElem{1, 0}, RingElem{1, 0, 0}), std::invalid_argument);
}

TEST_CASE("t generates the unit group for primitive moduli") {
    for (i64 q : {2, 3, 5, 7, 11, 13}) {
        for (int n = 1; n <= 7; ++n) {
            u64 order = 1;
            bool fits = true;
            for (int i = 0; i < n; ++i) {
                order *= static_cast<u64>(q);
                if (order > 243) fits = false;
            }
            if (!fits) break;
            auto pm = primitive_modulus(q, n);
            RingCtx ctx(q, n, pm.coeffs);
            CHECK(ctx.pow(ctx.t_red, order - 1) == ctx.one());
            if (order - 1 > 1) CHECK(ctx.pow(ctx.t_red, (order - 1) / 2) != ctx.one());
        }
    }
}

TEST_CASE("rank and nullspace basics") {
    auto id = ExactMatrix::identity(6);
    auto r = rank_nullspace(id, 5);
    CHECK(r.rank == 6);
    CHECK(r.nullspace.empty());

    ExactMatrix zero(4, 7);
    r = rank_nullspace(zero, 3);
    CHECK(r.rank == 0);
    CHECK(r.nullspace.size() == 7);

    ExactMatrix row(1, 3);
    row.at(0, 0) = row.at(0, 1) = row.at(0, 2) = 1;
    r = rank_nullspace(row, 3);
    CHECK(r.rank == 1);
    CHECK(r.nullspace.size() == 2);
    CHECK(mat_vec(row, {1, 1, 1}, 3) == std::vector<u32>{0});
}

TEST_CASE("rank_nullspace with right-hand side") {
    ExactMatrix M(3, 2);
    // x + y = 1, 2x + y = 0, 3x + 2y = 1 over F_5 -> x = 4, y = 2
    M.at(0, 0) = 1, M.at(0, 1) = 1;
    M.at(1, 0) = 2, M.at(1, 1) = 1;
    M.at(2, 0) = 3, M.at(2, 1) = 2;
    std::vector<u32> rhs{1, 0, 1};
    auto r = rank_nullspace(M, 5, &rhs);
    REQUIRE(r.has_solution);
    CHECK(r.solution == std::vector<u32>{4, 2});

    rhs = {1, 0, 2};  // now inconsistent
    r = rank_nullspace(M, 5, &rhs);
    CHECK_FALSE(r.has_solution);

    std::vector<u32> bad{1, 0};
    CHECK_THROWS_AS(rank_nullspace(M, 5, &bad), std::invalid_argument);
}

TEST_CASE("rank properties on random matrices") {
    CounterRng rng(2024, "rank");
    for (i64 p : {3, 5, 7}) {
        for (int trial = 0; trial < 12; ++trial) {
            const size_t rows = 1 + rng.below(50), cols = 1 + rng.below(50);
            ExactMatrix M(rows, cols);
            for (auto& x : M.a) x = static_cast<u32>(rng.field_element(p));
            auto r = rank_nullspace(M, p);
            CHECK(r.rank + r.nullspace.size() == cols);
            for (const auto& v : r.nullspace) {
                auto y = mat_vec(M, v, p);
                CHECK(std::all_of(y.begin(), y.end(), [](u32 e) { return e == 0; }));
            }

            // row permutation and nonzero row scaling preserve rank
            ExactMatrix P = M;
            for (size_t i = rows; i-- > 1;) {
                const size_t j = rng.below(i + 1);
                for (size_t col = 0; col < cols; ++col) std::swap(P.at(i, col), P.at(j, col));
            }
            for (size_t i = 0; i < rows; ++i) {
                const u32 s = static_cast<u32>(rng.nonzero_field_element(p));
                for (size_t col = 0; col < cols; ++col) P.at(i, col) = P.at(i, col) * s % p;
            }
            CHECK(gf_rank(P, p) == r.rank);
        }
    }
}

TEST_CASE("second eigenvalue of small graphs") {
    SymMatrix k3(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) k3.at(i, j) = 0.5;
    auto s = second_eigenvalue(k3);
    CHECK(s.eigenvalues[0] == Catch::Approx(1.0).margin(1e-12));
    CHECK(s.lambda2 == Catch::Approx(-0.5).margin(1e-12));

    SymMatrix c4(4);
    const int next[4] = {1, 2, 3, 0};
    for (int i = 0; i < 4; ++i) {
        c4.at(i, next[i]) = 0.5;
        c4.at(next[i], i) = 0.5;
    }
    s = second_eigenvalue(c4);
    CHECK(s.lambda2 == Catch::Approx(0.0).margin(1e-12));
    CHECK(s.eigenvalues.back() == Catch::Approx(-1.0).margin(1e-12));

    auto L = link_graph(3);
    s = second_eigenvalue(L.normalized_adjacency);
    CHECK(s.lambda2 == Catch::Approx(1.0 / std::sqrt(3.0)).margin(1e-9));

    SymMatrix asym(2);
    asym.at(0, 1) = 1.0;
    CHECK_THROWS_AS(second_eigenvalue(asym), std::invalid_argument);
}

TEST_CASE("stochastic symmetric spectra stay in [-1, 1]") {
    CounterRng rng(7, "spectra");
    for (int trial = 0; trial < 10; ++trial) {
        const size_t n = 3 + rng.below(20);
        // random connected-ish multigraph; normalize rows to sum 1
        std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
        for (size_t i = 0; i < n; ++i) {
            w[i][(i + 1) % n] += 1.0;
            w[(i + 1) % n][i] += 1.0;
        }
        for (size_t extra = 0; extra < 2 * n; ++extra) {
            size_t a = rng.below(n), b = rng.below(n);
            if (a == b) continue;
            w[a][b] += 1.0;
            w[b][a] += 1.0;
        }
        // symmetric doubly-stochastic-like normalization: divide by max degree
        double dmax = 0;
        for (size_t i = 0; i < n; ++i) {
            double d = 0;
            for (size_t j = 0; j < n; ++j) d += w[i][j];
            dmax = std::max(dmax, d);
        }
        SymMatrix A(n);
        for (size_t i = 0; i < n; ++i) {
            double d = 0;
            for (size_t j = 0; j < n; ++j)
                if (i != j) {
                    A.at(i, j) = w[i][j] / dmax;
                    d += w[i][j] / dmax;
                }
            A.at(i, i) = 1.0 - d;  // lazy remainder keeps rows stochastic
        }
        auto s = second_eigenvalue(A);
        for (double ev : s.eigenvalues) {
            CHECK(ev <= 1.0 + 1e-9);
            CHECK(ev >= -1.0 - 1e-9);
        }
    }
}
