#include <catch2/catch_amalgamated.hpp>

#include "hdx/walks.hpp"

using namespace hdx;

namespace {

const ComplexInstance& instance_q2() {
    static const ComplexInstance X = build_complex(RingCtx(2, 1, {1, 1}));
    return X;
}

}  // namespace

TEST_CASE("walk matrices are row-stochastic and satisfy the operator identities") {
    const auto& X = instance_q2();
    const auto W = walk_matrices(X);
    CHECK_FALSE(W.sampled);
    CHECK(W.max_row_sum_error < 1e-12);
    CHECK(W.residual_lazy_identity < 1e-12);
    CHECK(W.residual_swap_identity < 1e-12);
}

TEST_CASE("sampled verification mode above the dense budget") {
    const auto& X = instance_q2();
    const auto W = walk_matrices(X, /*dense_budget=*/8, /*sample_rows=*/64);
    CHECK(W.sampled);
    CHECK(W.sampled_rows == 64);
    CHECK(W.residual_lazy_identity < 1e-12);
    CHECK(W.residual_swap_identity < 1e-12);
}

TEST_CASE("walk symmetry under the uniform stationary distribution") {
    const auto& X = instance_q2();
    const auto W = walk_matrices(X);
    // lower and upper walks are reversible w.r.t. uniform, so symmetric
    for (const SparseMat* m : {&W.lower, &W.upper, &W.lazy_upper}) {
        auto mt = m->transpose();
        REQUIRE(mt.col == m->col);
        for (size_t k = 0; k < m->val.size(); ++k) CHECK(mt.val[k] == Catch::Approx(m->val[k]).margin(1e-14));
    }
    // swap walk is doubly stochastic (columns sum to 1) though not symmetric
    auto st = W.swap_comp.transpose();
    for (size_t i = 0; i < st.rows; ++i) CHECK(st.row_sum(i) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("spectral report") {
    const auto& X = instance_q2();
    const auto W = walk_matrices(X);
    const auto R = spectral_report(X, W);
    CHECK(R.links_regular_bipartite_connected);
    CHECK(R.link_lambda2_max_dev < 1e-9);  // every link hits 1/sqrt(q)
    CHECK(R.gamma == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-9));
    CHECK(R.three_gamma_vacuous);  // 3/sqrt(2) > 1
    CHECK(R.skeleton_lambda2 < 1.0);
    CHECK(R.swap_lambda2 <= 1.0 + 1e-12);
}

TEST_CASE("sparse lambda2 agrees with the dense solver") {
    const auto& X = instance_q2();
    const auto W = walk_matrices(X);
    const double dense = second_eigenvalue(W.swap_comp.to_dense_symmetrized()).lambda2;
    const double sparse = sparse_lambda2(W.swap_comp);
    CHECK(sparse == Catch::Approx(dense).margin(1e-7));
}

TEST_CASE("up-down inequality on random edge vectors") {
    const auto& X = instance_q2();
    const auto W = walk_matrices(X);
    const auto R = spectral_report(X, W);
    CounterRng rng(31, "updown");
    CHECK(updown_inequality_sample(W, R.gamma, 100, rng));
}

TEST_CASE("Alon-Chung sampling on link graphs") {
    CounterRng rng(37, "alon-chung");
    for (i64 q : {2, 3, 5}) {
        const auto L = link_graph(q);
        double worst = 0;
        CHECK(alon_chung_sample(L.normalized_adjacency, double(q), 200, rng, &worst));
    }
}
