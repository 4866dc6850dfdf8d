#include <catch2/catch_amalgamated.hpp>

#include "hdx/global_code.hpp"
#include "oracles.hpp"

using namespace hdx;

namespace {

std::shared_ptr<const ComplexInstance> instance_q2() {
    static auto X = std::make_shared<const ComplexInstance>(build_complex(RingCtx(2, 1, {1, 1})));
    return X;
}

std::shared_ptr<const ComplexInstance> instance_q3() {
    static auto X = std::make_shared<const ComplexInstance>(build_complex(RingCtx(3, 1, {1, 1})));
    return X;
}

GlobalCodeSpec& code_q3_d1() {
    static GlobalCodeSpec code = [] {
        auto c = assemble_code(instance_q3(), 1, 1, 1);
        dimension(c);
        return c;
    }();
    return code;
}

}  // namespace

TEST_CASE("assembly counts and degenerate degrees") {
    auto code = assemble_code(instance_q3(), 1, 1, 1);
    CHECK(code.dense_rows == 5616);  // q - d - 1 = 1 row per edge

    auto full = assemble_code(instance_q3(), 2, 2, 2);  // d = q-1: no constraints
    CHECK(full.dense_rows == 0);
    auto dim = dimension(full);
    CHECK(dim.exact);
    CHECK(dim.value == 5616);

    CHECK_THROWS_AS(assemble_code(instance_q3(), 3, 1, 1), std::invalid_argument);
}

TEST_CASE("sparse pattern weight and spanning") {
    auto code = assemble_code(instance_q3(), 1, 1, 1);
    for (int k = 0; k < 3; ++k) {
        REQUIRE(code.sparse_pattern[k].size() == 1);
        size_t weight = 0;
        for (u32 v : code.sparse_pattern[k][0]) weight += v != 0;
        CHECK(weight == 3);  // d + 2
    }

    // per-edge: the sparse rows (mapped through the star) lie in the dense
    // row space and span it
    const auto& X = *code.X;
    for (u32 eid = 0; eid < X.edges.size(); ++eid) {
        const auto& e = X.edges[eid];
        const auto& dense = code.dense_pattern[e.type - 1];
        const auto& sparse = code.sparse_pattern[e.type - 1];
        ExactMatrix both(dense.rows + sparse.size(), 3);
        for (size_t r = 0; r < dense.rows; ++r)
            for (i64 a = 0; a < 3; ++a) both.at(r, a) = dense.at(r, a);
        for (size_t r = 0; r < sparse.size(); ++r)
            for (i64 a = 0; a < 3; ++a) both.at(dense.rows + r, a) = sparse[r][a];
        CHECK(gf_rank(both, 3) == dense.rows);
    }
}

TEST_CASE("membership and single-coordinate sensitivity") {
    auto& code = code_q3_d1();
    const auto& X = *code.X;

    std::vector<u8> ones(X.triangles.size(), 1);
    CHECK(membership(ones, code).member);

    CounterRng rng(101, "member");
    auto w = random_member(code, rng);
    REQUIRE(membership(w, code).member);

    auto bad = w;
    const size_t t = rng.below(bad.size());
    bad[t] = static_cast<u8>((bad[t] + 1) % 3);
    const auto res = membership(bad, code);
    CHECK_FALSE(res.member);
    // the failing edges are exactly the three edges of the changed triangle
    std::vector<u32> expect(X.tri_edge[t].begin(), X.tri_edge[t].end());
    std::sort(expect.begin(), expect.end());
    auto got = res.failing_edges;
    std::sort(got.begin(), got.end());
    CHECK(got == expect);
}

TEST_CASE("membership through embedded lines agrees with edge checks") {
    auto& code = code_q3_d1();
    CounterRng rng(103, "iso");
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<u8> w;
        if (trial % 2 == 0) {
            w = random_member(code, rng);
        } else {
            w.assign(code.X->triangles.size(), 0);
            for (auto& v : w) v = static_cast<u8>(rng.field_element(3));
        }
        CHECK(membership(w, code).member == membership_by_lines(w, code).member);
    }
}

TEST_CASE("dimension accounting at q=3, d=(1,1,1)") {
    auto& code = code_q3_d1();
    REQUIRE(code.dim_cached);
    CHECK(code.dim >= 4);  // contains the degree-1 restriction words
    CHECK(code.generators.size() == code.dim);
    for (const auto& g : code.generators) CHECK(membership(g, code).member);
}

TEST_CASE("translation is a code automorphism") {
    auto& code = code_q3_d1();
    const auto& X = *code.X;
    CounterRng rng(107, "translate");
    auto w = random_member(code, rng);
    for (int trial = 0; trial < 20; ++trial) {
        const auto& g = X.triangles[rng.below(X.triangles.size())];
        auto wg = translate(w, g, X);
        CHECK(membership(wg, code).member);
    }
    // identity translation and inverse round trip
    CHECK(translate(w, mat_identity(X.ctx), X) == w);
    const auto& g = X.triangles[rng.below(X.triangles.size())];
    CHECK(translate(translate(w, g, X), mat_inv(X.ctx, g), X) == w);
}

TEST_CASE("the action on triangles is transitive") {
    const auto X = instance_q3();
    CounterRng rng(211, "transitive");
    const u32 t0 = static_cast<u32>(rng.below(X->triangles.size()));
    for (int trial = 0; trial < 100; ++trial) {
        const u32 target = static_cast<u32>(rng.below(X->triangles.size()));
        const auto g = mat_mul(X->ctx, X->triangles[target], mat_inv(X->ctx, X->triangles[t0]));
        CHECK(X->id_of(mat_mul(X->ctx, g, X->triangles[t0])) == target);
    }
}

TEST_CASE("coordinatewise multiplication raises the degree") {
    const auto X2 = instance_q2();
    auto c0 = assemble_code(X2, 0, 0, 0);
    dimension(c0);
    auto c1 = assemble_code(X2, 1, 1, 1);
    CounterRng rng(109, "mult");
    for (int trial = 0; trial < 20; ++trial) {
        auto w1 = random_member(c0, rng);
        auto w2 = random_member(c0, rng);
        CHECK(membership(multiply(w1, w2, 2), c1).member);

        std::vector<u8> ones(X2->triangles.size(), 1);
        CHECK(multiply(w1, ones, 2) == w1);
    }
}

TEST_CASE("vertex charts pull local codes back to C_{dx,dy}") {
    auto& code = code_q3_d1();
    const auto& X = *code.X;
    CounterRng rng(113, "chart");
    // all vertices: pullback of every local basis vector passes the edge checks
    for (u32 v = 0; v < X.vertices.size(); ++v) {
        const auto ch = vertex_chart(X, v, code.degrees);
        const auto spec = shared_local_code(3, ch.dx, ch.dy);
        // chart is a bijection: q^3 distinct triangles
        auto sorted = ch.grid_to_triangle;
        std::sort(sorted.begin(), sorted.end());
        CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());

        {
            for (const auto& bw : spec->basis_eval) {
                // place the pulled-back word on the star, zero elsewhere is
                // irrelevant: check the star word against every edge at v
                const auto star_word = ch.push(bw);
                for (u32 eid : X.vertices[v].edges) {
                    const auto& e = X.edges[eid];
                    std::vector<u32> vals(3);
                    for (i64 a = 0; a < 3; ++a)
                        vals[a] = star_word[X.pos_in_vstar[e.star[a]][ch.type - 1]];
                    CHECK(is_rs_codeword(vals, 3, code.degrees[e.type - 1]));
                }
            }
        }
    }

    // pullback property is an iff: random star words agree with edge checks
    for (int trial = 0; trial < 50; ++trial) {
        const u32 v = static_cast<u32>(rng.below(X.vertices.size()));
        const auto ch = vertex_chart(X, v, code.degrees);
        std::vector<u8> star_word(27);
        for (auto& x : star_word) x = static_cast<u8>(rng.field_element(3));
        bool edge_ok = true;
        for (u32 eid : X.vertices[v].edges) {
            const auto& e = X.edges[eid];
            std::vector<u32> vals(3);
            for (i64 a = 0; a < 3; ++a) vals[a] = star_word[X.pos_in_vstar[e.star[a]][ch.type - 1]];
            edge_ok &= is_rs_codeword(vals, 3, code.degrees[e.type - 1]);
        }
        CHECK(vertex_membership(star_word, ch, 3) == edge_ok);
    }
}

TEST_CASE("vertex tester") {
    auto& code = code_q3_d1();
    const auto& X = *code.X;
    CounterRng rng(127, "tester");
    auto w = random_member(code, rng);
    CHECK(vertex_tester(w, code).p_hat == 0.0);

    auto bad = corrupt(w, 1, 999, 3);
    const auto res = vertex_tester(bad, code);
    CHECK(res.p_hat == Catch::Approx(3.0 / double(X.vertices.size())));
}

TEST_CASE("corrupt is seeded and distance-exact") {
    auto& code = code_q3_d1();
    CounterRng rng(131, "corrupt");
    auto w = random_member(code, rng);
    CHECK(corrupt(w, 0, 5, 3) == w);
    auto c1 = corrupt(w, 7, 5, 3);
    auto c2 = corrupt(w, 7, 5, 3);
    CHECK(c1 == c2);
    size_t dist = 0;
    for (size_t i = 0; i < w.size(); ++i) dist += c1[i] != w[i];
    CHECK(dist == 7);
}

TEST_CASE("views and alpha") {
    auto& code = code_q3_d1();
    const auto& X = *code.X;
    CounterRng rng(137, "views");
    auto w = random_member(code, rng);

    auto views = views_from_word(w, code, ViewMode::restrict_or_bottom);
    CHECK(views_alpha(views, X) == 0.0);
    for (u32 v = 0; v < X.vertices.size(); ++v) CHECK_FALSE(views.bottom[v]);

    auto bad = corrupt(w, 1, 4242, 3);
    auto nearest = views_from_word(bad, code, ViewMode::brute_nearest);
    // local codes correct one error, so all views restrict the original
    for (u32 v = 0; v < X.vertices.size(); ++v) {
        const auto expect = star_restriction(w, X, v);
        CHECK(nearest.z[v] == expect);
    }
    CHECK(views_alpha(nearest, X) == 0.0);
}

TEST_CASE("local correction on lightly corrupted words") {
    auto& code = code_q3_d1();
    const auto& X = *code.X;
    CounterRng rng(139, "correct");
    for (int trial = 0; trial < 5; ++trial) {
        auto w = random_member(code, rng);
        auto views = views_from_word(w, code, ViewMode::restrict_or_bottom);
        auto res = local_correction(views, code);
        CHECK(res.trace.reached_codeword);
        CHECK(res.trace.steps.empty());  // member views are a fixpoint
        CHECK(res.codeword == w);

        auto bad = corrupt(w, 1 + trial % 3, 1000 + trial, 3);
        auto nv = views_from_word(bad, code, ViewMode::brute_nearest);
        auto cres = local_correction(nv, code);
        CHECK(cres.trace.reached_codeword);
        CHECK(cres.codeword == w);
        CHECK(cres.trace.steps.size() <= cres.trace.initial_disagreeing_edges);
        for (const auto& s : cres.trace.steps) CHECK(s.new_count < s.old_count);
    }
}

TEST_CASE("two-query views") {
    auto& code = code_q3_d1();
    CounterRng rng(149, "twoq");
    auto w = random_member(code, rng);
    auto tq = two_query_views(w, code);
    CHECK(tq.rejection_fraction == 0.0);

    auto bad = corrupt(w, 1, 77, 3);
    tq = two_query_views(bad, code);
    CHECK(tq.rejection_fraction > 0.0);
}

TEST_CASE("minimum weight probe") {
    const auto X2 = instance_q2();
    auto full = assemble_code(X2, 1, 1, 1);  // d = q-1: everything
    dimension(full);
    auto mw = min_weight_probe(full, 100, 1.0 / std::sqrt(2.0), /*exact_budget=*/1u << 20);
    CHECK_FALSE(mw.exact);  // 2^168 is far beyond any budget
    CHECK(mw.weight >= 1);
    CHECK(mw.bound_vacuous);

    auto c0 = assemble_code(X2, 0, 0, 0);
    dimension(c0);
    auto mw0 = min_weight_probe(c0, 200, 1.0 / std::sqrt(2.0));
    // constants per edge star glue to global constants: weight |X(2)| for
    // the sampled witnesses unless the code is richer
    CHECK(mw0.weight >= 1);
}
