#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <sstream>

#include "hdx/io.hpp"
#include "hdx/report.hpp"

using namespace hdx;

TEST_CASE("instance save/load round trip") {
    const auto X = build_complex(RingCtx(2, 1, {1, 1}));
    const std::string path = "io_test_inst.json";
    save_instance(X, path);
    const auto Y = load_instance(path);
    CHECK(Y.triangles == X.triangles);
    CHECK(Y.vertices.size() == X.vertices.size());
    CHECK(Y.edges.size() == X.edges.size());
    for (size_t v = 0; v < X.vertices.size(); ++v) {
        CHECK(Y.vertices[v].rep == X.vertices[v].rep);
        CHECK(Y.vertices[v].star == X.vertices[v].star);
    }
    for (size_t e = 0; e < X.edges.size(); ++e) CHECK(Y.edges[e].star == X.edges[e].star);
    std::remove(path.c_str());
    std::remove((path + ".tri").c_str());
}

TEST_CASE("codeword digit strings") {
    std::vector<u8> w{0, 5, 12, 9, 1};
    CHECK(codeword_to_string(w) == "05c91");
    CHECK(codeword_from_string("05c91") == w);
    CHECK_THROWS_AS(codeword_from_string("0!"), std::invalid_argument);
}

TEST_CASE("affine line export") {
    const auto X = build_complex(RingCtx(2, 1, {1, 1}));
    const auto L = line_of_edge(X, 0);
    const auto j = line_to_json(L);
    CHECK(j["edge_id"] == 0);
    CHECK(j["v0"].size() == 9);
    CHECK(j["alpha_to_triangle"].size() == 2);
}

TEST_CASE("local code spec serialization") {
    const auto spec = build_local_code(5, 1, 1);
    const auto j = local_code_to_json(spec);
    CHECK(j["p"] == 5);
    CHECK(j["dim"] == 8);
    CHECK(j["provenance"]["formula_checked"] == true);
    CHECK(j["basis_eval"].size() == 8);
}

TEST_CASE("parity matrix export shape") {
    auto X = std::make_shared<const ComplexInstance>(build_complex(RingCtx(2, 1, {1, 1})));
    auto code = assemble_code(X, 0, 0, 0);
    std::ostringstream out;
    export_parity_matrix(code, out);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "%%MatrixMarket-like: 252 168 504 2");  // 252 edges, weight-2 rows
    size_t lines = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++lines;
    CHECK(lines == 504);
}

TEST_CASE("report records and merge") {
    Report r;
    r.config = {{"command", "identities"}, {"seed", 7}};
    r.add_check("walk-identity", "DU = 2/3 M+ + 1/3 I", true, {{"residual", 0.0}});
    r.add("skeleton", "lambda2(skeleton) reported", Record::Status::report_only, {{"lambda2", 0.4}});
    r.add("distance-bound", "(delta-2g)(delta-g)delta", Record::Status::vacuous);
    CHECK(r.all_pass());
    r.add_check("failing", "x = y", false);
    CHECK_FALSE(r.all_pass());

    const auto j = r.to_json();
    CHECK(j["records"].size() == 4);
    CHECK(j["records"][0]["status"] == "pass");

    auto merged = merge_reports({j, j});
    CHECK(merged["merged"].size() == 2);
    CHECK(merged["all_pass"] == false);
}
