#pragma once

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hdx/embedding.hpp"
#include "hdx/global_code.hpp"
#include "hdx/local_code.hpp"

namespace hdx {

using nlohmann::json;

inline constexpr int kInstanceSchemaVersion = 1;

// Base-q digits: 0-9 then a-z, enough for any prime this project handles.
inline char digit_char(u8 d) { return d < 10 ? char('0' + d) : char('a' + d - 10); }
inline u8 char_digit(char c) {
    if (c >= '0' && c <= '9') return static_cast<u8>(c - '0');
    if (c >= 'a' && c <= 'z') return static_cast<u8>(c - 'a' + 10);
    throw std::invalid_argument("invalid codeword digit");
}

// Instance file: JSON header plus a binary sidecar holding the packed
// canonical triangle serializations in sorted order.
inline void save_instance(const ComplexInstance& X, const std::string& path) {
    const std::string sidecar = path + ".tri";
    json j;
    j["schema_version"] = kInstanceSchemaVersion;
    j["q"] = X.ctx.q;
    j["n"] = X.ctx.n;
    j["phi"] = std::vector<int>(X.ctx.phi.begin(), X.ctx.phi.end());
    j["group_order"] = X.triangles.size();
    j["counts"] = {{"vertices", X.vertices.size()}, {"edges", X.edges.size()}, {"triangles", X.triangles.size()}};
    j["bytes_per_triangle"] = 9 * X.ctx.n;
    j["sidecar"] = sidecar.substr(sidecar.find_last_of('/') + 1);
    std::vector<std::array<u64, 2>> vt, et;
    for (const auto& v : X.vertices) vt.push_back({static_cast<u64>(v.type), v.rep});
    for (const auto& e : X.edges) et.push_back({static_cast<u64>(e.type), e.rep});
    j["vertices"] = vt;
    j["edges"] = et;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_instance: cannot write " + path);
    out << j.dump(2) << "\n";

    std::ofstream bin(sidecar, std::ios::binary);
    if (!bin) throw std::runtime_error("save_instance: cannot write " + sidecar);
    for (const auto& t : X.triangles) bin.write(reinterpret_cast<const char*>(t.data()), t.size());
}

// Rebuild the full instance from the file pair; incidence tables are
// recomputed from the element list and cross-checked against the stored
// vertex/edge tables.
inline ComplexInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_instance: cannot read " + path);
    json j;
    in >> j;
    if (j.at("schema_version").get<int>() != kInstanceSchemaVersion)
        throw std::runtime_error("load_instance: unsupported schema version");
    const i64 q = j.at("q").get<i64>();
    const int n = j.at("n").get<int>();
    std::vector<u8> phi;
    for (int c : j.at("phi").get<std::vector<int>>()) phi.push_back(static_cast<u8>(c));
    RingCtx ctx(q, n, phi);

    const size_t count = j.at("group_order").get<size_t>();
    const size_t bytes = j.at("bytes_per_triangle").get<size_t>();
    if (bytes != static_cast<size_t>(9 * n)) throw std::runtime_error("load_instance: sidecar record size mismatch");
    const std::string dir = path.find_last_of('/') == std::string::npos ? "" : path.substr(0, path.find_last_of('/') + 1);
    const std::string sidecar = dir + j.at("sidecar").get<std::string>();
    std::ifstream bin(sidecar, std::ios::binary);
    if (!bin) throw std::runtime_error("load_instance: cannot read " + sidecar);
    std::vector<GroupElem> elems(count, GroupElem(bytes));
    for (auto& t : elems) {
        bin.read(reinterpret_cast<char*>(t.data()), bytes);
        if (!bin) throw std::runtime_error("load_instance: sidecar truncated");
    }

    ComplexInstance X = build_complex_from_elements(ctx, std::move(elems));
    const auto vt = j.at("vertices").get<std::vector<std::array<u64, 2>>>();
    const auto et = j.at("edges").get<std::vector<std::array<u64, 2>>>();
    if (vt.size() != X.vertices.size() || et.size() != X.edges.size())
        throw std::runtime_error("load_instance: stored face tables disagree with reconstruction");
    for (size_t i = 0; i < vt.size(); ++i)
        if (vt[i][0] != static_cast<u64>(X.vertices[i].type) || vt[i][1] != X.vertices[i].rep)
            throw std::runtime_error("load_instance: vertex table mismatch");
    for (size_t i = 0; i < et.size(); ++i)
        if (et[i][0] != static_cast<u64>(X.edges[i].type) || et[i][1] != X.edges[i].rep)
            throw std::runtime_error("load_instance: edge table mismatch");
    return X;
}

inline json line_to_json(const AffineLine& L) {
    return json{{"edge_id", L.edge},
                {"v0", std::vector<int>(L.v0.begin(), L.v0.end())},
                {"dir", std::vector<int>(L.dir.begin(), L.dir.end())},
                {"alpha_to_triangle", L.alpha_to_triangle}};
}

inline json local_code_to_json(const LocalCodeSpec& spec) {
    json j;
    j["p"] = spec.p;
    j["dx"] = spec.dx;
    j["dy"] = spec.dy;
    j["dim"] = spec.dim;
    std::vector<std::vector<int>> basis;
    for (const auto& b : spec.basis_eval) basis.emplace_back(b.begin(), b.end());
    j["basis_eval"] = basis;
    j["provenance"] = {{"formula_checked", spec.formula_checked}};
    return j;
}

// Parity export: coordinate triplets "row col value", dense rows in edge-id
// order.
inline void export_parity_matrix(const GlobalCodeSpec& code, std::ostream& out) {
    const auto& X = *code.X;
    const i64 q = code.q();
    size_t nnz = 0;
    for (const auto& e : X.edges) {
        const auto& pat = code.dense_pattern[e.type - 1];
        for (size_t r = 0; r < pat.rows; ++r)
            for (i64 a = 0; a < q; ++a) nnz += pat.at(r, a) != 0;
    }
    out << "%%MatrixMarket-like: " << code.dense_rows << " " << X.triangles.size() << " " << nnz << " " << q << "\n";
    size_t row = 0;
    for (const auto& e : X.edges) {
        const auto& pat = code.dense_pattern[e.type - 1];
        for (size_t r = 0; r < pat.rows; ++r, ++row)
            for (i64 a = 0; a < q; ++a)
                if (pat.at(r, a)) out << row << " " << e.star[a] << " " << pat.at(r, a) << "\n";
    }
}

inline std::string codeword_to_string(const std::vector<u8>& w) {
    std::string s;
    s.reserve(w.size());
    for (u8 v : w) s.push_back(digit_char(v));
    return s;
}

inline std::vector<u8> codeword_from_string(const std::string& s) {
    std::vector<u8> w;
    w.reserve(s.size());
    for (char c : s) w.push_back(char_digit(c));
    return w;
}

}  // namespace hdx
