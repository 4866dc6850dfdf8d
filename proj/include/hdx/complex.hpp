#pragma once

#include <array>
#include <string>
#include <unordered_map>

#include "hdx/group.hpp"
#include "hdx/matrix.hpp"
#include "hdx/spectral.hpp"

namespace hdx {

// The two-dimensional coset complex X[G; K1, K2, K3]. Triangles are the
// group elements themselves (sorted, id = index); vertices are K_i-cosets
// and edges are H_k-cosets, both identified by their lexicographically
// smallest member.
struct ComplexInstance {
    RingCtx ctx;
    std::vector<GroupElem> triangles;

    struct Vertex {
        int type;  // 1..3, the K_i family
        u32 rep;   // triangle id of the canonical coset representative
        std::vector<u32> star;   // triangle ids, ascending
        std::vector<u32> edges;  // edge ids, ascending
    };
    struct Edge {
        int type;  // 1..3, the H_k family
        u32 rep;
        std::array<u32, 2> ends;  // vertex ids, lower type first
        std::vector<u32> star;    // triangle ids ordered by coset parameter alpha
    };

    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<std::array<u32, 3>> tri_vertex;     // [t][i-1] = vertex id of type i
    std::vector<std::array<u32, 3>> tri_edge;       // [t][k-1] = edge id of type k
    std::vector<std::array<u32, 3>> pos_in_vstar;   // index of t inside star(tri_vertex[t][i-1])

    u64 group_order() const { return triangles.size(); }

    u32 id_of(const GroupElem& g) const {
        auto it = std::lower_bound(triangles.begin(), triangles.end(), g);
        if (it == triangles.end() || *it != g) throw std::invalid_argument("id_of: element not in group");
        return static_cast<u32>(it - triangles.begin());
    }

    // Normalized adjacency of the link of v, over the 2q^2 neighbor vertices
    // sorted by id. Returns the node list alongside.
    std::pair<SymMatrix, std::vector<u32>> link_adjacency(u32 vid) const {
        const Vertex& v = vertices[vid];
        std::vector<u32> nodes;
        nodes.reserve(v.edges.size());
        for (u32 eid : v.edges) {
            const auto& e = edges[eid];
            nodes.push_back(e.ends[0] == vid ? e.ends[1] : e.ends[0]);
        }
        std::sort(nodes.begin(), nodes.end());
        std::unordered_map<u32, size_t> idx;
        for (size_t i = 0; i < nodes.size(); ++i) idx[nodes[i]] = i;
        SymMatrix A(nodes.size());
        for (u32 t : v.star) {
            std::array<u32, 2> other{};
            int m = 0;
            for (int i = 0; i < 3; ++i)
                if (tri_vertex[t][i] != vid) other[m++] = tri_vertex[t][i];
            const size_t a = idx.at(other[0]), b = idx.at(other[1]);
            if (A.at(a, b) != 0.0) throw std::logic_error("link_adjacency: duplicate link edge");
            A.at(a, b) = A.at(b, a) = 1.0;
        }
        const double d = static_cast<double>(ctx.q);
        for (auto& x : A.a) x /= d;
        return {std::move(A), std::move(nodes)};
    }

    // Normalized adjacency of the skeleton graph (X(0), X(1)).
    SymMatrix skeleton_adjacency() const {
        SymMatrix A(vertices.size());
        for (const auto& e : edges) A.at(e.ends[0], e.ends[1]) = A.at(e.ends[1], e.ends[0]) = 1.0;
        const double d = static_cast<double>(2 * ctx.q * ctx.q);
        for (auto& x : A.a) x /= d;
        return A;
    }
};

namespace detail {

struct ElemIndex {
    std::unordered_map<std::string, u32> map;
    explicit ElemIndex(const std::vector<GroupElem>& elems) {
        map.reserve(elems.size() * 2);
        for (u32 i = 0; i < elems.size(); ++i) map.emplace(std::string(elems[i].begin(), elems[i].end()), i);
    }
    u32 at(const GroupElem& g) const {
        auto it = map.find(std::string(g.begin(), g.end()));
        if (it == map.end()) throw std::logic_error("element lookup failed: group not closed");
        return it->second;
    }
};

}  // namespace detail

// Incidence construction from a sorted element list (the BFS closure or a
// deserialized triangle table).
inline ComplexInstance build_complex_from_elements(const RingCtx& ctx, std::vector<GroupElem> elems) {
    if (!std::is_sorted(elems.begin(), elems.end())) throw std::invalid_argument("element list must be sorted");
    ComplexInstance X;
    X.ctx = ctx;
    X.triangles = std::move(elems);
    const size_t N = X.triangles.size();
    const detail::ElemIndex index(X.triangles);
    const u32 none = UINT32_MAX;

    X.tri_vertex.assign(N, {none, none, none});
    X.tri_edge.assign(N, {none, none, none});
    X.pos_in_vstar.assign(N, {0, 0, 0});

    // Sweep elements in ascending order; the first member of an unassigned
    // coset is its lexicographically smallest element, hence the canonical
    // representative.
    for (int type = 1; type <= 3; ++type) {
        const auto sub = enumerate_subgroup(ctx, {SubgroupKind::K, type});
        for (u32 t = 0; t < N; ++t) {
            if (X.tri_vertex[t][type - 1] != none) continue;
            const u32 vid = static_cast<u32>(X.vertices.size());
            ComplexInstance::Vertex v;
            v.type = type;
            v.rep = t;
            v.star.reserve(sub.size());
            for (const auto& s : sub) {
                const u32 m = index.at(mat_mul(ctx, X.triangles[t], s));
                if (X.tri_vertex[m][type - 1] != none) throw std::logic_error("build_complex: cosets not disjoint");
                X.tri_vertex[m][type - 1] = vid;
                v.star.push_back(m);
            }
            std::sort(v.star.begin(), v.star.end());
            for (u32 i = 0; i < v.star.size(); ++i) X.pos_in_vstar[v.star[i]][type - 1] = i;
            X.vertices.push_back(std::move(v));
        }
    }

    for (int type = 1; type <= 3; ++type) {
        const int i = type == 1 ? 2 : 1;  // endpoint types: the two others
        const int j = type == 3 ? 2 : 3;
        for (u32 t = 0; t < N; ++t) {
            if (X.tri_edge[t][type - 1] != none) continue;
            const u32 eid = static_cast<u32>(X.edges.size());
            ComplexInstance::Edge e;
            e.type = type;
            e.rep = t;
            e.ends = {X.tri_vertex[t][i - 1], X.tri_vertex[t][j - 1]};
            e.star.reserve(ctx.q);
            for (i64 a = 0; a < ctx.q; ++a) {
                const u32 m = index.at(mat_mul(ctx, X.triangles[t], h_gen(ctx, type, a)));
                if (a == 0 && m != t) throw std::logic_error("build_complex: h(0) is not the identity");
                if (X.tri_edge[m][type - 1] != none) throw std::logic_error("build_complex: cosets not disjoint");
                X.tri_edge[m][type - 1] = eid;
                e.star.push_back(m);
            }
            X.edges.push_back(std::move(e));
        }
    }

    for (u32 eid = 0; eid < X.edges.size(); ++eid) {
        const auto& e = X.edges[eid];
        X.vertices[e.ends[0]].edges.push_back(eid);
        X.vertices[e.ends[1]].edges.push_back(eid);
    }
    for (auto& v : X.vertices) std::sort(v.edges.begin(), v.edges.end());

    // Incidence consistency: every triangle of an edge star must see the
    // edge's two endpoint cosets. A failure here signals a group-arithmetic
    // bug, not bad input.
    for (const auto& e : X.edges) {
        const int i = e.type == 1 ? 2 : 1;
        const int j = e.type == 3 ? 2 : 3;
        for (u32 t : e.star)
            if (X.tri_vertex[t][i - 1] != e.ends[0] || X.tri_vertex[t][j - 1] != e.ends[1])
                throw std::logic_error("build_complex: inconsistent incidence");
    }

    const u64 q3 = static_cast<u64>(ctx.q) * ctx.q * ctx.q;
    if (X.vertices.size() * q3 != 3 * N || X.edges.size() * static_cast<u64>(ctx.q) != 3 * N)
        throw std::logic_error("build_complex: face counts violate coset census");
    return X;
}

inline ComplexInstance build_complex(const RingCtx& ctx, u64 group_budget = 500000) {
    return build_complex_from_elements(ctx, generate_group(ctx, group_budget));
}

// The link graph of a type-i vertex, built directly from the coset
// parameterization: left part (*,b,c), right part (alpha,*,gamma), an edge
// iff c = alpha*b + gamma. Node order: left nodes b*q+c, then right nodes
// alpha*q+gamma.
struct LinkGraph {
    i64 q;
    std::vector<std::vector<int>> biadjacency;  // [b*q+c][alpha*q+gamma]
    SymMatrix normalized_adjacency;
};

inline LinkGraph link_graph(i64 q) {
    if (!is_prime(q)) throw std::invalid_argument("link_graph: q must be prime");
    LinkGraph L;
    L.q = q;
    const size_t m = static_cast<size_t>(q) * q;
    L.biadjacency.assign(m, std::vector<int>(m, 0));
    for (i64 b = 0; b < q; ++b)
        for (i64 c = 0; c < q; ++c)
            for (i64 alpha = 0; alpha < q; ++alpha) {
                const i64 gamma = ((c - alpha * b) % q + q) % q;
                L.biadjacency[b * q + c][alpha * q + gamma] = 1;
            }
    L.normalized_adjacency = SymMatrix(2 * m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            if (L.biadjacency[i][j]) {
                L.normalized_adjacency.at(i, m + j) = 1.0 / q;
                L.normalized_adjacency.at(m + j, i) = 1.0 / q;
            }
    return L;
}

}  // namespace hdx
