#pragma once

#include <memory>

#include "hdx/complex.hpp"
#include "hdx/embedding.hpp"
#include "hdx/local_decoder.hpp"
#include "hdx/rng.hpp"

namespace hdx {

// The Tanner-form global code on X(2): a word is a member iff its restriction
// to every edge star, read in coset-parameter order, is an RS(q, d_type)
// codeword. Parity data is stored once per edge type as a pattern on the
// alpha axis; an edge's rows are the pattern mapped through its star.
struct GlobalCodeSpec {
    std::shared_ptr<const ComplexInstance> X;
    std::array<i64, 3> degrees{};
    std::array<ExactMatrix, 3> dense_pattern;                 // (q-d-1) x q monomial rows
    std::array<std::vector<std::vector<u32>>, 3> sparse_pattern;  // weight-(d+2) windows, spanning
    std::array<size_t, 3> edge_count_by_type{};
    size_t dense_rows = 0;

    bool dim_cached = false;
    size_t dim = 0;
    std::vector<std::vector<u8>> generators;

    i64 q() const { return X->ctx.q; }
};

inline GlobalCodeSpec assemble_code(std::shared_ptr<const ComplexInstance> X, i64 d1, i64 d2, i64 d3) {
    GlobalCodeSpec code;
    code.X = std::move(X);
    code.degrees = {d1, d2, d3};
    const i64 q = code.q();
    for (int k = 0; k < 3; ++k) {
        const i64 d = code.degrees[k];
        if (d < 0 || d >= q) throw std::invalid_argument("assemble_code: degree out of range [0, q-1]");
        code.dense_pattern[k] = rs_parity_rows(q, d);

        // Sparse LDPC view: cyclic windows {s, ..., s+d+1} until they span
        // the dense row space. Spanning is verified, not assumed.
        const size_t need = static_cast<size_t>(q - d - 1);
        std::vector<std::vector<u32>>& rows = code.sparse_pattern[k];
        for (i64 s = 0; s < q && rows.size() < need; ++s) {
            std::vector<i64> support;
            for (i64 t = 0; t <= d + 1; ++t) support.push_back((s + t) % q);
            rows.push_back(rs_sparse_check(q, d, support));
        }
        if (!rows.empty()) {
            // equal row spaces: rank(sparse) = rank(dense) = rank(union)
            ExactMatrix combined(rows.size() + code.dense_pattern[k].rows, q);
            for (size_t r = 0; r < rows.size(); ++r)
                for (i64 a = 0; a < q; ++a) combined.at(r, a) = rows[r][a];
            for (size_t r = 0; r < code.dense_pattern[k].rows; ++r)
                for (i64 a = 0; a < q; ++a) combined.at(rows.size() + r, a) = code.dense_pattern[k].at(r, a);
            ExactMatrix sparse_only(rows.size(), q);
            for (size_t r = 0; r < rows.size(); ++r)
                for (i64 a = 0; a < q; ++a) sparse_only.at(r, a) = rows[r][a];
            if (gf_rank(sparse_only, q) != need || gf_rank(combined, q) != need)
                throw std::logic_error("assemble_code: sparse checks fail to span the dense rows");
        }
    }
    for (const auto& e : code.X->edges) ++code.edge_count_by_type[e.type - 1];
    for (int k = 0; k < 3; ++k) code.dense_rows += code.edge_count_by_type[k] * code.dense_pattern[k].rows;
    return code;
}

struct MembershipResult {
    bool member = true;
    std::vector<u32> failing_edges;
};

inline MembershipResult membership(const std::vector<u8>& w, const GlobalCodeSpec& code) {
    const auto& X = *code.X;
    if (w.size() != X.triangles.size()) throw std::invalid_argument("membership: word length mismatch");
    const i64 q = code.q();
    MembershipResult res;
    std::vector<u32> vals(q);
    for (u32 eid = 0; eid < X.edges.size(); ++eid) {
        const auto& e = X.edges[eid];
        for (i64 a = 0; a < q; ++a) vals[a] = w[e.star[a]];
        const auto& pat = code.dense_pattern[e.type - 1];
        for (size_t r = 0; r < pat.rows; ++r) {
            i64 acc = 0;
            for (i64 a = 0; a < q; ++a) acc += i64(pat.at(r, a)) * vals[a];
            if (acc % q) {
                res.member = false;
                res.failing_edges.push_back(eid);
                break;
            }
        }
    }
    return res;
}

// Same predicate through the embedded affine lines: interpolate the word
// along each line's parameterization and check the degree bound.
inline MembershipResult membership_by_lines(const std::vector<u8>& w, const GlobalCodeSpec& code) {
    const auto& X = *code.X;
    const i64 q = code.q();
    MembershipResult res;
    std::vector<u32> vals(q);
    for (u32 eid = 0; eid < X.edges.size(); ++eid) {
        const auto L = line_of_edge(X, eid);
        for (i64 a = 0; a < q; ++a) vals[a] = w[L.alpha_to_triangle[a]];
        if (poly_degree(poly_interpolate(vals, q)) > code.degrees[L.type - 1]) {
            res.member = false;
            res.failing_edges.push_back(eid);
        }
    }
    return res;
}

struct DimensionResult {
    bool exact = false;
    size_t value = 0;  // dimension, or the constraint-count lower bound
};

// Exact dimension |X(2)| - rank(dense rows) by full elimination when the
// column count fits the budget; otherwise the counting bound with a flag.
// Exact mode caches the generator basis (the nullspace) on the spec.
inline DimensionResult dimension(GlobalCodeSpec& code, size_t col_budget = 8000) {
    const auto& X = *code.X;
    const size_t N = X.triangles.size();
    if (code.dim_cached) return {true, code.dim};
    if (N > col_budget)
        return {false, N - code.dense_rows};

    const i64 q = code.q();
    ExactMatrix M(code.dense_rows, N);
    size_t r = 0;
    for (const auto& e : X.edges) {
        const auto& pat = code.dense_pattern[e.type - 1];
        for (size_t pr = 0; pr < pat.rows; ++pr, ++r)
            for (i64 a = 0; a < q; ++a) M.at(r, e.star[a]) = pat.at(pr, a);
    }
    auto ns = rank_nullspace(M, q);
    code.dim = ns.nullspace.size();
    if (code.dim + ns.rank != N) throw std::logic_error("dimension: rank accounting failed");
    code.generators.clear();
    code.generators.reserve(code.dim);
    for (const auto& v : ns.nullspace) code.generators.emplace_back(v.begin(), v.end());
    code.dim_cached = true;
    return {true, code.dim};
}

// (translate w)[t] = w[g * t].
inline std::vector<u8> translate(const std::vector<u8>& w, const GroupElem& g, const ComplexInstance& X) {
    std::vector<u8> out(w.size());
    for (size_t t = 0; t < X.triangles.size(); ++t) out[t] = w[X.id_of(mat_mul(X.ctx, g, X.triangles[t]))];
    return out;
}

inline std::vector<u8> multiply(const std::vector<u8>& w1, const std::vector<u8>& w2, i64 q) {
    if (w1.size() != w2.size()) throw std::invalid_argument("multiply: length mismatch");
    std::vector<u8> out(w1.size());
    for (size_t i = 0; i < w1.size(); ++i) out[i] = static_cast<u8>(w1[i] * w2[i] % q);
    return out;
}

// Deterministic seeded corruption: `count` distinct triangles, each forced to
// a different symbol.
inline std::vector<u8> corrupt(const std::vector<u8>& w, size_t count, u64 seed, i64 q) {
    if (count > w.size()) throw std::invalid_argument("corrupt: count exceeds word length");
    std::vector<u8> out = w;
    CounterRng rng(seed, "corrupt");
    for (u64 pos : rng.distinct(w.size(), count))
        out[pos] = static_cast<u8>((out[pos] + 1 + rng.below(q - 1)) % q);
    return out;
}

// Chart of a vertex star: the bijection F_q^3 <-> star(v) through the K_i
// parameterization, oriented so that the pulled-back local code is exactly
// C_{dx,dy} with (dx,dy) = (d2,d3), (d3,d1), (d1,d2) for types 1, 2, 3.
struct VertexChart {
    u32 vid = 0;
    int type = 0;
    i64 dx = 0, dy = 0;
    std::vector<u32> grid_to_triangle;  // p^3 entries
    std::vector<u32> star_to_grid;      // star position -> grid index

    std::vector<u8> pull(const std::vector<u8>& star_word) const {
        std::vector<u8> grid(star_word.size());
        for (size_t pos = 0; pos < star_word.size(); ++pos) grid[star_to_grid[pos]] = star_word[pos];
        return grid;
    }
    std::vector<u8> push(const std::vector<u8>& grid_word) const {
        std::vector<u8> star(grid_word.size());
        for (size_t pos = 0; pos < grid_word.size(); ++pos) star[pos] = grid_word[star_to_grid[pos]];
        return star;
    }
};

inline VertexChart vertex_chart(const ComplexInstance& X, u32 vid, const std::array<i64, 3>& degrees) {
    const auto& ctx = X.ctx;
    const i64 q = ctx.q;
    const auto& v = X.vertices[vid];
    VertexChart ch;
    ch.vid = vid;
    ch.type = v.type;
    switch (v.type) {
        case 1: ch.dx = degrees[1], ch.dy = degrees[2]; break;
        case 2: ch.dx = degrees[2], ch.dy = degrees[0]; break;
        case 3: ch.dx = degrees[0], ch.dy = degrees[1]; break;
    }
    const GroupElem& rep = X.triangles[v.rep];
    ch.grid_to_triangle.assign(static_cast<size_t>(q) * q * q, 0);
    ch.star_to_grid.assign(static_cast<size_t>(q) * q * q, UINT32_MAX);
    for (i64 x = 0; x < q; ++x)
        for (i64 y = 0; y < q; ++y)
            for (i64 z = 0; z < q; ++z) {
                // the type-3 parameterization has its row direction on the
                // second coordinate, so the chart swaps the roles
                const GroupElem m = v.type == 3 ? k_elem(ctx, 3, y, x, z) : k_elem(ctx, v.type, x, y, z);
                const u32 t = X.id_of(mat_mul(ctx, rep, m));
                const size_t g = grid_index(x, y, z, q);
                ch.grid_to_triangle[g] = t;
                const u32 pos = X.pos_in_vstar[t][v.type - 1];
                if (ch.star_to_grid[pos] != UINT32_MAX) throw std::logic_error("vertex_chart: chart is not a bijection");
                ch.star_to_grid[pos] = static_cast<u32>(g);
            }
    return ch;
}

inline std::vector<u8> star_restriction(const std::vector<u8>& w, const ComplexInstance& X, u32 vid) {
    const auto& star = X.vertices[vid].star;
    std::vector<u8> out(star.size());
    for (size_t i = 0; i < star.size(); ++i) out[i] = w[star[i]];
    return out;
}

inline bool vertex_membership(const std::vector<u8>& star_word, const VertexChart& ch, i64 q) {
    return local_membership(ch.pull(star_word), q, ch.dx, ch.dy);
}

struct VertexTesterResult {
    double p_hat = 0.0;
    std::vector<u32> failing_vertices;
};

// The canonical vertex tester: the fraction of vertices whose star
// restriction leaves the local code.
inline VertexTesterResult vertex_tester(const std::vector<u8>& w, const GlobalCodeSpec& code) {
    const auto& X = *code.X;
    VertexTesterResult res;
    for (u32 v = 0; v < X.vertices.size(); ++v) {
        const auto ch = vertex_chart(X, v, code.degrees);
        if (!vertex_membership(star_restriction(w, X, v), ch, code.q())) res.failing_vertices.push_back(v);
    }
    res.p_hat = double(res.failing_vertices.size()) / double(X.vertices.size());
    return res;
}

// Per-vertex local views: either a star-ordered member of C_v or the zero
// codeword standing in for "no view".
struct LocalViewEnsemble {
    std::vector<std::vector<u8>> z;  // star-position indexed
    std::vector<u8> bottom;          // 1 where the view is the bottom marker
};

enum class ViewMode { restrict_or_bottom, brute_nearest };

inline LocalViewEnsemble views_from_word(const std::vector<u8>& w, const GlobalCodeSpec& code, ViewMode mode,
                                         u64 enum_budget = 2000000) {
    const auto& X = *code.X;
    const i64 q = code.q();
    LocalViewEnsemble ens;
    ens.z.resize(X.vertices.size());
    ens.bottom.assign(X.vertices.size(), 0);
    for (u32 v = 0; v < X.vertices.size(); ++v) {
        const auto ch = vertex_chart(X, v, code.degrees);
        auto star = star_restriction(w, X, v);
        const bool member = vertex_membership(star, ch, q);
        if (mode == ViewMode::restrict_or_bottom) {
            if (member) {
                ens.z[v] = std::move(star);
            } else {
                ens.z[v].assign(star.size(), 0);
                ens.bottom[v] = 1;
            }
        } else {
            if (member) {
                ens.z[v] = std::move(star);
            } else {
                const auto spec = shared_local_code(q, ch.dx, ch.dy);
                auto nearest = brute_nearest(ch.pull(star), *spec, enum_budget);
                ens.z[v] = ch.push(nearest.word);
            }
        }
        if (!ens.bottom[v] && !vertex_membership(ens.z[v], ch, q))
            throw std::logic_error("views_from_word: produced view is not a local codeword");
    }
    return ens;
}

// alpha(z): the fraction of edges whose two endpoint views disagree somewhere
// on the edge star.
inline double views_alpha(const LocalViewEnsemble& ens, const ComplexInstance& X) {
    size_t bad = 0;
    for (const auto& e : X.edges) {
        bool agree = true;
        for (u32 t : e.star) {
            const u32 u = e.ends[0], v = e.ends[1];
            if (ens.z[u][X.pos_in_vstar[t][X.vertices[u].type - 1]] !=
                ens.z[v][X.pos_in_vstar[t][X.vertices[v].type - 1]])
                agree = false;
        }
        bad += !agree;
    }
    return double(bad) / double(X.edges.size());
}

struct CorrectionTrace {
    struct Step {
        u32 vertex;
        size_t old_count, new_count;  // global disagreeing-edge count
    };
    std::vector<Step> steps;
    double initial_alpha = 0.0, final_alpha = 0.0;
    size_t initial_disagreeing_edges = 0;
    size_t sweeps = 0;
    bool reached_codeword = false;
};

struct CorrectionResult {
    LocalViewEnsemble ensemble;
    std::vector<u8> codeword;  // empty unless reached_codeword
    CorrectionTrace trace;
};

// Greedy local correction: sweep vertices in id order; replace z_v by the
// C_v member minimizing the number of disagreeing incident edges (strict
// improvement only, ties to the lexicographically smallest coefficient
// vector); stop when a full sweep changes nothing.
inline CorrectionResult local_correction(const LocalViewEnsemble& views, const GlobalCodeSpec& code,
                                         u64 enum_budget = 2000000) {
    const auto& X = *code.X;
    const i64 q = code.q();
    CorrectionResult res;
    res.ensemble = views;
    auto& z = res.ensemble.z;

    std::vector<VertexChart> charts;
    charts.reserve(X.vertices.size());
    for (u32 v = 0; v < X.vertices.size(); ++v) charts.push_back(vertex_chart(X, v, code.degrees));

    auto edge_disagrees = [&](u32 eid) {
        const auto& e = X.edges[eid];
        for (u32 t : e.star) {
            const u32 u = e.ends[0], v = e.ends[1];
            if (z[u][X.pos_in_vstar[t][X.vertices[u].type - 1]] != z[v][X.pos_in_vstar[t][X.vertices[v].type - 1]])
                return true;
        }
        return false;
    };

    size_t global_bad = 0;
    for (u32 e = 0; e < X.edges.size(); ++e) global_bad += edge_disagrees(e);
    res.trace.initial_disagreeing_edges = global_bad;
    res.trace.initial_alpha = double(global_bad) / double(X.edges.size());

    bool changed = true;
    while (changed) {
        changed = false;
        ++res.trace.sweeps;
        for (u32 v = 0; v < X.vertices.size(); ++v) {
            const auto& ch = charts[v];
            const auto spec = shared_local_code(q, ch.dx, ch.dy);

            // incident-edge comparison targets in grid coordinates
            const auto& ve = X.vertices[v].edges;
            std::vector<std::vector<std::pair<u32, u8>>> targets(ve.size());  // (grid idx, neighbor value)
            for (size_t i = 0; i < ve.size(); ++i) {
                const auto& e = X.edges[ve[i]];
                const u32 u = e.ends[0] == v ? e.ends[1] : e.ends[0];
                for (u32 t : e.star)
                    targets[i].push_back({ch.star_to_grid[X.pos_in_vstar[t][ch.type - 1]],
                                          z[u][X.pos_in_vstar[t][X.vertices[u].type - 1]]});
            }
            auto count_bad = [&](const std::vector<u8>& grid) {
                size_t bad = 0;
                for (const auto& tg : targets) {
                    for (const auto& [g, val] : tg)
                        if (grid[g] != val) {
                            ++bad;
                            break;
                        }
                }
                return bad;
            };

            const auto cur_grid = ch.pull(z[v]);
            const size_t cur_bad = count_bad(cur_grid);
            if (cur_bad == 0) continue;

            u64 total = 1;
            for (size_t b = 0; b < spec->dim; ++b) {
                if (total > enum_budget / static_cast<u64>(q))
                    throw BudgetError("local_correction: per-vertex enumeration too large", enum_budget + 1,
                                      enum_budget);
                total *= static_cast<u64>(q);
            }
            std::vector<u8> cand(cur_grid.size(), 0);
            std::vector<u32> digits(spec->dim, 0);
            size_t best_bad = count_bad(cand);
            std::vector<u8> best = cand;
            for (u64 step = 1; step < total && best_bad > 0; ++step) {
                size_t d = spec->dim;
                while (d-- > 0) {
                    const auto& bv = spec->basis_eval[d];
                    for (size_t i = 0; i < cand.size(); ++i) {
                        const u8 s = cand[i] + bv[i];
                        cand[i] = s >= q ? static_cast<u8>(s - q) : s;
                    }
                    if (digits[d] + 1 < u32(q)) {
                        ++digits[d];
                        break;
                    }
                    digits[d] = 0;
                }
                const size_t bad = count_bad(cand);
                if (bad < best_bad) {
                    best_bad = bad;
                    best = cand;
                }
            }
            if (best_bad < cur_bad) {
                z[v] = ch.push(best);
                const size_t new_global = global_bad - (cur_bad - best_bad);
                res.trace.steps.push_back({v, global_bad, new_global});
                global_bad = new_global;
                changed = true;
            }
        }
    }

    res.trace.final_alpha = double(global_bad) / double(X.edges.size());
    if (global_bad == 0) {
        res.codeword.assign(X.triangles.size(), 0);
        for (u32 t = 0; t < X.triangles.size(); ++t) {
            const u32 v = *std::min_element(X.tri_vertex[t].begin(), X.tri_vertex[t].end());
            res.codeword[t] = z[v][X.pos_in_vstar[t][X.vertices[v].type - 1]];
        }
        if (!membership(res.codeword, code).member)
            throw std::logic_error("local_correction: extracted word is not a codeword");
        res.trace.reached_codeword = true;
    }
    return res;
}

struct MinWeightResult {
    bool exact = false;
    u64 weight = 0;
    std::string method;
    double distance_bound = 0.0;
    bool bound_vacuous = false;
};

// Minimum-weight probe over the generator basis: exhaustive when q^dim fits
// the budget, otherwise sampled. The expansion distance bound
// (delta-2*gamma)(delta-gamma)*delta is evaluated with measured gamma.
inline MinWeightResult min_weight_probe(const GlobalCodeSpec& code, u64 sample_budget, double gamma,
                                        u64 exact_budget = 10000000) {
    if (!code.dim_cached) throw std::invalid_argument("min_weight_probe: dimension/generators not computed");
    const i64 q = code.q();
    const size_t N = code.generators.empty() ? 0 : code.generators[0].size();
    MinWeightResult res;

    double delta = 1.0;
    for (i64 d : code.degrees) delta = std::min(delta, double(q - d) / double(q));
    res.distance_bound = (delta - 2 * gamma) * (delta - gamma) * delta;
    // the expansion argument needs delta > 2*gamma; a sign flip in both
    // factors can make the product spuriously positive
    res.bound_vacuous = res.distance_bound <= 0.0 || delta - 2 * gamma <= 0.0;

    if (code.dim == 0) {
        res.exact = true;
        res.method = "trivial";
        res.weight = 0;
        return res;
    }
    auto weight_of = [&](const std::vector<u8>& w) {
        u64 cnt = 0;
        for (u8 v : w) cnt += v != 0;
        return cnt;
    };

    u64 total = 1;
    bool fits = true;
    for (size_t b = 0; b < code.dim && fits; ++b) {
        if (total > exact_budget / static_cast<u64>(q)) fits = false;
        total *= static_cast<u64>(q);
    }
    if (fits && total <= exact_budget) {
        res.exact = true;
        res.method = "exhaustive";
        std::vector<u8> cur(N, 0);
        std::vector<u32> digits(code.dim, 0);
        u64 best = N + 1;
        for (u64 step = 1; step < total; ++step) {
            size_t d = code.dim;
            while (d-- > 0) {
                const auto& bv = code.generators[d];
                for (size_t i = 0; i < N; ++i) {
                    const u8 s = cur[i] + bv[i];
                    cur[i] = s >= q ? static_cast<u8>(s - q) : s;
                }
                if (digits[d] + 1 < u32(q)) {
                    ++digits[d];
                    break;
                }
                digits[d] = 0;
            }
            best = std::min(best, weight_of(cur));
        }
        res.weight = best;
        return res;
    }

    res.exact = false;
    res.method = "sampled";
    CounterRng rng(0xd157ULL, "minweight");
    u64 best = N + 1;
    for (const auto& g : code.generators) best = std::min(best, weight_of(g));
    for (u64 trial = 0; trial < sample_budget; ++trial) {
        std::vector<u8> w(N, 0);
        bool nonzero = false;
        for (size_t b = 0; b < code.dim; ++b) {
            const u32 c = static_cast<u32>(rng.field_element(q));
            if (!c) continue;
            nonzero = true;
            const auto& bv = code.generators[b];
            for (size_t i = 0; i < N; ++i) w[i] = static_cast<u8>((w[i] + c * bv[i]) % q);
        }
        if (!nonzero) continue;
        if (!membership(w, code).member) throw std::logic_error("min_weight_probe: sampled witness not a member");
        best = std::min(best, weight_of(w));
    }
    res.weight = best;
    return res;
}

// Local-views word for the two-query tester: each vertex carries the
// coefficient vector of its local view (the alphabet injection), or a bottom
// symbol when the restriction is not a local codeword.
struct TwoQueryViews {
    std::vector<std::vector<u32>> symbols;  // empty vector = bottom
    std::vector<u8> edge_accepts;
    double rejection_fraction = 0.0;
};

inline TwoQueryViews two_query_views(const std::vector<u8>& w, const GlobalCodeSpec& code) {
    const auto& X = *code.X;
    const i64 q = code.q();
    TwoQueryViews res;
    res.symbols.resize(X.vertices.size());
    std::vector<std::vector<u8>> star_words(X.vertices.size());
    std::vector<u8> bottom(X.vertices.size(), 0);
    for (u32 v = 0; v < X.vertices.size(); ++v) {
        const auto ch = vertex_chart(X, v, code.degrees);
        auto star = star_restriction(w, X, v);
        const auto grid = ch.pull(star);
        if (!local_membership(grid, q, ch.dx, ch.dy)) {
            bottom[v] = 1;
            continue;
        }
        const auto spec = shared_local_code(q, ch.dx, ch.dy);
        ExactMatrix M(grid.size(), spec->dim);
        std::vector<u32> rhs(grid.begin(), grid.end());
        for (size_t r = 0; r < grid.size(); ++r)
            for (size_t b = 0; b < spec->dim; ++b) M.at(r, b) = spec->basis_eval[b][r];
        auto sol = rank_nullspace(M, q, &rhs, false);
        if (!sol.has_solution) throw std::logic_error("two_query_views: member has no basis coordinates");
        res.symbols[v] = std::move(sol.solution);
        star_words[v] = std::move(star);
    }

    size_t rejects = 0;
    res.edge_accepts.assign(X.edges.size(), 0);
    for (u32 eid = 0; eid < X.edges.size(); ++eid) {
        const auto& e = X.edges[eid];
        const u32 u = e.ends[0], v = e.ends[1];
        bool accept = !bottom[u] && !bottom[v];
        if (accept)
            for (u32 t : e.star)
                if (star_words[u][X.pos_in_vstar[t][X.vertices[u].type - 1]] !=
                    star_words[v][X.pos_in_vstar[t][X.vertices[v].type - 1]])
                    accept = false;
        res.edge_accepts[eid] = accept;
        rejects += !accept;
    }
    res.rejection_fraction = double(rejects) / double(X.edges.size());
    return res;
}

// Random member from the cached generator basis.
inline std::vector<u8> random_member(const GlobalCodeSpec& code, CounterRng& rng) {
    if (!code.dim_cached) throw std::invalid_argument("random_member: generators not computed");
    const i64 q = code.q();
    std::vector<u8> w(code.X->triangles.size(), 0);
    for (const auto& g : code.generators) {
        const u32 c = static_cast<u32>(rng.field_element(q));
        if (!c) continue;
        for (size_t i = 0; i < w.size(); ++i) w[i] = static_cast<u8>((w[i] + c * g[i]) % q);
    }
    return w;
}

}  // namespace hdx
