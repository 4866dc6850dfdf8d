#pragma once

#include "hdx/complex.hpp"
#include "hdx/rng.hpp"

namespace hdx {

// Row-compressed sparse matrix with double entries.
struct SparseMat {
    size_t rows = 0, cols = 0;
    std::vector<size_t> row_ptr;
    std::vector<u32> col;
    std::vector<double> val;

    static SparseMat from_rows(size_t rows, size_t cols, std::vector<std::vector<std::pair<u32, double>>>&& acc) {
        SparseMat m;
        m.rows = rows;
        m.cols = cols;
        m.row_ptr.assign(rows + 1, 0);
        for (size_t i = 0; i < rows; ++i) {
            auto& r = acc[i];
            std::sort(r.begin(), r.end());
            size_t w = 0;
            for (size_t k = 0; k < r.size(); ++k) {
                if (w && r[w - 1].first == r[k].first)
                    r[w - 1].second += r[k].second;
                else
                    r[w++] = r[k];
            }
            r.resize(w);
            m.row_ptr[i + 1] = m.row_ptr[i] + w;
        }
        m.col.reserve(m.row_ptr[rows]);
        m.val.reserve(m.row_ptr[rows]);
        for (size_t i = 0; i < rows; ++i)
            for (auto& [c, v] : acc[i]) {
                m.col.push_back(c);
                m.val.push_back(v);
            }
        return m;
    }

    double row_sum(size_t i) const {
        double s = 0;
        for (size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k];
        return s;
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        std::vector<double> y(rows, 0.0);
        for (size_t i = 0; i < rows; ++i)
            for (size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) y[i] += val[k] * x[col[k]];
        return y;
    }

    SparseMat transpose() const {
        std::vector<std::vector<std::pair<u32, double>>> acc(cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) acc[col[k]].push_back({static_cast<u32>(i), val[k]});
        return from_rows(cols, rows, std::move(acc));
    }

    SymMatrix to_dense_symmetrized() const {
        SymMatrix A(rows);
        for (size_t i = 0; i < rows; ++i)
            for (size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
                A.at(i, col[k]) += 0.5 * val[k];
                A.at(col[k], i) += 0.5 * val[k];
            }
        return A;
    }
};

// Edge-to-edge walk transition matrices, built from exact transition counts:
//   lower (UD):      e -> v in e -> e' containing v
//   lazy upper (DU): e -> t containing e -> e' in t
//   upper (M+):      e -> t containing e -> e' in t, e' != e
//   swap (S01 D):    e -> t containing e -> v = t \ e -> e' containing v
struct WalkMatrices {
    SparseMat lower, lazy_upper, upper, swap_comp;
    double max_row_sum_error = 0.0;
    double residual_lazy_identity = 0.0;  // DU vs 2/3 M+ + 1/3 I
    double residual_swap_identity = 0.0;  // M+ UD vs 1/2 S01D + 1/2 UD
    bool sampled = false;                 // residuals from sampled rows only
    size_t sampled_rows = 0;
};

namespace detail {

inline void add_scaled_row(std::vector<double>& dense, std::vector<u32>& touched, const SparseMat& m, size_t row,
                           double f) {
    for (size_t k = m.row_ptr[row]; k < m.row_ptr[row + 1]; ++k) {
        if (dense[m.col[k]] == 0.0) touched.push_back(m.col[k]);
        dense[m.col[k]] += f * m.val[k];
    }
}

}  // namespace detail

inline WalkMatrices walk_matrices(const ComplexInstance& X, size_t dense_budget = 20000, size_t sample_rows = 10000) {
    const size_t E = X.edges.size();
    WalkMatrices W;

    std::vector<std::vector<std::pair<u32, double>>> acc(E);
    for (size_t e = 0; e < E; ++e)
        for (u32 vid : {X.edges[e].ends[0], X.edges[e].ends[1]}) {
            const auto& ve = X.vertices[vid].edges;
            const double f = 0.5 / double(ve.size());
            for (u32 e2 : ve) acc[e].push_back({e2, f});
        }
    W.lower = SparseMat::from_rows(E, E, std::move(acc));

    acc.assign(E, {});
    const double q = double(X.ctx.q);
    for (size_t e = 0; e < E; ++e)
        for (u32 t : X.edges[e].star)
            for (int k = 0; k < 3; ++k) acc[e].push_back({X.tri_edge[t][k], 1.0 / (3.0 * q)});
    W.lazy_upper = SparseMat::from_rows(E, E, std::move(acc));

    acc.assign(E, {});
    for (size_t e = 0; e < E; ++e)
        for (u32 t : X.edges[e].star)
            for (int k = 0; k < 3; ++k)
                if (X.tri_edge[t][k] != e) acc[e].push_back({X.tri_edge[t][k], 1.0 / (2.0 * q)});
    W.upper = SparseMat::from_rows(E, E, std::move(acc));

    acc.assign(E, {});
    for (size_t e = 0; e < E; ++e)
        for (u32 t : X.edges[e].star) {
            u32 apex = UINT32_MAX;
            for (int i = 0; i < 3; ++i) {
                const u32 v = X.tri_vertex[t][i];
                if (v != X.edges[e].ends[0] && v != X.edges[e].ends[1]) apex = v;
            }
            const auto& ve = X.vertices[apex].edges;
            const double f = 1.0 / (q * double(ve.size()));
            for (u32 e2 : ve) acc[e].push_back({e2, f});
        }
    W.swap_comp = SparseMat::from_rows(E, E, std::move(acc));

    for (const SparseMat* m : {&W.lower, &W.lazy_upper, &W.upper, &W.swap_comp})
        for (size_t i = 0; i < E; ++i)
            W.max_row_sum_error = std::max(W.max_row_sum_error, std::abs(m->row_sum(i) - 1.0));

    // Identity residuals, row by row. Above the dense budget, check a sample
    // of rows (a row check is the identity applied to a basis vector from the
    // left).
    std::vector<size_t> rows_to_check;
    if (E <= dense_budget) {
        rows_to_check.resize(E);
        for (size_t i = 0; i < E; ++i) rows_to_check[i] = i;
    } else {
        W.sampled = true;
        CounterRng rng(0x5eedULL, "walk-identities");
        for (size_t s = 0; s < sample_rows; ++s) rows_to_check.push_back(rng.below(E));
        W.sampled_rows = rows_to_check.size();
    }

    std::vector<double> scratch(E, 0.0), scratch2(E, 0.0);
    std::vector<u32> touched, touched2;
    for (size_t e : rows_to_check) {
        // DU - 2/3 M+ - 1/3 I
        touched.clear();
        detail::add_scaled_row(scratch, touched, W.lazy_upper, e, 1.0);
        detail::add_scaled_row(scratch, touched, W.upper, e, -2.0 / 3.0);
        if (scratch[e] == 0.0) touched.push_back(static_cast<u32>(e));
        scratch[e] -= 1.0 / 3.0;
        for (u32 j : touched) {
            W.residual_lazy_identity = std::max(W.residual_lazy_identity, std::abs(scratch[j]));
            scratch[j] = 0.0;
        }

        // M+ UD - 1/2 S01D - 1/2 UD
        touched.clear();
        for (size_t k = W.upper.row_ptr[e]; k < W.upper.row_ptr[e + 1]; ++k)
            detail::add_scaled_row(scratch, touched, W.lower, W.upper.col[k], W.upper.val[k]);
        touched2.clear();
        detail::add_scaled_row(scratch2, touched2, W.swap_comp, e, 0.5);
        detail::add_scaled_row(scratch2, touched2, W.lower, e, 0.5);
        for (u32 j : touched2) {
            if (scratch[j] == 0.0) touched.push_back(j);
            scratch[j] -= scratch2[j];
            scratch2[j] = 0.0;
        }
        for (u32 j : touched) {
            W.residual_swap_identity = std::max(W.residual_swap_identity, std::abs(scratch[j]));
            scratch[j] = 0.0;
        }
    }
    return W;
}

// lambda2 (by value) of the symmetrized operator (M + M^T)/2, for stochastic
// walks whose stationary distribution is uniform: the all-ones vector is the
// top eigenvector and gets deflated.
inline double sparse_lambda2(const SparseMat& M, double tol = 1e-10, size_t max_iter = 100000) {
    const SparseMat Mt = M.transpose();
    const size_t n = M.rows;
    std::vector<double> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = 0.5 + std::cos(double(3 * i + 1));
    auto deflate = [&](std::vector<double>& x) {
        double mean = 0;
        for (double e : x) mean += e;
        mean /= double(n);
        for (double& e : x) e -= mean;
    };
    auto normalize = [&](std::vector<double>& x) {
        double s = 0;
        for (double e : x) s += e * e;
        s = std::sqrt(s);
        if (s > 0)
            for (double& e : x) e /= s;
        return s;
    };
    deflate(v);
    normalize(v);
    double mu = 0.0;
    for (size_t it = 0; it < max_iter; ++it) {
        auto a = M.apply(v);
        auto b = Mt.apply(v);
        std::vector<double> w(n);
        // shift by +1 so the dominant eigenvalue of the shifted operator is
        // the largest by value
        for (size_t i = 0; i < n; ++i) w[i] = 0.5 * (a[i] + b[i]) + v[i];
        deflate(w);
        if (normalize(w) == 0.0) break;
        double mu_new = 0.0;
        auto aw = M.apply(w);
        auto bw = Mt.apply(w);
        for (size_t i = 0; i < n; ++i) mu_new += w[i] * (0.5 * (aw[i] + bw[i]));
        v = std::move(w);
        if (std::abs(mu_new - mu) < tol) return mu_new;
        mu = mu_new;
    }
    return mu;
}

struct SpectralReport {
    std::vector<double> link_lambda2;
    double link_lambda2_max_dev = 0.0;  // max |lambda2 - 1/sqrt(q)| over links
    bool links_regular_bipartite_connected = false;
    double gamma = 0.0;  // max measured link lambda2
    double skeleton_lambda2 = 0.0;
    double swap_lambda2 = 0.0;
    double three_gamma = 0.0;
    bool three_gamma_vacuous = false;
};

inline SpectralReport spectral_report(const ComplexInstance& X, const WalkMatrices& W) {
    SpectralReport R;
    const i64 q = X.ctx.q;
    const double target = 1.0 / std::sqrt(double(q));
    bool links_ok = true;
    for (u32 v = 0; v < X.vertices.size(); ++v) {
        auto [A, nodes] = X.link_adjacency(v);
        // q-regular, bipartite across the two other types, connected
        for (size_t i = 0; i < A.n; ++i) {
            size_t deg = 0;
            for (size_t j = 0; j < A.n; ++j) {
                if (A.at(i, j) == 0.0) continue;
                ++deg;
                if (X.vertices[nodes[i]].type == X.vertices[nodes[j]].type) links_ok = false;
            }
            if (deg != size_t(q)) links_ok = false;
        }
        std::vector<int> seen(A.n, 0);
        std::vector<size_t> stack{0};
        seen[0] = 1;
        size_t cnt = 1;
        while (!stack.empty()) {
            size_t i = stack.back();
            stack.pop_back();
            for (size_t j = 0; j < A.n; ++j)
                if (A.at(i, j) != 0.0 && !seen[j]) {
                    seen[j] = 1;
                    ++cnt;
                    stack.push_back(j);
                }
        }
        if (cnt != A.n) links_ok = false;

        const auto s = second_eigenvalue(A);
        R.link_lambda2.push_back(s.lambda2);
        R.link_lambda2_max_dev = std::max(R.link_lambda2_max_dev, std::abs(s.lambda2 - target));
        R.gamma = std::max(R.gamma, s.lambda2);
    }
    R.links_regular_bipartite_connected = links_ok;

    if (X.vertices.size() <= 8192) {
        R.skeleton_lambda2 = second_eigenvalue(X.skeleton_adjacency()).lambda2;
    } else {
        // skeleton as a sparse walk
        std::vector<std::vector<std::pair<u32, double>>> acc(X.vertices.size());
        for (const auto& e : X.edges) {
            acc[e.ends[0]].push_back({e.ends[1], 1.0});
            acc[e.ends[1]].push_back({e.ends[0], 1.0});
        }
        for (u32 v = 0; v < X.vertices.size(); ++v)
            for (auto& [c, val] : acc[v]) val = 1.0 / double(X.vertices[v].edges.size());
        R.skeleton_lambda2 = sparse_lambda2(SparseMat::from_rows(X.vertices.size(), X.vertices.size(), std::move(acc)));
    }

    if (X.edges.size() <= 8192)
        R.swap_lambda2 = second_eigenvalue(W.swap_comp.to_dense_symmetrized()).lambda2;
    else
        R.swap_lambda2 = sparse_lambda2(W.swap_comp);

    R.three_gamma = 3.0 * R.gamma;
    R.three_gamma_vacuous = R.three_gamma >= 1.0;
    return R;
}

// Alon-Chung sampling: for random vertex subsets T of a d-regular graph with
// normalized adjacency A, check |T| >= (delta - gamma) |V| where delta is the
// induced average degree over d and gamma the measured lambda2.
inline bool alon_chung_sample(const SymMatrix& A, double degree, size_t trials, CounterRng& rng,
                              double* worst_margin = nullptr) {
    const double gamma = second_eigenvalue(A).lambda2;
    const size_t n = A.n;
    bool ok = true;
    double worst = 1e300;
    for (size_t trial = 0; trial < trials; ++trial) {
        std::vector<size_t> T;
        for (size_t i = 0; i < n; ++i)
            if (rng.below(2)) T.push_back(i);
        if (T.empty()) continue;
        double edges2 = 0;  // twice the induced edge count
        for (size_t a : T)
            for (size_t b : T) edges2 += A.at(a, b) * degree;
        const double delta = edges2 / double(T.size()) / degree;
        const double margin = double(T.size()) - (delta - gamma) * double(n);
        worst = std::min(worst, margin);
        if (margin < -1e-9) ok = false;
    }
    if (worst_margin) *worst_margin = worst;
    return ok;
}

// Quadratic-form check of the up-down inequality <g, M+ g> <= <g, (UD +
// gamma I) g> on random edge vectors.
inline bool updown_inequality_sample(const WalkMatrices& W, double gamma, size_t trials, CounterRng& rng,
                                     double tol = 1e-9) {
    const size_t E = W.lower.rows;
    for (size_t trial = 0; trial < trials; ++trial) {
        std::vector<double> g(E);
        for (auto& x : g) x = double(rng.below(2001)) / 1000.0 - 1.0;
        const auto mg = W.upper.apply(g);
        const auto lg = W.lower.apply(g);
        double lhs = 0, rhs = 0, norm = 0;
        for (size_t i = 0; i < E; ++i) {
            lhs += g[i] * mg[i];
            rhs += g[i] * lg[i];
            norm += g[i] * g[i];
        }
        if (lhs > rhs + gamma * norm + tol) return false;
    }
    return true;
}

}  // namespace hdx
