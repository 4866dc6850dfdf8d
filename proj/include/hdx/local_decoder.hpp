#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "hdx/local_code.hpp"

namespace hdx {

// Memoized build_local_code; decode loops hit the same (p, dx, dy) triples
// over and over.
inline std::shared_ptr<const LocalCodeSpec> shared_local_code(i64 p, i64 dx, i64 dy) {
    static std::map<std::tuple<i64, i64, i64>, std::shared_ptr<const LocalCodeSpec>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, dx, dy}];
    if (!slot) slot = std::make_shared<LocalCodeSpec>(build_local_code(p, dx, dy));
    return slot;
}

// One degree <= dx polynomial in x per row line (b, c), indexed b*p + c.
struct LineEnsemble {
    i64 p = 0, dx = 0;
    std::vector<std::vector<u32>> polys;

    u8 value(i64 x, i64 y, i64 z) const {
        const auto& c = polys[y * p + z];
        i64 acc = 0, xp = 1;
        for (u32 cc : c) {
            acc = (acc + i64(cc) * xp) % p;
            xp = xp * x % p;
        }
        return static_cast<u8>(acc);
    }
};

// One degree <= dy polynomial in y per skew line (a, c), indexed a*p + c.
struct SkewEnsemble {
    i64 p = 0, dy = 0;
    std::vector<std::vector<u32>> polys;

    u8 value(i64 x, i64 y, i64 z) const {
        const i64 c0 = ((z - x * y) % p + p) % p;
        const auto& c = polys[x * p + c0];
        i64 acc = 0, yp = 1;
        for (u32 cc : c) {
            acc = (acc + i64(cc) * yp) % p;
            yp = yp * y % p;
        }
        return static_cast<u8>(acc);
    }
};

struct DisagreementSet {
    std::vector<size_t> points;  // grid indices where X and Y differ
    double delta_cubed = 0.0;
};

inline void validate_ensembles(const LineEnsemble& X, const SkewEnsemble& Y) {
    if (X.p != Y.p) throw std::invalid_argument("line ensembles: mismatched p");
    if (X.polys.size() != static_cast<size_t>(X.p) * X.p || Y.polys.size() != static_cast<size_t>(Y.p) * Y.p)
        throw std::invalid_argument("line ensembles: need exactly p^2 polynomials");
    for (const auto& c : X.polys)
        if (static_cast<i64>(c.size()) > X.dx + 1) throw std::invalid_argument("line ensembles: row degree > dx");
    for (const auto& c : Y.polys)
        if (static_cast<i64>(c.size()) > Y.dy + 1) throw std::invalid_argument("line ensembles: skew degree > dy");
}

inline DisagreementSet disagreement_set(const LineEnsemble& X, const SkewEnsemble& Y) {
    validate_ensembles(X, Y);
    const i64 p = X.p;
    DisagreementSet S;
    for (i64 z = 0; z < p; ++z)
        for (i64 y = 0; y < p; ++y)
            for (i64 x = 0; x < p; ++x)
                if (X.value(x, y, z) != Y.value(x, y, z)) S.points.push_back(grid_index(x, y, z, p));
    S.delta_cubed = double(S.points.size()) / (double(p) * p * p);
    return S;
}

struct Locator {
    std::vector<u32> coeffs_in_basis;  // over the C_{e,e} basis
    std::vector<u8> evals;
};

// A nonzero member of C_{e,e} vanishing on the given points, or nullopt when
// the constraints force zero. Deterministic: the first canonical nullspace
// vector of the evaluation system.
inline std::optional<Locator> fit_error_locator(const LocalCodeSpec& cee, const std::vector<size_t>& S) {
    ExactMatrix M(S.size(), cee.dim);
    for (size_t r = 0; r < S.size(); ++r)
        for (size_t b = 0; b < cee.dim; ++b) M.at(r, b) = cee.basis_eval[b][S[r]];
    auto ns = rank_nullspace(M, cee.p);
    if (ns.nullspace.empty()) return std::nullopt;
    Locator loc;
    loc.coeffs_in_basis = ns.nullspace.front();
    loc.evals.assign(cee.basis_eval.empty() ? 0 : cee.basis_eval[0].size(), 0);
    for (size_t b = 0; b < cee.dim; ++b) {
        const u32 c = loc.coeffs_in_basis[b];
        if (!c) continue;
        for (size_t i = 0; i < loc.evals.size(); ++i)
            loc.evals[i] = static_cast<u8>((loc.evals[i] + c * cee.basis_eval[b][i]) % cee.p);
    }
    bool nonzero = false;
    for (u8 v : loc.evals) nonzero |= v != 0;
    for (size_t s : S)
        if (loc.evals[s]) throw std::logic_error("fit_error_locator: locator does not vanish on S");
    if (!nonzero) throw std::logic_error("fit_error_locator: zero locator escaped the nullspace");
    return loc;
}

// Q in C_{dx,dy} with Q = X pointwise wherever E is nonzero, or nullopt when
// that linear system is inconsistent.
inline std::optional<std::pair<std::vector<u32>, std::vector<u8>>> fit_quotient(const LineEnsemble& X,
                                                                                const std::vector<u8>& locator_evals,
                                                                                const LocalCodeSpec& code) {
    const i64 p = code.p;
    std::vector<size_t> pts;
    for (i64 z = 0; z < p; ++z)
        for (i64 y = 0; y < p; ++y)
            for (i64 x = 0; x < p; ++x)
                if (locator_evals[grid_index(x, y, z, p)]) pts.push_back(grid_index(x, y, z, p));

    ExactMatrix M(pts.size(), code.dim);
    std::vector<u32> rhs(pts.size());
    for (size_t r = 0; r < pts.size(); ++r) {
        for (size_t b = 0; b < code.dim; ++b) M.at(r, b) = code.basis_eval[b][pts[r]];
        const size_t idx = pts[r];
        const i64 x = idx % p, y = (idx / p) % p, z = idx / (p * p);
        rhs[r] = X.value(x, y, z);
    }
    auto sol = rank_nullspace(M, p, &rhs, false);
    if (!sol.has_solution) return std::nullopt;
    std::vector<u8> evals(static_cast<size_t>(p) * p * p, 0);
    for (size_t b = 0; b < code.dim; ++b) {
        const u32 c = sol.solution[b];
        if (!c) continue;
        for (size_t i = 0; i < evals.size(); ++i)
            evals[i] = static_cast<u8>((evals[i] + c * code.basis_eval[b][i]) % p);
    }
    for (size_t r = 0; r < pts.size(); ++r)
        if (evals[pts[r]] != rhs[r] % p) throw std::logic_error("fit_quotient: solution violates its constraints");
    return std::make_pair(std::move(sol.solution), std::move(evals));
}

struct DecodeResult {
    enum class Status { exact, within_bound, failed };
    Status status = Status::failed;
    bool hypothesis_ok = false;  // p >= 2(dx+dy) + 5*delta*p, reported not enforced
    double delta_cubed = 0.0;
    double delta = 0.0;
    bool found = false;
    i64 locator_degree = -1;
    double line_disagreement = 0.0;  // Pr_bc[X row != Q row] + Pr_ac[Y line != Q line]
    std::vector<u32> q_coeffs_in_basis;
    std::vector<u8> q_evals;
    std::vector<u32> q_tensor;  // coefficient tensor of Q, (dx+1) x p x p
};

namespace detail {

inline double ensemble_disagreement(const LineEnsemble& X, const SkewEnsemble& Y, const std::vector<u8>& q,
                                    i64 p) {
    i64 bad_rows = 0;
    for (i64 b = 0; b < p; ++b)
        for (i64 c = 0; c < p; ++c)
            for (i64 x = 0; x < p; ++x)
                if (X.value(x, b, c) != q[grid_index(x, b, c, p)]) {
                    ++bad_rows;
                    break;
                }
    i64 bad_skews = 0;
    for (i64 a = 0; a < p; ++a)
        for (i64 c = 0; c < p; ++c)
            for (i64 y = 0; y < p; ++y)
                if (Y.value(a, y, (a * y + c) % p) != q[grid_index(a, y, (a * y + c) % p, p)]) {
                    ++bad_skews;
                    break;
                }
    return double(bad_rows) / (double(p) * p) + double(bad_skews) / (double(p) * p);
}

}  // namespace detail

// Agreement decoder: find the error locator E and quotient Q realizing
// X E = Y E = Q E by linear solves. Locator degrees are tried ascending from
// 0; the budget extends to ceil(delta*p) when the division-validity cap floor((p -
// 2(dx+dy))/5) falls below it, so corrupted inputs outside the hypothesis
// regime still get a decode attempt.
inline DecodeResult agreement_decode(const LineEnsemble& X, const SkewEnsemble& Y) {
    validate_ensembles(X, Y);
    const i64 p = X.p;
    const i64 dx = X.dx, dy = Y.dy;

    DecodeResult res;
    const auto S = disagreement_set(X, Y);
    res.delta_cubed = S.delta_cubed;
    res.delta = std::cbrt(S.delta_cubed);
    res.hypothesis_ok = double(p) >= 2.0 * (dx + dy) + 5.0 * res.delta * p;

    const i64 cap_division = std::max<i64>(0, (p - 2 * (dx + dy)) / 5);
    const i64 e_max = std::min<i64>(p - 1, std::max<i64>(cap_division, static_cast<i64>(std::ceil(res.delta * p))));

    const auto code_ptr = shared_local_code(p, dx, dy);
    const LocalCodeSpec& code = *code_ptr;
    for (i64 e = 0; e <= e_max; ++e) {
        const auto cee_ptr = shared_local_code(p, e, e);
        const LocalCodeSpec& cee = *cee_ptr;
        auto loc = fit_error_locator(cee, S.points);
        if (!loc) continue;
        auto q = fit_quotient(X, loc->evals, code);
        if (!q) continue;
        res.found = true;
        res.locator_degree = e;
        res.q_coeffs_in_basis = std::move(q->first);
        res.q_evals = std::move(q->second);
        if (!local_membership(res.q_evals, p, dx, dy))
            throw std::logic_error("agreement_decode: quotient is not a codeword");
        res.q_tensor.assign(static_cast<size_t>(dx + 1) * p * p, 0);
        for (size_t b = 0; b < code.dim; ++b) {
            const u32 c = res.q_coeffs_in_basis[b];
            if (!c) continue;
            for (size_t i = 0; i < res.q_tensor.size(); ++i)
                res.q_tensor[i] = static_cast<u32>((res.q_tensor[i] + u64(c) * code.basis_coeffs[b][i]) % p);
        }
        res.line_disagreement = detail::ensemble_disagreement(X, Y, res.q_evals, p);
        if (res.line_disagreement == 0.0)
            res.status = DecodeResult::Status::exact;
        else if (res.line_disagreement <= 4.0 * res.delta)
            res.status = DecodeResult::Status::within_bound;
        else
            res.status = DecodeResult::Status::failed;
        return res;
    }
    res.status = DecodeResult::Status::failed;
    return res;
}

// Exact restrictions of a codeword to both line families. Degree bounds are
// asserted.
inline std::pair<LineEnsemble, SkewEnsemble> restrict_to_lines(const std::vector<u8>& word, i64 p, i64 dx, i64 dy) {
    LineEnsemble X;
    X.p = p;
    X.dx = dx;
    X.polys.resize(static_cast<size_t>(p) * p);
    SkewEnsemble Y;
    Y.p = p;
    Y.dy = dy;
    Y.polys.resize(static_cast<size_t>(p) * p);
    std::vector<u32> vals(p);
    for (i64 b = 0; b < p; ++b)
        for (i64 c = 0; c < p; ++c) {
            for (i64 x = 0; x < p; ++x) vals[x] = word[grid_index(x, b, c, p)];
            auto poly = poly_interpolate(vals, p);
            if (poly_degree(poly) > dx) throw std::invalid_argument("restrict_to_lines: row degree exceeds dx");
            poly.resize(dx + 1);
            X.polys[b * p + c] = std::move(poly);
        }
    for (i64 a = 0; a < p; ++a)
        for (i64 c = 0; c < p; ++c) {
            for (i64 y = 0; y < p; ++y) vals[y] = word[grid_index(a, y, (a * y + c) % p, p)];
            auto poly = poly_interpolate(vals, p);
            if (poly_degree(poly) > dy) throw std::invalid_argument("restrict_to_lines: skew degree exceeds dy");
            poly.resize(dy + 1);
            Y.polys[a * p + c] = std::move(poly);
        }
    return {std::move(X), std::move(Y)};
}

// Per-line nearest low-degree fits of an arbitrary grid word, brute force
// over all p^(d+1) candidate polynomials, ties broken by lexicographically
// smallest coefficient vector.
inline std::pair<LineEnsemble, SkewEnsemble> nearest_line_fits(const std::vector<u8>& word, i64 p, i64 dx, i64 dy) {
    auto best_fit = [&](const std::vector<u32>& vals, i64 d) {
        std::vector<u32> coeffs(d + 1, 0), best;
        i64 best_dist = p + 1;
        while (true) {
            const auto evals = poly_evals(coeffs, p);
            i64 dist = 0;
            for (i64 t = 0; t < p; ++t) dist += evals[t] != vals[t];
            if (dist < best_dist) {
                best_dist = dist;
                best = coeffs;
            }
            i64 d0 = d;
            while (d0 >= 0 && coeffs[d0] == u32(p - 1)) coeffs[d0--] = 0;
            if (d0 < 0) break;
            ++coeffs[d0];
        }
        return best;
    };
    LineEnsemble X;
    X.p = p;
    X.dx = dx;
    X.polys.resize(static_cast<size_t>(p) * p);
    SkewEnsemble Y;
    Y.p = p;
    Y.dy = dy;
    Y.polys.resize(static_cast<size_t>(p) * p);
    std::vector<u32> vals(p);
    for (i64 b = 0; b < p; ++b)
        for (i64 c = 0; c < p; ++c) {
            for (i64 x = 0; x < p; ++x) vals[x] = word[grid_index(x, b, c, p)];
            X.polys[b * p + c] = best_fit(vals, dx);
        }
    for (i64 a = 0; a < p; ++a)
        for (i64 c = 0; c < p; ++c) {
            for (i64 y = 0; y < p; ++y) vals[y] = word[grid_index(a, y, (a * y + c) % p, p)];
            Y.polys[a * p + c] = best_fit(vals, dy);
        }
    return {std::move(X), std::move(Y)};
}

struct NearestCodeword {
    std::vector<u8> word;
    std::vector<u32> coeffs_in_basis;
    i64 distance = 0;
};

// Exhaustive nearest-codeword oracle: enumerates all p^dim codewords in
// lexicographic coefficient order, keeping the first word of minimum Hamming
// distance. Refuses when p^dim exceeds the budget.
inline NearestCodeword brute_nearest(const std::vector<u8>& w, const LocalCodeSpec& spec, u64 budget = 2000000) {
    const i64 p = spec.p;
    const size_t len = static_cast<size_t>(p) * p * p;
    if (w.size() != len) throw std::invalid_argument("brute_nearest: word length mismatch");
    u64 total = 1;
    for (size_t b = 0; b < spec.dim; ++b) {
        if (total > budget / static_cast<u64>(p))
            throw BudgetError("brute_nearest: enumeration too large", budget + 1, budget);
        total *= static_cast<u64>(p);
    }

    std::vector<u32> digits(spec.dim, 0);
    std::vector<u8> cur(len, 0);
    NearestCodeword best;
    best.distance = static_cast<i64>(len) + 1;
    auto consider = [&]() {
        i64 dist = 0;
        for (size_t i = 0; i < len; ++i) dist += cur[i] != w[i];
        if (dist < best.distance) {
            best.distance = dist;
            best.word = cur;
            best.coeffs_in_basis = digits;
        }
    };
    consider();
    for (u64 step = 1; step < total; ++step) {
        // Odometer with the last digit fastest: visits coefficient vectors in
        // ascending lexicographic order. Each digit change adds one copy of
        // its basis vector (a rollover is p-1 increments plus one more).
        size_t d = spec.dim;
        while (d-- > 0) {
            const auto& bv = spec.basis_eval[d];
            for (size_t i = 0; i < len; ++i) {
                const u8 s = cur[i] + bv[i];
                cur[i] = s >= p ? static_cast<u8>(s - p) : s;
            }
            if (digits[d] + 1 < u32(p)) {
                ++digits[d];
                break;
            }
            digits[d] = 0;
        }
        consider();
    }
    return best;
}

}  // namespace hdx
