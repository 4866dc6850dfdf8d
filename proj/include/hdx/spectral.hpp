#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace hdx {

// Dense real symmetric matrix, row-major.
struct SymMatrix {
    size_t n = 0;
    std::vector<double> a;

    SymMatrix() = default;
    explicit SymMatrix(size_t n) : n(n), a(n * n, 0.0) {}

    double& at(size_t i, size_t j) { return a[i * n + j]; }
    double at(size_t i, size_t j) const { return a[i * n + j]; }
};

struct SpectralResult {
    std::vector<double> eigenvalues;  // sorted descending
    double lambda2 = 0.0;
};

namespace detail {

// Deflated power iteration on A + I (nonnegative spectrum for matrices with
// eigenvalues in [-1, 1]), returning the top two eigenvalues of A by value.
inline std::vector<double> top_two_power(const SymMatrix& A, double tol, size_t max_iter) {
    const size_t n = A.n;
    std::vector<Eigen::VectorXd> basis;
    std::vector<double> vals;
    Eigen::Map<const Eigen::MatrixXd> M(A.a.data(), n, n);
    for (int round = 0; round < 2; ++round) {
        Eigen::VectorXd v(n);
        for (size_t i = 0; i < n; ++i) v[i] = 0.5 + std::cos(double(i * (round + 3)));
        for (const auto& b : basis) v -= b.dot(v) * b;
        v.normalize();
        double mu = 0.0;
        for (size_t it = 0; it < max_iter; ++it) {
            Eigen::VectorXd w = M * v + v;
            for (const auto& b : basis) w -= b.dot(w) * b;
            const double norm = w.norm();
            if (norm == 0.0) break;
            w /= norm;
            const double mu_new = w.dot(M * w) + 1.0;
            if (std::abs(mu_new - mu) < tol) {
                mu = mu_new;
                v = w;
                break;
            }
            mu = mu_new;
            v = w;
        }
        vals.push_back(mu - 1.0);
        basis.push_back(v);
    }
    return vals;
}

}  // namespace detail

// Eigenvalues of a symmetric matrix, sorted descending. Dense solve up to
// dimension 8192; above that, deflated power iteration (tol 1e-10, at most
// 1e5 iterations) reports only the top two.
inline SpectralResult second_eigenvalue(const SymMatrix& A, double sym_tol = 1e-12) {
    const size_t n = A.n;
    if (n == 0) throw std::invalid_argument("second_eigenvalue: empty matrix");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (std::abs(A.at(i, j) - A.at(j, i)) > sym_tol)
                throw std::invalid_argument("second_eigenvalue: matrix is not symmetric");

    SpectralResult res;
    if (n <= 8192) {
        Eigen::Map<const Eigen::MatrixXd> M(A.a.data(), n, n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) throw std::runtime_error("second_eigenvalue: eigensolver failed");
        const auto& ev = solver.eigenvalues();
        res.eigenvalues.assign(ev.data(), ev.data() + n);
        std::sort(res.eigenvalues.begin(), res.eigenvalues.end(), std::greater<>());
    } else {
        res.eigenvalues = detail::top_two_power(A, 1e-10, 100000);
        std::sort(res.eigenvalues.begin(), res.eigenvalues.end(), std::greater<>());
    }
    res.lambda2 = res.eigenvalues.size() > 1 ? res.eigenvalues[1] : res.eigenvalues[0];
    return res;
}

}  // namespace hdx
