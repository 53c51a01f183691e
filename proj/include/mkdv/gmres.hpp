#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

namespace mkdv {

struct GmresResult {
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;
    /// sigma_max / sigma_min of the last Hessenberg matrix, a rough conditioning hint.
    double condition_estimate = 0.0;
};

/// Restarted GMRES(m) for complex systems A x = b, stopping when ||b - A x||_2 <= tol.
/// apply(in, out) computes out = A in. x holds the initial guess on entry.
template <typename Apply>
GmresResult gmres(Apply&& apply, const Eigen::VectorXcd& b, Eigen::VectorXcd& x, double tol, int restart,
                  int max_iter) {
    using cd = std::complex<double>;
    const Eigen::Index n = b.size();
    GmresResult res;
    Eigen::VectorXcd r(n), w(n);
    std::vector<Eigen::VectorXcd> basis;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(restart + 1, restart);
    std::vector<double> cs(restart);
    std::vector<cd> sn(restart);
    Eigen::VectorXcd g(restart + 1);

    while (res.iterations < max_iter) {
        apply(x, w);
        r = b - w;
        double beta = r.norm();
        res.residual = beta;
        if (beta <= tol) {
            res.converged = true;
            return res;
        }
        basis.assign(1, r / beta);
        h.setZero();
        g.setZero();
        g(0) = beta;
        int k = 0;
        for (; k < restart && res.iterations < max_iter; ++k) {
            ++res.iterations;
            apply(basis[k], w);
            for (int i = 0; i <= k; ++i) {
                h(i, k) = basis[i].dot(w);
                w -= h(i, k) * basis[i];
            }
            const double hn = w.norm();
            h(k + 1, k) = hn;
            for (int i = 0; i < k; ++i) {
                const cd a = h(i, k), c = h(i + 1, k);
                h(i, k) = cs[i] * a + sn[i] * c;
                h(i + 1, k) = -std::conj(sn[i]) * a + cs[i] * c;
            }
            const cd h1 = h(k, k), h2 = h(k + 1, k);
            const double t = std::hypot(std::abs(h1), std::abs(h2));
            if (std::abs(h1) == 0.0) {
                cs[k] = 0.0;
                sn[k] = 1.0;
                h(k, k) = h2;
            } else {
                const cd phase = h1 / std::abs(h1);
                cs[k] = std::abs(h1) / t;
                sn[k] = phase * std::conj(h2) / t;
                h(k, k) = phase * t;
            }
            h(k + 1, k) = 0.0;
            g(k + 1) = -std::conj(sn[k]) * g(k);
            g(k) = cs[k] * g(k);
            res.residual = std::abs(g(k + 1));
            if (res.residual <= tol || hn == 0.0) {
                ++k;
                break;
            }
            basis.push_back(w / hn);
        }
        // Back substitution for the k x k triangular system.
        const Eigen::MatrixXcd hk = h.topLeftCorner(k, k);
        const Eigen::VectorXcd y = hk.triangularView<Eigen::Upper>().solve(g.head(k));
        for (int i = 0; i < k; ++i) x += y(i) * basis[i];
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(hk);
        const auto sv = svd.singularValues();
        res.condition_estimate = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
        if (res.residual <= tol) {
            apply(x, w);
            res.residual = (b - w).norm();
            if (res.residual <= tol) {
                res.converged = true;
                return res;
            }
        }
    }
    return res;
}

}  // namespace mkdv
