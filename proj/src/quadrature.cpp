#include "znwedge/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>

#include "znwedge/types.hpp"

namespace znwedge {

namespace {

QuadratureRule make_gauss_legendre(int n) {
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

QuadratureRule make_gauss_hermite(int n) {
    // Golub-Welsch on the Jacobi matrix of the (physicists') Hermite family.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        double b = std::sqrt(k / 2.0);
        J(k - 1, k) = b;
        J(k, k - 1) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double log_sqrt_pi = 0.5 * std::log(kPi);
    for (int i = 0; i < n; ++i) {
        double x = es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        rule.nodes[i] = x;
        // w_i = sqrt(pi) v0^2; ship w_i e^{x^2} via logs to avoid under/overflow.
        rule.weights[i] = std::exp(log_sqrt_pi + 2.0 * std::log(std::abs(v0)) + x * x);
    }
    return rule;
}

template <typename F>
const QuadratureRule& cached(std::map<int, QuadratureRule>& cache, std::mutex& mu,
                             int n, F make) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make(n)).first;
    return it->second;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
    if (n < 1) throw Error("gauss_legendre: order must be positive");
    static std::map<int, QuadratureRule> cache;
    static std::mutex mu;
    return cached(cache, mu, n, make_gauss_legendre);
}

QuadratureRule gauss_legendre_on(int n, double a, double b) {
    const QuadratureRule& base = gauss_legendre(n);
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = mid + half * base.nodes[i];
        rule.weights[i] = half * base.weights[i];
    }
    return rule;
}

const QuadratureRule& gauss_hermite(int n) {
    if (n < 1 || n > 256) throw Error("gauss_hermite: order out of range");
    static std::map<int, QuadratureRule> cache;
    static std::mutex mu;
    return cached(cache, mu, n, make_gauss_hermite);
}

}  // namespace znwedge
