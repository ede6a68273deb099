#pragma once

#include <vector>

namespace znwedge {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1,1]. Cached per order; thread safe.
const QuadratureRule& gauss_legendre(int n);

// Gauss-Legendre rule mapped to [a,b].
QuadratureRule gauss_legendre_on(int n, double a, double b);

// Gauss-Hermite nodes with exp(x^2)-modified weights, so that
// sum_i w_i f(x_i) approximates the integral of f over the real line for
// any f with at least Gaussian decay. Cached; n <= 256.
const QuadratureRule& gauss_hermite(int n);

}  // namespace znwedge
