#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace vortexprobe {

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes by Newton iteration.
inline QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double pi = 3.14159265358979323846;
    const int mhalf = (n + 1) / 2;
    for (int i = 0; i < mhalf; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

namespace detail {

template <typename F>
std::complex<double> gl15(const F& f, double a, double b, const QuadratureRule& rule) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::complex<double> sum{};
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(c + h * rule.nodes[i]);
    return h * sum;
}

template <typename F>
std::complex<double> adaptive_gl(const F& f, double a, double b, double tol,
                                 const QuadratureRule& rule, std::complex<double> whole,
                                 int depth, double* err_out) {
    const double c = 0.5 * (a + b);
    const std::complex<double> left = gl15(f, a, c, rule);
    const std::complex<double> right = gl15(f, c, b, rule);
    const double err = std::abs(left + right - whole);
    if (err < tol || depth <= 0) {
        if (depth <= 0 && err >= tol)
            throw std::runtime_error("quad_1d: tolerance not reached at max refinement");
        *err_out += err;
        return left + right;
    }
    double e1 = 0.0, e2 = 0.0;
    const auto r1 = adaptive_gl(f, a, c, 0.5 * tol, rule, left, depth - 1, &e1);
    const auto r2 = adaptive_gl(f, c, b, 0.5 * tol, rule, right, depth - 1, &e2);
    *err_out += e1 + e2;
    return r1 + r2;
}

}  // namespace detail

struct QuadResult {
    std::complex<double> value;
    double error_estimate;
};

/// Adaptive Gauss-Legendre integral of a complex-valued f over [a, b].
template <typename F>
QuadResult quad_1d(const F& f, double a, double b, double tol = 1e-12) {
    if (!(a < b)) throw std::invalid_argument("quad_1d: need a < b");
    static const QuadratureRule rule = gauss_legendre(15);
    const auto whole = detail::gl15(f, a, b, rule);
    QuadResult res{.value = {}, .error_estimate = 0.0};
    res.value = detail::adaptive_gl(f, a, b, tol, rule, whole, 40, &res.error_estimate);
    return res;
}

}  // namespace vortexprobe
