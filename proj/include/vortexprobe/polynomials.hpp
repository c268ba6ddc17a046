#pragma once

#include <cmath>
#include <stdexcept>

namespace vortexprobe {

inline constexpr int kMaxRadialIndex = 32;
inline constexpr int kMaxAzimuthalIndex = 8;

/// Order of a generalized Laguerre polynomial L_p^a.
struct LaguerreOrder {
    int p;  // radial index, >= 0
    int a;  // superscript |m|, >= 0
};

namespace detail {
inline void check_laguerre_order(int p, int a) {
    if (p < 0 || a < 0) throw std::invalid_argument("laguerre: negative order");
    if (p > kMaxRadialIndex) throw std::invalid_argument("laguerre: p > 32 unsupported");
}
}  // namespace detail

/// L_p^a(x) by upward three-term recurrence in p.
inline double laguerre(LaguerreOrder o, double x) {
    detail::check_laguerre_order(o.p, o.a);
    if (!std::isfinite(x)) throw std::invalid_argument("laguerre: non-finite argument");
    double lm1 = 1.0;  // L_0^a
    if (o.p == 0) return lm1;
    double l = 1.0 + o.a - x;  // L_1^a
    for (int n = 1; n < o.p; ++n) {
        const double lp1 = ((2 * n + o.a + 1 - x) * l - (n + o.a) * lm1) / (n + 1);
        lm1 = l;
        l = lp1;
    }
    return l;
}

inline double laguerre(int p, int a, double x) { return laguerre(LaguerreOrder{p, a}, x); }

/// d^n/dx^n L_p^a(x) for n in {1,2}, via dL_p^a/dx = -L_{p-1}^{a+1}.
inline double laguerre_deriv(LaguerreOrder o, double x, int n = 1) {
    detail::check_laguerre_order(o.p, o.a);
    if (n != 1 && n != 2) throw std::invalid_argument("laguerre_deriv: n must be 1 or 2");
    if (o.p - n < 0) return 0.0;
    const double sign = (n == 1) ? -1.0 : 1.0;
    return sign * laguerre(LaguerreOrder{o.p - n, o.a + n}, x);
}

inline double laguerre_deriv(int p, int a, double x, int n = 1) {
    return laguerre_deriv(LaguerreOrder{p, a}, x, n);
}

/// L_p^a(0) = binomial(p+a, p), exact.
inline double laguerre_at_zero(LaguerreOrder o) {
    detail::check_laguerre_order(o.p, o.a);
    double b = 1.0;
    for (int i = 1; i <= o.a; ++i) b *= double(o.p + i) / double(i);
    return b;
}

inline double laguerre_at_zero(int p, int a) { return laguerre_at_zero(LaguerreOrder{p, a}); }

/// Integer-order Bessel function of the first kind, J_m(x), x >= 0.
inline double bessel_j(int m, double x) {
    if (x < 0.0) throw std::invalid_argument("bessel_j: x must be >= 0");
    const int a = std::abs(m);
    const double refl = (m < 0 && (a % 2 == 1)) ? -1.0 : 1.0;  // J_{-m} = (-1)^m J_m
    if (x == 0.0) return a == 0 ? 1.0 : 0.0;
    return refl * std::cyl_bessel_j(double(a), x);
}

/// LG mode normalization sqrt(2 p! / (pi (p+|m|)!)).
inline double lg_norm(int p, int m) {
    if (p < 0) throw std::invalid_argument("lg_norm: p must be >= 0");
    const int a = std::abs(m);
    double ratio = 1.0;  // (p+a)!/p!
    for (int i = 1; i <= a; ++i) ratio *= double(p + i);
    const double pi = 3.14159265358979323846;
    return std::sqrt(2.0 / (pi * ratio));
}

}  // namespace vortexprobe
