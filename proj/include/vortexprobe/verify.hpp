#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "bessel_beam.hpp"
#include "field_types.hpp"
#include "lg_beam.hpp"
#include "quadrature.hpp"

namespace vortexprobe {

/// Central-difference configuration for the independent derivative oracle.
struct FDConfig {
    double h = 0.0;      // base step; 0 means "choose from scale"
    int levels = 2;      // Richardson extrapolation levels
    double scale = 1.0;  // length scale the field varies on (e.g. w0)

    double base_step() const { return h > 0.0 ? h : scale / 200.0; }
};

namespace detail {

inline double rich_combine(double c1, double a, double c2, double b) { return c1 * a + c2 * b; }
inline cplx rich_combine(double c1, const cplx& a, double c2, const cplx& b) {
    return c1 * a + c2 * b;
}
inline Vec3c rich_combine(double c1, const Vec3c& a, double c2, const Vec3c& b) {
    return Vec3c{c1 * a[0] + c2 * b[0], c1 * a[1] + c2 * b[1], c1 * a[2] + c2 * b[2]};
}
inline double rich_dist(double a, double b) { return std::abs(a - b); }
inline double rich_dist(const cplx& a, const cplx& b) { return std::abs(a - b); }
inline double rich_dist(const Vec3c& a, const Vec3c& b) {
    return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

// Richardson table over step halving for an order-2 central difference.
template <typename Eval>
auto richardson(const Eval& d, double h, int levels, double* err) {
    using T = decltype(d(h));
    T table[8][8];
    if (levels < 1 || levels > 7) throw std::invalid_argument("fd: levels must be in [1,7]");
    for (int l = 0; l <= levels - 1; ++l) table[0][l] = d(h / double(1 << l));
    double pow4 = 1.0;
    for (int k = 1; k < levels; ++k) {
        pow4 *= 4.0;
        for (int l = 0; l + k < levels; ++l)
            table[k][l] = rich_combine(pow4 / (pow4 - 1.0), table[k - 1][l + 1],
                                       -1.0 / (pow4 - 1.0), table[k - 1][l]);
    }
    const T best = table[levels - 1][0];
    const T prev = levels > 1 ? table[levels - 2][0] : table[0][0];
    *err = rich_dist(best, prev);
    return best;
}

}  // namespace detail

/// Richardson-extrapolated central difference of a scalar function.
template <typename F>
double fd_derivative(const F& f, double x, const FDConfig& cfg, double* err_estimate = nullptr) {
    double err = 0.0;
    const double v = detail::richardson(
        [&](double h) { return (f(x + h) - f(x - h)) / (2.0 * h); }, cfg.base_step(), cfg.levels,
        &err);
    if (err_estimate) *err_estimate = err;
    return v;
}

struct FDJet {
    Vec3c value;
    Mat3c jacobian;  // jacobian[i][j] = d f_j / d r_i
    double error_estimate = 0.0;
};

/// Value and first derivatives of a vector field by Richardson central differences.
/// Independent of any analytic derivative path; this is the oracle.
template <typename Field>
FDJet fd_jet(const Field& field, const std::array<double, 3>& point, const FDConfig& cfg = {}) {
    FDJet out;
    out.value = field(point);
    for (const auto& c : out.value)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("fd_jet: non-finite field sample");
    for (int i = 0; i < 3; ++i) {
        double err = 0.0;
        const auto d = detail::richardson(
            [&](double h) {
                auto pp = point, pm = point;
                pp[i] += h;
                pm[i] -= h;
                const Vec3c fp = field(pp), fm = field(pm);
                return Vec3c{(fp[0] - fm[0]) / (2.0 * h), (fp[1] - fm[1]) / (2.0 * h),
                             (fp[2] - fm[2]) / (2.0 * h)};
            },
            cfg.base_step(), cfg.levels, &err);
        out.jacobian[i] = d;
        out.error_estimate = std::max(out.error_estimate, err);
    }
    return out;
}

namespace detail {
inline double vec_abs(const Vec3c& v) { return std::sqrt(norm_sq(v)); }
}  // namespace detail

struct MaxwellResiduals {
    double faraday;  // ||ikB - curl E|| / ||kB||
    double div_e;    // |div E| w0 / |E|_peak
};

/// Waist-plane |E| maximum along a radial scan (for div E normalization).
inline double peak_electric_field(const LGBeam& beam) {
    double peak = 0.0;
    for (int i = 0; i <= 300; ++i) {
        const double r = 3.0 * beam.w0 * i / 300.0;
        peak = std::max(peak, detail::vec_abs(electric_field(beam, {r, 0.0, 0.0})));
    }
    return peak;
}

inline MaxwellResiduals maxwell_residuals_from_sample(const FieldSample& f, double k,
                                                      double length_scale, double e_peak) {
    const Vec3c curl = curl_from_gradient(f.gradE);
    Vec3c resid;
    for (int i = 0; i < 3; ++i) resid[i] = I * k * f.B[i] - curl[i];
    const double kb = k * detail::vec_abs(f.B);
    return MaxwellResiduals{detail::vec_abs(resid) / kb,
                            std::abs(trace(f.gradE)) * length_scale / e_peak};
}

inline MaxwellResiduals maxwell_residuals(const LGBeam& beam, const std::array<double, 3>& point) {
    return maxwell_residuals_from_sample(field_sample(beam, point), beam.k, beam.w0,
                                         peak_electric_field(beam));
}

inline MaxwellResiduals maxwell_residuals(const BesselBeam& bb,
                                          const std::array<double, 3>& point) {
    const FieldSample f = bessel_field_sample(bb, point);
    // normalize div by the local |E| and the transverse scale 1/k
    const double e_ref = std::max(detail::vec_abs(f.E), 1e-300);
    return maxwell_residuals_from_sample(f, bb.k, 1.0 / bb.k, e_ref);
}

// ---------------------------------------------------------------------------
// Sphere quadrature oracle for the spherically-symmetric detector moments.
// Product Gauss-Legendre (cos theta) x uniform phi grid; refined until stable.
// ---------------------------------------------------------------------------

namespace detail {

struct SphereHarmonics {
    // closed forms, quantization axis z
    static cplx y00(double, double) { return cplx{1.0 / std::sqrt(4.0 * std::numbers::pi), 0.0}; }
    static cplx y1(int M, double ct, double phi) {
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        const double c0 = std::sqrt(3.0 / (4.0 * std::numbers::pi));
        const double c1 = std::sqrt(3.0 / (8.0 * std::numbers::pi));
        switch (M) {
            case 0: return cplx{c0 * ct, 0.0};
            case 1: return -c1 * st * std::exp(I * phi);
            case -1: return c1 * st * std::exp(-I * phi);
        }
        throw std::invalid_argument("y1: bad M");
    }
    static cplx y2(int M, double ct, double phi) {
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        const double pi = std::numbers::pi;
        switch (M) {
            case 0: return cplx{std::sqrt(5.0 / (16.0 * pi)) * (3.0 * ct * ct - 1.0), 0.0};
            case 1: return -std::sqrt(15.0 / (8.0 * pi)) * st * ct * std::exp(I * phi);
            case -1: return std::sqrt(15.0 / (8.0 * pi)) * st * ct * std::exp(-I * phi);
            case 2: return std::sqrt(15.0 / (32.0 * pi)) * st * st * std::exp(2.0 * I * phi);
            case -2: return std::sqrt(15.0 / (32.0 * pi)) * st * st * std::exp(-2.0 * I * phi);
        }
        throw std::invalid_argument("y2: bad M");
    }
    // (r x grad) Y_1^M, Cartesian components; cot(theta) d/dphi folded in analytically
    static Vec3c rot_grad_y1(int M, double ct, double phi) {
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        const double c0 = std::sqrt(3.0 / (4.0 * std::numbers::pi));
        const double c1 = std::sqrt(3.0 / (8.0 * std::numbers::pi));
        const double cp = std::cos(phi), sp = std::sin(phi);
        cplx dtheta, cot_dphi;  // dY/dtheta and cot(theta) dY/dphi
        switch (M) {
            case 0:
                dtheta = cplx{-c0 * st, 0.0};
                cot_dphi = cplx{};
                break;
            case 1:
                dtheta = -c1 * ct * std::exp(I * phi);
                cot_dphi = I * (-c1) * ct * std::exp(I * phi);
                break;
            case -1:
                dtheta = c1 * ct * std::exp(-I * phi);
                cot_dphi = -I * c1 * ct * std::exp(-I * phi);
                break;
            default: throw std::invalid_argument("rot_grad_y1: bad M");
        }
        return Vec3c{-sp * dtheta - cp * cot_dphi, cp * dtheta - sp * cot_dphi,
                     (M == 0) ? cplx{} : cplx{I * double(M)} * y1(M, ct, phi)};
    }
};

template <typename Integrand>
auto sphere_integral(const Integrand& f, int n_theta, int n_phi) {
    const QuadratureRule rule = gauss_legendre(n_theta);
    using R = decltype(f(0.0, 0.0));
    R sum{};
    const double dphi = 2.0 * std::numbers::pi / n_phi;
    for (int i = 0; i < n_theta; ++i) {
        const double ct = rule.nodes[i];
        R ring{};
        for (int j = 0; j < n_phi; ++j) {
            const double phi = dphi * j;
            auto v = f(ct, phi);
            for (size_t c = 0; c < v.size(); ++c) ring[c] += v[c];
        }
        for (size_t c = 0; c < ring.size(); ++c) sum[c] += rule.weights[i] * dphi * ring[c];
    }
    return sum;
}

template <typename Integrand>
auto converged_sphere_integral(const Integrand& f) {
    auto prev = sphere_integral(f, 8, 16);
    for (int n = 16; n <= 128; n *= 2) {
        auto cur = sphere_integral(f, n, 2 * n);
        double diff = 0.0;
        for (size_t c = 0; c < cur.size(); ++c) diff = std::max(diff, std::abs(cur[c] - prev[c]));
        if (diff < 1e-10) return cur;
        prev = cur;
    }
    throw std::runtime_error("sphere quadrature failed to stabilize at 1e-10");
}

}  // namespace detail

/// integral Y_0^0* r_i Y_1^M dOmega (dipole pattern, up to one overall constant).
inline Vec3c sphere_dipole_moment(int M) {
    if (std::abs(M) > 1) throw std::invalid_argument("sphere_dipole_moment: |M| <= 1");
    return detail::converged_sphere_integral([M](double ct, double phi) {
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        const Vec3c r{cplx{st * std::cos(phi), 0.0}, cplx{st * std::sin(phi), 0.0}, cplx{ct, 0.0}};
        const cplx w = std::conj(detail::SphereHarmonics::y00(ct, phi)) *
                       detail::SphereHarmonics::y1(M, ct, phi);
        return Vec3c{w * r[0], w * r[1], w * r[2]};
    });
}

/// integral Y_1^0* (r x grad)_i Y_1^M dOmega (magnetic dipole pattern).
inline Vec3c sphere_magnetic_moment(int M) {
    if (std::abs(M) > 1) throw std::invalid_argument("sphere_magnetic_moment: |M| <= 1");
    return detail::converged_sphere_integral([M](double ct, double phi) {
        const cplx w = std::conj(detail::SphereHarmonics::y1(0, ct, phi));
        const Vec3c rg = detail::SphereHarmonics::rot_grad_y1(M, ct, phi);
        return Vec3c{w * rg[0], w * rg[1], w * rg[2]};
    });
}

/// integral Y_0^0* (3 r_i r_j - delta_ij) Y_2^M dOmega (quadrupole pattern),
/// returned as the 6 independent entries xx, yy, zz, xy, xz, yz.
inline std::array<cplx, 6> sphere_quadrupole_moment(int M) {
    if (std::abs(M) > 2) throw std::invalid_argument("sphere_quadrupole_moment: |M| <= 2");
    return detail::converged_sphere_integral([M](double ct, double phi) {
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        const double rx = st * std::cos(phi), ry = st * std::sin(phi), rz = ct;
        const cplx w = std::conj(detail::SphereHarmonics::y00(ct, phi)) *
                       detail::SphereHarmonics::y2(M, ct, phi);
        return std::array<cplx, 6>{w * (3.0 * rx * rx - 1.0), w * (3.0 * ry * ry - 1.0),
                                   w * (3.0 * rz * rz - 1.0), w * 3.0 * rx * ry,
                                   w * 3.0 * rx * rz, w * 3.0 * ry * rz};
    });
}

}  // namespace vortexprobe
