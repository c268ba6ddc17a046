#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "field_types.hpp"
#include "polynomials.hpp"

namespace vortexprobe {

/// Laguerre-Gauss mode: scalar amplitude U^(m), assembled E/B fields and
/// their gradients, evaluated analytically everywhere including r = 0.
///
/// The transverse profile is factored as U = (x - i*sgn(m)*y)^|m| * g(r^2, z)
/// with g smooth, so the axis is a regular point and the on-axis limits come
/// out exactly. The e^{ikz} carrier is attached at field-assembly time only.
struct LGBeam {
    double E0 = 1.0;  // field amplitude (Gaussian units)
    double k;         // wavenumber
    double w0;        // waist radius
    int p;            // radial index
    int m;            // azimuthal index (OAM per photon, units of hbar)
    cplx alpha;       // x polarization component
    cplx beta;        // y polarization component

    LGBeam(double k_, double w0_, int p_, int m_, cplx alpha_, cplx beta_, double E0_ = 1.0)
        : E0(E0_), k(k_), w0(w0_), p(p_), m(m_), alpha(alpha_), beta(beta_) {
        if (!(k > 0.0) || !(w0 > 0.0)) throw std::invalid_argument("LGBeam: k and w0 must be positive");
        if (p < 0 || p > kMaxRadialIndex) throw std::invalid_argument("LGBeam: p out of range");
        if (std::abs(m) > kMaxAzimuthalIndex) throw std::invalid_argument("LGBeam: |m| out of range");
        if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12)
            throw std::invalid_argument("LGBeam: polarization must satisfy |alpha|^2+|beta|^2 = 1");
    }

    double rayleigh_range() const { return k * w0 * w0 / 2.0; }
    double radius_at(double z) const {
        const double zr = rayleigh_range();
        return w0 * std::sqrt(1.0 + z * z / (zr * zr));
    }
    /// Spin angular momentum sigma = -i(alpha beta* - beta alpha*), in hbar.
    double spin() const { return 2.0 * std::imag(alpha * std::conj(beta)); }
};

/// Circular polarization with spin sigma = -1: (alpha, beta) = (1, i)/sqrt(2);
/// sigma = +1: (1, -i)/sqrt(2).
inline LGBeam make_circular_lg(double k, double w0, int p, int m, int sigma, double E0 = 1.0) {
    if (sigma != 1 && sigma != -1) throw std::invalid_argument("make_circular_lg: sigma must be +-1");
    const double s = 1.0 / std::sqrt(2.0);
    return LGBeam(k, w0, p, m, cplx{s, 0.0}, sigma < 0 ? cplx{0.0, s} : cplx{0.0, -s}, E0);
}

inline LGBeam make_linear_lg(double k, double w0, int p, int m, double E0 = 1.0) {
    return LGBeam(k, w0, p, m, cplx{1.0, 0.0}, cplx{0.0, 0.0}, E0);
}

/// U and its Cartesian derivatives through second order (no e^{ikz} factor).
struct ScalarJet {
    cplx u;
    Vec3c du;   // dU/dx, dU/dy, dU/dz
    Mat3c d2u;  // symmetric second derivatives
};

/// Total averaged angular momentum per photon j_z = m + sigma, in hbar.
inline double beam_angular_momentum(const LGBeam& beam) { return beam.m + beam.spin(); }

inline ScalarJet scalar_jet(const LGBeam& beam, const std::array<double, 3>& point) {
    const double x = point[0], y = point[1], z = point[2];
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
        throw std::invalid_argument("scalar_jet: non-finite coordinates");

    const int a = std::abs(beam.m);
    const double s = beam.m < 0 ? -1.0 : 1.0;
    const double w0 = beam.w0, k = beam.k;
    const double zr = beam.rayleigh_range();

    // z-dependent envelope quantities
    const double W = w0 * w0 * (1.0 + z * z / (zr * zr));  // w(z)^2
    const double Wp = 2.0 * w0 * w0 * z / (zr * zr);
    const double Wpp = 2.0 * w0 * w0 / (zr * zr);
    const double S = z * z + zr * zr;

    const double t = 2.0 / W;                       // Laguerre argument scale
    const double tp = -2.0 * Wp / (W * W);
    const double tpp = -2.0 * Wpp / (W * W) + 4.0 * Wp * Wp / (W * W * W);

    // q = -1/W + i k z / (2S): Gaussian decay plus wavefront curvature
    const cplx q = cplx{-1.0 / W, 0.0} + I * (k * z / (2.0 * S));
    const cplx qp = cplx{Wp / (W * W), 0.0} + I * (k * (zr * zr - z * z) / (2.0 * S * S));
    const cplx qpp = cplx{Wpp / (W * W) - 2.0 * Wp * Wp / (W * W * W), 0.0} -
                     I * (k * z * (3.0 * zr * zr - z * z) / (S * S * S));

    // A(z) = C_p^a (sqrt2)^a W^{-(a+1)/2} e^{-i Phi_G}
    const double gouyCoeff = 2 * beam.p + a + 1;
    const double phi = gouyCoeff * std::atan(z / zr);
    const double phip = gouyCoeff * zr / S;
    const double phipp = -gouyCoeff * 2.0 * z * zr / (S * S);
    const cplx A = lg_norm(beam.p, beam.m) * std::pow(std::sqrt(2.0), a) *
                   std::pow(W, -0.5 * (a + 1)) * std::exp(-I * phi);
    const cplx LA = cplx{-(a + 1) * Wp / (2.0 * W), 0.0} - I * phip;  // A'/A
    const cplx LAp = cplx{-(a + 1) * (Wpp * W - Wp * Wp) / (2.0 * W * W), 0.0} - I * phipp;
    const cplx Ap = A * LA;
    const cplx App = A * (LA * LA + LAp);

    // radial envelope h(rho, z) = e^{q rho} L_p^a(t rho), rho = x^2 + y^2
    const double rho = x * x + y * y;
    const double arg = t * rho;
    const double L = laguerre(beam.p, a, arg);
    const double L1 = laguerre_deriv(beam.p, a, arg, 1);
    const double L2 = laguerre_deriv(beam.p, a, arg, 2);
    const cplx Eq = std::exp(q * rho);

    const cplx h = Eq * L;
    const cplx h_r = Eq * (q * L + t * L1);
    const cplx h_rr = Eq * (q * q * L + 2.0 * q * t * L1 + t * t * L2);
    const cplx h_z = Eq * rho * (qp * L + tp * L1);
    const cplx h_rz = Eq * (qp * rho * (q * L + t * L1) + qp * L + (q * tp * rho + tp) * L1 +
                            t * tp * rho * L2);
    const cplx h_zz = Eq * rho *
                      (qp * rho * (qp * L + tp * L1) + qpp * L + (qp * tp * rho + tpp) * L1 +
                       tp * tp * rho * L2);

    const cplx g = A * h;
    const cplx g_r = A * h_r;
    const cplx g_rr = A * h_rr;
    const cplx g_z = Ap * h + A * h_z;
    const cplx g_rz = Ap * h_r + A * h_rz;
    const cplx g_zz = App * h + 2.0 * Ap * h_z + A * h_zz;

    // vortex factor V = (x - i s y)^a and derivatives
    const cplx zeta{x, -s * y};
    const cplx Vm2 = a >= 2 ? std::pow(zeta, a - 2) : cplx{0.0, 0.0};
    const cplx Vm1 = a >= 1 ? (a >= 2 ? Vm2 * zeta : cplx{1.0, 0.0}) : cplx{0.0, 0.0};
    const cplx V = a >= 1 ? Vm1 * zeta : cplx{1.0, 0.0};
    const cplx V_x = double(a) * Vm1;
    const cplx V_y = -I * s * double(a) * Vm1;
    const cplx V_xx = double(a) * double(a - 1) * Vm2;
    const cplx V_xy = -I * s * double(a) * double(a - 1) * Vm2;
    const cplx V_yy = -double(a) * double(a - 1) * Vm2;

    ScalarJet jet;
    jet.u = V * g;
    jet.du[0] = V_x * g + 2.0 * x * V * g_r;
    jet.du[1] = V_y * g + 2.0 * y * V * g_r;
    jet.du[2] = V * g_z;
    jet.d2u[0][0] = V_xx * g + 4.0 * x * V_x * g_r + V * (2.0 * g_r + 4.0 * x * x * g_rr);
    jet.d2u[1][1] = V_yy * g + 4.0 * y * V_y * g_r + V * (2.0 * g_r + 4.0 * y * y * g_rr);
    jet.d2u[0][1] = V_xy * g + 2.0 * y * V_x * g_r + 2.0 * x * V_y * g_r + 4.0 * x * y * V * g_rr;
    jet.d2u[0][2] = V_x * g_z + 2.0 * x * V * g_rz;
    jet.d2u[1][2] = V_y * g_z + 2.0 * y * V * g_rz;
    jet.d2u[2][2] = V * g_zz;
    jet.d2u[1][0] = jet.d2u[0][1];
    jet.d2u[2][0] = jet.d2u[0][2];
    jet.d2u[2][1] = jet.d2u[1][2];
    return jet;
}

namespace detail {

inline FieldSample assemble_fields(const LGBeam& beam, const ScalarJet& j, double z) {
    const cplx carrier = std::exp(I * beam.k * z);
    const double k = beam.k;
    const cplx pref = beam.E0 * beam.w0 * carrier;
    const cplx a = beam.alpha, b = beam.beta;

    FieldSample f;
    f.E[0] = pref * a * j.u;
    f.E[1] = pref * b * j.u;
    f.E[2] = I * pref / k * (a * j.du[0] + b * j.du[1]);

    // grad E, rows are derivative directions
    f.gradE[0][0] = pref * a * j.du[0];
    f.gradE[1][0] = pref * a * j.du[1];
    f.gradE[2][0] = pref * a * (j.du[2] + I * k * j.u);
    f.gradE[0][1] = pref * b * j.du[0];
    f.gradE[1][1] = pref * b * j.du[1];
    f.gradE[2][1] = pref * b * (j.du[2] + I * k * j.u);
    f.gradE[0][2] = I * pref / k * (a * j.d2u[0][0] + b * j.d2u[0][1]);
    f.gradE[1][2] = I * pref / k * (a * j.d2u[0][1] + b * j.d2u[1][1]);
    f.gradE[2][2] = I * pref / k * (a * j.d2u[0][2] + b * j.d2u[1][2] +
                                    I * k * (a * j.du[0] + b * j.du[1]));

    // Faraday's law ikB = rot E, expanded through the jet
    const cplx prefk = pref / k;
    f.B[0] = prefk * (-k * b * j.u + I * b * j.du[2] + (a * j.d2u[0][1] + b * j.d2u[1][1]) / k);
    f.B[1] = prefk * (k * a * j.u - I * a * j.du[2] - (a * j.d2u[0][0] + b * j.d2u[0][1]) / k);
    f.B[2] = prefk * I * (a * j.du[1] - b * j.du[0]);
    return f;
}

}  // namespace detail

inline FieldSample field_sample(const LGBeam& beam, const std::array<double, 3>& point) {
    return detail::assemble_fields(beam, scalar_jet(beam, point), point[2]);
}

inline Vec3c electric_field(const LGBeam& beam, const std::array<double, 3>& point) {
    return field_sample(beam, point).E;
}

inline Vec3c magnetic_field(const LGBeam& beam, const std::array<double, 3>& point) {
    return field_sample(beam, point).B;
}

inline Mat3c electric_gradient(const LGBeam& beam, const std::array<double, 3>& point) {
    return field_sample(beam, point).gradE;
}

inline EnergyDensity energy_densities(const LGBeam& beam, const std::array<double, 3>& point) {
    const FieldSample f = field_sample(beam, point);
    const double c = 1.0 / (16.0 * std::numbers::pi);
    return EnergyDensity{c * norm_sq(f.E), c * norm_sq(f.B)};
}

/// On-axis magnetic energy density for |m| = 2 (closed form):
/// I_M = E0^2 * 16(p+1)(p+2) |alpha -+ i beta|^2 / (16 pi * pi (k w0)^4),
/// with alpha - i beta for m = +2 and alpha + i beta for m = -2.
inline double axial_magnetic_density(const LGBeam& beam) {
    if (std::abs(beam.m) != 2)
        throw std::invalid_argument("axial_magnetic_density: closed form requires |m| = 2");
    const cplx pol = beam.m > 0 ? beam.alpha - I * beam.beta : beam.alpha + I * beam.beta;
    const double kw0 = beam.k * beam.w0;
    const double pi = std::numbers::pi;
    return beam.E0 * beam.E0 / (16.0 * pi) * 16.0 * (beam.p + 1) * (beam.p + 2) *
           std::norm(pol) / (pi * kw0 * kw0 * kw0 * kw0);
}

}  // namespace vortexprobe
