#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "field_types.hpp"
#include "lg_beam.hpp"

namespace vortexprobe {

enum class Channel { E1, M1, E2 };

inline std::string to_string(Channel c) {
    switch (c) {
        case Channel::E1: return "E1";
        case Channel::M1: return "M1";
        case Channel::E2: return "E2";
    }
    return "?";
}

inline int max_abs_m_projection(Channel c) { return c == Channel::E2 ? 2 : 1; }

/// Detector matrix-element amplitudes d^(M), m^(M) (M = -1..1) and Q^(M) (M = -2..2).
struct MultipoleMoments {
    std::array<cplx, 3> d{};
    std::array<cplx, 3> mm{};
    std::array<cplx, 5> q{};

    cplx dipole(int M) const { return d.at(M + 1); }
    cplx magnetic(int M) const { return mm.at(M + 1); }
    cplx quadrupole(int M) const { return q.at(M + 2); }

    void set_dipole(int M, cplx v) { d.at(M + 1) = v; }
    void set_magnetic(int M, cplx v) { mm.at(M + 1) = v; }
    void set_quadrupole(int M, cplx v) { q.at(M + 2) = v; }
};

/// All moments along each channel set to unity (formal detector).
inline MultipoleMoments unit_moments() {
    MultipoleMoments mom;
    mom.d.fill(cplx{1.0, 0.0});
    mom.mm.fill(cplx{1.0, 0.0});
    mom.q.fill(cplx{1.0, 0.0});
    return mom;
}

/// Spherically symmetric atom: all d^(M) = dR, all Q^(M) = QR,
/// m^(+-1) = mR and m^(0) = 0.
inline MultipoleMoments spherical_atom_moments(cplx dR, cplx mR, cplx QR) {
    MultipoleMoments mom;
    mom.d.fill(dR);
    mom.q.fill(QR);
    mom.mm = {mR, cplx{0.0, 0.0}, mR};
    return mom;
}

struct DetectorSpec {
    MultipoleMoments moments;
    double delta = 1.0;   // excitation linewidth
    double omega0 = 1.0;  // transition frequency
    double hbar = 1.0;

    DetectorSpec(MultipoleMoments mom, double delta_ = 1.0, double omega0_ = 1.0,
                 double hbar_ = 1.0)
        : moments(mom), delta(delta_), omega0(omega0_), hbar(hbar_) {
        if (!(delta > 0.0)) throw std::invalid_argument("DetectorSpec: delta must be positive");
    }
};

/// Cartesian dipole (or magnetic dipole) vector for projection M:
/// d^(+-1) = amp (+-1, i, 0), d^(0) = amp (0, 0, sqrt2).
inline Vec3c cartesian_dipole(int M, cplx amp) {
    switch (M) {
        case 1: return {amp, I * amp, cplx{}};
        case -1: return {-amp, I * amp, cplx{}};
        case 0: return {cplx{}, cplx{}, std::sqrt(2.0) * amp};
    }
    throw std::invalid_argument("cartesian_dipole: M must be in {-1,0,1}");
}

/// Cartesian symmetric traceless quadrupole matrix for projection M.
inline Mat3c cartesian_quadrupole(int M, cplx amp) {
    Mat3c Q{};
    switch (M) {
        case 0: {
            const cplx c = std::sqrt(2.0 / 3.0) * amp;
            Q[0][0] = -c;
            Q[1][1] = -c;
            Q[2][2] = 2.0 * c;
            return Q;
        }
        case 1:
        case -1: {
            const cplx s = (M == 1) ? -amp : amp;
            Q[0][2] = s;
            Q[2][0] = s;
            Q[1][2] = -I * amp;
            Q[2][1] = -I * amp;
            return Q;
        }
        case 2:
        case -2: {
            const cplx s = (M == 2) ? I * amp : -I * amp;
            Q[0][0] = amp;
            Q[1][1] = -amp;
            Q[0][1] = s;
            Q[1][0] = s;
            return Q;
        }
    }
    throw std::invalid_argument("cartesian_quadrupole: M must be in {-2..2}");
}

/// Excitation amplitude T for one channel and projection M.
/// No complex conjugation on either factor: T = d.E, m.B, Q:gradE.
inline cplx amplitude(const DetectorSpec& spec, Channel channel, int M, const FieldSample& field) {
    if (std::abs(M) > max_abs_m_projection(channel))
        throw std::invalid_argument("amplitude: M out of range for channel");
    switch (channel) {
        case Channel::E1:
            return dot(cartesian_dipole(M, spec.moments.dipole(M)), field.E);
        case Channel::M1:
            return dot(cartesian_dipole(M, spec.moments.magnetic(M)), field.B);
        case Channel::E2: {
            const Mat3c Q = cartesian_quadrupole(M, spec.moments.quadrupole(M));
            cplx t{};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) t += Q[i][j] * field.gradE[i][j];
            return t;
        }
    }
    throw std::invalid_argument("amplitude: bad channel");
}

struct ChannelSelection {
    Channel channel;
    int M;
};

/// R = |sum_selected T|^2 / (hbar^2 Delta), coherent over the selected channels.
inline double excitation_rate(const DetectorSpec& spec, const FieldSample& field,
                              const std::vector<ChannelSelection>& channels) {
    if (channels.empty()) throw std::invalid_argument("excitation_rate: empty channel set");
    cplx sum{};
    for (const auto& c : channels) sum += amplitude(spec, c.channel, c.M, field);
    return std::norm(sum) / (spec.hbar * spec.hbar * spec.delta);
}

/// Closed-form on-axis rate for |m| = 2 with matched circular polarization,
/// coherent M1 + E2 excitation of the M = sgn(m) channel:
/// R = E0^2 64(p+1)(p+2) / (hbar^2 Delta pi (k w0)^4) |m_amp + sgn(m) k q_amp|^2.
inline double on_axis_rate_m2(const LGBeam& beam, cplx m1_amp, cplx q1_amp, double delta,
                              double hbar = 1.0) {
    if (std::abs(beam.m) != 2) throw std::invalid_argument("on_axis_rate_m2: requires |m| = 2");
    const double want_sigma = beam.m > 0 ? -1.0 : 1.0;
    if (std::abs(beam.spin() - want_sigma) > 1e-9)
        throw std::invalid_argument("on_axis_rate_m2: circular polarization must match sign of m");
    const double kw0 = beam.k * beam.w0;
    const double sgn = beam.m > 0 ? 1.0 : -1.0;
    return beam.E0 * beam.E0 * 64.0 * (beam.p + 1) * (beam.p + 2) /
           (hbar * hbar * delta * std::numbers::pi * kw0 * kw0 * kw0 * kw0) *
           std::norm(m1_amp + sgn * beam.k * q1_amp);
}

/// Order-of-magnitude on-axis rate for a chiral detector of size a with
/// m ~ kQ ~ k e a^2 added in phase (e = 1 in normalized units):
/// R = E0^2 256(p+1)(p+2) / (hbar^2 Delta pi (k w0)^2) (a/w0)^2 a^2.
inline double chiral_estimate(double a, const LGBeam& beam, double delta, double hbar = 1.0) {
    if (!(a > 0.0)) throw std::invalid_argument("chiral_estimate: a must be positive");
    const double kw0 = beam.k * beam.w0;
    const double ratio = a / beam.w0;
    return beam.E0 * beam.E0 * 256.0 * (beam.p + 1) * (beam.p + 2) /
           (hbar * hbar * delta * std::numbers::pi * kw0 * kw0) * ratio * ratio * a * a;
}

/// On-axis excitation amplitudes for beam m = -2..2 and all valid detector
/// projections, with unit moments, normalized by E0. Entries below 1e-13 of
/// the table maximum are snapped to exact zero.
struct AmplitudeTable {
    Channel channel;
    cplx alpha, beta;
    int p;
    double k, w0;
    // rows m = -2..2; columns M = -Mmax..Mmax (3 valid for E1/M1, 5 for E2)
    std::array<std::array<cplx, 5>, 5> entries{};

    cplx at(int m, int M) const { return entries.at(m + 2).at(M + 2); }
};

inline AmplitudeTable amplitude_table(Channel channel, cplx alpha, cplx beta, int p, double k,
                                      double w0) {
    AmplitudeTable table{channel, alpha, beta, p, k, w0, {}};
    const DetectorSpec spec(unit_moments());
    const int Mmax = max_abs_m_projection(channel);
    double peak = 0.0;
    for (int m = -2; m <= 2; ++m) {
        const LGBeam beam(k, w0, p, m, alpha, beta);
        const FieldSample f = field_sample(beam, {0.0, 0.0, 0.0});
        for (int M = -Mmax; M <= Mmax; ++M) {
            const cplx t = amplitude(spec, channel, M, f) / beam.E0;
            table.entries[m + 2][M + 2] = t;
            peak = std::max(peak, std::abs(t));
        }
    }
    for (auto& row : table.entries)
        for (auto& e : row)
            if (std::abs(e) < 1e-13 * peak) e = cplx{};
    return table;
}

/// Result of checking the on-axis selection rule M = m + sigma across
/// channels for both circular polarizations.
struct SelectionRuleReport {
    bool pass = true;
    double worst_forbidden = 0.0;  // largest |forbidden entry| / |table max|
    bool any_direct_m_equals_M = false;
    struct Cell {
        int sigma;
        Channel channel;
        int m, M;
        double magnitude;
    };
    std::vector<Cell> allowed_nonzero;
};

inline SelectionRuleReport selection_rule_scan(int p, double k, double w0) {
    SelectionRuleReport report;
    for (int sigma : {-1, 1}) {
        const double s = 1.0 / std::sqrt(2.0);
        const cplx alpha{s, 0.0};
        const cplx beta = sigma < 0 ? cplx{0.0, s} : cplx{0.0, -s};
        for (Channel channel : {Channel::E1, Channel::M1, Channel::E2}) {
            const AmplitudeTable table = amplitude_table(channel, alpha, beta, p, k, w0);
            double peak = 0.0;
            const int Mmax = max_abs_m_projection(channel);
            for (int m = -2; m <= 2; ++m)
                for (int M = -Mmax; M <= Mmax; ++M)
                    peak = std::max(peak, std::abs(table.at(m, M)));
            if (peak == 0.0) continue;
            for (int m = -2; m <= 2; ++m) {
                for (int M = -Mmax; M <= Mmax; ++M) {
                    const double mag = std::abs(table.at(m, M));
                    if (M == m + sigma) {
                        if (mag > 0.0)
                            report.allowed_nonzero.push_back({sigma, channel, m, M, mag});
                    } else {
                        const double rel = mag / peak;
                        report.worst_forbidden = std::max(report.worst_forbidden, rel);
                        if (rel > 1e-12) report.pass = false;
                        if (m == M && mag > 0.0) report.any_direct_m_equals_M = true;
                    }
                }
            }
        }
    }
    if (report.any_direct_m_equals_M) report.pass = false;
    return report;
}

struct ProfilePoint {
    double r;
    double rate;            // (T / (E0 * moment))^2 at (r, 0, 0)
    double energy_density;  // I_E + I_M, unnormalized
};

/// Radial profile of the normalized single-channel excitation rate across the
/// waist plane, along phi = 0, with the total energy density alongside.
inline std::vector<ProfilePoint> radial_rate_profile(const LGBeam& beam, const DetectorSpec& spec,
                                                     Channel channel, int M,
                                                     const std::vector<double>& radii) {
    std::vector<ProfilePoint> profile;
    profile.reserve(radii.size());
    cplx moment;
    switch (channel) {
        case Channel::E1: moment = spec.moments.dipole(M); break;
        case Channel::M1: moment = spec.moments.magnetic(M); break;
        case Channel::E2: moment = spec.moments.quadrupole(M); break;
    }
    if (moment == cplx{})
        throw std::invalid_argument("radial_rate_profile: zero moment for requested channel");
    for (double r : radii) {
        if (r < 0.0) throw std::invalid_argument("radial_rate_profile: radii must be >= 0");
        const FieldSample f = field_sample(beam, {r, 0.0, 0.0});
        const cplx t = amplitude(spec, channel, M, f);
        const double c = 1.0 / (16.0 * std::numbers::pi);
        profile.push_back({r, std::norm(t / (beam.E0 * moment)),
                           c * (norm_sq(f.E) + norm_sq(f.B))});
    }
    return profile;
}

}  // namespace vortexprobe
