#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace vortexprobe {

using cplx = std::complex<double>;
using Vec3c = std::array<cplx, 3>;
// Mat3c[i][j] -- row i is the derivative direction where the matrix holds a gradient.
using Mat3c = std::array<std::array<cplx, 3>, 3>;

inline constexpr cplx I{0.0, 1.0};

/// Complex E, B and grad(E) at one point. gradE[i][j] = dE_j/dr_i.
struct FieldSample {
    Vec3c E{};
    Vec3c B{};
    Mat3c gradE{};
};

struct EnergyDensity {
    double electric = 0.0;  // (1/16pi)|E|^2, cycle-averaged complex-amplitude convention
    double magnetic = 0.0;  // (1/16pi)|B|^2
    double total() const { return electric + magnetic; }
};

inline double norm_sq(const Vec3c& v) {
    return std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]);
}

inline cplx dot(const Vec3c& a, const Vec3c& b) {
    // no conjugation: T = d.E convention
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3c curl_from_gradient(const Mat3c& g) {
    return Vec3c{g[1][2] - g[2][1], g[2][0] - g[0][2], g[0][1] - g[1][0]};
}

inline cplx trace(const Mat3c& g) { return g[0][0] + g[1][1] + g[2][2]; }

}  // namespace vortexprobe
