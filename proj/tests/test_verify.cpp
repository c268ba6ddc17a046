#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "vortexprobe/detector.hpp"
#include "vortexprobe/verify.hpp"

using namespace vortexprobe;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("quadrature rule basics") {
    const QuadratureRule r5 = gauss_legendre(5);
    double wsum = 0.0, x2 = 0.0;
    for (int i = 0; i < 5; ++i) {
        wsum += r5.weights[i];
        x2 += r5.weights[i] * r5.nodes[i] * r5.nodes[i];
    }
    CHECK(wsum == Catch::Approx(2.0).epsilon(1e-14));
    CHECK(x2 == Catch::Approx(2.0 / 3.0).epsilon(1e-14));
    // degree-9 polynomial integrated exactly by 5 nodes
    double x8 = 0.0;
    for (int i = 0; i < 5; ++i) x8 += r5.weights[i] * std::pow(r5.nodes[i], 8);
    CHECK(x8 == Catch::Approx(2.0 / 9.0).epsilon(1e-13));
    CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("adaptive 1-D quadrature") {
    SECTION("constant") {
        CHECK(quad_1d([](double) { return cplx{1.0, 0.0}; }, 0.0, 1.0).value.real() ==
              Catch::Approx(1.0).epsilon(1e-14));
    }

    SECTION("spectral-density integrand against the closed antiderivative") {
        // integral_0^b g^2/sqrt(1-g^2) dg = (asin b - b sqrt(1-b^2)) / 2
        const double b = 0.9;
        const QuadResult q =
            quad_1d([](double g) { return cplx{g * g / std::sqrt(1.0 - g * g), 0.0}; }, 1e-14, b,
                    1e-13);
        const double want = 0.5 * (std::asin(b) - b * std::sqrt(1.0 - b * b));
        CHECK(q.value.real() == Catch::Approx(want).epsilon(1e-12));
        CHECK(q.value.imag() == Catch::Approx(0.0).margin(1e-14));
    }

    SECTION("narrow peak converges to its total weight") {
        for (double w : {0.05, 0.01}) {
            const QuadResult q = quad_1d(
                [w](double g) {
                    const double d = (g - 0.6) / w;
                    return cplx{std::exp(-d * d) / (w * std::sqrt(pi)), 0.0};
                },
                0.0, 1.0, 1e-12);
            CHECK(q.value.real() == Catch::Approx(1.0).epsilon(1e-9));
        }
    }

    CHECK_THROWS_AS(quad_1d([](double) { return cplx{}; }, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("scalar finite differences") {
    const FDConfig cfg{.h = 0.0, .levels = 3, .scale = 1.0};
    double err = 0.0;
    CHECK(fd_derivative([](double x) { return x * x * x; }, 2.0, cfg, &err) ==
          Catch::Approx(12.0).epsilon(1e-10));
    CHECK(err < 1e-6);
    CHECK(fd_derivative([](double x) { return std::sin(x); }, 0.7, cfg) ==
          Catch::Approx(std::cos(0.7)).epsilon(1e-10));
}

TEST_CASE("vector-field jet oracle") {
    SECTION("constant field has zero derivatives") {
        const FDJet j = fd_jet([](const std::array<double, 3>&) {
            return Vec3c{cplx{1.0, 2.0}, cplx{-0.5, 0.0}, cplx{0.0, 3.0}};
        }, {0.2, -0.1, 0.4});
        for (const auto& row : j.jacobian)
            for (const auto& c : row) CHECK(std::abs(c) < 1e-12);
    }

    SECTION("linear field recovers its slope matrix") {
        const FDJet j = fd_jet([](const std::array<double, 3>& p) {
            return Vec3c{cplx{p[0], 0.0}, cplx{2.0 * p[1], 0.0}, cplx{3.0 * p[2], 0.0}};
        }, {1.0, 1.0, 1.0});
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) {
                const double want = (i == k) ? double(i + 1) : 0.0;
                CHECK(j.jacobian[i][k].real() == Catch::Approx(want).margin(1e-10));
            }
    }

    SECTION("rejects non-finite samples") {
        CHECK_THROWS_AS(fd_jet([](const std::array<double, 3>&) {
                            return Vec3c{cplx{std::nan(""), 0.0}, cplx{}, cplx{}};
                        }, {0.0, 0.0, 0.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("error estimate bounds the actual error for smooth test functions") {
    // polynomial x gaussian family with known derivatives
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> cdist(-2.0, 2.0);
    std::uniform_real_distribution<double> xdist(-1.0, 1.0);
    const FDConfig cfg{.h = 0.0, .levels = 3, .scale = 1.0};
    int covered = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        const double a = cdist(rng), b = cdist(rng), c = cdist(rng);
        auto f = [&](double x) { return (a + b * x + c * x * x) * std::exp(-x * x); };
        auto fp = [&](double x) {
            return (b + 2.0 * c * x) * std::exp(-x * x) -
                   2.0 * x * (a + b * x + c * x * x) * std::exp(-x * x);
        };
        const double x = xdist(rng);
        double err = 0.0;
        const double d = fd_derivative(f, x, cfg, &err);
        if (std::abs(d - fp(x)) <= std::max(err, 1e-14)) ++covered;
    }
    CHECK(covered >= trials * 95 / 100);
}

TEST_CASE("analytic gradients agree with the jet oracle") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> coord(-1.8, 1.8);
    for (int p : {0, 2}) {
        for (int m : {-2, 0, 2}) {
            const LGBeam beam = make_circular_lg(6.0, 1.0, p, m, -1);
            for (int trial = 0; trial < 6; ++trial) {
                const std::array<double, 3> pt{coord(rng), coord(rng), coord(rng)};
                const Mat3c analytic = electric_gradient(beam, pt);
                const FDJet oracle = fd_jet(
                    [&](const std::array<double, 3>& q) { return electric_field(beam, q); }, pt,
                    FDConfig{.h = 0.0, .levels = 3, .scale = 1.0});
                double amax = 0.0;
                for (const auto& row : analytic)
                    for (const auto& c : row) amax = std::max(amax, std::abs(c));
                for (int i = 0; i < 3; ++i)
                    for (int k = 0; k < 3; ++k)
                        CHECK(std::abs(analytic[i][k] - oracle.jacobian[i][k]) <= 1e-7 * amax);
            }
        }
    }
}

TEST_CASE("Maxwell residual diagnostics") {
    SECTION("the paraxial divergence artifact shrinks with tighter focusing") {
        const LGBeam loose = make_circular_lg(6.0, 1.0, 1, 2, -1);
        const LGBeam tight = make_circular_lg(12.0, 1.0, 1, 2, -1);
        const std::array<double, 3> pt{0.6, 0.2, 0.3};
        const double dloose = maxwell_residuals(loose, pt).div_e;
        const double dtight = maxwell_residuals(tight, pt).div_e;
        CHECK(dloose / dtight == Catch::Approx(4.0).epsilon(0.25));
        CHECK(maxwell_residuals(loose, pt).faraday < 1e-10);
    }

    SECTION("the nondiffracting beam is exact") {
        const BesselBeam bb(1.0, 2, cplx{1.0 / std::sqrt(2.0), 0.0},
                            cplx{0.0, 1.0 / std::sqrt(2.0)}, {{0.6, 1.0}});
        const MaxwellResiduals r = maxwell_residuals(bb, {0.9, -0.4, 1.2});
        CHECK(r.faraday < 1e-10);
        CHECK(r.div_e < 1e-9);
    }
}

TEST_CASE("sphere quadrature reproduces the multipole patterns") {
    SECTION("dipole") {
        const Vec3c d0 = sphere_dipole_moment(0);
        CHECK(std::abs(d0[0]) < 1e-10);
        CHECK(std::abs(d0[1]) < 1e-10);
        CHECK(std::abs(d0[2]) > 0.1);

        // M = +-1 components follow the (+-1, i, 0) shape after normalization
        for (int M : {-1, 1}) {
            const Vec3c d = sphere_dipole_moment(M);
            const cplx scale = d[0] / double(M);
            CHECK(std::abs(d[1] - I * scale) < 1e-10 * std::abs(scale));
            CHECK(std::abs(d[2]) < 1e-10 * std::abs(scale));
        }
        // common amplitude across projections, z entry sqrt(2) x transverse
        CHECK(std::abs(sphere_dipole_moment(0)[2]) ==
              Catch::Approx(std::sqrt(2.0) * std::abs(sphere_dipole_moment(1)[0]))
                  .epsilon(1e-9));
        CHECK_THROWS_AS(sphere_dipole_moment(2), std::invalid_argument);
    }

    SECTION("magnetic dipole: the M = 0 moment vanishes for a spherical atom") {
        const Vec3c m0 = sphere_magnetic_moment(0);
        for (const auto& c : m0) CHECK(std::abs(c) < 1e-12);
        const Vec3c m1 = sphere_magnetic_moment(1);
        CHECK(std::abs(m1[0]) > 1e-3);
        CHECK(std::abs(m1[1] - I * m1[0]) < 1e-9 * std::abs(m1[0]));
        const Vec3c mm1 = sphere_magnetic_moment(-1);
        CHECK(std::abs(mm1[0] + std::conj(m1[0])) < 1e-9 * std::abs(m1[0]));
    }

    SECTION("quadrupole patterns") {
        // entries ordered xx, yy, zz, xy, xz, yz
        const auto q2 = sphere_quadrupole_moment(2);
        const cplx scale = q2[0];
        CHECK(std::abs(scale) > 1e-3);
        CHECK(std::abs(q2[1] + scale) < 1e-9 * std::abs(scale));
        CHECK(std::abs(q2[3] - I * scale) < 1e-9 * std::abs(scale));
        CHECK(std::abs(q2[2]) < 1e-9 * std::abs(scale));
        CHECK(std::abs(q2[4]) < 1e-9 * std::abs(scale));
        CHECK(std::abs(q2[5]) < 1e-9 * std::abs(scale));

        const auto q0 = sphere_quadrupole_moment(0);
        CHECK(std::abs(q0[2] + 2.0 * q0[0]) < 1e-9 * std::abs(q0[2]));
        CHECK(std::abs(q0[0] - q0[1]) < 1e-9 * std::abs(q0[0]));

        const auto q1 = sphere_quadrupole_moment(1);
        CHECK(std::abs(q1[5] - I * q1[4]) < 1e-9 * std::abs(q1[4]));
        CHECK(std::abs(q1[0]) < 1e-9 * std::abs(q1[4]));
    }

    SECTION("relative ratios match the cartesian constructors") {
        // the full 3x3 built from quadrature entries is proportional to the
        // closed-form pattern with one constant for every M
        cplx ref{};
        for (int M = -2; M <= 2; ++M) {
            const auto q = sphere_quadrupole_moment(M);
            const Mat3c quad{{{q[0], q[3], q[4]}, {q[3], q[1], q[5]}, {q[4], q[5], q[2]}}};
            const Mat3c pattern = cartesian_quadrupole(M, 1.0);
            cplx ratio{};
            double best = 0.0;
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k)
                    if (std::abs(pattern[i][k]) > best) {
                        best = std::abs(pattern[i][k]);
                        ratio = quad[i][k] / pattern[i][k];
                    }
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k)
                    CHECK(std::abs(quad[i][k] - ratio * pattern[i][k]) < 1e-9 * std::abs(ratio));
            if (M == -2) ref = ratio;
            CHECK(std::abs(std::abs(ratio) - std::abs(ref)) < 1e-9 * std::abs(ref));
        }
    }
}
