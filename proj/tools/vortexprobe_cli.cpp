// Command-line front end: deterministic CSV/JSON datasets for beam field
// maps, on-axis amplitude tables, radial excitation-rate profiles, axial
// Bessel-beam checks, and the numerical verification suite.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vortexprobe/vortexprobe.hpp"

using namespace vortexprobe;
using nlohmann::json;

namespace {

constexpr int kExitBadArgs = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerifyFailed = 3;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

int thread_budget() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("VORTEXPROBE_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return static_cast<int>(n);
}

// Evaluate cell(i) for i in [0, count) across the thread budget; results land
// in a preallocated vector so the output order never depends on scheduling.
template <typename Cell>
void parallel_for(int count, const Cell& cell) {
    const int threads = std::min(thread_budget(), std::max(count, 1));
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (int i = t; i < count; i += threads) cell(i);
        });
    for (auto& th : pool) th.join();
}

cplx parse_complex(const std::string& s) {
    // accepts "1.5", "2i", "-0.3i", "1+2i", "1-2i"
    std::string t = s;
    if (t.empty()) throw std::invalid_argument("empty complex literal");
    bool imag_only = t.back() == 'i' || t.back() == 'I';
    // split at the last +/- that is not an exponent sign and not leading
    size_t split = std::string::npos;
    for (size_t i = t.size(); i-- > 1;) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto to_num = [](std::string part) {
        if (!part.empty() && (part.back() == 'i' || part.back() == 'I')) part.pop_back();
        if (part.empty() || part == "+") part = "1";
        if (part == "-") part = "-1";
        size_t used = 0;
        const double v = std::stod(part, &used);
        if (used != part.size()) throw std::invalid_argument("bad complex literal");
        return v;
    };
    if (split == std::string::npos)
        return imag_only ? cplx{0.0, to_num(t)} : cplx{to_num(t), 0.0};
    if (!imag_only) throw std::invalid_argument("two-part complex literal must end in i");
    return cplx{to_num(t.substr(0, split)), to_num(t.substr(split))};
}

struct Polarization {
    cplx alpha{1.0, 0.0};
    cplx beta{};
    std::string label = "linear";
};

Polarization parse_polarization(const std::string& s) {
    const double r = 1.0 / std::sqrt(2.0);
    if (s == "circ-") return {cplx{r, 0.0}, cplx{0.0, r}, s};
    if (s == "circ+") return {cplx{r, 0.0}, cplx{0.0, -r}, s};
    if (s == "linear") return {cplx{1.0, 0.0}, cplx{}, s};
    const size_t comma = s.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("polarization must be circ-, circ+, linear, or alpha,beta");
    Polarization p{parse_complex(s.substr(0, comma)), parse_complex(s.substr(comma + 1)), s};
    const double norm = std::norm(p.alpha) + std::norm(p.beta);
    if (std::abs(norm - 1.0) > 1e-9) {
        const double inv = 1.0 / std::sqrt(norm);
        p.alpha *= inv;
        p.beta *= inv;
    }
    return p;
}

Channel parse_channel(const std::string& s) {
    if (s == "E1") return Channel::E1;
    if (s == "M1") return Channel::M1;
    if (s == "E2") return Channel::E2;
    throw std::invalid_argument("channel must be E1, M1 or E2");
}

struct OutputFile {
    std::ofstream stream;
    explicit OutputFile(const std::string& path) : stream(path) {
        if (!stream) throw std::runtime_error("cannot open output file: " + path);
    }
};

struct BeamArgs {
    int p = 0;
    int m = 0;
    double kw0 = 6.0;
    std::string pol = "circ-";

    LGBeam make() const {
        const Polarization q = parse_polarization(pol);
        // w0 = 1: all lengths in the outputs are in waist units
        return LGBeam(kw0, 1.0, p, m, q.alpha, q.beta);
    }
};

void add_beam_flags(CLI::App* cmd, BeamArgs* args) {
    cmd->add_option("--p", args->p, "radial index")->check(CLI::Range(0, 32));
    cmd->add_option("--m", args->m, "azimuthal index")->check(CLI::Range(-8, 8));
    cmd->add_option("--kw0", args->kw0, "waist size in wavenumbers (k*w0)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--pol", args->pol, "polarization: circ-, circ+, linear, or alpha,beta");
}

void echo_params(std::ostream& os, const BeamArgs& beam) {
    os << "# p=" << beam.p << " m=" << beam.m << " kw0=" << fmt(beam.kw0)
       << " pol=" << beam.pol << " w0=1\n";
}

// ---------------------------------------------------------------------------

int cmd_field_map(const BeamArgs& beam_args, int grid, double extent, const std::string& out) {
    const LGBeam beam = beam_args.make();
    const int cells = grid * grid;
    std::vector<FieldSample> samples(cells);
    std::vector<EnergyDensity> densities(cells);
    parallel_for(cells, [&](int i) {
        const int row = i / grid, col = i % grid;
        const double x = -extent + 2.0 * extent * col / (grid - 1);
        const double y = -extent + 2.0 * extent * row / (grid - 1);
        samples[i] = field_sample(beam, {x, y, 0.0});
        const double c = 1.0 / (16.0 * std::numbers::pi);
        densities[i] = EnergyDensity{c * norm_sq(samples[i].E), c * norm_sq(samples[i].B)};
    });

    OutputFile file(out);
    file.stream << "# dataset: waist-plane field map\n";
    echo_params(file.stream, beam_args);
    file.stream << "# grid=" << grid << " extent=" << fmt(extent) << "\n";
    file.stream << "# columns: x_over_w0,y_over_w0,re_ex,im_ex,re_ey,im_ey,re_ez,im_ez,"
                   "re_bx,im_bx,re_by,im_by,re_bz,im_bz,i_e,i_m\n";
    for (int i = 0; i < cells; ++i) {
        const int row = i / grid, col = i % grid;
        const double x = -extent + 2.0 * extent * col / (grid - 1);
        const double y = -extent + 2.0 * extent * row / (grid - 1);
        const FieldSample& f = samples[i];
        file.stream << fmt(x) << ',' << fmt(y);
        for (const auto& v : {f.E[0], f.E[1], f.E[2], f.B[0], f.B[1], f.B[2]})
            file.stream << ',' << fmt(v.real()) << ',' << fmt(v.imag());
        file.stream << ',' << fmt(densities[i].electric) << ',' << fmt(densities[i].magnetic)
                    << '\n';
    }
    return 0;
}

int cmd_radial_profile(const BeamArgs& beam_args, Channel channel, int M, int grid, double extent,
                       const std::string& out) {
    const LGBeam beam = beam_args.make();
    const DetectorSpec spec(unit_moments());
    std::vector<double> radii(grid);
    for (int i = 0; i < grid; ++i) radii[i] = extent * i / (grid - 1);
    const auto profile = radial_rate_profile(beam, spec, channel, M, radii);

    OutputFile file(out);
    file.stream << "# dataset: radial excitation-rate profile, waist plane, phi=0\n";
    echo_params(file.stream, beam_args);
    file.stream << "# channel=" << to_string(channel) << " M=" << M << " grid=" << grid
                << " extent=" << fmt(extent) << "\n";
    file.stream << "# rate normalization: (T / (E0 * moment))^2 with unit moments\n";
    file.stream << "# columns: r_over_w0,normalized_rate,total_energy_density\n";
    for (const auto& pt : profile)
        file.stream << fmt(pt.r) << ',' << fmt(pt.rate) << ',' << fmt(pt.energy_density) << '\n';
    return 0;
}

int cmd_tables(const BeamArgs& beam_args, Channel channel, const std::string& format,
               const std::string& out) {
    const Polarization q = parse_polarization(beam_args.pol);
    const AmplitudeTable table =
        amplitude_table(channel, q.alpha, q.beta, beam_args.p, beam_args.kw0, 1.0);
    const int Mmax = max_abs_m_projection(channel);

    OutputFile file(out);
    if (format == "json") {
        json doc;
        doc["dataset"] = "on-axis excitation amplitudes";
        doc["channel"] = to_string(channel);
        doc["p"] = beam_args.p;
        doc["kw0"] = beam_args.kw0;
        doc["pol"] = beam_args.pol;
        doc["normalization"] = "T / (E0 * unit moment)";
        json rows = json::array();
        for (int m = -2; m <= 2; ++m)
            for (int M = -Mmax; M <= Mmax; ++M) {
                const cplx t = table.at(m, M);
                rows.push_back({{"m", m},
                                {"M", M},
                                {"re", t.real()},
                                {"im", t.imag()},
                                {"abs", std::abs(t)},
                                {"zero", t == cplx{}}});
            }
        doc["entries"] = std::move(rows);
        file.stream << doc.dump(2) << '\n';
        return 0;
    }
    file.stream << "# dataset: on-axis excitation amplitudes\n";
    echo_params(file.stream, beam_args);
    file.stream << "# channel=" << to_string(channel)
                << " normalization: T / (E0 * unit moment)\n";
    file.stream << "# columns: m,M,re,im,abs,zero\n";
    for (int m = -2; m <= 2; ++m)
        for (int M = -Mmax; M <= Mmax; ++M) {
            const cplx t = table.at(m, M);
            file.stream << m << ',' << M << ',' << fmt(t.real()) << ',' << fmt(t.imag()) << ','
                        << fmt(std::abs(t)) << ',' << (t == cplx{} ? 1 : 0) << '\n';
        }
    return 0;
}

int cmd_bessel_axis(int m, const std::string& pol, const std::vector<double>& nodes,
                    const std::string& out) {
    const Polarization q = parse_polarization(pol);
    const double k = 1.0;
    std::vector<SpectrumNode> spectrum;
    for (double g : nodes) spectrum.push_back({g * k, cplx{1.0, 0.0}});
    const BesselBeam bb(k, m, q.alpha, q.beta, spectrum);

    const double closed = spectrum.empty() ? 0.0 : bessel_axial_magnetic_density(bb);
    const double direct =
        norm_sq(bessel_magnetic_field(bb, {0.0, 0.0, 0.0})) / (8.0 * std::numbers::pi);
    const double rel =
        (closed == 0.0 && direct == 0.0) ? 0.0 : std::abs(closed - direct) / std::max(closed, direct);

    OutputFile file(out);
    file.stream << "# dataset: axial magnetic energy density of a nondiffracting beam\n";
    file.stream << "# m=" << m << " pol=" << pol << " k=1, node g values in units of k\n";
    file.stream << "# columns: closed_form,direct_field,rel_diff\n";
    file.stream << fmt(closed) << ',' << fmt(direct) << ',' << fmt(rel) << '\n';
    return rel < 1e-8 ? 0 : kExitVerifyFailed;
}

// ---------------------------------------------------------------------------
// Verification suite: each check prints one line with the measured residual
// and its threshold; any failure flips the exit code to 3.

struct VerifyRun {
    bool mutate_faraday = false;
    bool ok = true;
    std::ostringstream report;

    void check(const std::string& name, double measured, double threshold) {
        const bool pass = measured <= threshold;
        ok = ok && pass;
        report << (pass ? "PASS" : "FAIL") << ' ' << name << " residual=" << fmt(measured)
               << " threshold=" << fmt(threshold) << '\n';
    }

    FieldSample sample(const LGBeam& beam, const std::array<double, 3>& pt) const {
        FieldSample f = field_sample(beam, pt);
        if (mutate_faraday) f.B[1] = -f.B[1];  // deliberate-fault harness
        return f;
    }
};

void verify_faraday(VerifyRun& run) {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    double worst = 0.0;
    for (int p : {0, 1, 3})
        for (int m : {-2, 0, 1, 2})
            for (int pol = 0; pol < 3; ++pol) {
                const LGBeam b = pol == 0   ? make_linear_lg(6.0, 1.0, p, m)
                                 : pol == 1 ? make_circular_lg(6.0, 1.0, p, m, -1)
                                            : make_circular_lg(6.0, 1.0, p, m, 1);
                for (int trial = 0; trial < 6; ++trial) {
                    const FieldSample f = run.sample(b, {coord(rng), coord(rng), coord(rng)});
                    const Vec3c curl = curl_from_gradient(f.gradE);
                    double num = 0.0;
                    for (int i = 0; i < 3; ++i)
                        num += std::norm(I * b.k * f.B[i] - curl[i]);
                    worst = std::max(worst, std::sqrt(num / (b.k * b.k * norm_sq(f.B))));
                }
            }
    run.check("faraday identity (analytic curl vs analytic B)", worst, 1e-8);
}

void verify_fd_gradients(VerifyRun& run) {
    std::mt19937 rng(103);
    std::uniform_real_distribution<double> coord(-1.8, 1.8);
    double worst = 0.0;
    for (int p : {0, 2})
        for (int m : {0, 2}) {
            const LGBeam b = make_circular_lg(6.0, 1.0, p, m, -1);
            for (int trial = 0; trial < 5; ++trial) {
                const std::array<double, 3> pt{coord(rng), coord(rng), coord(rng)};
                const Mat3c analytic = run.sample(b, pt).gradE;
                const FDJet oracle = fd_jet(
                    [&](const std::array<double, 3>& q) { return electric_field(b, q); }, pt,
                    FDConfig{.h = 0.0, .levels = 3, .scale = 1.0});
                double amax = 0.0, diff = 0.0;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        amax = std::max(amax, std::abs(oracle.jacobian[i][j]));
                        diff = std::max(diff, std::abs(analytic[i][j] - oracle.jacobian[i][j]));
                    }
                worst = std::max(worst, diff / amax);
            }
        }
    run.check("electric gradient vs finite-difference oracle", worst, 1e-7);
}

void verify_selection_rules(VerifyRun& run) {
    double worst = 0.0;
    bool any_direct = false;
    for (int p = 0; p <= 4; ++p) {
        const SelectionRuleReport r = selection_rule_scan(p, 6.0, 1.0);
        worst = std::max(worst, r.worst_forbidden);
        any_direct = any_direct || r.any_direct_m_equals_M;
    }
    run.check("on-axis selection rule M = m + sigma", worst, 1e-12);
    run.check("no direct m = M coupling", any_direct ? 1.0 : 0.0, 0.5);
}

void verify_superposition(VerifyRun& run) {
    const double r = 1.0 / std::sqrt(2.0);
    double worst = 0.0;
    for (int p = 0; p <= 4; ++p)
        for (Channel ch : {Channel::E1, Channel::M1, Channel::E2}) {
            const AmplitudeTable lin = amplitude_table(ch, 1.0, 0.0, p, 6.0, 1.0);
            const AmplitudeTable cm = amplitude_table(ch, cplx{r, 0.0}, cplx{0.0, r}, p, 6.0, 1.0);
            const AmplitudeTable cp = amplitude_table(ch, cplx{r, 0.0}, cplx{0.0, -r}, p, 6.0, 1.0);
            double peak = 0.0;
            const int Mmax = max_abs_m_projection(ch);
            for (int m = -2; m <= 2; ++m)
                for (int M = -Mmax; M <= Mmax; ++M) peak = std::max(peak, std::abs(lin.at(m, M)));
            for (int m = -2; m <= 2; ++m)
                for (int M = -Mmax; M <= Mmax; ++M)
                    worst = std::max(worst, std::abs(lin.at(m, M) -
                                                     (cp.at(m, M) + cm.at(m, M)) / std::sqrt(2.0)) /
                                                peak);
        }
    run.check("linear polarization = circular superposition", worst, 1e-12);
}

void verify_closed_forms(VerifyRun& run) {
    double worst_im = 0.0, worst_rate = 0.0;
    for (int p : {0, 2, 4, 6})
        for (double kw0 : {4.0, 6.0, 10.0, 20.0}) {
            const LGBeam b = make_circular_lg(kw0, 1.0, p, 2, -1);
            const double direct = energy_densities(b, {0.0, 0.0, 0.0}).magnetic;
            worst_im = std::max(worst_im, std::abs(direct - axial_magnetic_density(b)) /
                                              axial_magnetic_density(b));

            const cplx m1{0.4, 0.1}, q1{-0.2, 0.7};
            MultipoleMoments mom;
            mom.set_magnetic(1, m1);
            mom.set_quadrupole(1, q1);
            const DetectorSpec spec(mom);
            const double rate = excitation_rate(spec, field_sample(b, {0.0, 0.0, 0.0}),
                                                {{Channel::M1, 1}, {Channel::E2, 1}});
            const double closed = on_axis_rate_m2(b, m1, q1, 1.0);
            worst_rate = std::max(worst_rate, std::abs(rate - closed) / closed);
        }
    run.check("axial magnetic density closed form", worst_im, 1e-10);
    run.check("axial coherent-rate closed form", worst_rate, 1e-10);

    const BesselBeam bb(1.0, 2, cplx{1.0 / std::sqrt(2.0), 0.0}, cplx{0.0, 1.0 / std::sqrt(2.0)},
                        {{0.6, 1.0}});
    const double closed = bessel_axial_magnetic_density(bb);
    const double direct =
        norm_sq(bessel_magnetic_field(bb, {0.0, 0.0, 0.0})) / (8.0 * std::numbers::pi);
    run.check("nondiffracting axial density closed form", std::abs(closed - direct) / closed,
              1e-8);
}

void verify_sphere_patterns(VerifyRun& run) {
    double worst = 0.0;
    for (const auto& c : sphere_magnetic_moment(0)) worst = std::max(worst, std::abs(c));
    run.check("spherical atom: vanishing longitudinal magnetic moment", worst, 1e-10);

    const Vec3c d1 = sphere_dipole_moment(1);
    run.check("dipole pattern (transverse circular shape)",
              std::abs(d1[1] - I * d1[0]) / std::abs(d1[0]), 1e-9);

    const auto q2 = sphere_quadrupole_moment(2);
    double qworst = std::max(std::abs(q2[1] + q2[0]), std::abs(q2[3] - I * q2[0]));
    qworst = std::max({qworst, std::abs(q2[2]), std::abs(q2[4]), std::abs(q2[5])});
    run.check("quadrupole pattern (|M| = 2 shape)", qworst / std::abs(q2[0]), 1e-9);
}

int cmd_verify(bool mutate, const std::string& out) {
    VerifyRun run;
    run.mutate_faraday = mutate;
    verify_faraday(run);
    verify_fd_gradients(run);
    verify_selection_rules(run);
    verify_superposition(run);
    verify_closed_forms(run);
    verify_sphere_patterns(run);

    const std::string text = run.report.str() +
                             (run.ok ? "all checks passed\n" : "verification FAILED\n");
    std::cout << text;
    if (!out.empty()) {
        OutputFile file(out);
        file.stream << text;
    }
    return run.ok ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"structured-beam field and multipole-detector toolkit"};
    app.require_subcommand(1);

    BeamArgs beam;
    int grid = 32;
    double extent = 2.0;
    std::string out;
    std::string format = "csv";
    std::string channel_name = "E2";
    int M = 1;
    std::vector<double> spectrum_nodes;
    bool mutate = false;

    auto* map = app.add_subcommand("field-map", "waist-plane E/B grid");
    add_beam_flags(map, &beam);
    map->add_option("--grid", grid, "points per side")->check(CLI::Range(2, 4096));
    map->add_option("--extent", extent, "half-width in waist units")->check(CLI::PositiveNumber);
    map->add_option("--out", out, "output path")->required();

    auto* profile = app.add_subcommand("radial-profile", "excitation rate vs radius");
    add_beam_flags(profile, &beam);
    profile->add_option("--channel", channel_name, "E1, M1 or E2");
    profile->add_option("--M", M, "detector projection")->check(CLI::Range(-2, 2));
    profile->add_option("--grid", grid, "radial sample count")->check(CLI::Range(2, 65536));
    profile->add_option("--extent", extent, "maximum radius in waist units")
        ->check(CLI::PositiveNumber);
    profile->add_option("--out", out, "output path")->required();

    auto* tables = app.add_subcommand("tables", "on-axis amplitude table");
    add_beam_flags(tables, &beam);
    tables->add_option("--channel", channel_name, "E1, M1 or E2");
    tables->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    tables->add_option("--out", out, "output path")->required();

    auto* bessel = app.add_subcommand("bessel-axis", "axial density cross-check");
    bessel->add_option("--m", beam.m, "azimuthal index")->check(CLI::Range(-8, 8));
    bessel->add_option("--pol", beam.pol, "polarization spec");
    bessel->add_option("--spectrum-node", spectrum_nodes, "transverse wavenumber in units of k")
        ->check(CLI::Range(1e-12, 1.0 - 1e-12));
    bessel->add_option("--out", out, "output path")->required();

    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    verify->add_option("--out", out, "report path (stdout always)");
    verify->add_flag("--mutate-faraday", mutate)->group("");  // fault-injection harness

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadArgs;
    }

    try {
        if (map->parsed()) return cmd_field_map(beam, grid, extent, out);
        if (profile->parsed())
            return cmd_radial_profile(beam, parse_channel(channel_name), M, grid, extent, out);
        if (tables->parsed()) return cmd_tables(beam, parse_channel(channel_name), format, out);
        if (bessel->parsed()) return cmd_bessel_axis(beam.m, beam.pol, spectrum_nodes, out);
        if (verify->parsed()) return cmd_verify(mutate, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArgs;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitBadArgs;
}
