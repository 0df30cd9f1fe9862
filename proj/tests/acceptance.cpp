// One pass/fail line per acceptance criterion.
//   acceptance --criterion N    run one criterion (exit status 1 on FAIL)
//   acceptance                  run all of them
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "qdev/banded.hpp"
#include "qdev/experiments.hpp"
#include "qdev/sbp.hpp"
#include "qdev/schrodinger.hpp"
#include "qdev/selfconsistent.hpp"
#include "qdev/statistics.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace qdev;
using cplx = std::complex<double>;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int digits = 6) {
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

std::string join(const std::vector<double>& v, int digits = 6) {
    std::string out;
    for (double x : v) out += (out.empty() ? "" : " ") + fmt(x, digits);
    return "[" + out + "]";
}

// Resonant peak: the first local maximum of the sweep (the global maximum when
// the current never turns down).
double bias_of_peak(const std::vector<SelfConsistentResult>& sweep, std::size_t* index = nullptr) {
    std::size_t p = 0;
    for (std::size_t i = 1; i < sweep.size(); ++i)
        if (sweep[i].current > sweep[p].current) p = i;
    for (std::size_t i = 1; i + 1 < sweep.size(); ++i) {
        if (sweep[i].current > sweep[i - 1].current && sweep[i + 1].current < sweep[i].current) {
            p = i;
            break;
        }
    }
    if (index) *index = p;
    return sweep[p].bias;
}

bool all_converged(const std::vector<SelfConsistentResult>& sweep) {
    for (const auto& r : sweep)
        if (!r.converged) return false;
    return true;
}

// Peak followed by at least two lower bias points.
bool shows_ndr(const std::vector<SelfConsistentResult>& sweep, std::size_t peak) {
    return peak + 2 < sweep.size() && sweep[peak + 1].current < sweep[peak].current &&
           sweep[peak + 2].current < sweep[peak].current;
}

std::vector<double> biases(double stop, double step) {
    std::vector<double> out;
    for (int i = 0; i * step <= stop + 1e-9; ++i) out.push_back(std::round(i * step * 1e12) / 1e12);
    return out;
}

Verdict plane_wave_exactness() {
    const auto d = build_preset("free_particle");
    const double m = oscillation_metric(free_particle_state(d, TbcKind::d4tbc, 100));
    return {m <= 1e-11, "max | |psi| - 1 | = " + fmt(m)};
}

Verdict free_particle_orders() {
    const auto d = build_preset("free_particle");
    Verdict v{true, ""};
    for (TbcKind kind : {TbcKind::d4tbc, TbcKind::adtbc}) {
        const auto r = schrodinger_convergence(d, kind, {100, 200, 400, 800});
        for (double o : r.orders) v.pass = v.pass && std::abs(o - 4.0) <= 0.05;
        v.detail += std::string(to_string(kind)) + " orders at N = 200, 400, 800: " + join(r.orders) + "; ";
    }
    return v;
}

Verdict oscillation_ordering() {
    const auto d = build_preset("free_particle");
    const double d4 = oscillation_metric(free_particle_state(d, TbcKind::d4tbc, 100));
    const double ad = oscillation_metric(free_particle_state(d, TbcKind::adtbc, 100));
    const double c4 = oscillation_metric(free_particle_state(d, TbcKind::c4tbc, 100));
    return {d4 <= 1e-11 && d4 < ad && ad < c4, "d4tbc " + fmt(d4) + ", adtbc " + fmt(ad) + ", c4tbc " + fmt(c4)};
}

Verdict dispersion_properties() {
    gen::Rng rng(20240501);
    double worst_modulus = 0.0, worst_residual = 0.0, slope_lo = 1e9, slope_hi = -1e9;
    for (int trial = 0; trial < 500; ++trial) {
        const double kinetic = rng.log_uniform(0.05, 2.0);
        const double dx = rng.log_uniform(0.01, 1.0);
        const double t = kinetic * 12.0 / (dx * dx);
        const double edge = rng.uniform(-1.0, 1.0);
        const double e = rng.uniform(1e-6, 0.4999) * t;
        const cplx a = dispersion_roots(edge + e, edge, kinetic, dx).plus;
        worst_modulus = std::max(worst_modulus, std::abs(std::abs(a) - 1.0));
        // characteristic equation, scaled by its leading coefficient
        const cplx res = ((t + e) * a * a - 2.0 * (t - 5.0 * e) * a + (t + e)) / (t + e);
        worst_residual = std::max(worst_residual, std::abs(res));

        // k~ - k on four halvings from a random resolution
        const double k = std::sqrt(e / kinetic);
        const double h0 = rng.uniform(0.05, 0.4) / k;
        std::vector<double> hs, errs;
        for (int m = 0; m < 4; ++m) {
            const double h = h0 / std::pow(2.0, m);
            const cplx b = dispersion_roots(edge + e, edge, kinetic, h).plus;
            hs.push_back(h);
            errs.push_back(std::abs(std::arg(b) / h - k));
        }
        const double s = oracle::loglog_slope(hs, errs);
        slope_lo = std::min(slope_lo, s);
        slope_hi = std::max(slope_hi, s);
    }
    const bool ok = worst_modulus <= 1e-13 && worst_residual <= 1e-12 && slope_lo >= 3.9 && slope_hi <= 4.1;
    return {ok, "max ||alpha| - 1| = " + fmt(worst_modulus) + ", max residual = " + fmt(worst_residual) +
                    ", slopes in [" + fmt(slope_lo, 5) + ", " + fmt(slope_hi, 5) + "]"};
}

Verdict summation_by_parts() {
    gen::Rng rng(16);
    const Grid g(1.0, 16);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        ComplexGridFunction u(g), v(g);
        for (int j = g.first(); j <= g.last(); ++j) {
            u[j] = rng.complex(rng.log_uniform(1e-2, 1e2));
            v[j] = rng.complex(1.0);
        }
        worst = std::max(worst, sbp_identity_residual(u, v) / sbp_identity_scale(u, v));
    }
    return {worst <= 1e-12, "max residual / scale = " + fmt(worst)};
}

Verdict banded_vs_dense() {
    gen::Rng rng(64);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto t = gen::tridiagonal(rng, static_cast<std::size_t>(rng.integer(1, 64)), rng.coin());
        const std::size_t n = t.b.size();
        BandedComplexSystem sys(n, 1, 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = (i ? i - 1 : 0); j <= std::min(n - 1, i + 1); ++j) sys.at(i, j) = t.a[i][j];
            sys.rhs()[i] = t.b[i];
        }
        const auto x = solve_banded(sys);
        const auto y = oracle::dense_solve(t.a, t.b);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            num += std::norm(x[i] - y[i]);
            den += std::norm(y[i]);
        }
        worst = std::max(worst, std::sqrt(num / den));
    }
    return {worst <= 1e-11, "max relative error = " + fmt(worst)};
}

Verdict single_barrier() {
    // 0.3 eV, 5 nm GaAs barrier centred in a 20 nm box, dx = 0.05 nm
    DeviceSpec d;
    d.length = 20.0;
    d.intervals = 400;
    d.band = {{7.5, 12.5, 0.3}};
    d.mass_ratio = 0.067;
    const Grid g = d.grid();
    const RealGridFunction band = d.band_profile(g);
    const DeviceStates states(g, std::vector<double>(band.physical().begin(), band.physical().end()), d.kinetic(),
                              TbcKind::d4tbc, d.potential_jumps(g));
    double worst = 0.0;
    for (int i = 1; i <= 50; ++i) {
        const double e = 0.016 * i;
        worst = std::max(worst, std::abs(states.transmission(e) -
                                         oracle::square_barrier_transmission(e, 0.3, 5.0, d.kinetic())));
    }
    return {worst <= 1e-5, "max |T - T_exact| over 50 energies in (0, 0.8] eV = " + fmt(worst)};
}

Verdict resistor_orders() {
    DeviceSpec d = build_preset("resistor");
    d.smooth_doping = true;
    Verdict v{true, ""};
    for (TbcKind kind : {TbcKind::d4tbc, TbcKind::adtbc}) {
        SelfConsistentConfig cfg;
        cfg.scheme = kind;
        cfg.compute_current = false;
        const auto r = self_consistent_convergence(d, cfg, {100, 200, 400}, 800);
        for (double o : r.orders) v.pass = v.pass && o >= 3.8 && o <= 4.3;
        std::vector<double> errs;
        for (const auto& p : r.points) errs.push_back(p.error);
        v.detail += r.scheme + " errors " + join(errs, 4) + " orders at N = 200, 400: " + join(r.orders, 4) + "; ";
    }
    return v;
}

Verdict resistor_linearity() {
    const DeviceSpec d = build_preset("resistor");
    const auto sweep = bias_sweep(d, biases(0.25, 0.05), SelfConsistentConfig{});
    std::vector<double> v, i;
    for (const auto& r : sweep) {
        v.push_back(r.bias);
        i.push_back(r.current);
    }
    double peak = 0.0;
    for (double c : i) peak = std::max(peak, std::abs(c));
    const double res = oracle::line_fit_max_residual(v, i);
    return {all_converged(sweep) && res <= 0.02 * peak,
            "I = " + join(i, 5) + " A/cm^2, max fit residual / peak = " + fmt(res / peak, 4)};
}

Verdict rtd_a_peak() {
    const DeviceSpec d = build_preset("rtd_a");
    Verdict v{true, ""};
    for (TbcKind kind : {TbcKind::d4tbc, TbcKind::adtbc}) {
        SelfConsistentConfig cfg;
        cfg.scheme = kind;
        const auto sweep = bias_sweep(d, biases(0.4, 0.02), cfg);
        std::size_t p = 0;
        const double peak = bias_of_peak(sweep, &p);
        const bool ndr = shows_ndr(sweep, p);
        v.pass = v.pass && all_converged(sweep) && std::abs(peak - 0.18) <= 0.02 + 1e-9 && ndr;
        v.detail += std::string(to_string(kind)) + " peak at " + fmt(peak) + " V" + (ndr ? " with NDR" : " without NDR") +
                    "; ";
    }
    return v;
}

Verdict rtd_b_peak() {
    const DeviceSpec d = build_preset("rtd_b");
    Verdict v{true, ""};
    std::vector<double> peaks;
    for (TbcKind kind : {TbcKind::d4tbc, TbcKind::adtbc}) {
        SelfConsistentConfig cfg;
        cfg.scheme = kind;
        const auto sweep = bias_sweep(d, biases(0.4, 0.02), cfg);
        std::size_t p = 0;
        const double peak = bias_of_peak(sweep, &p);
        const bool ndr = shows_ndr(sweep, p);
        peaks.push_back(peak);
        v.pass = v.pass && all_converged(sweep) && std::abs(peak - 0.26) <= 0.04 + 1e-9 && ndr;
        v.detail += scheme_tag(kind) + " peak at " + fmt(peak) + " V" + (ndr ? " with NDR" : " without NDR") + "; ";
    }
    v.pass = v.pass && std::abs(peaks[0] - peaks[1]) <= 0.02 + 1e-9;
    return v;
}

Verdict rtd_a_resonances() {
    const DeviceSpec d = build_preset("rtd_a");
    SelfConsistentConfig cfg;
    cfg.compute_current = false;
    std::vector<double> energies;
    for (int i = 1; i <= 8000; ++i) energies.push_back(1e-4 * i);

    auto peaks_at = [&](double bias) {
        const auto r = run_self_consistent(d, bias, cfg);
        const auto t = transmission_curve(r, d, energies, TbcKind::d4tbc);
        std::vector<double> out;
        for (std::size_t i : oracle::local_maxima(t)) out.push_back(energies[i]);
        return out;
    };
    const auto p0 = peaks_at(0.0);
    const auto p1 = peaks_at(0.1);
    std::size_t below = 0;
    for (double e : p0) below += e < 0.3;
    const bool shift = !p0.empty() && !p1.empty() && p1.front() < p0.front();
    return {below >= 2 && shift, "peaks at V_ds = 0: " + join(p0, 5) + " eV (" + std::to_string(below) +
                                     " below 0.3 eV); at V_ds = 0.1: " + join(p1, 5) + " eV"};
}

const std::vector<std::function<Verdict()>> kCriteria{
    plane_wave_exactness, free_particle_orders, oscillation_ordering, dispersion_properties,
    summation_by_parts,   banded_vs_dense,      single_barrier,       resistor_orders,
    resistor_linearity,   rtd_a_peak,           rtd_b_peak,           rtd_a_resonances,
};

bool report(int n) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = kCriteria.at(static_cast<std::size_t>(n - 1))();
    } catch (const std::exception& e) {
        v = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    while (!v.detail.empty() && (v.detail.back() == ' ' || v.detail.back() == ';')) v.detail.pop_back();
    std::printf("criterion %d: %s %s (%.1f s)\n", n, v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
    std::fflush(stdout);
    return v.pass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    int criterion = 0;
    app.add_option("--criterion", criterion, "criterion number (all when omitted)")
        ->check(CLI::Range(1, static_cast<int>(kCriteria.size())));
    CLI11_PARSE(app, argc, argv);

    bool ok = true;
    if (criterion > 0) {
        ok = report(criterion);
    } else {
        for (int n = 1; n <= static_cast<int>(kCriteria.size()); ++n) ok = report(n) && ok;
    }
    return ok ? 0 : 1;
}
