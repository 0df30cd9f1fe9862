#include "qdev/device.hpp"

#include <algorithm>
#include <cmath>

#include "qdev/units.hpp"

namespace qdev {

namespace {

constexpr double kBreakTolerance = 1e-9;

bool near(double a, double b, double scale) { return std::abs(a - b) <= kBreakTolerance * std::max(1.0, scale); }

double logistic(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

}  // namespace

Profile::Profile(std::vector<Region> regions, double background)
    : regions_(std::move(regions)), background_(background) {
    std::sort(regions_.begin(), regions_.end(), [](const Region& a, const Region& b) { return a.start < b.start; });
}

double Profile::limit_right(double x) const {
    for (const Region& r : regions_)
        if (x >= r.start && x < r.end) return r.value;
    return background_;
}

double Profile::limit_left(double x) const {
    for (const Region& r : regions_)
        if (x > r.start && x <= r.end) return r.value;
    return background_;
}

double Profile::operator()(double x) const {
    for (double b : breakpoints())
        if (near(x, b, std::abs(b))) return 0.5 * (limit_left(b) + limit_right(b));
    return limit_right(x);
}

std::vector<double> Profile::breakpoints() const {
    std::vector<double> out;
    for (const Region& r : regions_) {
        out.push_back(r.start);
        out.push_back(r.end);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

RealGridFunction Profile::sample(const Grid& grid) const {
    RealGridFunction f(grid);
    const int n = grid.intervals();
    const double left = limit_right(0.0);
    const double right = limit_left(grid.length());
    for (int i = grid.first(); i <= grid.last(); ++i) {
        if (i <= 0)
            f[i] = left;
        else if (i >= n)
            f[i] = right;
        else
            f[i] = (*this)(grid.x(i));
    }
    return f;
}

std::vector<double> Profile::node_jumps(const Grid& grid) const {
    const int n = grid.intervals();
    std::vector<double> out(static_cast<std::size_t>(n + 1), 0.0);
    for (double b : breakpoints()) {
        const double pos = b / grid.spacing();
        const long i = std::lround(pos);
        if (i <= 0 || i >= n || !near(pos, static_cast<double>(i), pos)) continue;
        out[static_cast<std::size_t>(i)] = limit_right(b) - limit_left(b);
    }
    return out;
}

double mollifier(double x) {
    const double e = std::exp(-5.0 * std::abs(x));
    return 5.0 * e / ((1.0 + e) * (1.0 + e));
}

std::vector<Segment> Profile::segments(double length) const {
    std::vector<double> cuts{0.0};
    for (double b : breakpoints())
        if (b > 0.0 && b < length && !near(b, length, length) && !near(b, 0.0, length)) cuts.push_back(b);
    cuts.push_back(length);
    std::vector<Segment> out;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double v = limit_right(0.5 * (cuts[p] + cuts[p + 1]));
        out.push_back({cuts[p], cuts[p + 1], v, v});
    }
    return out;
}

RealGridFunction mollify(const std::vector<Segment>& segments, const Grid& grid) {
    if (segments.empty()) throw InvalidArgument("mollify needs at least one segment");
    auto softplus = [](double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); };
    // antiderivatives of phi(u) and u phi(u)
    auto Phi = [](double u) { return logistic(5.0 * u); };
    auto G = [&](double u) { return u * logistic(5.0 * u) - softplus(5.0 * u) / 5.0; };

    const double length = grid.length();
    RealGridFunction out(grid);
    for (int i = grid.first(); i <= grid.last(); ++i) {
        const double x = std::clamp(grid.x(i), 0.0, length);
        // f held at its end values beyond [0, L]
        double sum = segments.front().value_start * (1.0 - Phi(x - segments.front().start));
        sum += segments.back().value_end * Phi(x - segments.back().end);
        for (const Segment& s : segments) {
            // int_a^b f(y) phi(x - y) dy with u = x - y, f(x - u) = f_a + slope (x - u - a)
            const double slope = (s.value_end - s.value_start) / (s.end - s.start);
            const double u_lo = x - s.end;
            const double u_hi = x - s.start;
            sum += (s.value_start + slope * (x - s.start)) * (Phi(u_hi) - Phi(u_lo));
            if (slope != 0.0) sum -= slope * (G(u_hi) - G(u_lo));
        }
        out[i] = sum;
    }
    return out;
}

RealGridFunction mollify(const Profile& profile, const Grid& grid) { return mollify(profile.segments(grid.length()), grid); }

double BiasRamp::operator()(double x, double bias) const {
    if (x <= start) return 0.0;
    if (x >= end) return -bias;
    return -bias * (x - start) / (end - start);
}

std::vector<Segment> BiasRamp::segments(double length, double bias) const {
    std::vector<Segment> out;
    if (start > 0.0) out.push_back({0.0, start, 0.0, 0.0});
    out.push_back({start, end, 0.0, -bias});
    if (end < length) out.push_back({end, length, -bias, -bias});
    return out;
}

std::vector<double> BiasRamp::node_kinks(const Grid& grid, double bias) const {
    const int n = grid.intervals();
    std::vector<double> out(static_cast<std::size_t>(n + 1), 0.0);
    const double slope = -bias / (end - start);
    for (auto [x, change] : {std::pair{start, slope}, std::pair{end, -slope}}) {
        const double pos = x / grid.spacing();
        const long i = std::lround(pos);
        if (i <= 0 || i >= n || !near(pos, static_cast<double>(i), pos)) continue;
        out[static_cast<std::size_t>(i)] += change;
    }
    return out;
}

double DeviceSpec::kinetic() const {
    return kinetic_override ? *kinetic_override : units::kinetic_prefactor(mass_ratio);
}

double DeviceSpec::coupling() const { return units::coulomb_coupling(permittivity_ratio); }

Grid DeviceSpec::grid() const { return Grid(length, intervals); }

Grid DeviceSpec::grid(int n) const { return Grid(length, n); }

RealGridFunction DeviceSpec::doping_profile(const Grid& grid) const {
    std::vector<Region> nm3 = doping;
    for (Region& r : nm3) r.value /= units::nm3_to_cm3;
    const Profile p(std::move(nm3));
    return smooth_doping ? mollify(p, grid) : p.sample(grid);
}

RealGridFunction DeviceSpec::band_profile(const Grid& grid) const {
    const Profile p(band);
    return smooth_potential ? mollify(p, grid) : p.sample(grid);
}

RealGridFunction DeviceSpec::ramp_profile(const Grid& grid, double bias) const {
    RealGridFunction f(grid);
    if (!ramp) return f;
    if (smooth_potential) return mollify(ramp->segments(grid.length(), bias), grid);
    for (int i = grid.first(); i <= grid.last(); ++i)
        f[i] = (*ramp)(std::clamp(grid.x(i), 0.0, grid.length()), bias);
    return f;
}

std::vector<double> DeviceSpec::potential_jumps(const Grid& grid) const {
    if (smooth_potential) return {};
    return Profile(band).node_jumps(grid);
}

std::vector<double> DeviceSpec::potential_kinks(const Grid& grid, double bias, bool with_ramp) const {
    if (smooth_potential || !with_ramp || !ramp) return {};
    return ramp->node_kinks(grid, bias);
}

void DeviceSpec::validate() const {
    if (!(length > 0.0)) throw ValidationError("length", "must be > 0");
    if (intervals < 2) throw ValidationError("grid.nx", "must be >= 2");
    if (!(mass_ratio > 0.0)) throw ValidationError("mass_ratio", "must be > 0");
    if (!(permittivity_ratio > 0.0)) throw ValidationError("permittivity_ratio", "must be > 0");
    if (!(temperature > 0.0)) throw ValidationError("temperature", "must be > 0");
    if (kinetic_override && !(*kinetic_override > 0.0)) throw ValidationError("kinetic", "must be > 0");
    if (energy && !std::isfinite(*energy)) throw ValidationError("energy", "must be finite");

    if (doping.empty()) throw ValidationError("doping.regions", "at least one region is required");
    std::vector<Region> d = doping;
    std::sort(d.begin(), d.end(), [](const Region& a, const Region& b) { return a.start < b.start; });
    if (!near(d.front().start, 0.0, length)) throw ValidationError("doping.regions", "must start at x = 0");
    if (!near(d.back().end, length, length)) throw ValidationError("doping.regions", "must end at x = L");
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!(d[i].end > d[i].start)) throw ValidationError("doping.regions", "empty or reversed region");
        if (!(d[i].value >= 0.0)) throw ValidationError("doping.regions", "densities must be >= 0");
        if (i > 0 && !near(d[i].start, d[i - 1].end, length))
            throw ValidationError("doping.regions", d[i].start < d[i - 1].end ? "regions overlap" : "regions leave a gap");
    }

    std::vector<Region> b = band;
    std::sort(b.begin(), b.end(), [](const Region& x, const Region& y) { return x.start < y.start; });
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!(b[i].end > b[i].start)) throw ValidationError("band.regions", "empty or reversed region");
        if (b[i].start < -kBreakTolerance || b[i].end > length * (1.0 + kBreakTolerance))
            throw ValidationError("band.regions", "regions must lie inside [0, L]");
        if (!std::isfinite(b[i].value)) throw ValidationError("band.regions", "values must be finite");
        if (i > 0 && b[i].start < b[i - 1].end - kBreakTolerance * length)
            throw ValidationError("band.regions", "regions overlap");
    }

    if (ramp && !(ramp->start >= 0.0 && ramp->end > ramp->start && ramp->end <= length))
        throw ValidationError("ramp", "needs 0 <= start < end <= L");
    if (prescribed && !ramp) throw ValidationError("prescribed", "a prescribed potential needs a ramp");
}

std::vector<std::string> preset_names() { return {"free_particle", "resistor", "rtd_a", "rtd_b"}; }

DeviceSpec build_preset(std::string_view name) {
    DeviceSpec d;
    d.name = std::string(name);
    if (name == "resistor") {
        d.length = 30.0;
        d.intervals = 100;
        d.doping = {{0.0, 4.5, 1e20}, {4.5, 25.5, 5e19}, {25.5, 30.0, 1e20}};
        d.mass_ratio = 0.25;
        d.permittivity_ratio = 10.0;
        d.temperature = 300.0;
        d.fermi_level = 0.318;
        return d;
    }
    if (name == "rtd_a" || name == "rtd_b") {
        d.length = 135.0;
        d.intervals = 270;
        d.doping = {{0.0, 50.0, 1e18}, {50.0, 85.0, 5e15}, {85.0, 135.0, 1e18}};
        d.band = {{60.0, 65.0, 0.3}, {70.0, 75.0, 0.3}};
        d.mass_ratio = 0.067;
        d.permittivity_ratio = 11.44;
        d.temperature = 300.0;
        d.fermi_level = 0.0427;
        d.smooth_doping = true;
        d.ramp = BiasRamp{50.0, 85.0};
        d.prescribed = name == "rtd_a";
        d.smooth_potential = name == "rtd_a";
        return d;
    }
    if (name == "free_particle") {
        d.length = 10.0;
        d.intervals = 100;
        d.doping = {{0.0, 10.0, 0.0}};
        d.kinetic_override = 0.5;
        d.energy = 0.5;
        return d;
    }
    throw UnknownPreset("unknown preset '" + std::string(name) + "'");
}

}  // namespace qdev
