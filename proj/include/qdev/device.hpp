#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdev/grid.hpp"

namespace qdev {

/// Constant value on [start, end].
struct Region {
    double start = 0.0;
    double end = 0.0;
    double value = 0.0;

    bool operator==(const Region&) const = default;
};

/// Linear piece of a function: value_start at start rising linearly to
/// value_end at end.
struct Segment {
    double start = 0.0;
    double end = 0.0;
    double value_start = 0.0;
    double value_end = 0.0;
};

/// Piecewise-constant function. Regions must be sorted and disjoint; gaps and
/// the outside take `background`.
class Profile {
public:
    Profile() = default;
    Profile(std::vector<Region> regions, double background = 0.0);

    /// Value at x. At a breakpoint the left and right limits are averaged.
    double operator()(double x) const;
    double limit_left(double x) const;
    double limit_right(double x) const;

    const std::vector<Region>& regions() const noexcept { return regions_; }
    double background() const noexcept { return background_; }
    /// Every region boundary, sorted.
    std::vector<double> breakpoints() const;

    /// Nodal samples on 0..N (ghost nodes take the boundary values).
    RealGridFunction sample(const Grid& grid) const;
    /// The profile on [0, length] as consecutive constant segments.
    std::vector<Segment> segments(double length) const;
    /// Jumps f(x+) - f(x-) at interior nodes that sit on a breakpoint (0..N).
    std::vector<double> node_jumps(const Grid& grid) const;

private:
    std::vector<Region> regions_;
    double background_ = 0.0;
};

/// Mollifier phi(x) = 5 e^{5x} / (1 + e^{5x})^2 (x in nm), unit mass.
double mollifier(double x);

/// (f * phi) at every node of the grid for f given by consecutive segments
/// tiling [0, L], held constant beyond. phi is the derivative of the logistic
/// sigma(5x) and u phi(u) integrates to u sigma(5u) - ln(1 + e^{5u}) / 5, so
/// every linear piece is integrated in closed form.
RealGridFunction mollify(const std::vector<Segment>& segments, const Grid& grid);
RealGridFunction mollify(const Profile& profile, const Grid& grid);

/// V_s = -V_ds (x - start) / (end - start) on (start, end), -V_ds beyond.
struct BiasRamp {
    double start = 0.0;
    double end = 0.0;

    double operator()(double x, double bias) const;
    std::vector<Segment> segments(double length, double bias) const;
    /// Slope changes V'(x+) - V'(x-) at nodes on the ramp ends (0..N).
    std::vector<double> node_kinks(const Grid& grid, double bias) const;
    bool operator==(const BiasRamp&) const = default;
};

struct DeviceSpec {
    std::string name;
    double length = 0.0;             // nm
    int intervals = 100;             // N_x
    std::vector<Region> doping;      // cm^-3, must tile [0, L]
    std::vector<Region> band;        // eV, zero outside the listed regions
    double mass_ratio = 1.0;         // m* / m0
    double permittivity_ratio = 1.0; // eps / eps0
    double temperature = 300.0;      // K
    double fermi_level = 0.0;        // eV
    bool smooth_doping = false;
    /// Mollify the band profile and the ramp as well.
    bool smooth_potential = false;
    /// Linear bias drop across the active region.
    std::optional<BiasRamp> ramp;
    /// V_s is set in advance to the ramp and Poisson is skipped.
    bool prescribed = false;
    /// hbar^2 / 2m* in eV nm^2, replacing the value derived from mass_ratio.
    std::optional<double> kinetic_override;
    /// Injection energy of the single-energy studies (nondimensional setups).
    std::optional<double> energy;

    double kinetic() const;
    double coupling() const;
    Grid grid() const;
    /// Grid of the same device with a different N_x.
    Grid grid(int intervals) const;

    /// Doping on every node in nm^-3, mollified when smooth_doping is set.
    RealGridFunction doping_profile(const Grid& grid) const;
    /// Band profile V_b on every node, eV.
    RealGridFunction band_profile(const Grid& grid) const;
    /// Ramp V_s at bias V_ds (zero without a ramp).
    RealGridFunction ramp_profile(const Grid& grid, double bias) const;
    /// Breakpoint data of V_b (+ ramp when `with_ramp`) for the Schrodinger
    /// scheme; empty when the potential is smoothed.
    std::vector<double> potential_jumps(const Grid& grid) const;
    std::vector<double> potential_kinks(const Grid& grid, double bias, bool with_ramp) const;

    /// Throws ValidationError naming the offending field.
    void validate() const;

    bool operator==(const DeviceSpec&) const = default;
};

/// resistor, rtd_a, rtd_b, free_particle.
std::vector<std::string> preset_names();
DeviceSpec build_preset(std::string_view name);

}  // namespace qdev
