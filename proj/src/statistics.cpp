#include "qdev/statistics.hpp"

#include <cmath>
#include <numbers>

#include "qdev/units.hpp"

namespace qdev {

ThermalContext ThermalContext::make(double fermi_level, double temperature, double kinetic, double bias,
                                    double energy_cutoff) {
    ThermalContext t;
    t.fermi_level = fermi_level;
    t.temperature = temperature;
    t.kT = units::thermal_energy(temperature);
    t.kinetic = kinetic;
    t.bias = bias;
    t.energy_cutoff = energy_cutoff;
    t.validate();
    return t;
}

void ThermalContext::validate() const {
    if (!(temperature > 0.0) || !(kT > 0.0)) throw InvalidArgument("lattice temperature must be positive");
    if (!(kinetic > 0.0)) throw InvalidArgument("kinetic prefactor must be positive");
    if (!(energy_cutoff > 0.0)) throw InvalidArgument("energy cutoff must be positive");
    if (!(energy_cutoff > fermi_level)) throw InvalidArgument("energy cutoff must lie above the Fermi level");
}

double ThermalContext::supply_prefactor() const noexcept {
    return kT / (2.0 * std::numbers::pi * kinetic);
}

double ThermalContext::k_max() const { return std::sqrt(energy_cutoff / kinetic); }

double fermi_weight(double energy, double mu, const ThermalContext& thermal) {
    const double x = (mu - energy) / thermal.kT;
    // ln(1 + e^x) = x + ln(1 + e^-x) once e^x is large
    const double log_term = x > 30.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
    return thermal.supply_prefactor() * log_term;
}

DeviceStates::DeviceStates(const Grid& grid, std::vector<double> nodal_potential, double kinetic, TbcKind scheme,
                           std::vector<double> jump, std::vector<double> kink)
    : grid_(grid),
      potential_(std::move(nodal_potential)),
      jump_(std::move(jump)),
      kink_(std::move(kink)),
      kinetic_(kinetic),
      scheme_(scheme) {
    if (potential_.size() != static_cast<std::size_t>(grid.intervals() + 1))
        throw InvalidArgument("device potential must have N_x + 1 nodal values");
}

double DeviceStates::contact_edge(Incidence from) const {
    return from == Incidence::left ? potential_.front() : potential_.back();
}

ScatteringState DeviceStates::state(double energy, Incidence from) const {
    return solve_state(make_context(grid_, potential_, kinetic_, energy, from, jump_, kink_), scheme_);
}

double DeviceStates::transmission(double energy) const { return state(energy, Incidence::left).transmission; }

DensityProfile electron_density(const StateProvider& states, const ThermalContext& thermal,
                                const QuadratureSpec& quad) {
    thermal.validate();
    const Grid& grid = states.grid();
    const double kinetic = states.kinetic();
    const double k_max = std::sqrt(thermal.energy_cutoff / kinetic);

    DensityProfile profile;
    profile.density = RealGridFunction(grid);

    for (Incidence from : {Incidence::left, Incidence::right}) {
        const double edge = states.contact_edge(from);
        const double mu = thermal.contact_fermi_level(from);
        auto integrand = [&](double k) {
            std::vector<double> out(grid.size(), 0.0);
            if (k <= 0.0) return out;  // zero injected flux
            const double energy = edge + kinetic * k * k;
            const ScatteringState s = states.state(energy, from);
            const double w = fermi_weight(energy, mu, thermal) / (2.0 * std::numbers::pi);
            const auto psi = s.psi.values();
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = w * std::norm(psi[i]);
            return out;
        };
        QuadratureSpec spec = quad;
        spec.lower = 0.0;
        spec.upper = k_max;
        const auto result = adaptive_simpson(integrand, spec);
        auto values = profile.density.values();
        for (std::size_t i = 0; i < values.size(); ++i) values[i] += result.value[i];
        profile.depth_exceeded = profile.depth_exceeded || result.depth_exceeded;
        profile.evaluations += result.evaluations;
    }
    return profile;
}

CurrentResult current_density(const std::function<double(double)>& transmission, double lower_energy,
                              const ThermalContext& thermal, const QuadratureSpec& quad) {
    thermal.validate();
    CurrentResult out;
    if (thermal.bias == 0.0) return out;  // equal Fermi levels: integrand vanishes identically

    const double mu_left = thermal.contact_fermi_level(Incidence::left);
    const double mu_right = thermal.contact_fermi_level(Incidence::right);
    auto integrand = [&](double energy) {
        const double supply = fermi_weight(energy, mu_left, thermal) - fermi_weight(energy, mu_right, thermal);
        return supply == 0.0 ? 0.0 : transmission(energy) * supply;
    };
    QuadratureSpec spec = quad;
    spec.lower = lower_energy;
    spec.upper = lower_energy + thermal.energy_cutoff;
    const auto result = adaptive_simpson(integrand, spec);
    out.value = units::current_scale_A_per_cm2 * result.value;
    out.depth_exceeded = result.depth_exceeded;
    out.evaluations = result.evaluations;
    return out;
}

CurrentResult current_density(const DeviceStates& states, const ThermalContext& thermal, const QuadratureSpec& quad) {
    const double lower = std::max(states.contact_edge(Incidence::left), states.contact_edge(Incidence::right));
    return current_density([&states](double e) { return states.transmission(e); }, lower, thermal, quad);
}

}  // namespace qdev
