#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qdev/grid.hpp"
#include "qdev/quadrature.hpp"
#include "qdev/schrodinger.hpp"

namespace qdev {

/// Contact statistics. `bias` is q_e V_ds in eV: the right contact's Fermi
/// level sits at fermi_level - bias.
struct ThermalContext {
    double fermi_level = 0.0;     // eV
    double temperature = 300.0;   // K
    double kT = 0.0;              // eV
    double kinetic = 0.5;         // hbar^2 / 2m*, eV nm^2
    double bias = 0.0;            // eV
    double energy_cutoff = 0.8;   // eV of kinetic energy above the injecting edge

    /// Fills kT from the temperature and validates.
    static ThermalContext make(double fermi_level, double temperature, double kinetic, double bias = 0.0,
                               double energy_cutoff = 0.8);

    /// m* k_B T / (pi hbar^2), in nm^-2.
    double supply_prefactor() const noexcept;
    double contact_fermi_level(Incidence from) const noexcept {
        return from == Incidence::left ? fermi_level : fermi_level - bias;
    }
    /// Largest injected wavenumber sqrt(2 m* E_cut) / hbar.
    double k_max() const;

    void validate() const;
};

/// Supply function F(mu - E) = m* k_B T / (pi hbar^2) ln(1 + exp((mu - E) / k_B T)),
/// evaluated without overflow for large (mu - E) / k_B T.
double fermi_weight(double energy, double mu, const ThermalContext& thermal);

/// Source of scattering states for the density and current integrals.
class StateProvider {
public:
    virtual ~StateProvider() = default;
    virtual const Grid& grid() const = 0;
    virtual double kinetic() const = 0;
    /// Band edge V(0) or V(L) of the contact injecting from `from`.
    virtual double contact_edge(Incidence from) const = 0;
    virtual ScatteringState state(double energy, Incidence from) const = 0;
};

/// Scattering states of a fixed potential with one boundary closure.
class DeviceStates final : public StateProvider {
public:
    /// `jump` and `kink` describe breakpoints of the potential at nodes (see
    /// SchrodingerContext); leave them empty for a smooth potential.
    DeviceStates(const Grid& grid, std::vector<double> nodal_potential, double kinetic, TbcKind scheme,
                 std::vector<double> jump = {}, std::vector<double> kink = {});

    const Grid& grid() const override { return grid_; }
    double kinetic() const override { return kinetic_; }
    double contact_edge(Incidence from) const override;
    ScatteringState state(double energy, Incidence from) const override;

    /// Left-incidence transmission 1 - |r|^2 (clamped).
    double transmission(double energy) const;
    TbcKind scheme() const noexcept { return scheme_; }
    std::span<const double> potential() const noexcept { return potential_; }

private:
    Grid grid_;
    std::vector<double> potential_;
    std::vector<double> jump_;
    std::vector<double> kink_;
    double kinetic_;
    TbcKind scheme_;
};

/// Electron density on all nodes of the provider's grid (ghosts included), nm^-3.
struct DensityProfile {
    RealGridFunction density;
    bool depth_exceeded = false;
    std::size_t evaluations = 0;

    double cm3(int i) const { return density[i] * 1e21; }
};

/// n_i = 1/(2 pi) [ int_0^kmax F(E_F - E)|psi^L_i|^2 dk + int_0^kmax F(E_F - qV - E)|psi^R_i|^2 dk ],
/// with the injected kinetic energy measured from the injecting contact's
/// edge, E = V_contact + hbar^2 k^2 / 2m*. Each half is one vector-valued
/// adaptive Simpson integral sharing every solve across nodes. Only the
/// tolerance, depth and panel count of `quad` are used.
DensityProfile electron_density(const StateProvider& states, const ThermalContext& thermal,
                                const QuadratureSpec& quad);

/// Terminal current in A cm^-2:
///   I = q_e / (2 pi hbar) int T(E) [F(E_F - E) - F(E_F - qV - E)] dE
/// over [lower_energy, lower_energy + E_cut]. Only tolerance, depth and
/// panel count of `quad` are used.
struct CurrentResult {
    double value = 0.0;
    bool depth_exceeded = false;
    std::size_t evaluations = 0;
};
CurrentResult current_density(const std::function<double(double)>& transmission, double lower_energy,
                              const ThermalContext& thermal, const QuadratureSpec& quad);

/// Current of a device: lower energy max{V(0), V(L)}, transmission from the
/// left-incidence states.
CurrentResult current_density(const DeviceStates& states, const ThermalContext& thermal,
                              const QuadratureSpec& quad);

}  // namespace qdev
