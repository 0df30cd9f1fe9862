#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdev/device.hpp"
#include "qdev/poisson.hpp"
#include "qdev/quadrature.hpp"
#include "qdev/schrodinger.hpp"
#include "qdev/statistics.hpp"

namespace qdev {

struct SelfConsistentConfig {
    TbcKind scheme = TbcKind::d4tbc;
    double energy_cutoff = 0.8;       // eV
    double quadrature_tolerance = 1e-10;
    int quadrature_depth = 25;
    int density_panels = 16;
    int current_panels = 256;
    NewtonConfig newton;
    double tolerance = 1e-10;         // outer ||Delta V_s||_inf, eV
    int max_iterations = 200;
    double mixing = 1.0;
    /// Adds the RTD A ramp at the applied bias to every Poisson iterate.
    bool superpose_ramp = false;
    bool compute_current = true;

    QuadratureSpec density_quadrature() const;
    QuadratureSpec current_quadrature() const;
    void validate() const;
};

/// DSP1 for D4TBC, DSP2 for aDTBC, otherwise the closure name.
std::string scheme_tag(TbcKind kind);

struct SelfConsistentResult {
    double bias = 0.0;                 // V_ds, V
    std::string scheme;                // DSP1 / DSP2 / c4tbc
    bool converged = false;
    std::string error;                 // set when a sweep point failed
    Grid grid;
    RealGridFunction vs;               // self-consistent potential, eV
    RealGridFunction band;             // V_b, eV
    std::vector<double> total;         // V = V_b + V_s on 0..N, eV
    std::vector<double> jump, kink;    // breakpoints of V at nodes
    DensityProfile density;
    double current = 0.0;              // A cm^-2
    int iterations = 0;
    std::vector<double> history;       // ||Delta V_s||_inf per outer step
    bool quadrature_warning = false;
};

/// Outer loop: scattering states on the current potential, density by
/// quadrature, Newton-Poisson update, until ||Delta V_s||_inf <= tolerance.
/// Devices with a prescribed potential take a single pass.
///
/// `initial_vs` warm-starts the loop (V_s = 0 otherwise).
/// Throws PreconditionViolated when t_lambda <= 2 E_cut, MaxIterationsExceeded
/// with the outer history, and rethrows inner failures annotated with the
/// outer iteration.
SelfConsistentResult run_self_consistent(const DeviceSpec& device, double bias, const SelfConsistentConfig& config,
                                         const RealGridFunction* initial_vs = nullptr);

/// Biases in order, each warm-started from the last converged V_s. Failures are
/// recorded on the result (converged = false, error set) and the sweep goes on.
std::vector<SelfConsistentResult> bias_sweep(const DeviceSpec& device, const std::vector<double>& biases,
                                             const SelfConsistentConfig& config);

/// T(E) of the converged potential on `energies` (left incidence).
std::vector<double> transmission_curve(const SelfConsistentResult& result, const DeviceSpec& device,
                                       const std::vector<double>& energies, TbcKind scheme);

}  // namespace qdev
