#pragma once

#include <string>
#include <vector>

#include "qdev/device.hpp"
#include "qdev/schrodinger.hpp"
#include "qdev/selfconsistent.hpp"

namespace qdev {

struct ConvergencePoint {
    int intervals = 0;
    double error = 0.0;
};

/// Errors E_N on a sequence of doubled grids. orders[i] = log2(E_{N/2} / E_N)
/// belongs to points[i + 1], the finer grid of the pair.
struct ConvergenceReport {
    std::string quantity;   // "psi" or "V"
    std::string scheme;
    std::string reference;  // how the reference solution was obtained
    std::vector<ConvergencePoint> points;
    std::vector<double> orders;
};

std::vector<double> observed_orders(const std::vector<ConvergencePoint>& points);

/// Left-incidence state of a flat device at its configured energy.
ScatteringState free_particle_state(const DeviceSpec& device, TbcKind scheme, int intervals);

/// max_j | |psi_j| - 1 | over the physical nodes.
double oscillation_metric(const ScatteringState& state);

/// Schrodinger-only study on a flat device: E = max_j |psi_j - exp(i k x_j)|.
ConvergenceReport schrodinger_convergence(const DeviceSpec& device, TbcKind scheme, const std::vector<int>& intervals);

/// Coupled study: E = max_j |V_dx(x_j) - V_ref(x_j)| with the reference solved
/// on `reference_intervals` (must nest every test grid), at V_ds = 0.
ConvergenceReport self_consistent_convergence(const DeviceSpec& device, const SelfConsistentConfig& config,
                                              const std::vector<int>& intervals, int reference_intervals);

}  // namespace qdev
