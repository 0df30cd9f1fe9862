#pragma once

#include <vector>

#include "qdev/banded.hpp"
#include "qdev/grid.hpp"

namespace qdev {

/// Discrete source f_i = (q_e^2 / eps)(N_d(x_i) - n_i) on -1..N+1 (eV nm^-2).
/// `coupling` is q_e^2 / eps in eV nm; densities are in nm^-3.
RealGridFunction poisson_source(const RealGridFunction& doping, const RealGridFunction& density, double coupling);

/// Compact fourth-order Neumann system for V_s'' = f on nodes 0..N:
///   interior  lambda V_{i-1} - 2 lambda V_i + lambda V_{i+1} = f_{i-1} + 10 f_i + f_{i+1}
///   x = 0     -2 lambda V_0 + 2 lambda V_1 = -f_{-1} + 10 f_0 + 3 f_1
///   x = L     2 lambda V_{N-1} - 2 lambda V_N = 3 f_{N-1} + 10 f_N - f_{N+1}
/// The operator is singular (constants span its null space).
BandedRealSystem assemble_poisson(const RealGridFunction& source);

/// Row residuals A V - b of the assembled system for nodal V on 0..N.
std::vector<double> poisson_residual(const RealGridFunction& potential, const RealGridFunction& source);

/// Ghost values V_{-1}, V_{N+1} from the discrete Neumann conditions
///   (V_1 - V_{-1}) / 2dx - dx/12 (f_1 - f_{-1}) = 0 (and its mirror at x = L).
void fill_neumann_ghosts(RealGridFunction& potential, const RealGridFunction& source);

/// Density response used inside the Newton iteration:
///   n_i(V) = n_i^ref exp(-(V_i - V_i^ref) / k_B T).
/// Ghost nodes follow the response of their mirror node (Neumann symmetry).
struct GummelDensity {
    RealGridFunction reference_density;
    RealGridFunction reference_potential;
    double kT = 0.0259;

    double value(const RealGridFunction& potential, int i) const;
    double derivative(const RealGridFunction& potential, int i) const;
};

struct NewtonConfig {
    double tolerance = 1e-10;  // on ||V^{p+1} - V^p||_inf, eV
    int max_iterations = 100;
    double damping = 1.0;
    double min_damping = 1.0 / 64.0;
    /// Debug mode: treat the density as fixed and pin V_0 = 0 instead.
    bool use_predictor = true;

    void validate() const;
};

struct NewtonResult {
    RealGridFunction potential;  // V_s on all nodes; ghosts from the Neumann closure
    RealGridFunction source;     // f at the final iterate
    int iterations = 0;
    std::vector<double> update_history;    // ||Delta V||_inf per step
    std::vector<double> residual_history;  // ||R||_inf per step
};

/// Damped Newton iteration for the compact Neumann Poisson problem with the
/// Gummel density response. The step length halves (down to min_damping)
/// whenever the residual grows and resets every call.
///
/// Throws MaxIterationsExceeded carrying the update history and best iterate,
/// SingularSystem if the linearization is singular (n = 0 everywhere).
NewtonResult newton_solve(const RealGridFunction& initial, const RealGridFunction& doping,
                          const GummelDensity& density, double coupling, const NewtonConfig& config);

}  // namespace qdev
