#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "qdev/banded.hpp"
#include "qdev/grid.hpp"

namespace qdev {

using cplx = std::complex<double>;

/// Boundary closure of the compact Schrödinger scheme.
///  - c4tbc: compact fourth-order discretization of the Robin TBC.
///  - d4tbc: discrete TBC built from the interior scheme's discrete plane waves.
///  - adtbc: exact exterior plane waves evaluated at the ghost nodes.
enum class TbcKind { c4tbc, d4tbc, adtbc };

enum class Incidence { left, right };

std::string_view to_string(TbcKind kind) noexcept;
std::string_view to_string(Incidence incidence) noexcept;
TbcKind parse_tbc_kind(std::string_view name);

/// Everything a single-energy scattering solve needs.
///
/// `potential` is the total potential energy V = V_b + V_s (eV) on every node
/// of the grid, extended constantly beyond [0, L]. `kinetic` is hbar^2/(2 m*)
/// in eV nm^2 (0.5 in the nondimensional hbar = m* = 1 system).
struct SchrodingerContext {
    Grid grid;
    RealGridFunction potential;
    double kinetic = 0.5;
    double energy = 0.0;
    Incidence incidence = Incidence::left;
    /// Optional breakpoint data on nodes 0..N_x (empty when V is smooth):
    /// jump = V(x+) - V(x-), kink = V'(x+) - V'(x-). At such a node `potential`
    /// holds the mean of the one-sided limits, neighbouring rows use the limit
    /// from their own side and the node's row carries the interface correction
    /// that keeps the scheme fourth order.
    std::vector<double> jump;
    std::vector<double> kink;

    double lambda() const noexcept { return grid.lambda(); }
    /// The boundary parameter t = hbar^2/(2 m*) * 12 / dx^2 (eV).
    double t_lambda() const noexcept { return kinetic * grid.lambda(); }
    double left_edge() const { return potential[0]; }
    double right_edge() const { return potential[grid.intervals()]; }

    /// t_lambda > max{2(E - V_0), 2(E - V_N)}: uniqueness condition of the
    /// discrete problem with D4TBC or aDTBC closures.
    bool theorem_precondition() const;
};

/// Builds a context from nodal values on 0..N_x, extending them constantly.
SchrodingerContext make_context(const Grid& grid, std::span<const double> nodal_potential, double kinetic,
                                double energy, Incidence incidence = Incidence::left,
                                std::span<const double> jump = {}, std::span<const double> kink = {});

/// Mirror image x -> L - x of a context (potential reversed, incidence swapped).
SchrodingerContext mirrored(const SchrodingerContext& ctx);

struct DispersionRoots {
    cplx plus;
    cplx minus;
};

/// Roots of the interior scheme's characteristic equation for discrete plane
/// waves alpha^j in a flat region of height `edge`:
///
///   alpha = [t - 5e +- i sqrt(12 e (t - 2e))] / (t + e),   e = E - edge.
///
/// For e >= 0 both roots have unit modulus and `plus` = exp(+i k~ dx). For
/// e < 0 the square root is continued through the principal branch, which
/// makes `plus` the real root with |plus| < 1 (the outward-decaying wave).
/// Throws PreconditionViolated when t <= 2e.
DispersionRoots dispersion_roots(double energy, double edge, double kinetic, double dx);

/// Exact wavenumber sqrt((E - edge) / kinetic); imaginary part >= 0 below the edge.
cplx exact_wavenumber(double energy, double edge, double kinetic);

/// Coefficients of  a0 psi_0 + b1 psi_1 = d0  and  b_{N-1} psi_{N-1} + a_N psi_N = 0.
/// `e*` are E - V at nodes 0, 1, N-1, N; t is t_lambda.
struct C4tbcCoefficients {
    cplx a0, b1, d0, b_nm1, a_n;
};
C4tbcCoefficients c4tbc_coefficients(double t, double e0, double e1, double e_nm1, double e_n, cplx k1, cplx k2,
                                     double dx);

/// One closed boundary equation: boundary * psi_b + neighbor * psi_{b +- 1} = rhs.
struct BoundaryRow {
    cplx boundary;
    cplx neighbor;
    cplx rhs;
};

/// psi_ghost = boundary * psi_b + neighbor * psi_{b +- 1} + constant.
struct GhostRelation {
    cplx boundary;
    cplx neighbor;
    cplx constant;
};

/// Assembled boundary closure: the two rows that replace rows 0 and N_x of the
/// interior system, plus the relations reconstructing ghost values.
/// `left_ghosts[m-1]` gives psi_{-m}; `right_ghosts[m-1]` gives psi_{N+m}.
struct TbcScheme {
    TbcKind kind = TbcKind::d4tbc;
    int order = 1;
    cplx k1, k2;                      // exact contact wavenumbers
    cplx alpha, beta;                 // d4tbc roots
    cplx phase_left, phase_right;     // adtbc exp(i k dx)
    C4tbcCoefficients c4{};           // c4tbc
    BoundaryRow left{}, right{};
    std::vector<GhostRelation> left_ghosts, right_ghosts;
};

/// Interior rows j = 1..N-1 of the compact scheme
///   (lambda - c_{j-1}) psi_{j-1} - (2 lambda + 10 c_j) psi_j + (lambda - c_{j+1}) psi_{j+1} = 0,
/// c_j = (V_j - E) / kinetic, in an (N+1)-dimensional tridiagonal system whose
/// rows 0 and N are left empty for the closure. A node with jump [c] and kink
/// [c'] adds  [c]/2 (psi_{j-1} - psi_{j+1}) - dx [c'] psi_j + dx^2 [c]^2 psi_j / 4
/// to its row.
BandedComplexSystem assemble_interior(const SchrodingerContext& ctx);

TbcScheme assemble_c4tbc(const SchrodingerContext& ctx);
TbcScheme assemble_d4tbc(const SchrodingerContext& ctx);
/// `order` is the number of ghost relations per side (only 1 closes the
/// compact scheme; more are used to reconstruct extra ghost values).
TbcScheme assemble_adtbc(const SchrodingerContext& ctx, int order = 1);
TbcScheme assemble_tbc(const SchrodingerContext& ctx, TbcKind kind, int order = 1);

/// Solution of one left-incidence (or mirrored right-incidence) problem.
struct ScatteringState {
    ComplexGridFunction psi;
    double energy = 0.0;
    Incidence incidence = Incidence::left;
    TbcKind scheme = TbcKind::d4tbc;
    cplx k1, k2;  // wavenumbers at x = 0 and x = L
    cplx reflection;
    double transmission = 0.0;      // clamped to [0, 1]
    double transmission_raw = 0.0;  // 1 - |r|^2 as computed
};

/// Solves the closed system for left incidence, reconstructs all ghost values,
/// and extracts r = psi_0 - 1 and T = 1 - |r|^2.
///
/// A zero injected wavenumber (E at the left contact edge, or so close that
/// k dx < 1e-9) carries no flux and returns the zero state with r = -1, T = 0.
/// Throws PreconditionViolated for D4TBC/aDTBC when the uniqueness condition
/// fails or the energy lies below the injecting contact, SingularSystem from
/// the solver.
ScatteringState solve_scattering(const SchrodingerContext& ctx, const TbcScheme& scheme);
ScatteringState solve_scattering(const SchrodingerContext& ctx, TbcKind kind);

/// Right incidence via the mirrored problem; psi is un-mirrored and
/// r = psi_N - 1.
ScatteringState solve_right_incidence(const SchrodingerContext& ctx, TbcKind kind);

/// Dispatches on ctx.incidence.
ScatteringState solve_state(const SchrodingerContext& ctx, TbcKind kind);

}  // namespace qdev
