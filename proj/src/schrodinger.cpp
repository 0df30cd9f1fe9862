#include "qdev/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qdev {

namespace {

constexpr cplx I{0.0, 1.0};

double c_at(const SchrodingerContext& ctx, int j) { return (ctx.potential[j] - ctx.energy) / ctx.kinetic; }

double jump_at(const SchrodingerContext& ctx, int j) {
    if (ctx.jump.empty() || j < 0 || j > ctx.grid.intervals()) return 0.0;
    return ctx.jump[static_cast<std::size_t>(j)];
}

double kink_at(const SchrodingerContext& ctx, int j) {
    if (ctx.kink.empty() || j < 0 || j > ctx.grid.intervals()) return 0.0;
    return ctx.kink[static_cast<std::size_t>(j)];
}

// c at `node` as seen from the row of `row`: one-sided limit from the row's side.
double c_seen(const SchrodingerContext& ctx, int row, int node) {
    const double half = 0.5 * jump_at(ctx, node) / ctx.kinetic;
    if (node > row) return c_at(ctx, node) - half;
    if (node < row) return c_at(ctx, node) + half;
    return c_at(ctx, node);
}

// Row `j` of the interior scheme: coefficients of psi_{j-1}, psi_j, psi_{j+1}.
struct StencilRow {
    double left, centre, right;
};

StencilRow stencil(const SchrodingerContext& ctx, int j) {
    const double lambda = ctx.lambda();
    const double dc = jump_at(ctx, j) / ctx.kinetic;
    const double dc1 = kink_at(ctx, j) / ctx.kinetic;
    const double h = ctx.grid.spacing();
    // psi'_j = (psi_{j+1} - psi_{j-1}) / 2h - h [c] psi_j / 4 + O(h^2)
    return {lambda - c_seen(ctx, j, j - 1) + 0.5 * dc,
            -(2.0 * lambda + 10.0 * c_at(ctx, j)) - h * dc1 + 0.25 * h * h * dc * dc,
            lambda - c_seen(ctx, j, j + 1) - 0.5 * dc};
}

void check_context(const SchrodingerContext& ctx) {
    if (!(ctx.kinetic > 0.0)) throw InvalidArgument("kinetic prefactor must be positive");
    if (!(ctx.potential.grid() == ctx.grid)) throw InvalidArgument("potential lives on a different grid");
}

// Row 0 (or N) of the interior scheme with the ghost value eliminated by `g`.
BoundaryRow eliminate_ghost(const SchrodingerContext& ctx, int node, int neighbor, int ghost, const GhostRelation& g) {
    const double lambda = ctx.lambda();
    const double w_ghost = lambda - c_at(ctx, ghost);
    BoundaryRow row;
    row.boundary = w_ghost * g.boundary - (2.0 * lambda + 10.0 * c_at(ctx, node));
    row.neighbor = (lambda - c_seen(ctx, node, neighbor)) + w_ghost * g.neighbor;
    row.rhs = -w_ghost * g.constant;
    return row;
}

// Exterior plane-wave relations psi_{-m} = e^{ik m dx} psi_0 - 2i sin(k m dx),
// psi_{N+m} = e^{ik m dx} psi_N.
GhostRelation exact_left_ghost(cplx k, int m, double dx) {
    const cplx arg = k * static_cast<double>(m) * dx;
    return {std::exp(I * arg), 0.0, -2.0 * I * std::sin(arg)};
}

GhostRelation exact_right_ghost(cplx k, int m, double dx) {
    return {std::exp(I * k * static_cast<double>(m) * dx), 0.0, 0.0};
}

void check_theorem(const SchrodingerContext& ctx) {
    if (!ctx.theorem_precondition()) {
        throw PreconditionViolated("t_lambda = " + std::to_string(ctx.t_lambda()) +
                                   " does not exceed 2(E - V) at both contacts; refine the grid");
    }
}

}  // namespace

std::string_view to_string(TbcKind kind) noexcept {
    switch (kind) {
        case TbcKind::c4tbc: return "c4tbc";
        case TbcKind::d4tbc: return "d4tbc";
        case TbcKind::adtbc: return "adtbc";
    }
    return "?";
}

std::string_view to_string(Incidence incidence) noexcept {
    return incidence == Incidence::left ? "left" : "right";
}

TbcKind parse_tbc_kind(std::string_view name) {
    if (name == "c4tbc") return TbcKind::c4tbc;
    if (name == "d4tbc") return TbcKind::d4tbc;
    if (name == "adtbc") return TbcKind::adtbc;
    throw InvalidArgument("unknown TBC scheme '" + std::string(name) + "'");
}

bool SchrodingerContext::theorem_precondition() const {
    const double t = t_lambda();
    return t > 2.0 * (energy - left_edge()) && t > 2.0 * (energy - right_edge());
}

SchrodingerContext make_context(const Grid& grid, std::span<const double> nodal_potential, double kinetic,
                                double energy, Incidence incidence, std::span<const double> jump,
                                std::span<const double> kink) {
    const int n = grid.intervals();
    const auto nodes = static_cast<std::size_t>(n + 1);
    if (nodal_potential.size() != nodes) throw InvalidArgument("nodal potential must have N_x + 1 entries");
    if ((!jump.empty() && jump.size() != nodes) || (!kink.empty() && kink.size() != nodes))
        throw InvalidArgument("jump and kink data must have N_x + 1 entries");
    SchrodingerContext ctx{grid, RealGridFunction(grid), kinetic, energy, incidence,
                           std::vector<double>(jump.begin(), jump.end()), std::vector<double>(kink.begin(), kink.end())};
    for (int i = grid.first(); i <= grid.last(); ++i) {
        const int clamped = std::clamp(i, 0, n);
        ctx.potential[i] = nodal_potential[static_cast<std::size_t>(clamped)];
    }
    return ctx;
}

SchrodingerContext mirrored(const SchrodingerContext& ctx) {
    SchrodingerContext out = ctx;
    const int n = ctx.grid.intervals();
    for (int i = ctx.grid.first(); i <= ctx.grid.last(); ++i) out.potential[i] = ctx.potential[n - i];
    // V(L - x) reverses the order of the breakpoints and flips the sign of jumps
    std::reverse(out.jump.begin(), out.jump.end());
    for (double& v : out.jump) v = -v;
    std::reverse(out.kink.begin(), out.kink.end());
    out.incidence = ctx.incidence == Incidence::left ? Incidence::right : Incidence::left;
    return out;
}

DispersionRoots dispersion_roots(double energy, double edge, double kinetic, double dx) {
    const double t = kinetic * 12.0 / (dx * dx);
    const double e = energy - edge;
    if (!(t > 2.0 * e)) {
        throw PreconditionViolated("dispersion roots need t_lambda > 2(E - V); t_lambda = " + std::to_string(t) +
                                   ", E - V = " + std::to_string(e));
    }
    const double denom = t + e;
    if (denom == 0.0) throw DegenerateDenominator("dispersion roots: t_lambda + E - V vanishes");
    const double disc = 12.0 * e * (t - 2.0 * e);
    // i * sqrt(disc) on the principal branch
    const cplx root = disc >= 0.0 ? cplx(0.0, std::sqrt(disc)) : cplx(-std::sqrt(-disc), 0.0);
    return {(t - 5.0 * e + root) / denom, (t - 5.0 * e - root) / denom};
}

cplx exact_wavenumber(double energy, double edge, double kinetic) {
    return std::sqrt(cplx((energy - edge) / kinetic, 0.0));
}

C4tbcCoefficients c4tbc_coefficients(double t, double e0, double e1, double e_nm1, double e_n, cplx k1, cplx k2,
                                     double dx) {
    const double d_left = t + 2.0 * e0;
    const double d_right = t + 2.0 * e_n;
    if (d_left == 0.0 || d_right == 0.0)
        throw DegenerateDenominator("C4TBC: t_lambda + 2(E - V) vanishes at a contact");
    const double rho_l = (t + e0) / d_left;
    const double rho_r = (t + e_n) / d_right;
    C4tbcCoefficients c;
    c.a0 = -2.0 * t + 10.0 * e0 + 2.0 * I * k1 * t * dx * rho_l;
    c.b1 = t + e1 + (t + 2.0 * e1) * rho_l;
    c.d0 = 4.0 * I * k1 * t * dx * rho_l;
    c.b_nm1 = t + e_nm1 + (t + 2.0 * e_nm1) * rho_r;
    c.a_n = -2.0 * t + 10.0 * e_n + 2.0 * I * k2 * t * dx * rho_r;
    return c;
}

BandedComplexSystem assemble_interior(const SchrodingerContext& ctx) {
    check_context(ctx);
    const int n = ctx.grid.intervals();
    BandedComplexSystem sys(static_cast<std::size_t>(n + 1), 1, 1);
    for (int j = 1; j < n; ++j) {
        const auto r = static_cast<std::size_t>(j);
        const StencilRow row = stencil(ctx, j);
        sys.at(r, r - 1) = row.left;
        sys.at(r, r) = row.centre;
        sys.at(r, r + 1) = row.right;
    }
    return sys;
}

TbcScheme assemble_c4tbc(const SchrodingerContext& ctx) {
    check_context(ctx);
    const int n = ctx.grid.intervals();
    const double dx = ctx.grid.spacing();
    const double t = ctx.t_lambda();
    const double lambda = ctx.lambda();
    auto e = [&](int j) { return ctx.energy - ctx.potential[j]; };

    TbcScheme s;
    s.kind = TbcKind::c4tbc;
    s.k1 = exact_wavenumber(ctx.energy, ctx.left_edge(), ctx.kinetic);
    s.k2 = exact_wavenumber(ctx.energy, ctx.right_edge(), ctx.kinetic);
    s.c4 = c4tbc_coefficients(t, e(0), e(1), e(n - 1), e(n), s.k1, s.k2, dx);
    // Rows in the interior scheme's units (divide energies by hbar^2/2m*).
    s.left = {s.c4.a0 / ctx.kinetic, s.c4.b1 / ctx.kinetic, s.c4.d0 / ctx.kinetic};
    s.right = {s.c4.a_n / ctx.kinetic, s.c4.b_nm1 / ctx.kinetic, 0.0};

    // Ghosts from the compact boundary-derivative closure and the TBCs.
    const double wl = lambda - 2.0 * c_at(ctx, -1);
    const double wr = lambda - 2.0 * c_at(ctx, n + 1);
    s.left_ghosts.push_back({24.0 / dx * I * s.k1 / wl, (lambda - 2.0 * c_at(ctx, 1)) / wl, -48.0 / dx * I * s.k1 / wl});
    s.right_ghosts.push_back({24.0 / dx * I * s.k2 / wr, (lambda - 2.0 * c_at(ctx, n - 1)) / wr, 0.0});
    for (int m = 2; m <= ctx.grid.ghosts(); ++m) {
        s.left_ghosts.push_back(exact_left_ghost(s.k1, m, dx));
        s.right_ghosts.push_back(exact_right_ghost(s.k2, m, dx));
    }
    return s;
}

TbcScheme assemble_d4tbc(const SchrodingerContext& ctx) {
    check_context(ctx);
    const int n = ctx.grid.intervals();
    const double dx = ctx.grid.spacing();

    TbcScheme s;
    s.kind = TbcKind::d4tbc;
    s.k1 = exact_wavenumber(ctx.energy, ctx.left_edge(), ctx.kinetic);
    s.k2 = exact_wavenumber(ctx.energy, ctx.right_edge(), ctx.kinetic);
    s.alpha = dispersion_roots(ctx.energy, ctx.left_edge(), ctx.kinetic, dx).plus;
    s.beta = dispersion_roots(ctx.energy, ctx.right_edge(), ctx.kinetic, dx).plus;

    // psi_j = R alpha^{-j} + alpha^j (j <= 0) gives psi_{-m} = alpha^m psi_0 + alpha^{-m} - alpha^m.
    for (int m = 1; m <= ctx.grid.ghosts(); ++m) {
        const cplx am = std::pow(s.alpha, m);
        s.left_ghosts.push_back({am, 0.0, 1.0 / am - am});
        s.right_ghosts.push_back({std::pow(s.beta, m), 0.0, 0.0});
    }
    s.left = eliminate_ghost(ctx, 0, 1, -1, s.left_ghosts.front());
    s.right = eliminate_ghost(ctx, n, n - 1, n + 1, s.right_ghosts.front());
    return s;
}

TbcScheme assemble_adtbc(const SchrodingerContext& ctx, int order) {
    check_context(ctx);
    if (order < 1) throw InvalidArgument("aDTBC order must be >= 1");
    const int n = ctx.grid.intervals();
    const double dx = ctx.grid.spacing();

    TbcScheme s;
    s.kind = TbcKind::adtbc;
    s.order = order;
    s.k1 = exact_wavenumber(ctx.energy, ctx.left_edge(), ctx.kinetic);
    s.k2 = exact_wavenumber(ctx.energy, ctx.right_edge(), ctx.kinetic);
    s.phase_left = std::exp(I * s.k1 * dx);
    s.phase_right = std::exp(I * s.k2 * dx);
    for (int m = 1; m <= std::max(order, ctx.grid.ghosts()); ++m) {
        s.left_ghosts.push_back(exact_left_ghost(s.k1, m, dx));
        s.right_ghosts.push_back(exact_right_ghost(s.k2, m, dx));
    }
    s.left = eliminate_ghost(ctx, 0, 1, -1, s.left_ghosts.front());
    s.right = eliminate_ghost(ctx, n, n - 1, n + 1, s.right_ghosts.front());
    return s;
}

TbcScheme assemble_tbc(const SchrodingerContext& ctx, TbcKind kind, int order) {
    switch (kind) {
        case TbcKind::c4tbc: return assemble_c4tbc(ctx);
        case TbcKind::d4tbc: return assemble_d4tbc(ctx);
        case TbcKind::adtbc: return assemble_adtbc(ctx, order);
    }
    throw InvalidArgument("unknown TBC kind");
}

ScatteringState solve_scattering(const SchrodingerContext& ctx, const TbcScheme& scheme) {
    check_context(ctx);
    const int n = ctx.grid.intervals();
    if (n < 2) throw InvalidArgument("scattering solve needs N_x >= 2");
    if (ctx.energy < ctx.left_edge())
        throw PreconditionViolated("energy below the injecting contact edge (evanescent injection)");
    if (scheme.kind != TbcKind::c4tbc) check_theorem(ctx);

    ScatteringState state;
    state.psi = ComplexGridFunction(ctx.grid);
    state.energy = ctx.energy;
    state.incidence = Incidence::left;
    state.scheme = scheme.kind;
    state.k1 = scheme.k1;
    state.k2 = scheme.k2;

    // within k dx < 1e-9 of the edge the closed system is numerically singular;
    // such states are taken as the threshold (zero) state
    const double dx = ctx.grid.spacing();
    if (ctx.energy - ctx.left_edge() <= 1e-18 * ctx.kinetic / (dx * dx)) {
        state.reflection = -1.0;
        return state;
    }

    BandedComplexSystem sys = assemble_interior(ctx);
    const auto last = static_cast<std::size_t>(n);
    sys.at(0, 0) = scheme.left.boundary;
    sys.at(0, 1) = scheme.left.neighbor;
    sys.rhs()[0] = scheme.left.rhs;
    sys.at(last, last) = scheme.right.boundary;
    sys.at(last, last - 1) = scheme.right.neighbor;
    sys.rhs()[last] = scheme.right.rhs;

    const std::vector<cplx> x = solve_banded(sys);
    for (int j = 0; j <= n; ++j) state.psi[j] = x[static_cast<std::size_t>(j)];
    for (int m = 1; m <= ctx.grid.ghosts(); ++m) {
        const GhostRelation& gl = scheme.left_ghosts.at(static_cast<std::size_t>(m - 1));
        const GhostRelation& gr = scheme.right_ghosts.at(static_cast<std::size_t>(m - 1));
        state.psi[-m] = gl.boundary * state.psi[0] + gl.neighbor * state.psi[1] + gl.constant;
        state.psi[n + m] = gr.boundary * state.psi[n] + gr.neighbor * state.psi[n - 1] + gr.constant;
    }

    state.reflection = state.psi[0] - 1.0;
    state.transmission_raw = 1.0 - std::norm(state.reflection);
    state.transmission = std::clamp(state.transmission_raw, 0.0, 1.0);
    return state;
}

ScatteringState solve_scattering(const SchrodingerContext& ctx, TbcKind kind) {
    return solve_scattering(ctx, assemble_tbc(ctx, kind));
}

ScatteringState solve_right_incidence(const SchrodingerContext& ctx, TbcKind kind) {
    SchrodingerContext mirror = mirrored(ctx);
    mirror.incidence = Incidence::left;
    const ScatteringState m = solve_scattering(mirror, kind);

    const int n = ctx.grid.intervals();
    ScatteringState state = m;
    state.incidence = Incidence::right;
    state.k1 = m.k2;
    state.k2 = m.k1;
    for (int i = ctx.grid.first(); i <= ctx.grid.last(); ++i) state.psi[i] = m.psi[n - i];
    return state;
}

ScatteringState solve_state(const SchrodingerContext& ctx, TbcKind kind) {
    return ctx.incidence == Incidence::left ? solve_scattering(ctx, kind) : solve_right_incidence(ctx, kind);
}

}  // namespace qdev
