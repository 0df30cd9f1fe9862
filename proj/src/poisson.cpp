#include "qdev/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qdev {

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Right-hand side b_i of the compact Neumann system.
double source_row(const RealGridFunction& f, int i) {
    const int n = f.grid().intervals();
    if (i == 0) return -f[-1] + 10.0 * f[0] + 3.0 * f[1];
    if (i == n) return 3.0 * f[n - 1] + 10.0 * f[n] - f[n + 1];
    return f[i - 1] + 10.0 * f[i] + f[i + 1];
}

double laplacian_row(const RealGridFunction& v, int i) {
    const int n = v.grid().intervals();
    const double lambda = v.grid().lambda();
    if (i == 0) return -2.0 * lambda * v[0] + 2.0 * lambda * v[1];
    if (i == n) return 2.0 * lambda * v[n - 1] - 2.0 * lambda * v[n];
    return lambda * (v[i - 1] - 2.0 * v[i] + v[i + 1]);
}

int mirror_node(int i, int n) {
    if (i < 0) return -i;
    if (i > n) return 2 * n - i;
    return i;
}

}  // namespace

RealGridFunction poisson_source(const RealGridFunction& doping, const RealGridFunction& density, double coupling) {
    if (!(doping.grid() == density.grid())) throw InvalidArgument("doping and density live on different grids");
    RealGridFunction f(doping.grid());
    for (int i = -1; i <= doping.grid().intervals() + 1; ++i) f[i] = coupling * (doping[i] - density[i]);
    return f;
}

BandedRealSystem assemble_poisson(const RealGridFunction& source) {
    const Grid& g = source.grid();
    const int n = g.intervals();
    if (n < 2) throw InvalidArgument("Poisson assembly needs N_x >= 2");
    const double lambda = g.lambda();
    BandedRealSystem sys(static_cast<std::size_t>(n + 1), 1, 1);
    sys.at(0, 0) = -2.0 * lambda;
    sys.at(0, 1) = 2.0 * lambda;
    for (int i = 1; i < n; ++i) {
        const auto r = static_cast<std::size_t>(i);
        sys.at(r, r - 1) = lambda;
        sys.at(r, r) = -2.0 * lambda;
        sys.at(r, r + 1) = lambda;
    }
    const auto last = static_cast<std::size_t>(n);
    sys.at(last, last - 1) = 2.0 * lambda;
    sys.at(last, last) = -2.0 * lambda;
    for (int i = 0; i <= n; ++i) sys.rhs()[static_cast<std::size_t>(i)] = source_row(source, i);
    return sys;
}

std::vector<double> poisson_residual(const RealGridFunction& potential, const RealGridFunction& source) {
    const int n = potential.grid().intervals();
    std::vector<double> r(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) r[static_cast<std::size_t>(i)] = laplacian_row(potential, i) - source_row(source, i);
    return r;
}

void fill_neumann_ghosts(RealGridFunction& v, const RealGridFunction& f) {
    const int n = v.grid().intervals();
    const double dx = v.grid().spacing();
    v[-1] = v[1] - dx * dx / 6.0 * (f[1] - f[-1]);
    v[n + 1] = v[n - 1] + dx * dx / 6.0 * (f[n + 1] - f[n - 1]);
}

double GummelDensity::value(const RealGridFunction& potential, int i) const {
    const int j = mirror_node(i, potential.grid().intervals());
    return reference_density[i] * std::exp(-(potential[j] - reference_potential[j]) / kT);
}

double GummelDensity::derivative(const RealGridFunction& potential, int i) const {
    return -value(potential, i) / kT;
}

void NewtonConfig::validate() const {
    if (!(tolerance > 0.0)) throw InvalidArgument("Newton tolerance must be > 0");
    if (max_iterations < 1) throw InvalidArgument("Newton needs at least one iteration");
    if (!(damping > 0.0 && damping <= 1.0)) throw InvalidArgument("Newton damping must lie in (0, 1]");
    if (!(min_damping > 0.0 && min_damping <= damping)) throw InvalidArgument("Newton damping floor out of range");
}

NewtonResult newton_solve(const RealGridFunction& initial, const RealGridFunction& doping,
                          const GummelDensity& density, double coupling, const NewtonConfig& config) {
    config.validate();
    const Grid& g = initial.grid();
    const int n = g.intervals();
    const double lambda = g.lambda();
    const bool predictor = config.use_predictor;

    auto source_at = [&](const RealGridFunction& v) {
        RealGridFunction f(g);
        for (int i = -1; i <= n + 1; ++i) {
            const double ni = predictor ? density.value(v, i) : density.reference_density[i];
            f[i] = coupling * (doping[i] - ni);
        }
        return f;
    };
    auto residual_at = [&](const RealGridFunction& v, const RealGridFunction& f) {
        std::vector<double> r = poisson_residual(v, f);
        if (!predictor) r[0] = v[0];
        return r;
    };

    NewtonResult out;
    RealGridFunction v = initial;
    RealGridFunction f = source_at(v);
    std::vector<double> r = residual_at(v, f);
    double r_norm = max_abs(r);

    for (int it = 1; it <= config.max_iterations; ++it) {
        BandedRealSystem jac(static_cast<std::size_t>(n + 1), 1, 1);
        // df_j/dV_j = -coupling dn_j/dV_j; ghosts respond through their mirror node
        auto df = [&](int j) { return predictor ? -coupling * density.derivative(v, j) : 0.0; };
        for (int i = 1; i < n; ++i) {
            const auto r_i = static_cast<std::size_t>(i);
            jac.at(r_i, r_i - 1) = lambda - df(i - 1);
            jac.at(r_i, r_i) = -2.0 * lambda - 10.0 * df(i);
            jac.at(r_i, r_i + 1) = lambda - df(i + 1);
        }
        const auto last = static_cast<std::size_t>(n);
        if (predictor) {
            jac.at(0, 0) = -2.0 * lambda - 10.0 * df(0);
            jac.at(0, 1) = 2.0 * lambda - 3.0 * df(1) + df(-1);
        } else {
            jac.at(0, 0) = 1.0;
        }
        jac.at(last, last) = -2.0 * lambda - 10.0 * df(n);
        jac.at(last, last - 1) = 2.0 * lambda - 3.0 * df(n - 1) + df(n + 1);
        for (std::size_t i = 0; i <= last; ++i) jac.rhs()[i] = -r[i];

        const std::vector<double> step = solve_banded(jac);

        double theta = config.damping;
        RealGridFunction trial = v;
        RealGridFunction f_trial;
        std::vector<double> r_trial;
        while (true) {
            for (int i = 0; i <= n; ++i) trial[i] = v[i] + theta * step[static_cast<std::size_t>(i)];
            f_trial = source_at(trial);
            r_trial = residual_at(trial, f_trial);
            if (max_abs(r_trial) <= r_norm || theta <= config.min_damping) break;
            theta = std::max(0.5 * theta, config.min_damping);
        }

        const double update = theta * max_abs(step);
        v = std::move(trial);
        f = std::move(f_trial);
        r = std::move(r_trial);
        r_norm = max_abs(r);
        out.update_history.push_back(update);
        out.residual_history.push_back(r_norm);
        out.iterations = it;
        if (update <= config.tolerance) {
            fill_neumann_ghosts(v, f);
            out.potential = std::move(v);
            out.source = std::move(f);
            return out;
        }
    }
    std::vector<double> best(v.values().begin(), v.values().end());
    throw MaxIterationsExceeded("Newton-Poisson did not reach " + std::to_string(config.tolerance) + " in " +
                                    std::to_string(config.max_iterations) + " iterations",
                                out.update_history, std::move(best));
}

}  // namespace qdev
