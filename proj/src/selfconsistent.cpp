#include "qdev/selfconsistent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdev/parallel.hpp"

namespace qdev {

namespace {

[[noreturn]] void rethrow_annotated(const Error& e, int iteration) {
    const std::string msg = "outer iteration " + std::to_string(iteration) + ": " + e.what();
    if (auto* m = dynamic_cast<const MaxIterationsExceeded*>(&e))
        throw MaxIterationsExceeded(msg, m->history(), m->best_iterate());
    if (dynamic_cast<const SingularSystem*>(&e)) throw SingularSystem(msg);
    if (dynamic_cast<const PreconditionViolated*>(&e)) throw PreconditionViolated(msg);
    if (dynamic_cast<const DegenerateDenominator*>(&e)) throw DegenerateDenominator(msg);
    throw InvalidArgument(msg);
}

std::vector<double> nodal_sum(const RealGridFunction& a, const RealGridFunction& b, const RealGridFunction* c) {
    const int n = a.grid().intervals();
    std::vector<double> out(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) out[static_cast<std::size_t>(i)] = a[i] + b[i] + (c ? (*c)[i] : 0.0);
    return out;
}

}  // namespace

QuadratureSpec SelfConsistentConfig::density_quadrature() const {
    QuadratureSpec q;
    q.tolerance = quadrature_tolerance;
    q.max_depth = quadrature_depth;
    q.initial_panels = density_panels;
    return q;
}

QuadratureSpec SelfConsistentConfig::current_quadrature() const {
    QuadratureSpec q = density_quadrature();
    q.initial_panels = current_panels;
    return q;
}

void SelfConsistentConfig::validate() const {
    if (!(energy_cutoff > 0.0)) throw InvalidArgument("energy cutoff must be > 0");
    if (!(quadrature_tolerance > 0.0)) throw InvalidArgument("quadrature tolerance must be > 0");
    if (quadrature_depth < 1 || density_panels < 1 || current_panels < 1)
        throw InvalidArgument("quadrature depth and panel counts must be >= 1");
    if (!(tolerance > 0.0)) throw InvalidArgument("outer tolerance must be > 0");
    if (max_iterations < 1) throw InvalidArgument("outer iteration cap must be >= 1");
    if (!(mixing > 0.0 && mixing <= 1.0)) throw InvalidArgument("mixing must lie in (0, 1]");
    newton.validate();
}

std::string scheme_tag(TbcKind kind) {
    switch (kind) {
        case TbcKind::d4tbc: return "DSP1";
        case TbcKind::adtbc: return "DSP2";
        case TbcKind::c4tbc: break;
    }
    return std::string(to_string(kind));
}

SelfConsistentResult run_self_consistent(const DeviceSpec& device, double bias, const SelfConsistentConfig& config,
                                         const RealGridFunction* initial_vs) {
    device.validate();
    config.validate();
    const Grid grid = device.grid();
    const double kinetic = device.kinetic();
    if (!(kinetic * grid.lambda() > 2.0 * config.energy_cutoff))
        throw PreconditionViolated("grid too coarse for the energy cutoff: t_lambda = " +
                                   std::to_string(kinetic * grid.lambda()) + " eV <= 2 E_cut");

    const ThermalContext thermal =
        ThermalContext::make(device.fermi_level, device.temperature, kinetic, bias, config.energy_cutoff);
    const RealGridFunction doping = device.doping_profile(grid);
    const RealGridFunction ramp = device.ramp_profile(grid, bias);

    SelfConsistentResult out;
    out.bias = bias;
    out.scheme = scheme_tag(config.scheme);
    out.grid = grid;
    out.band = device.band_profile(grid);
    out.jump = device.potential_jumps(grid);
    out.kink = device.potential_kinks(grid, bias, device.prescribed || config.superpose_ramp);

    auto finish = [&](const DeviceStates& states) {
        if (config.compute_current) {
            const CurrentResult c = current_density(states, thermal, config.current_quadrature());
            out.current = c.value;
            out.quadrature_warning = out.quadrature_warning || c.depth_exceeded;
        }
        out.converged = true;
        return out;
    };

    if (device.prescribed) {
        if (!device.ramp) throw InvalidArgument("prescribed potential needs a ramp");
        out.vs = ramp;
        out.total = nodal_sum(out.band, out.vs, nullptr);
        const DeviceStates states(grid, out.total, kinetic, config.scheme, out.jump, out.kink);
        out.density = electron_density(states, thermal, config.density_quadrature());
        out.quadrature_warning = out.density.depth_exceeded;
        out.iterations = 1;
        return finish(states);
    }

    if (initial_vs && !(initial_vs->grid() == grid)) throw InvalidArgument("warm start lives on a different grid");
    RealGridFunction vs = initial_vs ? *initial_vs : RealGridFunction(grid);
    if (config.superpose_ramp && !device.ramp) throw InvalidArgument("ramp superposition needs a device ramp");
    const RealGridFunction* extra = config.superpose_ramp ? &ramp : nullptr;

    for (int it = 1; it <= config.max_iterations; ++it) {
        try {
            out.total = nodal_sum(out.band, vs, extra);
            const DeviceStates states(grid, out.total, kinetic, config.scheme, out.jump, out.kink);
            out.density = electron_density(states, thermal, config.density_quadrature());
            out.quadrature_warning = out.quadrature_warning || out.density.depth_exceeded;

            const GummelDensity response{out.density.density, vs, thermal.kT};
            NewtonResult step = newton_solve(vs, doping, response, device.coupling(), config.newton);

            double delta = 0.0;
            for (int i = 0; i <= grid.intervals(); ++i) delta = std::max(delta, std::abs(step.potential[i] - vs[i]));
            for (int i = grid.first(); i <= grid.last(); ++i)
                vs[i] += config.mixing * (step.potential[i] - vs[i]);
            out.history.push_back(delta);
            out.iterations = it;
            if (delta <= config.tolerance) {
                out.vs = vs;
                out.total = nodal_sum(out.band, vs, extra);
                return finish(DeviceStates(grid, out.total, kinetic, config.scheme, out.jump, out.kink));
            }
        } catch (const Error& e) {
            rethrow_annotated(e, it);
        }
    }
    std::vector<double> best(vs.values().begin(), vs.values().end());
    throw MaxIterationsExceeded("self-consistent loop did not converge in " + std::to_string(config.max_iterations) +
                                    " outer iterations",
                                out.history, std::move(best));
}

std::vector<SelfConsistentResult> bias_sweep(const DeviceSpec& device, const std::vector<double>& biases,
                                             const SelfConsistentConfig& config) {
    for (std::size_t i = 1; i < biases.size(); ++i)
        if (!(biases[i] > biases[i - 1])) throw InvalidArgument("bias sweep must be strictly increasing");
    std::vector<SelfConsistentResult> out;
    std::optional<RealGridFunction> warm;
    for (double bias : biases) {
        try {
            SelfConsistentResult r = run_self_consistent(device, bias, config, warm ? &*warm : nullptr);
            warm = r.vs;
            out.push_back(std::move(r));
        } catch (const Error& e) {
            SelfConsistentResult r;
            r.bias = bias;
            r.scheme = scheme_tag(config.scheme);
            r.grid = device.grid();
            r.error = std::string(e.kind()) + ": " + e.what();
            if (auto* m = dynamic_cast<const MaxIterationsExceeded*>(&e)) r.history = m->history();
            out.push_back(std::move(r));
        }
    }
    return out;
}

std::vector<double> transmission_curve(const SelfConsistentResult& result, const DeviceSpec& device,
                                       const std::vector<double>& energies, TbcKind scheme) {
    const DeviceStates states(result.grid, result.total, device.kinetic(), scheme, result.jump, result.kink);
    const double edge = states.contact_edge(Incidence::left);
    std::vector<double> t(energies.size(), 0.0);
    parallel_for(energies.size(), [&](std::size_t i) {
        if (energies[i] > edge) t[i] = states.transmission(energies[i]);
    });
    return t;
}

}  // namespace qdev
