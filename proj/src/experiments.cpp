#include "qdev/experiments.hpp"

#include <algorithm>
#include <cmath>

namespace qdev {

std::vector<double> observed_orders(const std::vector<ConvergencePoint>& points) {
    std::vector<double> orders;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) orders.push_back(std::log2(points[i].error / points[i + 1].error));
    return orders;
}

ScatteringState free_particle_state(const DeviceSpec& device, TbcKind scheme, int intervals) {
    if (!device.energy) throw InvalidArgument("device '" + device.name + "' has no injection energy");
    const Grid grid = device.grid(intervals);
    const RealGridFunction band = device.band_profile(grid);
    const auto nodal = band.physical();
    return solve_scattering(make_context(grid, nodal, device.kinetic(), *device.energy), scheme);
}

double oscillation_metric(const ScatteringState& state) {
    double m = 0.0;
    for (const cplx& v : state.psi.physical()) m = std::max(m, std::abs(std::abs(v) - 1.0));
    return m;
}

ConvergenceReport schrodinger_convergence(const DeviceSpec& device, TbcKind scheme, const std::vector<int>& intervals) {
    if (!device.band.empty()) throw InvalidArgument("the plane-wave reference needs a flat band profile");
    if (!device.energy) throw InvalidArgument("device '" + device.name + "' has no injection energy");
    const double k = std::sqrt(*device.energy / device.kinetic());

    ConvergenceReport report;
    report.quantity = "psi";
    report.scheme = std::string(to_string(scheme));
    report.reference = "exact plane wave exp(i k x)";
    for (int n : intervals) {
        const ScatteringState s = free_particle_state(device, scheme, n);
        const Grid& g = s.psi.grid();
        double err = 0.0;
        for (int j = 0; j <= n; ++j) err = std::max(err, std::abs(s.psi[j] - std::polar(1.0, k * g.x(j))));
        report.points.push_back({n, err});
    }
    report.orders = observed_orders(report.points);
    return report;
}

ConvergenceReport self_consistent_convergence(const DeviceSpec& device, const SelfConsistentConfig& config,
                                              const std::vector<int>& intervals, int reference_intervals) {
    DeviceSpec d = device;
    d.intervals = reference_intervals;
    const SelfConsistentResult ref = run_self_consistent(d, 0.0, config);
    RealGridFunction ref_total(ref.grid);
    for (int i = 0; i <= reference_intervals; ++i) ref_total[i] = ref.total[static_cast<std::size_t>(i)];

    ConvergenceReport report;
    report.quantity = "V";
    report.scheme = scheme_tag(config.scheme);
    report.reference = "nodal restriction of the N_x = " + std::to_string(reference_intervals) + " solution";
    for (int n : intervals) {
        d.intervals = n;
        if (!ref.grid.refines(d.grid())) throw InvalidArgument("reference grid does not nest N_x = " + std::to_string(n));
        const SelfConsistentResult r = run_self_consistent(d, 0.0, config);
        const std::vector<double> projected = restrict_to(ref_total, r.grid);
        double err = 0.0;
        for (int i = 0; i <= n; ++i)
            err = std::max(err, std::abs(r.total[static_cast<std::size_t>(i)] - projected[static_cast<std::size_t>(i)]));
        report.points.push_back({n, err});
    }
    report.orders = observed_orders(report.points);
    return report;
}

}  // namespace qdev
