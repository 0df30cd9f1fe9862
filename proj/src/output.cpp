#include "qdev/output.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qdev/units.hpp"

namespace qdev {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string format_double(double v) {
    if (v == 0.0) return "0";  // folds -0
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string csv_table(const std::string& header, const std::vector<std::vector<double>>& columns) {
    std::string out = header + "\n";
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            out += format_double(columns[c][r]);
        }
        out += '\n';
    }
    return out;
}

std::vector<double> transmission_energies(const SelfConsistentResult& result, double energy_cutoff, int points) {
    const double edge = result.total.front();
    std::vector<double> e(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) e[static_cast<std::size_t>(i)] = edge + energy_cutoff * i / (points - 1);
    return e;
}

std::string error_json(const std::string& kind, const std::string& message) {
    return json{{"error", kind}, {"message", message}}.dump() + "\n";
}

namespace {

json scalar_to_json(const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    long long i = 0;
    auto ri = std::from_chars(s.data(), s.data() + s.size(), i);
    if (ri.ec == std::errc() && ri.ptr == s.data() + s.size()) return i;
    double d = 0.0;
    auto rd = std::from_chars(s.data(), s.data() + s.size(), d);
    if (rd.ec == std::errc() && rd.ptr == s.data() + s.size()) return d;
    return s;
}

json yaml_to_json(const YAML::Node& n) {
    if (n.IsMap()) {
        json j = json::object();
        for (const auto& kv : n) j[kv.first.as<std::string>()] = yaml_to_json(kv.second);
        return j;
    }
    if (n.IsSequence()) {
        json j = json::array();
        for (const auto& v : n) j.push_back(yaml_to_json(v));
        return j;
    }
    if (n.IsScalar()) return scalar_to_json(n.Scalar());
    return nullptr;
}

void write_file(const fs::path& path, const std::string& text, RunOutcome& outcome) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write " + path.string());
    f << text;
    outcome.files.push_back(path);
}

json summary_header(const RunConfig& config) {
    json j;
    j["device"] = config.device.name;
    j["scheme"] = std::string(to_string(config.scheme));
    j["scheme_tag"] = scheme_tag(config.scheme);
    const Grid g = config.device.grid();
    j["grid"] = {{"nx", g.intervals()}, {"dx_nm", g.spacing()}, {"length_nm", g.length()}};
    j["tolerances"] = {{"quadrature", config.solver.quadrature_tolerance},
                       {"newton", config.solver.newton.tolerance},
                       {"outer", config.solver.tolerance}};
    return j;
}

void finish_summary(json& j, const RunConfig& config, RunOutcome& outcome) {
    if (!outcome.convergence.empty()) {
        json studies = json::array();
        for (const ConvergenceReport& r : outcome.convergence) {
            json s{{"quantity", r.quantity}, {"scheme", r.scheme}, {"reference", r.reference}};
            json pts = json::array();
            for (const auto& p : r.points) pts.push_back({{"nx", p.intervals}, {"error", p.error}});
            s["points"] = pts;
            s["orders"] = r.orders;
            studies.push_back(s);
        }
        j["convergence"] = studies;
    }
    const std::string yaml = serialize_config(config);
    j["config"] = yaml_to_json(YAML::Load(yaml));
    write_file(fs::path(config.output_dir) / "summary.json", j.dump(2) + "\n", outcome);
}

ConvergenceReport convergence_for(const RunConfig& config) {
    if (config.device.energy) return schrodinger_convergence(config.device, config.scheme, config.convergence_nx);
    int reference = config.convergence_reference;
    if (reference == 0)
        for (int n : config.convergence_nx) reference = std::max(reference, 2 * n);
    return self_consistent_convergence(config.device, config.solver, config.convergence_nx, reference);
}

void write_convergence(const RunConfig& config, RunOutcome& outcome) {
    if (config.convergence_nx.size() < 2) throw ValidationError("convergence.nx", "needs at least two grids");
    outcome.convergence.push_back(convergence_for(config));
    const ConvergenceReport& r = outcome.convergence.back();
    std::string text = "nx,error,order\n";
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        text += std::to_string(r.points[i].intervals) + "," + format_double(r.points[i].error) + ",";
        if (i > 0 && i - 1 < r.orders.size()) text += format_double(r.orders[i - 1]);
        text += "\n";
    }
    write_file(fs::path(config.output_dir) / "convergence.csv", text, outcome);
}

}  // namespace

RunOutcome run(const RunConfig& input) {
    RunConfig config = input;
    config.solver.scheme = config.scheme;
    config.validate();
    fs::create_directories(config.output_dir);
    RunOutcome outcome;
    json summary = summary_header(config);

    if (config.device.energy) {
        // single-energy setup: the wave function itself is the output
        const ScatteringState s = free_particle_state(config.device, config.scheme, config.device.intervals);
        const Grid& g = s.psi.grid();
        std::vector<double> x, re, im, mod;
        for (int j = 0; j <= g.intervals(); ++j) {
            x.push_back(g.x(j));
            re.push_back(s.psi[j].real());
            im.push_back(s.psi[j].imag());
            mod.push_back(std::abs(s.psi[j]));
        }
        write_file(fs::path(config.output_dir) / "psi.csv", csv_table("x_nm,re_psi,im_psi,abs_psi", {x, re, im, mod}),
                   outcome);
        summary["oscillation"] = oscillation_metric(s);
        summary["transmission"] = s.transmission;
    } else {
        outcome.results = bias_sweep(config.device, config.sweep.values(), config.solver);
        json biases = json::array();
        std::vector<double> v, current;
        for (const SelfConsistentResult& r : outcome.results) {
            json b{{"v_ds_V", r.bias},
                   {"converged", r.converged},
                   {"iterations", r.iterations},
                   {"history", r.history},
                   {"current_A_cm2", r.current},
                   {"quadrature_warning", r.quadrature_warning}};
            if (!r.error.empty()) b["error"] = r.error;
            biases.push_back(b);
            outcome.all_converged = outcome.all_converged && r.converged;
            if (!r.converged) continue;
            v.push_back(r.bias);
            current.push_back(r.current);
            const std::string label = format_double(r.bias);
            if (config.emit.profiles) {
                std::vector<double> x, pot, n;
                for (int i = 0; i <= r.grid.intervals(); ++i) {
                    x.push_back(r.grid.x(i));
                    pot.push_back(r.total[static_cast<std::size_t>(i)]);
                    n.push_back(r.density.density[i] * units::nm3_to_cm3);
                }
                write_file(fs::path(config.output_dir) / ("profile_" + label + ".csv"),
                           csv_table("x_nm,V_eV,n_cm3", {x, pot, n}), outcome);
            }
            if (config.emit.transmission) {
                const auto e = transmission_energies(r, config.solver.energy_cutoff, config.transmission_points);
                const auto t = transmission_curve(r, config.device, e, config.scheme);
                write_file(fs::path(config.output_dir) / ("transmission_" + label + ".csv"),
                           csv_table("E_eV,T", {e, t}), outcome);
            }
        }
        if (config.emit.iv)
            write_file(fs::path(config.output_dir) / "iv.csv", csv_table("v_ds_V,current", {v, current}), outcome);
        summary["current_unit"] = "A/cm^2";
        summary["biases"] = biases;
    }
    if (config.emit.convergence) write_convergence(config, outcome);
    finish_summary(summary, config, outcome);
    return outcome;
}

RunOutcome run_convergence(const RunConfig& input) {
    RunConfig config = input;
    config.solver.scheme = config.scheme;
    config.validate();
    fs::create_directories(config.output_dir);
    RunOutcome outcome;
    json summary = summary_header(config);
    write_convergence(config, outcome);
    finish_summary(summary, config, outcome);
    return outcome;
}

}  // namespace qdev
