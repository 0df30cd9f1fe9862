#include "qdev/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "qdev/output.hpp"

namespace qdev {

namespace {

[[noreturn]] void fail_at(const YAML::Node& node, const std::string& what) {
    const YAML::Mark m = node.Mark();
    throw ParseError(what, m.line + 1, m.column + 1);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void check_map(const YAML::Node& node, const std::string& path) {
    if (!node.IsMap()) fail_at(node, "'" + path + "' must be a mapping");
}

void check_keys(const YAML::Node& node, const std::string& path, const std::set<std::string>& allowed) {
    check_map(node, path);
    for (const auto& kv : node) {
        const std::string key = kv.first.as<std::string>();
        if (!allowed.count(key)) fail_at(kv.first, "unknown key '" + join(path, key) + "'");
    }
}

template <class T>
void read(const YAML::Node& parent, const char* key, const std::string& path, T& out) {
    const YAML::Node n = parent[key];
    if (!n) return;
    try {
        out = n.as<T>();
    } catch (const YAML::BadConversion&) {
        fail_at(n, "'" + join(path, key) + "' has the wrong type");
    }
}

template <class T>
void read_optional(const YAML::Node& parent, const char* key, const std::string& path, std::optional<T>& out) {
    if (!parent[key]) return;
    T v{};
    read(parent, key, path, v);
    out = v;
}

std::vector<Region> read_regions(const YAML::Node& parent, const char* key, const std::string& path,
                                 const char* value_key, std::vector<Region> fallback) {
    const YAML::Node block = parent[key];
    if (!block) return fallback;
    const std::string here = join(path, key);
    check_keys(block, here, {"regions"});
    const YAML::Node list = block["regions"];
    if (!list) return {};
    if (!list.IsSequence()) fail_at(list, "'" + here + ".regions' must be a list");
    std::vector<Region> out;
    for (const auto& item : list) {
        check_keys(item, here + ".regions", {"start_nm", "end_nm", value_key});
        Region r;
        for (const char* k : {"start_nm", "end_nm", value_key})
            if (!item[k]) fail_at(item, "'" + here + ".regions' entries need '" + k + "'");
        read(item, "start_nm", here + ".regions", r.start);
        read(item, "end_nm", here + ".regions", r.end);
        read(item, value_key, here + ".regions", r.value);
        out.push_back(r);
    }
    return out;
}

void preset_defaults(RunConfig& c) {
    const std::string& name = c.device.name;
    if (name == "resistor") {
        c.sweep = {0.0, 0.25, 0.05};
        c.convergence_nx = {100, 200, 400};
        c.convergence_reference = 800;
    } else if (name == "rtd_a" || name == "rtd_b") {
        c.sweep = {0.0, 0.4, 0.02};
    } else if (name == "free_particle") {
        c.sweep = {0.0, 0.0, 0.02};
        c.convergence_nx = {100, 200, 400, 800};
    }
}

DeviceSpec read_device(const YAML::Node& node, const std::string& path, std::string& preset) {
    check_keys(node, path,
               {"preset", "name", "length_nm", "mass_ratio", "permittivity_ratio", "temperature_K", "fermi_level_eV",
                "smooth_doping", "smooth_potential", "kinetic_eV_nm2", "energy_eV", "prescribed", "ramp", "doping", "band"});
    DeviceSpec d;
    read(node, "preset", path, preset);
    if (!preset.empty()) d = build_preset(preset);
    read(node, "name", path, d.name);
    read(node, "length_nm", path, d.length);
    read(node, "mass_ratio", path, d.mass_ratio);
    read(node, "permittivity_ratio", path, d.permittivity_ratio);
    read(node, "temperature_K", path, d.temperature);
    read(node, "fermi_level_eV", path, d.fermi_level);
    read(node, "smooth_doping", path, d.smooth_doping);
    read(node, "smooth_potential", path, d.smooth_potential);
    read_optional(node, "kinetic_eV_nm2", path, d.kinetic_override);
    read_optional(node, "energy_eV", path, d.energy);
    read(node, "prescribed", path, d.prescribed);
    if (const YAML::Node r = node["ramp"]) {
        check_keys(r, join(path, "ramp"), {"start_nm", "end_nm"});
        BiasRamp ramp = d.ramp.value_or(BiasRamp{});
        read(r, "start_nm", join(path, "ramp"), ramp.start);
        read(r, "end_nm", join(path, "ramp"), ramp.end);
        d.ramp = ramp;
    }
    d.doping = read_regions(node, "doping", "", "value_cm3", d.doping);
    d.band = read_regions(node, "band", "", "value_eV", d.band);
    if (d.name.empty()) d.name = "custom";
    return d;
}

YAML::Node load(std::string_view text) {
    try {
        return YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ParseError(e.msg, e.mark.line + 1, e.mark.column + 1);
    }
}

void emit_number(YAML::Emitter& out, double v) { out << format_double(v); }

void emit_device(YAML::Emitter& out, const DeviceSpec& d, const std::string& preset) {
    out << YAML::BeginMap;
    if (!preset.empty()) out << YAML::Key << "preset" << YAML::Value << preset;
    out << YAML::Key << "name" << YAML::Value << d.name;
    out << YAML::Key << "length_nm" << YAML::Value;
    emit_number(out, d.length);
    out << YAML::Key << "mass_ratio" << YAML::Value;
    emit_number(out, d.mass_ratio);
    out << YAML::Key << "permittivity_ratio" << YAML::Value;
    emit_number(out, d.permittivity_ratio);
    out << YAML::Key << "temperature_K" << YAML::Value;
    emit_number(out, d.temperature);
    out << YAML::Key << "fermi_level_eV" << YAML::Value;
    emit_number(out, d.fermi_level);
    out << YAML::Key << "smooth_doping" << YAML::Value << d.smooth_doping;
    out << YAML::Key << "smooth_potential" << YAML::Value << d.smooth_potential;
    if (d.kinetic_override) {
        out << YAML::Key << "kinetic_eV_nm2" << YAML::Value;
        emit_number(out, *d.kinetic_override);
    }
    if (d.energy) {
        out << YAML::Key << "energy_eV" << YAML::Value;
        emit_number(out, *d.energy);
    }
    out << YAML::Key << "prescribed" << YAML::Value << d.prescribed;
    if (d.ramp) {
        out << YAML::Key << "ramp" << YAML::Value << YAML::Flow << YAML::BeginMap;
        out << YAML::Key << "start_nm" << YAML::Value;
        emit_number(out, d.ramp->start);
        out << YAML::Key << "end_nm" << YAML::Value;
        emit_number(out, d.ramp->end);
        out << YAML::EndMap;
    }
    auto regions = [&](const char* key, const char* value_key, const std::vector<Region>& rs) {
        out << YAML::Key << key << YAML::Value << YAML::BeginMap << YAML::Key << "regions" << YAML::Value
            << YAML::BeginSeq;
        for (const Region& r : rs) {
            out << YAML::Flow << YAML::BeginMap;
            out << YAML::Key << "start_nm" << YAML::Value;
            emit_number(out, r.start);
            out << YAML::Key << "end_nm" << YAML::Value;
            emit_number(out, r.end);
            out << YAML::Key << value_key << YAML::Value;
            emit_number(out, r.value);
            out << YAML::EndMap;
        }
        out << YAML::EndSeq << YAML::EndMap;
    };
    regions("doping", "value_cm3", d.doping);
    regions("band", "value_eV", d.band);
    out << YAML::EndMap;
}

}  // namespace

std::vector<double> SweepSpec::values() const {
    std::vector<double> out;
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-3));
    for (long i = 0; i <= count; ++i) {
        // snap to 1e-12 V so that 0.02 * 9 prints as 0.18
        out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return out;
}

void RunConfig::validate() const {
    device.validate();
    if (!(sweep.step > 0.0)) throw ValidationError("bias.step_V", "must be > 0");
    if (!(sweep.stop >= sweep.start)) throw ValidationError("bias.stop_V", "must be >= bias.start_V");
    if (!(solver.energy_cutoff > 0.0)) throw ValidationError("solver.energy_cutoff_eV", "must be > 0");
    if (!(solver.quadrature_tolerance > 0.0)) throw ValidationError("solver.quadrature_tolerance", "must be > 0");
    if (solver.quadrature_depth < 1) throw ValidationError("solver.quadrature_depth", "must be >= 1");
    if (solver.density_panels < 1) throw ValidationError("solver.density_panels", "must be >= 1");
    if (solver.current_panels < 1) throw ValidationError("solver.current_panels", "must be >= 1");
    if (!(solver.newton.tolerance > 0.0)) throw ValidationError("solver.newton_tolerance", "must be > 0");
    if (solver.newton.max_iterations < 1) throw ValidationError("solver.newton_max_iterations", "must be >= 1");
    if (!(solver.tolerance > 0.0)) throw ValidationError("solver.outer_tolerance", "must be > 0");
    if (solver.max_iterations < 1) throw ValidationError("solver.outer_max_iterations", "must be >= 1");
    if (!(solver.mixing > 0.0 && solver.mixing <= 1.0)) throw ValidationError("solver.mixing", "must lie in (0, 1]");
    if (solver.superpose_ramp && !device.ramp) throw ValidationError("solver.superpose_ramp", "device has no ramp");
    if (transmission_points < 2) throw ValidationError("output.transmission_points", "must be >= 2");
    if (output_dir.empty()) throw ValidationError("output.directory", "must not be empty");
    for (int n : convergence_nx)
        if (n < 2) throw ValidationError("convergence.nx", "entries must be >= 2");
    if (convergence_reference < 0) throw ValidationError("convergence.reference_nx", "must be >= 0");
}

RunConfig parse_config(std::string_view text) {
    const YAML::Node root = load(text);
    if (!root || root.IsNull()) throw ParseError("empty configuration", 1, 1);
    check_keys(root, "", {"device", "grid", "scheme", "bias", "solver", "output", "convergence"});

    RunConfig c;
    if (!root["device"]) fail_at(root, "missing 'device'");
    c.device = read_device(root["device"], "device", c.preset);
    preset_defaults(c);

    if (const YAML::Node g = root["grid"]) {
        check_keys(g, "grid", {"nx"});
        read(g, "nx", "grid", c.device.intervals);
    }
    if (root["scheme"]) {
        std::string s;
        read(root, "scheme", "", s);
        try {
            c.scheme = parse_tbc_kind(s);
        } catch (const Error&) {
            throw ValidationError("scheme", "expected c4tbc, d4tbc or adtbc, got '" + s + "'");
        }
    }
    if (const YAML::Node b = root["bias"]) {
        check_keys(b, "bias", {"start_V", "stop_V", "step_V"});
        read(b, "start_V", "bias", c.sweep.start);
        read(b, "stop_V", "bias", c.sweep.stop);
        read(b, "step_V", "bias", c.sweep.step);
    }
    if (const YAML::Node s = root["solver"]) {
        check_keys(s, "solver",
                   {"energy_cutoff_eV", "quadrature_tolerance", "quadrature_depth", "density_panels", "current_panels",
                    "newton_tolerance", "newton_max_iterations", "outer_tolerance", "outer_max_iterations", "mixing",
                    "superpose_ramp"});
        read(s, "energy_cutoff_eV", "solver", c.solver.energy_cutoff);
        read(s, "quadrature_tolerance", "solver", c.solver.quadrature_tolerance);
        read(s, "quadrature_depth", "solver", c.solver.quadrature_depth);
        read(s, "density_panels", "solver", c.solver.density_panels);
        read(s, "current_panels", "solver", c.solver.current_panels);
        read(s, "newton_tolerance", "solver", c.solver.newton.tolerance);
        read(s, "newton_max_iterations", "solver", c.solver.newton.max_iterations);
        read(s, "outer_tolerance", "solver", c.solver.tolerance);
        read(s, "outer_max_iterations", "solver", c.solver.max_iterations);
        read(s, "mixing", "solver", c.solver.mixing);
        read(s, "superpose_ramp", "solver", c.solver.superpose_ramp);
    }
    if (const YAML::Node o = root["output"]) {
        check_keys(o, "output", {"directory", "iv", "profiles", "transmission", "convergence", "transmission_points"});
        read(o, "directory", "output", c.output_dir);
        read(o, "iv", "output", c.emit.iv);
        read(o, "profiles", "output", c.emit.profiles);
        read(o, "transmission", "output", c.emit.transmission);
        read(o, "convergence", "output", c.emit.convergence);
        read(o, "transmission_points", "output", c.transmission_points);
    }
    if (const YAML::Node v = root["convergence"]) {
        check_keys(v, "convergence", {"nx", "reference_nx"});
        read(v, "nx", "convergence", c.convergence_nx);
        read(v, "reference_nx", "convergence", c.convergence_reference);
    }
    c.solver.scheme = c.scheme;
    c.validate();
    return c;
}

std::string serialize_config(const RunConfig& c) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "device" << YAML::Value;
    emit_device(out, c.device, c.preset);
    out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap << YAML::Key << "nx" << YAML::Value
        << c.device.intervals << YAML::EndMap;
    out << YAML::Key << "scheme" << YAML::Value << std::string(to_string(c.scheme));
    out << YAML::Key << "bias" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "start_V" << YAML::Value;
    emit_number(out, c.sweep.start);
    out << YAML::Key << "stop_V" << YAML::Value;
    emit_number(out, c.sweep.stop);
    out << YAML::Key << "step_V" << YAML::Value;
    emit_number(out, c.sweep.step);
    out << YAML::EndMap;

    const SelfConsistentConfig& s = c.solver;
    out << YAML::Key << "solver" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "energy_cutoff_eV" << YAML::Value;
    emit_number(out, s.energy_cutoff);
    out << YAML::Key << "quadrature_tolerance" << YAML::Value;
    emit_number(out, s.quadrature_tolerance);
    out << YAML::Key << "quadrature_depth" << YAML::Value << s.quadrature_depth;
    out << YAML::Key << "density_panels" << YAML::Value << s.density_panels;
    out << YAML::Key << "current_panels" << YAML::Value << s.current_panels;
    out << YAML::Key << "newton_tolerance" << YAML::Value;
    emit_number(out, s.newton.tolerance);
    out << YAML::Key << "newton_max_iterations" << YAML::Value << s.newton.max_iterations;
    out << YAML::Key << "outer_tolerance" << YAML::Value;
    emit_number(out, s.tolerance);
    out << YAML::Key << "outer_max_iterations" << YAML::Value << s.max_iterations;
    out << YAML::Key << "mixing" << YAML::Value;
    emit_number(out, s.mixing);
    out << YAML::Key << "superpose_ramp" << YAML::Value << s.superpose_ramp;
    out << YAML::EndMap;

    out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "directory" << YAML::Value << c.output_dir;
    out << YAML::Key << "iv" << YAML::Value << c.emit.iv;
    out << YAML::Key << "profiles" << YAML::Value << c.emit.profiles;
    out << YAML::Key << "transmission" << YAML::Value << c.emit.transmission;
    out << YAML::Key << "convergence" << YAML::Value << c.emit.convergence;
    out << YAML::Key << "transmission_points" << YAML::Value << c.transmission_points;
    out << YAML::EndMap;

    out << YAML::Key << "convergence" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "nx" << YAML::Value << YAML::Flow << c.convergence_nx;
    out << YAML::Key << "reference_nx" << YAML::Value << c.convergence_reference;
    out << YAML::EndMap;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

std::string serialize_device(const DeviceSpec& device) {
    YAML::Emitter out;
    emit_device(out, device, "");
    return std::string(out.c_str()) + "\n";
}

DeviceSpec parse_device(std::string_view text) {
    const YAML::Node root = load(text);
    std::string preset;
    DeviceSpec d = read_device(root, "device", preset);
    d.validate();
    return d;
}

}  // namespace qdev
