#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdev/config.hpp"
#include "qdev/experiments.hpp"
#include "qdev/output.hpp"
#include "qdev/parallel.hpp"
#include "qdev/schrodinger.hpp"
#include "qdev/selfconsistent.hpp"
#include "qdev/units.hpp"

namespace py = pybind11;
using namespace qdev;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::array_t<std::complex<double>> to_array(const std::vector<std::complex<double>>& v) {
    return py::array_t<std::complex<double>>(v.size(), v.data());
}

py::dict state_dict(const ScatteringState& s) {
    std::vector<std::complex<double>> psi;
    for (int j = 0; j <= s.psi.grid().intervals(); ++j) psi.push_back(s.psi[j]);
    py::dict d;
    d["psi"] = to_array(psi);
    d["reflection"] = s.reflection;
    d["transmission"] = s.transmission;
    d["transmission_raw"] = s.transmission_raw;
    d["k1"] = s.k1;
    d["k2"] = s.k2;
    return d;
}

py::dict result_dict(const SelfConsistentResult& r) {
    std::vector<double> x, n;
    for (int i = 0; i <= r.grid.intervals(); ++i) {
        x.push_back(r.grid.x(i));
        n.push_back(r.density.density[i] * units::nm3_to_cm3);
    }
    py::dict d;
    d["bias"] = r.bias;
    d["scheme"] = r.scheme;
    d["converged"] = r.converged;
    d["error"] = r.error;
    d["iterations"] = r.iterations;
    d["history"] = r.history;
    d["x_nm"] = to_array(x);
    d["potential_eV"] = to_array(r.total);
    d["density_cm3"] = to_array(n);
    d["current_A_cm2"] = r.current;
    return d;
}

SelfConsistentConfig solver_for(const std::string& scheme) {
    SelfConsistentConfig cfg;
    cfg.scheme = parse_tbc_kind(scheme);
    return cfg;
}

DeviceSpec device_for(const std::string& preset, int nx) {
    DeviceSpec d = build_preset(preset);
    if (nx > 0) d.intervals = nx;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "1D Schrodinger-Poisson device simulator";

    auto base = py::register_exception<Error>(m, "QdevError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<UnknownPreset>(m, "UnknownPreset", base.ptr());
    py::register_exception<PreconditionViolated>(m, "PreconditionViolated", base.ptr());
    py::register_exception<MaxIterationsExceeded>(m, "MaxIterationsExceeded", base.ptr());
    py::register_exception<SingularSystem>(m, "SingularSystem", base.ptr());
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());

    m.def("presets", &preset_names, "Names of the built-in devices.");
    m.def("format_double", &format_double, "Shortest round-trip decimal form.", py::arg("value"));
    m.def("set_threads", &set_thread_count, py::arg("count"));
    m.def("kinetic_prefactor", &units::kinetic_prefactor, "hbar^2 / 2m* in eV nm^2.", py::arg("mass_ratio"));

    m.def(
        "dispersion_roots",
        [](double energy, double edge, double kinetic, double dx) {
            const auto r = dispersion_roots(energy, edge, kinetic, dx);
            return py::make_tuple(r.plus, r.minus);
        },
        py::arg("energy"), py::arg("edge"), py::arg("kinetic"), py::arg("dx"));

    m.def(
        "solve_scattering",
        [](const std::vector<double>& potential, double length, double kinetic, double energy,
           const std::string& scheme, const std::string& incidence) {
            if (potential.size() < 3) throw InvalidArgument("need potential values on at least 3 nodes");
            if (incidence != "left" && incidence != "right") throw InvalidArgument("incidence is 'left' or 'right'");
            const Grid g(length, static_cast<int>(potential.size()) - 1);
            auto ctx = make_context(g, potential, kinetic, energy,
                                    incidence == "right" ? Incidence::right : Incidence::left);
            return state_dict(solve_state(ctx, parse_tbc_kind(scheme)));
        },
        "Scattering state of a nodal potential (eV) on a uniform grid over [0, length] nm.", py::arg("potential"),
        py::arg("length"), py::arg("kinetic"), py::arg("energy"), py::arg("scheme") = "d4tbc",
        py::arg("incidence") = "left");

    m.def(
        "solve_device",
        [](const std::string& preset, double bias, const std::string& scheme, int nx) {
            py::gil_scoped_release release;
            const auto r = run_self_consistent(device_for(preset, nx), bias, solver_for(scheme));
            py::gil_scoped_acquire acquire;
            return result_dict(r);
        },
        "Self-consistent (or prescribed) solution of a preset at one bias.", py::arg("preset"), py::arg("bias") = 0.0,
        py::arg("scheme") = "d4tbc", py::arg("nx") = 0);

    m.def(
        "transmission",
        [](const std::string& preset, const std::vector<double>& energies, double bias, const std::string& scheme,
           int nx) {
            const DeviceSpec d = device_for(preset, nx);
            SelfConsistentConfig cfg = solver_for(scheme);
            cfg.compute_current = false;
            std::vector<double> t;
            {
                py::gil_scoped_release release;
                const auto r = run_self_consistent(d, bias, cfg);
                t = transmission_curve(r, d, energies, cfg.scheme);
            }
            return to_array(t);
        },
        "T(E) of a preset's converged potential.", py::arg("preset"), py::arg("energies"), py::arg("bias") = 0.0,
        py::arg("scheme") = "d4tbc", py::arg("nx") = 0);

    m.def(
        "free_particle_convergence",
        [](const std::string& scheme, const std::vector<int>& nx) {
            const auto r = schrodinger_convergence(build_preset("free_particle"), parse_tbc_kind(scheme), nx);
            std::vector<double> err;
            for (const auto& p : r.points) err.push_back(p.error);
            py::dict d;
            d["nx"] = nx;
            d["error"] = err;
            d["orders"] = r.orders;
            return d;
        },
        py::arg("scheme") = "d4tbc", py::arg("nx") = std::vector<int>{100, 200, 400, 800});

    m.def(
        "effective_config", [](const std::string& text) { return serialize_config(parse_config(text)); },
        "Parses a YAML run configuration and returns it with every default filled in.", py::arg("text"));

    m.def(
        "run_config",
        [](const std::string& text, const std::string& out_dir) {
            RunConfig c = parse_config(text);
            if (!out_dir.empty()) c.output_dir = out_dir;
            std::vector<std::string> files;
            {
                py::gil_scoped_release release;
                for (const auto& f : run(c).files) files.push_back(f.string());
            }
            return files;
        },
        "Executes a YAML run configuration; returns the written file paths.", py::arg("text"),
        py::arg("out_dir") = "");
}
