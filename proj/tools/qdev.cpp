#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qdev/config.hpp"
#include "qdev/output.hpp"

namespace {

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw qdev::InvalidArgument("cannot open config file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int fail(const std::string& kind, const std::string& message) {
    std::cout << qdev::error_json(kind, message);
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qdev: 1D Schrodinger-Poisson device simulator"};
    app.require_subcommand(1);

    std::string config_path, scheme, out_dir;
    int nx = 0;
    auto* run_cmd = app.add_subcommand("run", "run a configured bias sweep or single-energy solve");
    run_cmd->add_option("--config", config_path, "YAML configuration file")->required();
    run_cmd->add_option("--scheme", scheme, "boundary closure: c4tbc, d4tbc or adtbc");
    run_cmd->add_option("--nx", nx, "number of grid intervals");
    run_cmd->add_option("--out", out_dir, "output directory");

    auto* study = app.add_subcommand("study", "numerical studies");
    study->require_subcommand(1);
    auto* conv = study->add_subcommand("convergence", "grid-refinement convergence orders");
    conv->add_option("--config", config_path, "YAML configuration file")->required();
    conv->add_option("--scheme", scheme, "boundary closure");
    conv->add_option("--out", out_dir, "output directory");

    auto* presets = app.add_subcommand("presets", "device presets");
    presets->require_subcommand(1);
    auto* list = presets->add_subcommand("list", "print the preset names");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        for (const auto& name : qdev::preset_names()) std::cout << name << "\n";
        return 0;
    }

    try {
        qdev::RunConfig config = qdev::parse_config(read_text(config_path));
        if (!scheme.empty()) {
            try {
                config.scheme = qdev::parse_tbc_kind(scheme);
            } catch (const qdev::Error&) {
                throw qdev::ValidationError("scheme", "expected c4tbc, d4tbc or adtbc, got '" + scheme + "'");
            }
        }
        if (nx != 0) config.device.intervals = nx;
        if (!out_dir.empty()) config.output_dir = out_dir;
        config.validate();

        const qdev::RunOutcome outcome = conv->parsed() ? qdev::run_convergence(config) : qdev::run(config);
        for (const auto& f : outcome.files) std::cerr << "wrote " << f.string() << "\n";
        for (const auto& r : outcome.convergence) {
            std::cerr << r.scheme << " " << r.quantity << " orders:";
            for (double o : r.orders) std::cerr << " " << qdev::format_double(o);
            std::cerr << "\n";
        }
        if (!outcome.all_converged) {
            for (const auto& r : outcome.results)
                if (!r.converged) return fail("SweepPointFailed", "V_ds = " + qdev::format_double(r.bias) + ": " + r.error);
        }
        return 0;
    } catch (const qdev::ParseError& e) {
        std::cout << qdev::error_json(e.kind(), std::string(e.what()) + " at line " + std::to_string(e.line()) +
                                                    ", column " + std::to_string(e.column()));
        return 1;
    } catch (const qdev::ValidationError& e) {
        return fail(e.kind(), e.what());
    } catch (const qdev::Error& e) {
        return fail(e.kind(), e.what());
    } catch (const std::exception& e) {
        return fail("InternalError", e.what());
    }
}
