#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qdev/device.hpp"
#include "qdev/schrodinger.hpp"
#include "qdev/selfconsistent.hpp"

namespace qdev {

/// Biases start, start + step, ..., up to stop (inclusive within step / 1000), in V.
struct SweepSpec {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.02;

    std::vector<double> values() const;
    bool operator==(const SweepSpec&) const = default;
};

struct EmitFlags {
    bool iv = true;
    bool profiles = true;
    bool transmission = true;
    bool convergence = false;

    bool operator==(const EmitFlags&) const = default;
};

struct RunConfig {
    std::string preset;  // empty for a fully inline device
    DeviceSpec device;
    TbcKind scheme = TbcKind::d4tbc;
    SweepSpec sweep;
    SelfConsistentConfig solver;
    int transmission_points = 801;
    std::string output_dir = "out";
    EmitFlags emit;
    std::vector<int> convergence_nx;
    int convergence_reference = 0;

    void validate() const;
};

/// Parses the YAML run configuration. Preset fields are loaded first and any
/// inline device keys override them.
///
/// Throws ParseError (malformed text, wrong value types, unknown keys) and
/// ValidationError naming the dotted field.
RunConfig parse_config(std::string_view text);

/// Full effective configuration (every default resolved) in the same format.
std::string serialize_config(const RunConfig& config);

std::string serialize_device(const DeviceSpec& device);
DeviceSpec parse_device(std::string_view text);

}  // namespace qdev
