#pragma once

#include "affrigid/channel2d.hpp"
#include "affrigid/model.hpp"
#include "affrigid/nd_operator.hpp"
#include "affrigid/peter_weyl.hpp"
#include "affrigid/potential.hpp"
#include "affrigid/spectra.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace affrigid::app {

/// Invalid configuration; the message starts with the dotted path of the offending field.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Outputs {
    std::string spectrum = "spectrum.tsv";
    std::string scan = "scan.tsv";
    std::string convergence = "convergence.tsv";
    std::string manifest = "manifest.json";
    bool descriptors = false; ///< operator descriptors under descriptors/
};

/**
 * Parsed and validated run configuration. Planar runs (dimension 2) use
 * `planar_channels` and `grid`; spatial runs use `spatial_channels` and `nd_grid`.
 */
struct RunConfig {
    ModelKind model = ModelKind::AffAff;
    ModelParams params;
    TargetSpace target = TargetSpace::GLPlus;
    std::vector<std::pair<int, int>> planar_channels;
    std::vector<std::pair<RepLabel, RepLabel>> spatial_channels;
    GridSpec1D grid;
    NdGridSpec nd_grid;
    NdLimits limits;
    PotentialSpec v_dil;
    PotentialSpec v_sh;
    int count = 5;
    Form form = Form::Weighted;
    bool q_sector = false;
    int levels = 3;
    Outputs outputs;
    std::uint64_t seed = 20240101;

    int dimension() const { return params.n; }
};

RunConfig parse_config(const nlohmann::json& j);

/// Spin as written in configs: "1", "1/2", "3/2".
std::string label_text(const RepLabel& l);

/// Canonical form; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const RunConfig& c);

/// Reads a config file, or the "config" section of a run manifest.
RunConfig load_config(const std::filesystem::path& path);

} // namespace affrigid::app
