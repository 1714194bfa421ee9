#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "metasir/cli/grid.hpp"

namespace metasir::cli {

/// Every setting a command may read. Unset fields fall back to per-command
/// defaults; merge_from lets a higher-precedence layer (flags) override a
/// lower one (config file).
///
/// File schema (all keys optional, unknown keys rejected):
///   network: {lambda, alpha, R}
///   target:  {nu | eps}
///   theta, theta_db, method, suite, order, k: [..], densities: [..]
///   grids:   {x, t, theta}            as "start:stop:count:scale"
///   mc:      {samples, seed, workers, truncation_tol}
///   window:  {width, height}
///   output:  {path, format}
struct RunConfig
{
    std::optional<double> lambda;
    std::optional<double> alpha;
    std::optional<double> R;
    std::optional<double> theta;
    std::optional<double> theta_db;
    std::optional<double> nu;
    std::optional<double> eps;
    std::optional<std::string> method;
    std::optional<std::string> suite;
    std::optional<std::size_t> order;
    std::optional<std::vector<std::size_t>> ks;
    std::optional<std::vector<double>> densities;
    std::optional<GridSpec> x_grid;
    std::optional<GridSpec> t_grid;
    std::optional<GridSpec> theta_grid;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    std::optional<double> truncation_tol;
    std::optional<double> width;
    std::optional<double> height;
    std::optional<std::string> out;
    std::optional<std::string> format;

    /// Copies every field that is set in `higher`.
    void merge_from(const RunConfig& higher);
};

/// Throws InvalidArgument naming the key path of an unknown or mistyped
/// field.
RunConfig parse_config(const nlohmann::json& doc);

/// Throws IoError if the file cannot be read, InvalidArgument if it is not
/// valid JSON or violates the schema.
RunConfig load_config(const std::filesystem::path& path);

} // namespace metasir::cli
