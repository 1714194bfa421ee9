#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace metasir::cli {

enum class GridScale
{
    linear,
    log,
};

/// An abscissa specification written as "start:stop:count:scale".
struct GridSpec
{
    double start = 0.0;
    double stop = 1.0;
    std::size_t count = 2;
    GridScale scale = GridScale::linear;

    /// Throws InvalidArgument on malformed text or an invalid grid.
    static GridSpec parse(std::string_view text);

    /// Endpoints are reproduced exactly.
    std::vector<double> values() const;
    std::string to_string() const;
};

} // namespace metasir::cli
