#include "metasir/cli/grid.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "metasir/errors.hpp"

namespace metasir::cli {

namespace {

std::vector<std::string_view>
split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t begin = 0;
    while (true) {
        const std::size_t end = text.find(sep, begin);
        parts.push_back(text.substr(begin, end - begin));
        if (end == std::string_view::npos)
            return parts;
        begin = end + 1;
    }
}

template <class T>
T
parse_number(std::string_view field, std::string_view text)
{
    T value{};
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw InvalidArgument("malformed grid '" + std::string(text) + "': bad number '" + std::string(field) + "'");
    return value;
}

} // namespace

GridSpec
GridSpec::parse(std::string_view text)
{
    const auto parts = split(text, ':');
    if (parts.size() != 4)
        throw InvalidArgument("malformed grid '" + std::string(text) + "': expected start:stop:count:scale");
    GridSpec spec;
    spec.start = parse_number<double>(parts[0], text);
    spec.stop = parse_number<double>(parts[1], text);
    spec.count = parse_number<std::size_t>(parts[2], text);
    if (parts[3] == "linear")
        spec.scale = GridScale::linear;
    else if (parts[3] == "log")
        spec.scale = GridScale::log;
    else
        throw InvalidArgument("malformed grid '" + std::string(text) + "': scale must be linear or log");

    if (spec.count < 2)
        throw InvalidArgument("grid count must be at least 2");
    if (!std::isfinite(spec.start) || !std::isfinite(spec.stop))
        throw InvalidArgument("grid endpoints must be finite");
    if (!(spec.start < spec.stop))
        throw InvalidArgument("grid start must be below stop");
    if (spec.scale == GridScale::log && spec.start <= 0.0)
        throw InvalidArgument("log grid requires positive endpoints");
    return spec;
}

std::vector<double>
GridSpec::values() const
{
    std::vector<double> out(count);
    const double steps = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / steps;
        if (scale == GridScale::linear)
            out[i] = start + f * (stop - start);
        else
            out[i] = std::pow(10.0, std::log10(start) + f * (std::log10(stop) - std::log10(start)));
    }
    out.front() = start;
    out.back() = stop;
    return out;
}

std::string
GridSpec::to_string() const
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g:%.17g:%zu:%s", start, stop, count,
                  scale == GridScale::linear ? "linear" : "log");
    return buf;
}

} // namespace metasir::cli
