#include "metasir/cli/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "metasir/cli/table.hpp"
#include "metasir/errors.hpp"

namespace metasir::cli {

namespace {

using Json = nlohmann::json;
using Handler = std::function<void(const Json&, const std::string&)>;

[[noreturn]] void
type_error(const std::string& key, const char* expected)
{
    throw InvalidArgument("config key '" + key + "' must be " + expected);
}

double
as_number(const Json& v, const std::string& key)
{
    if (!v.is_number())
        type_error(key, "a number");
    return v.get<double>();
}

std::uint64_t
as_count(const Json& v, const std::string& key)
{
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        type_error(key, "a non-negative integer");
    return v.get<std::uint64_t>();
}

std::string
as_string(const Json& v, const std::string& key)
{
    if (!v.is_string())
        type_error(key, "a string");
    return v.get<std::string>();
}

GridSpec
as_grid(const Json& v, const std::string& key)
{
    try {
        return GridSpec::parse(as_string(v, key));
    } catch (const InvalidArgument& e) {
        throw InvalidArgument("config key '" + key + "': " + e.what());
    }
}

void
walk(const Json& node, const std::string& prefix, const std::map<std::string, Handler>& handlers)
{
    if (!node.is_object())
        type_error(prefix.empty() ? "<root>" : prefix, "an object");
    for (const auto& [key, value] : node.items()) {
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        const auto it = handlers.find(key);
        if (it == handlers.end())
            throw InvalidArgument("unknown config key '" + path + "'");
        it->second(value, path);
    }
}

template <class T>
void
take(std::optional<T>& dst, const std::optional<T>& src)
{
    if (src)
        dst = src;
}

} // namespace

void
RunConfig::merge_from(const RunConfig& h)
{
    take(lambda, h.lambda);
    take(alpha, h.alpha);
    take(R, h.R);
    if (h.theta || h.theta_db) {
        theta = h.theta;
        theta_db = h.theta_db;
    }
    if (h.nu || h.eps) {
        nu = h.nu;
        eps = h.eps;
    }
    take(method, h.method);
    take(suite, h.suite);
    take(order, h.order);
    take(ks, h.ks);
    take(densities, h.densities);
    take(x_grid, h.x_grid);
    take(t_grid, h.t_grid);
    take(theta_grid, h.theta_grid);
    take(samples, h.samples);
    take(seed, h.seed);
    take(workers, h.workers);
    take(truncation_tol, h.truncation_tol);
    take(width, h.width);
    take(height, h.height);
    take(out, h.out);
    take(format, h.format);
}

RunConfig
parse_config(const Json& doc)
{
    RunConfig cfg;
    auto number = [](std::optional<double>& dst) {
        return [&dst](const Json& v, const std::string& k) { dst = as_number(v, k); };
    };
    auto string = [](std::optional<std::string>& dst) {
        return [&dst](const Json& v, const std::string& k) { dst = as_string(v, k); };
    };
    auto grid = [](std::optional<GridSpec>& dst) {
        return [&dst](const Json& v, const std::string& k) { dst = as_grid(v, k); };
    };

    const std::map<std::string, Handler> network{
        {"lambda", number(cfg.lambda)}, {"alpha", number(cfg.alpha)}, {"R", number(cfg.R)}};
    const std::map<std::string, Handler> target{{"nu", number(cfg.nu)}, {"eps", number(cfg.eps)}};
    const std::map<std::string, Handler> grids{
        {"x", grid(cfg.x_grid)}, {"t", grid(cfg.t_grid)}, {"theta", grid(cfg.theta_grid)}};
    const std::map<std::string, Handler> mc{
        {"samples", [&](const Json& v, const std::string& k) { cfg.samples = as_count(v, k); }},
        {"seed", [&](const Json& v, const std::string& k) { cfg.seed = as_count(v, k); }},
        {"workers", [&](const Json& v, const std::string& k) { cfg.workers = static_cast<unsigned>(as_count(v, k)); }},
        {"truncation_tol", number(cfg.truncation_tol)}};
    const std::map<std::string, Handler> window{{"width", number(cfg.width)}, {"height", number(cfg.height)}};
    const std::map<std::string, Handler> output{{"path", string(cfg.out)}, {"format", string(cfg.format)}};

    const std::map<std::string, Handler> root{
        {"network", [&](const Json& v, const std::string& k) { walk(v, k, network); }},
        {"target", [&](const Json& v, const std::string& k) { walk(v, k, target); }},
        {"grids", [&](const Json& v, const std::string& k) { walk(v, k, grids); }},
        {"mc", [&](const Json& v, const std::string& k) { walk(v, k, mc); }},
        {"window", [&](const Json& v, const std::string& k) { walk(v, k, window); }},
        {"output", [&](const Json& v, const std::string& k) { walk(v, k, output); }},
        {"theta", number(cfg.theta)},
        {"theta_db", number(cfg.theta_db)},
        {"method", string(cfg.method)},
        {"suite", string(cfg.suite)},
        {"order", [&](const Json& v, const std::string& k) { cfg.order = as_count(v, k); }},
        {"k",
         [&](const Json& v, const std::string& k) {
             if (!v.is_array())
                 type_error(k, "an array");
             std::vector<std::size_t> ks;
             for (std::size_t i = 0; i < v.size(); ++i)
                 ks.push_back(as_count(v[i], k + "[" + std::to_string(i) + "]"));
             cfg.ks = ks;
         }},
        {"densities",
         [&](const Json& v, const std::string& k) {
             if (!v.is_array())
                 type_error(k, "an array");
             std::vector<double> ds;
             for (std::size_t i = 0; i < v.size(); ++i)
                 ds.push_back(as_number(v[i], k + "[" + std::to_string(i) + "]"));
             cfg.densities = ds;
         }},
    };
    walk(doc, "", root);

    if (cfg.nu && cfg.eps)
        throw InvalidArgument("config sets both target.nu and target.eps");
    if (cfg.theta && cfg.theta_db)
        throw InvalidArgument("config sets both theta and theta_db");
    return cfg;
}

RunConfig
load_config(const std::filesystem::path& path)
{
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw IoError("cannot read config '" + path.string() + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();
    Json doc;
    try {
        doc = Json::parse(buffer.str());
    } catch (const Json::parse_error& e) {
        throw InvalidArgument("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

} // namespace metasir::cli
