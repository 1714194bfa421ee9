#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "metasir/cli/commands.hpp"
#include "metasir/cli/config.hpp"
#include "metasir/cli/grid.hpp"
#include "metasir/cli/table.hpp"
#include "metasir/errors.hpp"

using namespace metasir;
using namespace metasir::cli;

namespace {

struct RunOutput
{
    int code;
    std::string out;
    std::string err;
};

RunOutput
invoke(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path
temp_file(const std::string& name, const std::string& contents)
{
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path, std::ios::binary) << contents;
    return path;
}

std::size_t
line_count(const std::string& s)
{
    std::size_t n = 0;
    for (char c : s)
        n += c == '\n';
    return n;
}

} // namespace

TEST_CASE("grid specifications")
{
    const auto lin = GridSpec::parse("0.01:0.99:99:linear").values();
    REQUIRE(lin.size() == 99);
    CHECK(lin.front() == 0.01);
    CHECK(lin.back() == 0.99);
    CHECK(lin[49] == doctest::Approx(0.5));

    const auto lg = GridSpec::parse("0.01:100:5:log").values();
    CHECK(lg == std::vector<double>{0.01, 0.1, 1.0, 10.0, 100.0});

    CHECK_THROWS_AS(GridSpec::parse("0:1:1:linear"), InvalidArgument);
    CHECK_THROWS_AS(GridSpec::parse("0:1:5:log"), InvalidArgument);
    CHECK_THROWS_AS(GridSpec::parse("1:0:5:linear"), InvalidArgument);
    CHECK_THROWS_AS(GridSpec::parse("0:1:5:cubic"), InvalidArgument);
    CHECK_THROWS_AS(GridSpec::parse("0:1:5"), InvalidArgument);
    CHECK_THROWS_AS(GridSpec::parse("a:1:5:linear"), InvalidArgument);
    CHECK(GridSpec::parse(GridSpec::parse("0.1:0.7:4:linear").to_string()).values() ==
          GridSpec::parse("0.1:0.7:4:linear").values());
}

TEST_CASE("strict configuration schema")
{
    const auto minimal = parse_config(nlohmann::json::parse(R"({"network":{"lambda":1,"alpha":4,"R":0.5}})"));
    CHECK(*minimal.lambda == 1.0);
    CHECK_FALSE(minimal.seed.has_value());

    CHECK_THROWS_WITH_AS(parse_config(nlohmann::json::parse(R"({"network":{"alpha_db":3}})")),
                         "unknown config key 'network.alpha_db'", InvalidArgument);
    CHECK_THROWS_WITH_AS(parse_config(nlohmann::json::parse(R"({"mc":{"seed":"x"}})")),
                         "config key 'mc.seed' must be a non-negative integer", InvalidArgument);
    CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"grids":{"x":"1:0:3:linear"}})")), InvalidArgument);
    CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"target":{"nu":0.9,"eps":0.1}})")), InvalidArgument);

    const auto full = parse_config(nlohmann::json::parse(R"({
        "network": {"lambda": 2, "alpha": 3.5, "R": 1},
        "target": {"eps": 0.01}, "theta_db": 3, "method": "mc", "suite": "bound", "order": 10,
        "k": [1, 3], "densities": [0.5], "grids": {"x": "0.1:0.9:9:linear", "t": "0.001:1:4:log"},
        "mc": {"samples": 100, "seed": 42, "workers": 2, "truncation_tol": 0.001},
        "window": {"width": 5, "height": 6}, "output": {"path": "out.csv", "format": "json"}})"));
    CHECK(*full.seed == 42);
    CHECK(full.ks->size() == 2);
    CHECK(full.t_grid->count == 4);
    CHECK(*full.format == "json");
}

TEST_CASE("flags override the config file")
{
    RunConfig file;
    file.seed = 42;
    file.lambda = 2.0;
    file.nu = 0.9;
    RunConfig flags;
    flags.seed = 7;
    flags.eps = 0.01;
    file.merge_from(flags);
    CHECK(*file.seed == 7);
    CHECK(*file.lambda == 2.0);
    CHECK_FALSE(file.nu.has_value());
    CHECK(*file.eps == 0.01);

    const auto path = temp_file("metasir_precedence.json", R"({"mc":{"seed":42},"method":"mc"})");
    const auto r = invoke({"md", "--config", path.string(), "--seed", "7", "--samples", "50", "--workers", "1"});
    CHECK(r.code == 0);
    CHECK(r.err.find("\"seed\":7") != std::string::npos);
}

TEST_CASE("table rendering")
{
    Table t{{"x", "y"}, {{0.1, 1.0 / 3.0}, {2.0, -0.0}}};
    const nlohmann::json manifest{{"seed", 1}};
    const auto csv = render_table(t, manifest, OutputFormat::csv);
    CHECK(csv == "# manifest: {\"seed\":1}\nx,y\n0.10000000000000001,0.33333333333333331\n2,-0\n");
    CHECK(render_table(t, manifest, OutputFormat::csv) == csv);

    const auto doc = nlohmann::json::parse(render_table(t, manifest, OutputFormat::json));
    CHECK(doc["manifest"]["seed"] == 1);
    CHECK(doc["columns"].size() == 2);
    CHECK(doc["rows"][0][1].get<double>() == 1.0 / 3.0);

    const Table empty{{"x", "y"}, {}};
    CHECK(render_table(empty, manifest, OutputFormat::csv) == "# manifest: {\"seed\":1}\nx,y\n");

    const Table ragged{{"x", "y"}, {{1.0}}};
    CHECK_THROWS_AS(render_table(ragged, manifest, OutputFormat::csv), InvalidArgument);
    CHECK_THROWS_AS(emit_table(empty, manifest, OutputFormat::csv, "/nonexistent-dir/out.csv", std::cout), IoError);
}

TEST_CASE("md command writes one row per grid point")
{
    const auto r = invoke({"md", "--lambda", "1", "--alpha", "4", "--R", "0.5", "--theta", "1", "--method",
                           "gilpelaez", "--x-grid", "0.01:0.99:99:linear"});
    CHECK(r.code == 0);
    CHECK(line_count(r.out) == 101);
    CHECK(r.out.rfind("# manifest: ", 0) == 0);
    CHECK(r.err.find("manifest: ") != std::string::npos);
}

TEST_CASE("exit codes")
{
    const auto bad_alpha = invoke({"md", "--alpha", "2"});
    CHECK(bad_alpha.code == 1);
    CHECK(bad_alpha.err.find("path_loss_exponent must exceed 2") != std::string::npos);

    CHECK(invoke({"fig2", "--samples", "10"}).code == 1);
    CHECK(invoke({"bogus"}).code == 1);
    CHECK(invoke({"md", "--theta", "1", "--theta-db", "0"}).code == 1);
    CHECK(invoke({"md", "--method", "ultrarel"}).code == 1);
    CHECK(invoke({"md", "--format", "xml"}).code == 1);
    CHECK(invoke({"interference", "--alpha", "3"}).code == 1);
    CHECK(invoke({"md", "--config", "/nonexistent/config.json"}).code == 3);
    CHECK(invoke({"md", "--out", "/nonexistent-dir/out.csv"}).code == 3);
    CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("validate duality suite")
{
    const auto r = invoke({"validate", "--suite", "duality", "--samples", "2000", "--seed", "42", "--lambda", "1",
                           "--alpha", "4", "--R", "0.5", "--theta", "1", "--nu", "0.9"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\n2000,0,") != std::string::npos);
}

TEST_CASE("output is independent of the worker count")
{
    const std::vector<std::string> base{"tdist", "--nu", "0.9", "--method", "mc", "--samples", "600",
                                        "--t-grid", "0.01:1:3:log", "--seed", "3"};
    auto with_workers = [&](const std::string& w) {
        auto args = base;
        args.insert(args.end(), {"--workers", w});
        return invoke(args).out;
    };
    const auto one = with_workers("1");
    CHECK(with_workers("4") == one);
    CHECK(with_workers("8") == one);
}

TEST_CASE("json output and file destination")
{
    const auto path = std::filesystem::temp_directory_path() / "metasir_cli_out.json";
    std::filesystem::remove(path);
    const auto r = invoke({"throughput", "--eps", "0.01", "--format", "json", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    const auto doc = nlohmann::json::parse(in);
    CHECK(doc["columns"] == nlohmann::json::array({"theta", "S_rc", "Srel_rc", "S_det", "Srel_det"}));
    CHECK(doc["rows"].size() == 5);
    CHECK(doc["manifest"]["target"]["eps"] == 0.01);
}
