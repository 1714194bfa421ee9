#include "metasir/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <CLI11.hpp>

#include "metasir/analytics.hpp"
#include "metasir/errors.hpp"
#include "metasir/mc.hpp"
#include "metasir/params.hpp"

namespace metasir::cli {

namespace {

using Json = nlohmann::json;

constexpr const char* kVersion = METASIR_VERSION;
constexpr const char* kDefaultXGrid = "0.05:0.95:19:linear";
constexpr const char* kDefaultTGrid = "0.001:10:41:log";
constexpr const char* kDefaultThetaGrid = "0.01:100:5:log";
constexpr const char* kDefaultInterferenceGrid = "0.1:100:31:log";

/// Resolves settings with their defaults and records each one in the
/// manifest as it is read.
class Context
{
  public:
    Context(std::string command, const RunConfig& cfg) : command_(std::move(command)), cfg_(cfg)
    {
        manifest_["artifact"] = "metasir";
        manifest_["version"] = kVersion;
        manifest_["command"] = command_;
    }

    NetworkParams network()
    {
        NetworkParams p(cfg_.lambda.value_or(1.0), cfg_.alpha.value_or(4.0), cfg_.R.value_or(0.5));
        manifest_["network"] = {{"lambda", p.density()}, {"alpha", p.path_loss_exponent()}, {"R", p.link_distance()}};
        return p;
    }

    SirThreshold theta()
    {
        const SirThreshold t = cfg_.theta_db ? SirThreshold::from_db(*cfg_.theta_db) : SirThreshold(cfg_.theta.value_or(1.0));
        manifest_["theta"] = t.value();
        return t;
    }

    ReliabilityTarget target()
    {
        if (!cfg_.nu && !cfg_.eps)
            throw InvalidArgument(command_ + " requires --nu or --eps");
        const ReliabilityTarget t =
            cfg_.nu ? ReliabilityTarget::from_nu(*cfg_.nu) : ReliabilityTarget::from_epsilon(*cfg_.eps);
        manifest_["target"] = cfg_.nu ? Json{{"nu", t.nu()}} : Json{{"eps", t.epsilon()}};
        return t;
    }

    std::string method(const std::string& fallback, const std::vector<std::string>& allowed)
    {
        const std::string m = cfg_.method.value_or(fallback);
        if (std::find(allowed.begin(), allowed.end(), m) == allowed.end())
            throw InvalidArgument("method '" + m + "' is not available for " + command_);
        manifest_["method"] = m;
        return m;
    }

    std::vector<double> grid(const char* name, const std::optional<GridSpec>& spec, const char* fallback)
    {
        const GridSpec g = spec.value_or(GridSpec::parse(fallback));
        manifest_["grids"][name] = g.to_string();
        return g.values();
    }

    std::vector<double> x_grid(const char* fallback = kDefaultXGrid) { return grid("x", cfg_.x_grid, fallback); }
    std::vector<double> t_grid() { return grid("t", cfg_.t_grid, kDefaultTGrid); }
    std::vector<double> theta_grid() { return grid("theta", cfg_.theta_grid, kDefaultThetaGrid); }

    std::vector<std::size_t> ks(std::vector<std::size_t> fallback)
    {
        auto ks = cfg_.ks.value_or(std::move(fallback));
        if (ks.empty())
            throw InvalidArgument("--k needs at least one value");
        for (std::size_t k : ks)
            if (k == 0)
                throw InvalidArgument("--k values must be at least 1");
        manifest_["k"] = ks;
        return ks;
    }

    mc::McConfig mc()
    {
        mc::McConfig c;
        c.n_realizations = cfg_.samples.value_or(c.n_realizations);
        c.master_seed = cfg_.seed.value_or(c.master_seed);
        c.truncation_tol = cfg_.truncation_tol.value_or(c.truncation_tol);
        c.worker_hint = cfg_.workers;
        if (c.n_realizations == 0)
            throw InvalidArgument("--samples must be at least 1");
        if (!(c.truncation_tol > 0.0 && c.truncation_tol < 1.0))
            throw InvalidArgument("truncation_tol must lie in (0, 1)");
        // The worker count is left out: results do not depend on it.
        manifest_["mc"] = {{"samples", c.n_realizations},
                           {"seed", c.master_seed},
                           {"truncation_tol", c.truncation_tol},
                           {"far_field", "mean_completion"}};
        return c;
    }

    std::uint64_t seed()
    {
        const std::uint64_t s = cfg_.seed.value_or(1);
        manifest_["seed"] = s;
        return s;
    }

    Json& manifest() { return manifest_; }
    const RunConfig& cfg() const { return cfg_; }
    const std::string& command() const { return command_; }

  private:
    std::string command_;
    const RunConfig& cfg_;
    Json manifest_;
};

std::vector<double>
row(std::initializer_list<double> values)
{
    return values;
}

CommandResult
cmd_md(Context& ctx)
{
    const auto params = ctx.network();
    const auto theta = ctx.theta();
    const auto method = ctx.method("gilpelaez", {"gilpelaez", "binomial", "mc"});
    const auto xs = ctx.x_grid();
    CommandResult res;
    if (method == "gilpelaez") {
        res.table.columns = {"x", "ccdf", "error_estimate"};
        for (double x : xs) {
            const auto p = analytics::md_gil_pelaez(params, theta, x);
            res.table.rows.push_back(row({x, p.value, p.error_estimate}));
        }
    } else if (method == "binomial") {
        const std::size_t n = ctx.cfg().order.value_or(analytics::kDefaultMixtureOrder);
        ctx.manifest()["order"] = n;
        const auto mixture = analytics::binomial_mixture_weights(params, theta, n);
        res.table.columns = {"x", "ccdf"};
        for (double x : xs)
            res.table.rows.push_back(row({x, analytics::md_binomial_mixture(mixture, x)}));
    } else {
        const auto curve = mc::estimate_md(params, theta, xs, ctx.mc());
        res.table.columns = {"x", "ccdf", "std_error"};
        for (std::size_t i = 0; i < xs.size(); ++i)
            res.table.rows.push_back(row({xs[i], curve.curve.values[i], curve.curve.std_errors[i]}));
        ctx.manifest()["resample_count"] = curve.resample_count;
    }
    return res;
}

CommandResult
cmd_tdist(Context& ctx)
{
    const auto params = ctx.network();
    const auto target = ctx.target();
    const auto method = ctx.method("gilpelaez", {"gilpelaez", "ultrarel", "partial", "mc"});
    const auto ts = ctx.t_grid();
    CommandResult res;
    res.table.columns = {"t", "ccdf"};
    if (method == "gilpelaez") {
        const auto curve = analytics::threshold_ccdf_exact(params, target, ts);
        for (std::size_t i = 0; i < ts.size(); ++i)
            res.table.rows.push_back(row({ts[i], curve.values[i]}));
    } else if (method == "ultrarel" || method == "partial") {
        for (double t : ts) {
            const double v = method == "ultrarel"
                                 ? analytics::threshold_ccdf_ultrareliable(params, target, SirThreshold(t))
                                 : analytics::threshold_ccdf_partial_info(params, target, SirThreshold(t));
            res.table.rows.push_back(row({t, v}));
        }
    } else {
        mc::InfoMode info = mc::InfoMode::full();
        if (ctx.cfg().ks) {
            const auto ks = ctx.ks({});
            if (ks.size() != 1)
                throw InvalidArgument("tdist takes a single --k value");
            info = mc::InfoMode::k_nearest(ks.front());
        }
        const auto curve = mc::estimate_threshold_ccdf(params, target, ts, ctx.mc(), info);
        res.table.columns.push_back("std_error");
        for (std::size_t i = 0; i < ts.size(); ++i)
            res.table.rows.push_back(row({ts[i], curve.curve.values[i], curve.curve.std_errors[i]}));
        ctx.manifest()["resample_count"] = curve.resample_count;
    }
    return res;
}

CommandResult
cmd_throughput(Context& ctx)
{
    const auto params = ctx.network();
    const auto target = ctx.target();
    const auto thetas = ctx.theta_grid();
    const auto rc = analytics::throughput_rate_control(params, target);
    CommandResult res;
    res.table.columns = {"theta", "S_rc", "Srel_rc", "S_det", "Srel_det"};
    for (double theta : thetas) {
        const auto det = analytics::throughput_deterministic(params, SirThreshold(theta), target);
        res.table.rows.push_back(row({theta, rc.S, rc.S_rel, det.S, det.S_rel}));
    }
    return res;
}

CommandResult
cmd_interference(Context& ctx)
{
    const auto params = ctx.network();
    const auto method = ctx.method("levy", {"levy", "mc"});
    const auto xs = ctx.x_grid(kDefaultInterferenceGrid);
    const bool closed_form = params.path_loss_exponent() == 4.0;
    if (method == "levy" && !closed_form)
        throw UnsupportedExponent("the interference ccdf in closed form needs alpha = 4; use --method mc");
    CommandResult res;
    if (method == "levy") {
        res.table.columns = {"x", "ccdf_levy"};
        for (double x : xs)
            res.table.rows.push_back(row({x, analytics::levy_interference_ccdf(params, x)}));
        return res;
    }
    const auto curve = mc::estimate_interference_ccdf(params, xs, ctx.mc());
    ctx.manifest()["resample_count"] = curve.resample_count;
    res.table.columns = {"x", "ccdf_mc", "std_error"};
    if (closed_form)
        res.table.columns.push_back("ccdf_levy");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::vector<double> r{xs[i], curve.curve.values[i], curve.curve.std_errors[i]};
        if (closed_form)
            r.push_back(analytics::levy_interference_ccdf(params, xs[i]));
        res.table.rows.push_back(std::move(r));
    }
    return res;
}

CommandResult
cmd_realization(Context& ctx)
{
    const auto params = ctx.network();
    const auto theta = ctx.theta();
    const auto target = ctx.target();
    const sampling::Rectangle window{ctx.cfg().width.value_or(20.0), ctx.cfg().height.value_or(20.0)};
    ctx.manifest()["window"] = {{"width", window.width}, {"height", window.height}};
    const auto links = mc::realization_report(params, theta, target, window, ctx.seed());
    CommandResult res;
    res.table.columns = {"tx_x", "tx_y", "rx_x", "rx_y", "reliability", "threshold"};
    for (const auto& l : links)
        res.table.rows.push_back(row({l.tx.x, l.tx.y, l.rx.x, l.rx.y, l.reliability, l.threshold}));
    return res;
}

CommandResult
cmd_fig2(Context& ctx)
{
    if (!ctx.cfg().nu && !ctx.cfg().eps)
        throw InvalidArgument("fig2 requires an explicit --nu");
    const auto params = ctx.network();
    const auto target = ctx.target();
    const auto densities = ctx.cfg().densities.value_or(std::vector<double>{0.25, 1.0});
    if (densities.empty())
        throw InvalidArgument("--densities needs at least one value");
    ctx.manifest()["densities"] = densities;
    const auto ks = ctx.ks({1, 3});
    const auto ts = ctx.t_grid();
    const auto series = mc::figure2_data(params, target, densities, ks, ts, ctx.mc());

    CommandResult res;
    res.table.columns = {"density", "t", "exact", "partial_info", "mc_full", "mc_full_se"};
    for (std::size_t k : ks) {
        res.table.columns.push_back("mc_k" + std::to_string(k));
        res.table.columns.push_back("mc_k" + std::to_string(k) + "_se");
    }
    for (const auto& s : series) {
        for (std::size_t i = 0; i < ts.size(); ++i) {
            std::vector<double> r{s.density,
                                  ts[i],
                                  s.exact.values[i],
                                  s.partial_info_approx.values[i],
                                  s.full_mc.curve.values[i],
                                  s.full_mc.curve.std_errors[i]};
            for (const auto& c : s.k_nearest) {
                r.push_back(c.curve.values[i]);
                r.push_back(c.curve.std_errors[i]);
            }
            res.table.rows.push_back(std::move(r));
        }
    }
    return res;
}

CommandResult
cmd_fig3(Context& ctx)
{
    const auto params = ctx.network();
    const auto target = ctx.target();
    const auto thetas = ctx.theta_grid();
    const auto rows = mc::figure3_data(params, target, thetas, ctx.mc());
    CommandResult res;
    res.table.columns = {"theta",     "S_rc",         "Srel_rc",   "S_det",        "Srel_det",
                         "S_rc_mc",   "S_rc_mc_se",   "Srel_rc_mc", "Srel_rc_mc_se", "S_det_mc",
                         "S_det_mc_se", "Srel_det_mc", "Srel_det_mc_se"};
    for (const auto& r : rows)
        res.table.rows.push_back(row({r.theta, r.rate_control.S, r.rate_control.S_rel, r.deterministic.S,
                                      r.deterministic.S_rel, r.rate_control_S_mc.value,
                                      r.rate_control_S_mc.std_error, r.rate_control_S_rel_mc.value,
                                      r.rate_control_S_rel_mc.std_error, r.deterministic_S_mc.value,
                                      r.deterministic_S_mc.std_error, r.deterministic_S_rel_mc.value,
                                      r.deterministic_S_rel_mc.std_error}));
    return res;
}

CommandResult
cmd_validate(Context& ctx)
{
    const std::string suite = ctx.cfg().suite.value_or("duality");
    ctx.manifest()["suite"] = suite;
    const auto params = ctx.network();
    CommandResult res;
    if (suite == "duality") {
        const auto theta = ctx.theta();
        const auto target = ctx.target();
        const auto report = mc::verify_duality(params, theta, target, ctx.mc());
        res.table.columns = {"n", "violations", "guard_band_exclusions", "resample_count"};
        res.table.rows.push_back(row({static_cast<double>(report.n), static_cast<double>(report.violations),
                                      static_cast<double>(report.guard_band_exclusions),
                                      static_cast<double>(report.resample_count)}));
        res.status = report.violations == 0 ? kExitOk : kExitNumerical;
    } else if (suite == "bound") {
        const auto target = ctx.target();
        const auto ks = ctx.ks({1, 3, 10});
        const auto checks = mc::check_bound_dominance(params, target, ks, ctx.mc());
        res.table.columns = {"k", "n", "violations", "max_ratio"};
        for (const auto& c : checks) {
            res.table.rows.push_back(row({static_cast<double>(c.k), static_cast<double>(c.n),
                                          static_cast<double>(c.violations), c.max_ratio}));
            if (c.violations > 0)
                res.status = kExitNumerical;
        }
    } else if (suite == "md") {
        const auto theta = ctx.theta();
        const auto xs = ctx.x_grid();
        const auto curve = mc::estimate_md(params, theta, xs, ctx.mc());
        const double n = static_cast<double>(curve.n);
        res.table.columns = {"x", "analytic", "mc", "std_error", "z"};
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double p0 = analytics::md_gil_pelaez(params, theta, xs[i]).value;
            const double se = std::sqrt(std::max(p0 * (1.0 - p0), 1.0 / n) / n);
            const double z = (curve.curve.values[i] - p0) / se;
            res.table.rows.push_back(row({xs[i], p0, curve.curve.values[i], curve.curve.std_errors[i], z}));
            if (std::abs(z) > 3.0)
                res.status = kExitNumerical;
        }
    } else {
        throw InvalidArgument("unknown suite '" + suite + "' (expected duality, bound or md)");
    }
    return res;
}

} // namespace

const std::vector<std::string>&
command_names()
{
    static const std::vector<std::string> names{"md",          "tdist", "throughput", "interference",
                                                "realization", "fig2",  "fig3",       "validate"};
    return names;
}

CommandResult
execute(const std::string& command, const RunConfig& cfg)
{
    Context ctx(command, cfg);
    CommandResult res;
    if (command == "md")
        res = cmd_md(ctx);
    else if (command == "tdist")
        res = cmd_tdist(ctx);
    else if (command == "throughput")
        res = cmd_throughput(ctx);
    else if (command == "interference")
        res = cmd_interference(ctx);
    else if (command == "realization")
        res = cmd_realization(ctx);
    else if (command == "fig2")
        res = cmd_fig2(ctx);
    else if (command == "fig3")
        res = cmd_fig3(ctx);
    else if (command == "validate")
        res = cmd_validate(ctx);
    else
        throw InvalidArgument("unknown command '" + command + "'");
    res.manifest = std::move(ctx.manifest());
    return res;
}

int
run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Meta distribution of the SIR and rate-control thresholds in Poisson bipolar networks", "metasir"};
    app.set_version_flag("--version", std::string(kVersion));

    std::string command;
    app.add_option("command", command, "md | tdist | throughput | interference | realization | fig2 | fig3 | validate")
        ->required()
        ->check(CLI::IsMember(command_names()));

    RunConfig flags;
    double lambda = 0, alpha = 0, R = 0, theta = 0, theta_db = 0, nu = 0, eps = 0, tol = 0, width = 0, height = 0;
    std::string method, suite, x_grid, t_grid, theta_grid, config_path, out_path, format;
    std::vector<std::size_t> ks;
    std::vector<double> densities;
    std::size_t samples = 0, order = 0;
    std::uint64_t seed = 0;
    unsigned workers = 0;

    auto* o_lambda = app.add_option("--lambda", lambda, "Density of transmitters");
    auto* o_alpha = app.add_option("--alpha", alpha, "Path-loss exponent (> 2)");
    auto* o_R = app.add_option("--R", R, "Link distance");
    auto* o_theta = app.add_option("--theta", theta, "SIR threshold, linear");
    auto* o_theta_db = app.add_option("--theta-db", theta_db, "SIR threshold in dB")->excludes(o_theta);
    auto* o_nu = app.add_option("--nu", nu, "Target reliability");
    auto* o_eps = app.add_option("--eps", eps, "Target outage (1 - nu)")->excludes(o_nu);
    auto* o_k = app.add_option("--k", ks, "Nearest-interferer counts, comma separated")->delimiter(',');
    auto* o_dens = app.add_option("--densities", densities, "fig2 densities, comma separated")->delimiter(',');
    auto* o_samples = app.add_option("--samples", samples, "Monte Carlo realizations");
    auto* o_seed = app.add_option("--seed", seed, "Master seed");
    auto* o_workers =
        app.add_option("--workers", workers, "Worker threads (default: hardware concurrency)")->envname("METASIR_WORKERS");
    auto* o_tol = app.add_option("--tol", tol, "Window truncation tolerance relative to R^-alpha");
    auto* o_method = app.add_option("--method", method, "gilpelaez | binomial | mc | ultrarel | partial | levy");
    auto* o_suite = app.add_option("--suite", suite, "validate suite: duality | bound | md");
    auto* o_order = app.add_option("--order", order, "Binomial mixture order");
    auto* o_x = app.add_option("--x-grid", x_grid, "start:stop:count:linear|log");
    auto* o_t = app.add_option("--t-grid", t_grid, "start:stop:count:linear|log");
    auto* o_th = app.add_option("--theta-grid", theta_grid, "start:stop:count:linear|log");
    auto* o_width = app.add_option("--width", width, "realization window width");
    auto* o_height = app.add_option("--height", height, "realization window height");
    app.add_option("--config", config_path, "JSON config file; flags override its values");
    auto* o_out = app.add_option("--out", out_path, "Output file (default: stdout)");
    auto* o_format = app.add_option("--format", format, "csv | json");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    auto set = [](auto& dst, CLI::Option* opt, const auto& value) {
        if (!opt->empty())
            dst = value;
    };
    try {
        set(flags.lambda, o_lambda, lambda);
        set(flags.alpha, o_alpha, alpha);
        set(flags.R, o_R, R);
        set(flags.theta, o_theta, theta);
        set(flags.theta_db, o_theta_db, theta_db);
        set(flags.nu, o_nu, nu);
        set(flags.eps, o_eps, eps);
        set(flags.ks, o_k, ks);
        set(flags.densities, o_dens, densities);
        set(flags.samples, o_samples, samples);
        set(flags.seed, o_seed, seed);
        set(flags.workers, o_workers, workers);
        set(flags.truncation_tol, o_tol, tol);
        set(flags.method, o_method, method);
        set(flags.suite, o_suite, suite);
        set(flags.order, o_order, order);
        set(flags.width, o_width, width);
        set(flags.height, o_height, height);
        set(flags.out, o_out, out_path);
        set(flags.format, o_format, format);
        if (o_x->count())
            flags.x_grid = GridSpec::parse(x_grid);
        if (o_t->count())
            flags.t_grid = GridSpec::parse(t_grid);
        if (o_th->count())
            flags.theta_grid = GridSpec::parse(theta_grid);

        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        cfg.merge_from(flags);
        const OutputFormat fmt = parse_format(cfg.format.value_or("csv"));

        const CommandResult res = execute(command, cfg);
        err << "manifest: " << res.manifest.dump() << "\n";
        std::optional<std::filesystem::path> path;
        if (cfg.out)
            path = *cfg.out;
        emit_table(res.table, res.manifest, fmt, path, out);
        return res.status;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnsupportedExponent& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

} // namespace metasir::cli
