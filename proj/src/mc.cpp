#include "metasir/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "metasir/errors.hpp"
#include "metasir/model.hpp"
#include "metasir/rng.hpp"

namespace metasir::mc {

namespace {

constexpr std::size_t kChunk = 64;
constexpr std::size_t kMaxAttempts = 1000;

/// Runs body(i) for i in [0, n) on `workers` threads. Each index is
/// processed exactly once; the first exception is rethrown.
void
run_indexed(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body)
{
    if (workers <= 1 || n <= kChunk) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        try {
            while (true) {
                const std::size_t begin = next.fetch_add(kChunk);
                if (begin >= n)
                    return;
                const std::size_t end = std::min(n, begin + kChunk);
                for (std::size_t i = begin; i < end; ++i)
                    body(i);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
            next.store(n);
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        threads.emplace_back(worker);
    for (auto& t : threads)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

/// Samples one typical-link profile per index and maps it through fn.
/// Realizations fn rejects (no interferer, fewer than k, zero
/// interference) are redrawn from the next attempt's stream.
template <class Result, class Fn>
std::pair<std::vector<Result>, std::size_t>
map_realizations(const NetworkParams& params, const McConfig& cfg, Fn&& fn)
{
    if (cfg.n_realizations == 0)
        throw InvalidArgument("n_realizations must be at least 1");
    const double window = sampling::required_window_radius(params, cfg.truncation_tol);
    std::vector<Result> results(cfg.n_realizations);
    std::vector<std::size_t> attempts(cfg.n_realizations, 0);

    run_indexed(cfg.n_realizations, resolve_workers(cfg), [&](std::size_t i) {
        for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
            const sampling::SamplingConfig sc{window, cfg.truncation_tol,
                                              stream_seed(cfg.master_seed, i, attempt), cfg.far_field};
            const InterfererProfile profile = sampling::sample_typical_profile(params, sc);
            try {
                results[i] = fn(profile);
                attempts[i] = attempt;
                return;
            } catch (const EmptyRealization&) {
            } catch (const InsufficientInterferers&) {
            } catch (const ZeroInterference&) {
            }
        }
        throw NumericalFailure("realization could not be drawn within the attempt limit");
    });

    std::size_t resamples = 0;
    for (std::size_t a : attempts)
        resamples += a;
    return {std::move(results), resamples};
}

McEstimate
sample_mean(const std::vector<double>& xs, std::size_t resamples)
{
    McEstimate est;
    est.n = xs.size();
    est.resample_count = resamples;
    if (xs.empty())
        return est;
    double sum = 0.0;
    for (double x : xs)
        sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs)
        ss += (x - mean) * (x - mean);
    est.value = mean;
    if (xs.size() > 1)
        est.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
    return est;
}

/// Empirical P(X > g) for each grid point.
McCurve
empirical_ccdf(std::vector<double> samples, const std::vector<double>& grid, std::string label,
               std::size_t resamples)
{
    std::sort(samples.begin(), samples.end());
    McCurve out;
    out.n = samples.size();
    out.resample_count = resamples;
    out.curve.label = std::move(label);
    out.curve.abscissa = grid;
    const double n = static_cast<double>(samples.size());
    for (double g : grid) {
        const auto above = samples.end() - std::upper_bound(samples.begin(), samples.end(), g);
        const double p = static_cast<double>(above) / n;
        out.curve.values.push_back(p);
        out.curve.std_errors.push_back(std::sqrt(p * (1.0 - p) / n));
    }
    return out;
}

double
threshold_by_mode(const InterfererProfile& profile, const NetworkParams& params, const ReliabilityTarget& target,
                  InfoMode mode)
{
    switch (mode.kind) {
    case InfoMode::Kind::full:
        return threshold_for_reliability(profile, params, target).value();
    case InfoMode::Kind::k_nearest:
        return threshold_lower_bound_k(profile, params, target, mode.k).value();
    case InfoMode::Kind::partial_info_limit:
        return threshold_partial_info(interference_no_fading(profile), params, target).value();
    }
    return 0.0;
}

std::string
mode_label(InfoMode mode)
{
    switch (mode.kind) {
    case InfoMode::Kind::full:
        return "threshold_ccdf_full";
    case InfoMode::Kind::k_nearest:
        return "threshold_ccdf_k" + std::to_string(mode.k);
    case InfoMode::Kind::partial_info_limit:
        return "threshold_ccdf_partial_info";
    }
    return "";
}

void
check_grid(const std::vector<double>& grid, const char* what)
{
    if (grid.empty())
        throw InvalidArgument(std::string(what) + " grid is empty");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw InvalidArgument(std::string(what) + " grid must be ascending");
}

} // namespace

McEstimate
McCurve::at(std::size_t i) const
{
    return {curve.values.at(i), curve.std_errors.at(i), n, resample_count};
}

unsigned
resolve_workers(const McConfig& cfg)
{
    if (cfg.worker_hint && *cfg.worker_hint > 0)
        return *cfg.worker_hint;
    return std::max(1u, std::thread::hardware_concurrency());
}

McEstimate
estimate_success_probability(const NetworkParams& params, SirThreshold theta, const McConfig& cfg)
{
    auto [ps, resamples] = map_realizations<double>(
        params, cfg, [&](const InterfererProfile& p) { return conditional_success(p, params, theta); });
    return sample_mean(ps, resamples);
}

McCurve
estimate_md(const NetworkParams& params, SirThreshold theta, const std::vector<double>& x_grid, const McConfig& cfg)
{
    check_grid(x_grid, "x");
    auto [ps, resamples] = map_realizations<double>(
        params, cfg, [&](const InterfererProfile& p) { return conditional_success(p, params, theta); });
    return empirical_ccdf(std::move(ps), x_grid, "md_mc", resamples);
}

PairedThresholds
paired_thresholds(const NetworkParams& params, const ReliabilityTarget& target, const std::vector<InfoMode>& modes,
                  const McConfig& cfg)
{
    if (modes.empty())
        throw InvalidArgument("at least one threshold estimator is required");
    auto [rows, resamples] =
        map_realizations<std::vector<double>>(params, cfg, [&](const InterfererProfile& p) {
            std::vector<double> row;
            row.reserve(modes.size());
            for (const auto& m : modes)
                row.push_back(threshold_by_mode(p, params, target, m));
            return row;
        });
    PairedThresholds out;
    out.modes = modes;
    out.resample_count = resamples;
    out.samples.assign(modes.size(), std::vector<double>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t m = 0; m < modes.size(); ++m)
            out.samples[m][i] = rows[i][m];
    return out;
}

McCurve
estimate_threshold_ccdf(const NetworkParams& params, const ReliabilityTarget& target,
                        const std::vector<double>& t_grid, const McConfig& cfg, InfoMode info)
{
    check_grid(t_grid, "t");
    auto paired = paired_thresholds(params, target, {info}, cfg);
    return empirical_ccdf(std::move(paired.samples[0]), t_grid, mode_label(info), paired.resample_count);
}

DualityReport
verify_duality(const NetworkParams& params, SirThreshold theta, const ReliabilityTarget& target, const McConfig& cfg)
{
    struct Outcome
    {
        bool guarded = false;
        bool violation = false;
    };
    auto [outcomes, resamples] = map_realizations<Outcome>(params, cfg, [&](const InterfererProfile& p) {
        const double ps = conditional_success(p, params, theta);
        const double t = threshold_for_reliability(p, params, target).value();
        Outcome o;
        o.guarded = std::abs(ps - target.nu()) < kDualityGuardBand;
        o.violation = !o.guarded && ((ps > target.nu()) != (t > theta.value()));
        return o;
    });
    DualityReport report;
    report.n = outcomes.size();
    report.resample_count = resamples;
    for (const auto& o : outcomes) {
        report.guard_band_exclusions += o.guarded ? 1 : 0;
        report.violations += o.violation ? 1 : 0;
    }
    return report;
}

std::vector<BoundCheck>
check_bound_dominance(const NetworkParams& params, const ReliabilityTarget& target, const std::vector<std::size_t>& ks,
                      const McConfig& cfg)
{
    std::vector<InfoMode> modes{InfoMode::full()};
    for (std::size_t k : ks)
        modes.push_back(InfoMode::k_nearest(k));
    const auto paired = paired_thresholds(params, target, modes, cfg);
    const auto& exact = paired.samples[0];
    std::vector<BoundCheck> out;
    for (std::size_t m = 0; m < ks.size(); ++m) {
        BoundCheck check;
        check.k = ks[m];
        check.n = exact.size();
        const auto& bound = paired.samples[m + 1];
        for (std::size_t i = 0; i < exact.size(); ++i) {
            check.violations += bound[i] > exact[i] ? 1 : 0;
            check.max_ratio = std::max(check.max_ratio, bound[i] / exact[i]);
        }
        out.push_back(check);
    }
    return out;
}

ThroughputEstimate
estimate_throughput(const NetworkParams& params, const ReliabilityTarget& target, const std::vector<double>& theta_grid,
                    const McConfig& cfg)
{
    const std::size_t g = theta_grid.size();
    // Row layout: T, P_s(T), then P_s(theta_j).
    auto [rows, resamples] = map_realizations<std::vector<double>>(params, cfg, [&](const InterfererProfile& p) {
        std::vector<double> row(2 + g);
        row[0] = threshold_for_reliability(p, params, target).value();
        row[1] = conditional_success(p, params, SirThreshold(row[0]));
        for (std::size_t j = 0; j < g; ++j)
            row[2 + j] = conditional_success(p, params, SirThreshold(theta_grid[j]));
        return row;
    });

    const double lam = params.density();
    const double nu = target.nu();
    const std::size_t n = rows.size();
    ThroughputEstimate out;
    out.theta_grid = theta_grid;

    std::vector<double> log_rate(n), s(n), s_rel(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double rate = std::log1p(rows[i][0]);
        const double ps = rows[i][1];
        out.max_reliability_gap = std::max(out.max_reliability_gap, std::abs(ps - nu));
        log_rate[i] = rate;
        s[i] = lam * rate * ps;
        s_rel[i] = lam * rate * (ps >= nu - kDualityGuardBand ? 1.0 : 0.0);
    }
    out.mean_log_rate = sample_mean(log_rate, resamples);
    out.rate_control_S = sample_mean(s, resamples);
    out.rate_control_S_rel = sample_mean(s_rel, resamples);
    out.rate_control = {out.rate_control_S.value, out.rate_control_S_rel.value};

    for (std::size_t j = 0; j < g; ++j) {
        const double rate = lam * std::log1p(theta_grid[j]);
        for (std::size_t i = 0; i < n; ++i) {
            const double ps = rows[i][2 + j];
            s[i] = rate * ps;
            s_rel[i] = rate * (ps >= nu ? 1.0 : 0.0);
        }
        out.deterministic_S.push_back(sample_mean(s, resamples));
        out.deterministic_S_rel.push_back(sample_mean(s_rel, resamples));
    }
    return out;
}

std::vector<double>
sample_interference(const NetworkParams& params, const McConfig& cfg)
{
    return map_realizations<double>(params, cfg,
                                    [](const InterfererProfile& p) { return interference_no_fading(p).value; })
        .first;
}

McCurve
estimate_interference_ccdf(const NetworkParams& params, const std::vector<double>& x_grid, const McConfig& cfg)
{
    check_grid(x_grid, "x");
    auto [values, resamples] = map_realizations<double>(
        params, cfg, [](const InterfererProfile& p) { return interference_no_fading(p).value; });
    return empirical_ccdf(std::move(values), x_grid, "interference_ccdf_mc", resamples);
}

std::vector<LinkRecord>
realization_report(const NetworkParams& params, SirThreshold theta, const ReliabilityTarget& target,
                   const sampling::Rectangle& window, std::uint64_t seed)
{
    const auto links = sampling::sample_bipolar_links(params, window, seed);
    std::vector<LinkRecord> records;
    records.reserve(links.size());
    for (std::size_t i = 0; i < links.size(); ++i) {
        std::vector<double> distances;
        distances.reserve(links.size());
        for (std::size_t j = 0; j < links.size(); ++j)
            if (j != i)
                distances.push_back(distance(links[j].tx, links[i].rx));
        const auto profile = InterfererProfile::from_unsorted(std::move(distances), params.path_loss_exponent());
        LinkRecord rec{links[i].tx, links[i].rx, 1.0, std::numeric_limits<double>::infinity()};
        if (!profile.empty()) {
            rec.reliability = conditional_success(profile, params, theta);
            rec.threshold = threshold_for_reliability(profile, params, target).value();
        }
        records.push_back(rec);
    }
    return records;
}

std::vector<Figure2Series>
figure2_data(const NetworkParams& params, const ReliabilityTarget& target, const std::vector<double>& densities,
             const std::vector<std::size_t>& ks, const std::vector<double>& t_grid, const McConfig& cfg)
{
    check_grid(t_grid, "t");
    std::vector<InfoMode> modes{InfoMode::full()};
    for (std::size_t k : ks)
        modes.push_back(InfoMode::k_nearest(k));

    std::vector<Figure2Series> out;
    for (double density : densities) {
        const NetworkParams p = params.with_density(density);
        Figure2Series series;
        series.density = density;
        series.ks = ks;
        series.exact = analytics::threshold_ccdf_exact(p, target, t_grid);
        series.partial_info_approx.label = "threshold_ccdf_partial_info_erfc";
        series.partial_info_approx.abscissa = t_grid;
        for (double t : t_grid)
            series.partial_info_approx.values.push_back(
                analytics::threshold_ccdf_partial_info(p, target, SirThreshold(t)));

        auto paired = paired_thresholds(p, target, modes, cfg);
        series.full_mc = empirical_ccdf(std::move(paired.samples[0]), t_grid, mode_label(modes[0]),
                                        paired.resample_count);
        for (std::size_t m = 1; m < modes.size(); ++m)
            series.k_nearest.push_back(empirical_ccdf(std::move(paired.samples[m]), t_grid, mode_label(modes[m]),
                                                      paired.resample_count));
        out.push_back(std::move(series));
    }
    return out;
}

std::vector<Figure3Row>
figure3_data(const NetworkParams& params, const ReliabilityTarget& target, const std::vector<double>& theta_grid,
             const McConfig& cfg)
{
    const auto rate_control = analytics::throughput_rate_control(params, target);
    const auto mc = estimate_throughput(params, target, theta_grid, cfg);
    std::vector<Figure3Row> rows;
    for (std::size_t j = 0; j < theta_grid.size(); ++j) {
        Figure3Row row;
        row.theta = theta_grid[j];
        row.rate_control = rate_control;
        row.deterministic = analytics::throughput_deterministic(params, SirThreshold(theta_grid[j]), target);
        row.rate_control_S_mc = mc.rate_control_S;
        row.rate_control_S_rel_mc = mc.rate_control_S_rel;
        row.deterministic_S_mc = mc.deterministic_S[j];
        row.deterministic_S_rel_mc = mc.deterministic_S_rel[j];
        rows.push_back(row);
    }
    return rows;
}

} // namespace metasir::mc
