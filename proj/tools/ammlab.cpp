// ammlab: constant-product path-dependence laboratory.
//
// Subcommands: demo | heatmap | simulate | scan | stats. All machine output
// is schema-versioned CSV or JSON; every run is deterministic given
// (config, fixtures, seed). Exit codes: 0 success, 1 validation or usage,
// 2 I/O or network, 3 reference-value mismatch in demo.

#include "ammlab/errors.hpp"
#include "ammlab/ingest/oracle.hpp"
#include "ammlab/ingest/pipeline.hpp"
#include "ammlab/ingest/subgraph.hpp"
#include "ammlab/ingest/transport.hpp"
#include "ammlab/operation.hpp"
#include "ammlab/path_analysis.hpp"
#include "ammlab/pool.hpp"
#include "ammlab/prediction_market.hpp"
#include "ammlab/rational.hpp"
#include "ammlab/scenario.hpp"
#include "ammlab/stats.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

using namespace ammlab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitReferenceMismatch = 3;

// ---------------------------------------------------------------------------
// Configuration

struct Config {
    std::string subgraph_url;
    std::string rpc_url;
    std::string pool_id = "0x88e6a0c2ddd26feeb64f039a2c41296fcb3f5640";
    std::string fixture_dir = "fixtures";
    std::string mode = "replay";  // live | replay | record
    std::string output_format = "csv";
    std::uint64_t seed = 0;
    std::string oracle_aggregator = "0x5f4ec3df9cbd43714fe2740f5e3616155c5b8419";
    std::vector<std::int64_t> oracle_blocks;
    ingest::ReserveEstimate reserve_estimate{100.0, 200000.0};
    double min_event_usd = 1.0;
    std::int64_t min_timestamp = 0;
    std::size_t event_limit = 1000;
    std::int64_t window_seconds = 60;
    std::size_t parallelism = 4;
};

Config load_config(const std::string& path) {
    Config config;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw NetworkError("cannot open config file: " + path);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw ParseError("invalid config JSON in " + path + ": " + e.what());
        }
        config.subgraph_url = j.value("subgraph_url", config.subgraph_url);
        config.rpc_url = j.value("rpc_url", config.rpc_url);
        config.pool_id = j.value("pool_id", config.pool_id);
        config.fixture_dir = j.value("fixture_dir", config.fixture_dir);
        config.mode = j.value("mode", config.mode);
        config.output_format = j.value("output_format", config.output_format);
        config.seed = j.value("seed", config.seed);
        config.oracle_aggregator = j.value("oracle_aggregator", config.oracle_aggregator);
        if (j.contains("oracle_blocks"))
            config.oracle_blocks = j.at("oracle_blocks").get<std::vector<std::int64_t>>();
        if (j.contains("reserve_estimate")) {
            config.reserve_estimate.token0 =
                j.at("reserve_estimate").value("token0", config.reserve_estimate.token0);
            config.reserve_estimate.token1 =
                j.at("reserve_estimate").value("token1", config.reserve_estimate.token1);
        }
        config.min_event_usd = j.value("min_event_usd", config.min_event_usd);
        config.min_timestamp = j.value("min_timestamp", config.min_timestamp);
        config.event_limit = j.value("event_limit", config.event_limit);
        config.window_seconds = j.value("window_seconds", config.window_seconds);
        config.parallelism = j.value("parallelism", config.parallelism);

        // A relative fixture dir resolves against the config file location.
        const std::filesystem::path dir(config.fixture_dir);
        if (dir.is_relative() && !config.fixture_dir.empty()) {
            const auto base = std::filesystem::path(path).parent_path();
            if (!base.empty()) config.fixture_dir = (base / dir).string();
        }
    }

    const auto env = [](const char* name) -> std::optional<std::string> {
        const char* value = std::getenv(name);
        if (value == nullptr || *value == '\0') return std::nullopt;
        return std::string(value);
    };
    if (auto v = env("AMMLAB_SUBGRAPH_URL")) config.subgraph_url = *v;
    if (auto v = env("AMMLAB_RPC_URL")) config.rpc_url = *v;
    if (auto v = env("AMMLAB_POOL_ID")) config.pool_id = *v;
    if (auto v = env("AMMLAB_FIXTURE_DIR")) config.fixture_dir = *v;
    if (auto v = env("AMMLAB_MODE")) config.mode = *v;
    if (auto v = env("AMMLAB_FORMAT")) config.output_format = *v;
    if (auto v = env("AMMLAB_SEED")) config.seed = std::stoull(*v);
    return config;
}

std::unique_ptr<ingest::HttpTransport> make_transport(const Config& config) {
    if (config.mode == "replay")
        return std::make_unique<ingest::ReplayHttpTransport>(config.fixture_dir);
    if (config.mode == "live") {
        if (config.subgraph_url.empty())
            throw ValidationError("live mode needs subgraph_url");
        return std::make_unique<ingest::LiveHttpTransport>();
    }
    if (config.mode == "record") {
        if (config.subgraph_url.empty())
            throw ValidationError("record mode needs subgraph_url");
        return std::make_unique<ingest::RecordingHttpTransport>(
            std::make_unique<ingest::LiveHttpTransport>(), config.fixture_dir);
    }
    throw ValidationError("unknown mode '" + config.mode + "' (live | replay | record)");
}

// Streams to --output or stdout.
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) throw NetworkError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

// ---------------------------------------------------------------------------
// demo

int cmd_demo(const std::string& alpha_text, const std::string& swap_text,
             const std::string& x0_text, const std::string& y0_text) {
    const Rational alpha = parse_rational(alpha_text);
    const Rational swap_in = parse_rational(swap_text);
    const Rational x0 = parse_rational(x0_text);
    const Rational y0 = parse_rational(y0_text);
    if (alpha < 0) throw ValidationError("--alpha must be nonnegative");
    if (swap_in <= 0) throw ValidationError("--swap must be positive");

    const Pool pool0{x0, y0};
    // alpha = 0 collapses the two orderings into the same single-swap path.
    PathComparison cmp;
    if (alpha == 0) {
        const Pool swapped = pool0.swap_exact_in(Token::X, swap_in).pool;
        cmp = PathComparison{swapped, swapped, Rational(0), Rational(0), Rational(0)};
    } else {
        cmp = commute_compare(pool0, AddLiquidity{alpha}, Swap{Token::X, swap_in});
    }

    std::cout << "initial pool: " << format_sig(x0, 10) << " ETH / "
              << format_sig(y0, 10) << " USDC (k = " << format_sig(x0 * y0, 10)
              << ")\n"
              << "alpha = " << format_sig(alpha, 10) << ", swap = "
              << format_sig(swap_in, 10) << " ETH\n"
              << "Case 1 (add liquidity, then swap): "
              << format_decimal(cmp.final_ab.reserve_x(), 2) << " ETH / "
              << format_decimal(cmp.final_ab.reserve_y(), 2) << " USDC\n"
              << "Case 2 (swap, then add liquidity): "
              << format_decimal(cmp.final_ba.reserve_x(), 2) << " ETH / "
              << format_decimal(cmp.final_ba.reserve_y(), 2) << " USDC\n"
              << "delta: " << format_decimal(cmp.delta_x, 2) << " ETH, "
              << format_decimal(cmp.delta_y, 2) << " USDC\n"
              << "price impact: " << format_decimal(cmp.price_impact_pct, 4)
              << "% (case 2 vs case 1)\n";

    // The run only succeeds if the exact closed forms agree with the
    // simulated states...
    const auto [y2, y2p] = closed_form_y_states(x0, y0, alpha, swap_in);
    bool ok = cmp.delta_x == closed_form_x_diff(swap_in, alpha) &&
              cmp.final_ab.reserve_y() == y2 && cmp.final_ba.reserve_y() == y2p;
    // ...and, on the reference inputs, with the published worked example.
    if (alpha == Rational(1, 10) && swap_in == Rational(10) && x0 == Rational(100) &&
        y0 == Rational(200000)) {
        ok = ok && cmp.final_ab.reserve_x() == Rational(120) &&
             cmp.final_ab.reserve_y() == Rational(605000, 3) &&
             cmp.final_ba.reserve_x() == Rational(121) &&
             cmp.final_ba.reserve_y() == Rational(200000) &&
             cmp.delta_x == Rational(1) && cmp.delta_y == Rational(5000, 3);
    }
    if (!ok) {
        std::cerr << "demo: computed states disagree with the reference values\n";
        return kExitReferenceMismatch;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// heatmap

std::vector<Rational> rational_range(const std::string& lo_text,
                                     const std::string& hi_text,
                                     const std::string& step_text) {
    const Rational lo = parse_rational(lo_text);
    const Rational hi = parse_rational(hi_text);
    const Rational step = parse_rational(step_text);
    if (step <= 0 || lo <= 0 || hi < lo)
        throw ValidationError("range needs 0 < min <= max and a positive step");
    std::vector<Rational> values;
    for (Rational v = lo; v <= hi; v += step) values.push_back(v);
    return values;
}

int cmd_heatmap(const Config& config, const std::string& output,
                const std::string& alpha_min, const std::string& alpha_max,
                const std::string& alpha_step, const std::string& swap_min,
                const std::string& swap_max, const std::string& swap_step,
                const std::string& x0_text, const std::string& y0_text) {
    const Pool pool0{parse_rational(x0_text), parse_rational(y0_text)};
    const auto alphas = rational_range(alpha_min, alpha_max, alpha_step);
    const auto swaps = rational_range(swap_min, swap_max, swap_step);
    const auto cells = heatmap_grid(pool0, alphas, swaps);

    OutputTarget target(output);
    if (config.output_format == "json") {
        json doc;
        doc["schema_version"] = 1;
        json rows = json::array();
        for (const HeatmapCell& cell : cells) {
            rows.push_back({{"alpha", format_sig(cell.alpha, 10)},
                            {"swap_amount", format_sig(cell.swap_amount, 10)},
                            {"price_impact_pct", format_sig(cell.price_impact_pct, 10)}});
        }
        doc["cells"] = std::move(rows);
        target.stream() << doc.dump(2) << '\n';
    } else {
        write_heatmap_csv(target.stream(), cells);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

json trajectory_to_json(const PathRun& run) {
    json steps = json::array();
    for (const TrajectoryPoint& point : run.trajectory) {
        steps.push_back({{"op", describe(point.op)},
                         {"yes", format_sig(point.state.yes_reserve(), 10)},
                         {"no", format_sig(point.state.no_reserve(), 10)},
                         {"prob", format_sig(point.probability, 4)}});
    }
    return steps;
}

json simulate_scenario(const MarketPool& market0, const Scenario& scenario,
                       std::size_t monte_carlo_n, std::uint64_t seed) {
    // Anything further than 0.1 pp from a printed reference value gets
    // flagged rather than silently corrected.
    constexpr double kFlagToleranceProb = 0.001;

    json out;
    out["name"] = scenario.name;
    out["initial"] = {{"yes", format_sig(market0.yes_reserve(), 10)},
                      {"no", format_sig(market0.no_reserve(), 10)}};

    const PathRun run1 = run_scenario_path(market0, scenario.path1);
    const PathRun run2 = run_scenario_path(market0, scenario.path2);
    const struct {
        const char* name;
        const PathRun& run;
        std::optional<double> printed;
    } paths[] = {{"path1", run1, scenario.printed_path1_prob},
                 {"path2", run2, scenario.printed_path2_prob}};

    json jpaths = json::array();
    for (const auto& p : paths) {
        json jp;
        jp["name"] = p.name;
        jp["final_prob"] = format_sig(p.run.final_prob, 4);
        jp["trajectory"] = trajectory_to_json(p.run);
        if (p.printed) {
            const double computed = to_double(p.run.final_prob);
            jp["printed_prob"] = *p.printed;
            jp["discrepancy_pp"] = (computed - *p.printed) * 100.0;
            jp["flagged"] = std::fabs(computed - *p.printed) > kFlagToleranceProb;
        }
        jpaths.push_back(std::move(jp));
    }
    out["paths"] = std::move(jpaths);
    out["divergence_pp"] = format_sig(100 * (run2.final_prob - run1.final_prob), 4);

    const std::vector<Rational> grid = {Rational(1, 10), Rational(1, 5), Rational(1, 2),
                                        Rational(3, 4), Rational(1)};
    const auto divergences = scenario_divergence_by_alpha(market0, scenario, grid);
    const auto printed = printed_divergence_reference(scenario.name);
    json jdiv = json::array();
    for (std::size_t i = 0; i < divergences.size(); ++i) {
        json row;
        row["alpha"] = format_sig(divergences[i].first, 4);
        row["divergence_pp"] = format_sig(divergences[i].second, 4);
        if (i < printed.size() && printed[i].first == divergences[i].first) {
            const double computed = to_double(divergences[i].second);
            row["printed_pp"] = printed[i].second;
            row["flagged"] = std::fabs(computed - printed[i].second) > 0.1;
        }
        jdiv.push_back(std::move(row));
    }
    out["divergence_by_alpha"] = std::move(jdiv);

    if (monte_carlo_n > 0) {
        const MonteCarloSummary mc =
            monte_carlo_paths(market0, scenario.path1, monte_carlo_n, seed);
        json jmc;
        jmc["n_paths"] = mc.n_paths;
        jmc["seed"] = mc.seed;
        jmc["rejected"] = mc.rejected;
        jmc["distinct_final_probs"] = mc.distinct;
        jmc["min_prob"] = format_sig(mc.min_prob, 4);
        jmc["max_prob"] = format_sig(mc.max_prob, 4);
        jmc["mean_prob"] = format_sig(mc.mean_prob, 4);
        jmc["spread_pp"] = format_sig(100 * mc.spread, 4);
        jmc["stddev"] = mc.stddev;
        out["monte_carlo"] = std::move(jmc);
    }
    return out;
}

int cmd_simulate(const Config& config, const std::string& scenario_path,
                 const std::string& output, std::size_t monte_carlo_n,
                 std::uint64_t seed) {
    std::vector<std::pair<MarketPool, Scenario>> runs;
    if (scenario_path.empty()) {
        const MarketPool market0{Rational(1000), Rational(1000)};
        for (Scenario& s : builtin_scenarios()) runs.emplace_back(market0, std::move(s));
    } else {
        ScenarioFile file = load_scenario_file(scenario_path);
        runs.emplace_back(file.initial, std::move(file.scenario));
    }

    OutputTarget target(output);
    if (config.output_format == "csv") {
        target.stream() << "scenario,path,final_prob\n";
        for (const auto& [market0, scenario] : runs) {
            target.stream()
                << scenario.name << ",path1,"
                << format_sig(run_scenario_path(market0, scenario.path1).final_prob, 10)
                << '\n'
                << scenario.name << ",path2,"
                << format_sig(run_scenario_path(market0, scenario.path2).final_prob, 10)
                << '\n';
        }
        return kExitOk;
    }

    json doc;
    doc["schema_version"] = 1;
    json scenarios = json::array();
    for (const auto& [market0, scenario] : runs)
        scenarios.push_back(simulate_scenario(market0, scenario, monte_carlo_n, seed));
    doc["scenarios"] = std::move(scenarios);
    target.stream() << doc.dump(2) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// scan

int cmd_scan(const Config& config, const std::string& output,
             const std::string& report_output) {
    auto transport = make_transport(config);
    ingest::SubgraphClient subgraph(*transport, config.subgraph_url.empty()
                                                    ? "http://subgraph.replay/"
                                                    : config.subgraph_url);

    const ingest::PoolMetadata metadata = subgraph.fetch_pool_metadata(config.pool_id);
    std::vector<ingest::PoolEvent> events;
    for (const ingest::EventKind kind :
         {ingest::EventKind::Swap, ingest::EventKind::Mint, ingest::EventKind::Burn}) {
        auto batch = subgraph.fetch_events(config.pool_id, kind, config.min_timestamp,
                                           config.event_limit, metadata);
        events.insert(events.end(), std::make_move_iterator(batch.begin()),
                      std::make_move_iterator(batch.end()));
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const ingest::PoolEvent& a, const ingest::PoolEvent& b) {
                         return a.timestamp != b.timestamp ? a.timestamp < b.timestamp
                                                           : a.tx_id < b.tx_id;
                     });

    const auto hourly_tvl =
        subgraph.fetch_hourly_tvl(config.pool_id, config.min_timestamp, 1000);

    const auto windows = ingest::window_events(events, config.window_seconds);
    const auto scan = ingest::detect_opportunities(windows, metadata,
                                                   config.reserve_estimate,
                                                   config.min_event_usd, hourly_tvl);
    for (const auto& skipped : scan.skipped)
        std::cerr << "scan: window " << skipped.window_start
                  << " skipped: " << skipped.reason << '\n';

    // Summary-table stats over the detected impacts.
    std::vector<double> impacts, alphas, swap_usd, liquidity_usd;
    for (const auto& o : scan.opportunities) {
        impacts.push_back(o.price_impact_pct);
        alphas.push_back(o.alpha_est);
        swap_usd.push_back(o.swap_usd);
        liquidity_usd.push_back(o.liquidity_usd);
    }
    const std::vector<std::pair<std::string, std::vector<double>>> companions = {
        {"alpha", alphas}, {"swap_usd", swap_usd}, {"liquidity_usd", liquidity_usd}};
    json report;
    report["schema_version"] = 1;
    report["pool_id"] = config.pool_id;
    report["windows"] = windows.size();
    report["opportunities"] = scan.opportunities.size();
    report["skipped_windows"] = scan.skipped.size();
    report["stats"] = stats::impact_report(impacts, 0.0, companions);

    if (!config.oracle_blocks.empty()) {
        if (config.rpc_url.empty() && config.mode != "replay")
            throw ValidationError("oracle blocks configured but rpc_url is empty");
        ingest::OracleClient oracle(*transport,
                                    config.rpc_url.empty() ? "http://rpc.replay/"
                                                           : config.rpc_url,
                                    config.oracle_aggregator);
        const auto fetched =
            oracle.fetch_oracle_prices(config.oracle_blocks, config.parallelism);
        json joracle;
        joracle["points"] = fetched.points.size();
        joracle["failures"] = fetched.failures.size();
        // Deviation of the nearest-in-time priced swap against each point.
        std::vector<double> deviations;
        for (const auto& point : fetched.points) {
            const ingest::PoolEvent* nearest = nullptr;
            std::int64_t best_gap = std::numeric_limits<std::int64_t>::max();
            for (const auto& event : events) {
                if (event.kind != ingest::EventKind::Swap || event.price <= 0.0) continue;
                const std::int64_t gap = std::llabs(event.timestamp - point.timestamp);
                if (gap < best_gap) {
                    best_gap = gap;
                    nearest = &event;
                }
            }
            if (nearest != nullptr)
                deviations.push_back(ingest::price_deviation(nearest->price, point.eth_usd));
        }
        if (!deviations.empty()) {
            const stats::SampleSummary s = stats::summarize(deviations);
            joracle["deviation"] = {
                {"n", s.n}, {"mean", s.mean}, {"min", s.min}, {"max", s.max}};
        }
        report["oracle"] = std::move(joracle);
    }

    if (config.output_format == "json") {
        json doc = report;
        json rows = json::array();
        for (const auto& o : scan.opportunities) {
            rows.push_back({{"window_start", o.window_start},
                            {"swap_usd", o.swap_usd},
                            {"liquidity_usd", o.liquidity_usd},
                            {"alpha", o.alpha_est},
                            {"price_impact_pct", o.price_impact_pct},
                            {"price_case1", o.price_case1},
                            {"price_case2", o.price_case2}});
        }
        doc["opportunity_rows"] = std::move(rows);
        OutputTarget target(output);
        target.stream() << doc.dump(2) << '\n';
        return kExitOk;
    }

    OutputTarget target(output);
    ingest::write_opportunities_csv(target.stream(), scan.opportunities);
    if (!report_output.empty()) {
        OutputTarget report_target(report_output);
        report_target.stream() << report.dump(2) << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// stats

int cmd_stats(const std::string& input, double mu0, const std::string& column,
              const std::string& output) {
    stats::SampleTable table;
    if (input == "-") {
        table = stats::load_sample_table(std::cin);
    } else {
        std::ifstream in(input);
        if (!in) throw NetworkError("cannot open input file: " + input);
        table = stats::load_sample_table(in);
    }

    auto column_index = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < table.names.size(); ++i)
            if (table.names[i] == name) return i;
        return std::nullopt;
    };

    std::size_t value_column = 0;
    if (!column.empty()) {
        const auto index = column_index(column);
        if (!index) throw ValidationError("no column named '" + column + "' in input");
        value_column = *index;
    } else if (const auto index = column_index("price_impact_pct")) {
        value_column = *index;
    }
    const std::vector<double>& samples = table.columns.at(value_column);
    if (samples.size() < 2)
        throw InsufficientDataError("need at least 2 sample values, got " +
                                    std::to_string(samples.size()));

    std::vector<std::pair<std::string, std::vector<double>>> companions;
    for (const char* name : {"alpha", "swap_usd", "liquidity_usd"}) {
        if (const auto index = column_index(name); index && *index != value_column)
            companions.emplace_back(name, table.columns.at(*index));
    }

    const json report = stats::impact_report(samples, mu0, companions);
    OutputTarget target(output);
    target.stream() << report.dump(2) << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constant-product AMM path-dependence laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file");

    std::string format_flag;
    app.add_option("--format", format_flag, "output format: csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    std::string seed_flag;
    app.add_option("--seed", seed_flag, "64-bit PRNG seed");
    std::string output;
    app.add_option("--output,-o", output, "output file (default stdout)");

    auto* demo = app.add_subcommand("demo", "both orderings of the worked example");
    std::string demo_alpha = "0.1", demo_swap = "10", demo_x0 = "100",
                demo_y0 = "200000";
    demo->add_option("--alpha", demo_alpha, "liquidity addition proportion")
        ->capture_default_str();
    demo->add_option("--swap", demo_swap, "token-X swap size")->capture_default_str();
    demo->add_option("--x0", demo_x0, "initial X reserve")->capture_default_str();
    demo->add_option("--y0", demo_y0, "initial Y reserve")->capture_default_str();

    auto* heatmap = app.add_subcommand("heatmap", "ordering impact across a grid");
    std::string alpha_min = "0.01", alpha_max = "0.5", alpha_step = "0.01";
    std::string swap_min = "1", swap_max = "20", swap_step = "1";
    std::string grid_x0 = "100", grid_y0 = "200000";
    heatmap->add_option("--alpha-min", alpha_min)->capture_default_str();
    heatmap->add_option("--alpha-max", alpha_max)->capture_default_str();
    heatmap->add_option("--alpha-step", alpha_step)->capture_default_str();
    heatmap->add_option("--swap-min", swap_min)->capture_default_str();
    heatmap->add_option("--swap-max", swap_max)->capture_default_str();
    heatmap->add_option("--swap-step", swap_step)->capture_default_str();
    heatmap->add_option("--x0", grid_x0)->capture_default_str();
    heatmap->add_option("--y0", grid_y0)->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "prediction-market scenarios");
    std::string scenario_path;
    simulate->add_option("--scenario", scenario_path, "scenario JSON file");
    std::size_t monte_carlo_n = 0;
    simulate->add_option("--monte-carlo", monte_carlo_n,
                         "randomized path variations per scenario");

    auto* scan = app.add_subcommand("scan", "event scan for ordering opportunities");
    std::string report_output;
    scan->add_option("--stats-output", report_output,
                     "write the JSON stats report here (csv format only)");

    auto* stats_cmd = app.add_subcommand("stats", "summary-table metrics over a sample");
    std::string stats_input;
    stats_cmd->add_option("input", stats_input, "CSV/JSON input path, or - for stdin")
        ->required();
    double mu0 = 0.0;
    stats_cmd->add_option("--mu0", mu0, "null-hypothesis mean")->capture_default_str();
    std::string stats_column;
    stats_cmd->add_option("--column", stats_column, "value column name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        Config config = load_config(config_path);
        // simulate reports default to JSON; explicit flags win.
        if (simulate->parsed() && config.output_format == "csv" && format_flag.empty())
            config.output_format = "json";
        if (!format_flag.empty()) config.output_format = format_flag;
        if (!seed_flag.empty()) config.seed = std::stoull(seed_flag);

        if (demo->parsed()) return cmd_demo(demo_alpha, demo_swap, demo_x0, demo_y0);
        if (heatmap->parsed())
            return cmd_heatmap(config, output, alpha_min, alpha_max, alpha_step,
                               swap_min, swap_max, swap_step, grid_x0, grid_y0);
        if (simulate->parsed())
            return cmd_simulate(config, scenario_path, output, monte_carlo_n,
                                config.seed);
        if (scan->parsed()) return cmd_scan(config, output, report_output);
        if (stats_cmd->parsed()) return cmd_stats(stats_input, mu0, stats_column, output);
        return kExitUsage;
    } catch (const NetworkError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}
