#include "ammlab/ingest/oracle.hpp"
#include "ammlab/ingest/pipeline.hpp"
#include "ammlab/ingest/subgraph.hpp"
#include "ammlab/ingest/transport.hpp"

#include "ammlab/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <map>
#include <random>
#include <sstream>

using namespace ammlab;
using namespace ammlab::ingest;
namespace fs = std::filesystem;

namespace {

/// Canned transport: exact request -> canned response, unknown -> error.
class FakeTransport : public HttpTransport {
public:
    void expect(const HttpRequest& request, HttpResponse response) {
        responses_[request_key(request)] = std::move(response);
    }
    void expect_post(const std::string& url, const std::string& body,
                     const std::string& response_body, int status = 200) {
        expect({"POST", url, body, "application/json"}, {status, response_body});
    }
    HttpResponse send(const HttpRequest& request) override {
        const auto it = responses_.find(request_key(request));
        if (it == responses_.end())
            throw NetworkError("unexpected request to " + request.url + ": " + request.body);
        return it->second;
    }

private:
    std::map<std::string, HttpResponse> responses_;
};

constexpr const char* kEndpoint = "http://graph.test/subgraphs/uniswap";
constexpr const char* kPool = "0x88e6a0c2ddd26feeb64f039a2c41296fcb3f5640";

std::string metadata_response() {
    nlohmann::json j = {
        {"data",
         {{"pool",
           {{"id", kPool},
            {"feeTier", "500"},
            {"totalValueLockedUSD", "400000"},
            {"token0", {{"decimals", "18"}}},
            {"token1", {{"decimals", "6"}}}}}}}};
    return j.dump();
}

nlohmann::json event_row(const std::string& id, std::int64_t ts, const std::string& a0,
                         const std::string& a1, double usd) {
    return {{"id", id},
            {"timestamp", std::to_string(ts)},
            {"amount0", a0},
            {"amount1", a1},
            {"amountUSD", usd}};
}

std::string events_response(const char* entity, const std::vector<nlohmann::json>& rows) {
    nlohmann::json j;
    j["data"][entity] = rows;
    return j.dump();
}

std::string hex_quantity(std::uint64_t value, int pad = 0) {
    std::ostringstream out;
    out << std::hex << value;
    std::string digits = out.str();
    if (pad > int(digits.size())) digits.insert(0, pad - digits.size(), '0');
    return "0x" + digits;
}

PoolEvent make_event(EventKind kind, std::int64_t ts, double usd, double price,
                     const std::string& id = "e") {
    PoolEvent e;
    e.kind = kind;
    e.tx_id = id + std::to_string(ts);
    e.timestamp = ts;
    e.amount_usd = usd;
    e.price = price;
    return e;
}

}  // namespace

TEST_CASE("decimal adjustment round trips raw integer amounts") {
    CHECK(adjust_decimals(BigInt("1230000000000000000"), 18) == Rational(123, 100));
    CHECK(adjust_decimals(BigInt("-2460000000"), 6) == Rational(-2460));
    CHECK(raw_from_adjusted(Rational(123, 100), 18) == BigInt("1230000000000000000"));

    std::mt19937_64 rng(0x5eed4001);
    std::uniform_int_distribution<long long> raw(-1000000000000000LL, 1000000000000000LL);
    std::uniform_int_distribution<int> dec(0, 36);
    for (int i = 0; i < 500; ++i) {
        const BigInt value(raw(rng));
        const int decimals = dec(rng);
        CHECK(raw_from_adjusted(adjust_decimals(value, decimals), decimals) == value);
    }
    CHECK_THROWS_AS(raw_from_adjusted(Rational(1, 3), 6), ValidationError);
    CHECK_THROWS_AS(adjust_decimals(BigInt(1), 37), ValidationError);
}

TEST_CASE("window_events aligns half-open windows to the epoch") {
    std::vector<PoolEvent> events = {make_event(EventKind::Swap, 0, 10, 2000),
                                     make_event(EventKind::Swap, 59, 10, 2000),
                                     make_event(EventKind::Mint, 60, 10, 0)};
    const auto windows = window_events(events, 60);
    REQUIRE(windows.size() == 2);
    CHECK(windows[0].window_start == 0);
    CHECK(windows[0].events.size() == 2);
    CHECK(windows[1].window_start == 60);
    CHECK(windows[1].events.size() == 1);

    CHECK(window_events({}, 60).empty());

    std::vector<PoolEvent> unsorted = {make_event(EventKind::Swap, 100, 1, 1),
                                       make_event(EventKind::Swap, 40, 1, 1)};
    CHECK_THROWS_AS(window_events(unsorted, 60), ValidationError);
    CHECK_THROWS_AS(window_events(events, 0), ValidationError);
}

TEST_CASE("windowing is a partition: brute-force oracle on a synthetic day") {
    std::mt19937_64 rng(0x5eed4002);
    std::uniform_int_distribution<std::int64_t> gap(1, 400);
    std::vector<PoolEvent> events;
    std::int64_t ts = 1700000000;
    for (int i = 0; i < 400; ++i) {
        ts += gap(rng);
        events.push_back(make_event(EventKind::Swap, ts, 5, 2000, "s" + std::to_string(i)));
    }

    const auto windows = window_events(events, 60);

    // Brute force: group by floor division, preserving order.
    std::map<std::int64_t, std::vector<std::string>> expected;
    for (const auto& e : events) expected[e.timestamp / 60 * 60].push_back(e.tx_id);
    REQUIRE(windows.size() == expected.size());

    std::size_t total = 0;
    std::vector<std::string> flattened;
    for (const auto& w : windows) {
        auto it = expected.find(w.window_start);
        REQUIRE(it != expected.end());
        std::vector<std::string> ids;
        for (const auto& e : w.events) {
            ids.push_back(e.tx_id);
            CHECK(e.timestamp >= w.window_start);
            CHECK(e.timestamp < w.window_start + 60);
            flattened.push_back(e.tx_id);
        }
        CHECK(ids == it->second);
        total += w.events.size();
    }
    CHECK(total == events.size());
    // Concatenating windows reproduces the input order.
    std::vector<std::string> original;
    for (const auto& e : events) original.push_back(e.tx_id);
    CHECK(flattened == original);
}

TEST_CASE("detect_opportunities models the reference window") {
    PoolMetadata meta;
    meta.tvl_usd = 400000.0;
    const ReserveEstimate reserves{100.0, 200000.0};

    // One window: a 20,000 USD swap at price 2000 (10 ETH) plus a 40,000 USD
    // mint (alpha 0.1) reproduces the worked-example ordering impact.
    std::vector<PoolEvent> events = {make_event(EventKind::Swap, 120, 20000, 2000),
                                     make_event(EventKind::Mint, 130, 40000, 0)};
    const auto scan = detect_opportunities(window_events(events, 60), meta, reserves);
    REQUIRE(scan.opportunities.size() == 1);
    const auto& opp = scan.opportunities[0];
    CHECK(opp.window_start == 120);
    CHECK(opp.swap_usd == 20000.0);
    CHECK(opp.liquidity_usd == 40000.0);
    CHECK(opp.alpha_est == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(opp.price_impact_pct ==
          doctest::Approx(-1.6460624274298203).epsilon(1e-12));
    CHECK(opp.price_case1 == doctest::Approx(605000.0 / 3.0 / 120.0).epsilon(1e-12));
    CHECK(opp.price_case2 == doctest::Approx(200000.0 / 121.0).epsilon(1e-12));
    CHECK(scan.skipped.empty());
}

TEST_CASE("detect_opportunities exclusions and skips") {
    PoolMetadata meta;
    meta.tvl_usd = 400000.0;
    const ReserveEstimate reserves{100.0, 200000.0};

    // Swaps only: not a qualifying window.
    std::vector<PoolEvent> swaps_only = {make_event(EventKind::Swap, 0, 100, 2000),
                                         make_event(EventKind::Swap, 10, 200, 2000)};
    CHECK(detect_opportunities(window_events(swaps_only, 60), meta, reserves)
              .opportunities.empty());

    // Mixed window but zero TVL and no fallback: skipped with a reason.
    PoolMetadata no_tvl;
    no_tvl.tvl_usd = 0.0;
    std::vector<PoolEvent> mixed = {make_event(EventKind::Swap, 0, 100, 2000),
                                    make_event(EventKind::Mint, 1, 100, 0)};
    const auto scan =
        detect_opportunities(window_events(mixed, 60), no_tvl, ReserveEstimate{0, 0});
    CHECK(scan.opportunities.empty());
    REQUIRE(scan.skipped.size() == 1);
    CHECK(scan.skipped[0].reason == "zero TVL");

    // Events below the USD floor do not qualify a window.
    std::vector<PoolEvent> dust = {make_event(EventKind::Swap, 0, 0.5, 2000),
                                   make_event(EventKind::Mint, 1, 100, 0)};
    CHECK(detect_opportunities(window_events(dust, 60), meta, reserves, 1.0)
              .opportunities.empty());

    // No priced swap in the window: skipped with a reason.
    std::vector<PoolEvent> unpriced = {make_event(EventKind::Swap, 0, 100, 0),
                                       make_event(EventKind::Mint, 1, 100, 0)};
    const auto scan2 = detect_opportunities(window_events(unpriced, 60), meta, reserves);
    REQUIRE(scan2.skipped.size() == 1);
    CHECK(scan2.skipped[0].reason == "no usable pool price in window");
}

TEST_CASE("opportunities are sorted by absolute impact, csv schema is stable") {
    PoolMetadata meta;
    meta.tvl_usd = 400000.0;
    const ReserveEstimate reserves{100.0, 200000.0};
    std::vector<PoolEvent> events = {
        make_event(EventKind::Swap, 0, 2000, 2000),    // small swap
        make_event(EventKind::Mint, 5, 4000, 0),       // alpha 0.01
        make_event(EventKind::Swap, 600, 20000, 2000), // big swap
        make_event(EventKind::Burn, 610, 40000, 0),    // alpha 0.1
    };
    const auto scan = detect_opportunities(window_events(events, 60), meta, reserves);
    REQUIRE(scan.opportunities.size() == 2);
    CHECK(scan.opportunities[0].window_start == 600);  // larger |impact| first
    CHECK(std::fabs(scan.opportunities[0].price_impact_pct) >
          std::fabs(scan.opportunities[1].price_impact_pct));

    std::ostringstream out;
    write_opportunities_csv(out, scan.opportunities);
    const std::string csv = out.str();
    CHECK(csv.rfind("window_start,swap_usd,liquidity_usd,alpha,price_impact_pct,"
                    "price_case1,price_case2\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("price deviation") {
    CHECK(price_deviation(2000.0, 2000.0) == 0.0);
    CHECK(price_deviation(2020.0, 2000.0) == doctest::Approx(0.01).epsilon(1e-15));
    CHECK_THROWS_AS(price_deviation(2000.0, 0.0), ValidationError);
    CHECK_THROWS_AS(price_deviation(2000.0, -1.0), ValidationError);

    // Small series against hand-computed values.
    const double amm[] = {1990.0, 2000.0, 2010.0};
    const double oracle[] = {2000.0, 2000.0, 2000.0};
    const double expected[] = {-0.005, 0.0, 0.005};
    for (int i = 0; i < 3; ++i)
        CHECK(price_deviation(amm[i], oracle[i]) ==
              doctest::Approx(expected[i]).epsilon(1e-15));
}

TEST_CASE("subgraph metadata fetch and error kinds") {
    FakeTransport http;
    http.expect_post(kEndpoint, SubgraphClient::metadata_query_body(kPool),
                     metadata_response());
    SubgraphClient client(http, kEndpoint);
    const PoolMetadata meta = client.fetch_pool_metadata(kPool);
    CHECK(meta.pool_id == kPool);
    CHECK(meta.token0_decimals == 18);
    CHECK(meta.token1_decimals == 6);
    CHECK(meta.fee_tier_ppm == 500);
    CHECK(meta.tvl_usd == 400000.0);

    // Unknown pool: data.pool = null.
    http.expect_post(kEndpoint, SubgraphClient::metadata_query_body("0xdead"),
                     R"({"data":{"pool":null}})");
    CHECK_THROWS_AS(client.fetch_pool_metadata("0xdead"), NetworkError);

    // Malformed response names the offending field.
    nlohmann::json bad = nlohmann::json::parse(metadata_response());
    bad["data"]["pool"]["token0"]["decimals"] = "not-a-number";
    http.expect_post(kEndpoint, SubgraphClient::metadata_query_body("0xbad"),
                     bad.dump());
    CHECK_THROWS_WITH_AS(client.fetch_pool_metadata("0xbad"),
                         "field 'decimals' is not an integer: 'not-a-number'",
                         ParseError);
}

TEST_CASE("subgraph events: decimal adjustment, sorting, pagination") {
    FakeTransport http;
    SubgraphClient client(http, kEndpoint);
    PoolMetadata meta;
    meta.token0_decimals = 18;
    meta.token1_decimals = 6;

    // Three pages of size 3 with a duplicate-timestamp pair inside page one.
    const auto page = [&](std::int64_t min_ts, std::size_t first,
                          const std::vector<nlohmann::json>& rows) {
        http.expect_post(kEndpoint,
                         SubgraphClient::events_query_body(kPool, EventKind::Swap,
                                                           min_ts, first),
                         events_response("swaps", rows));
    };
    page(0, 3,
         {event_row("s1", 100, "-1000000000000000000", "2000000000", 2000.0),
          event_row("s2", 160, "500000000000000000", "-1000000000", 1000.0),
          event_row("s3", 160, "250000000000000000", "-500000000", 500.0)});
    page(160, 3,
         {event_row("s2", 160, "500000000000000000", "-1000000000", 1000.0),
          event_row("s3", 160, "250000000000000000", "-500000000", 500.0),
          event_row("s4", 220, "-2000000000000000000", "3900000000", 3900.0)});
    page(220, 3,
         {event_row("s4", 220, "-2000000000000000000", "3900000000", 3900.0),
          event_row("s5", 280, "1000000000000000000", "-1990000000", 1990.0)});

    const auto events = client.fetch_events(kPool, EventKind::Swap, 0, 100, meta, 3);
    REQUIRE(events.size() == 5);
    for (std::size_t i = 1; i < events.size(); ++i)
        CHECK(events[i - 1].timestamp <= events[i].timestamp);
    CHECK(events[0].tx_id == "s1");
    CHECK(events[0].amount0 == Rational(-1));
    CHECK(events[0].amount1 == Rational(2000));
    CHECK(events[0].price == doctest::Approx(2000.0));
    CHECK(events[3].tx_id == "s4");
    CHECK(events[3].amount0 == Rational(-2));
    CHECK(events[3].price == doctest::Approx(1950.0));

    // limit 0 issues no request at all.
    CHECK(client.fetch_events(kPool, EventKind::Swap, 0, 0, meta).empty());

    // min_timestamp beyond the newest event: one empty page.
    page(9999, 3, {});
    CHECK(client.fetch_events(kPool, EventKind::Swap, 9999, 100, meta, 3).empty());
}

TEST_CASE("subgraph hourly tvl and graphql errors") {
    FakeTransport http;
    SubgraphClient client(http, kEndpoint);
    http.expect_post(kEndpoint, SubgraphClient::hourly_tvl_query_body(kPool, 0, 24),
                     R"({"data":{"poolHourDatas":[
                          {"periodStartUnix":"3600","tvlUSD":"410000.5"},
                          {"periodStartUnix":"7200","tvlUSD":"395000"}]}})");
    const auto points = client.fetch_hourly_tvl(kPool, 0, 24);
    REQUIRE(points.size() == 2);
    CHECK(points[0] == std::pair<std::int64_t, double>{3600, 410000.5});
    CHECK(points[1].second == 395000.0);

    http.expect_post(kEndpoint, SubgraphClient::hourly_tvl_query_body(kPool, 1, 24),
                     R"({"errors":[{"message":"boom"}]})");
    CHECK_THROWS_AS(client.fetch_hourly_tvl(kPool, 1, 24), NetworkError);
}

TEST_CASE("oracle client: prices, timestamps, per-block failures") {
    const std::string rpc = "http://rpc.test/";
    const std::string aggregator = "0x5f4ec3df9cbd43714fe2740f5e3616155c5b8419";
    FakeTransport http;
    OracleClient client(http, rpc, aggregator);

    auto expect_block = [&](std::int64_t block, std::uint64_t answer,
                            std::uint64_t block_ts) {
        http.expect_post(rpc, OracleClient::latest_answer_body(aggregator, block),
                         nlohmann::json{{"jsonrpc", "2.0"},
                                        {"id", 1},
                                        {"result", hex_quantity(answer, 64)}}
                             .dump());
        http.expect_post(rpc, OracleClient::block_by_number_body(block),
                         nlohmann::json{{"jsonrpc", "2.0"},
                                        {"id", 1},
                                        {"result",
                                         {{"number", hex_quantity(block)},
                                          {"timestamp", hex_quantity(block_ts)}}}}
                             .dump());
    };
    expect_block(19000000, 245000000000ull, 1700000000);  // 2450.0 USD
    expect_block(19000100, 246150000000ull, 1700001200);  // 2461.5 USD
    // A zero answer must be rejected as an invalid point.
    http.expect_post(rpc, OracleClient::latest_answer_body(aggregator, 19000200),
                     nlohmann::json{{"jsonrpc", "2.0"},
                                    {"id", 1},
                                    {"result", hex_quantity(0, 64)}}
                         .dump());
    // An RPC error for one block must not abort the batch.
    http.expect_post(rpc, OracleClient::latest_answer_body(aggregator, 19000300),
                     R"({"jsonrpc":"2.0","id":1,"error":{"code":-32000,"message":"pruned"}})");

    const std::vector<std::int64_t> blocks = {19000000, 19000100, 19000200, 19000300};
    const auto result = client.fetch_oracle_prices(blocks, 2);
    REQUIRE(result.points.size() == 2);
    CHECK(result.points[0].block_number == 19000000);
    CHECK(result.points[0].timestamp == 1700000000);
    CHECK(result.points[0].eth_usd == doctest::Approx(2450.0).epsilon(1e-12));
    CHECK(result.points[1].eth_usd == doctest::Approx(2461.5).epsilon(1e-12));
    REQUIRE(result.failures.size() == 2);
    CHECK(result.failures[0].block_number == 19000200);
    CHECK(result.failures[1].block_number == 19000300);

    CHECK(client.fetch_oracle_prices({}).points.empty());
}

TEST_CASE("record/replay round trip through the filesystem") {
    const fs::path dir =
        fs::temp_directory_path() / ("ammlab_fixture_test_" + std::to_string(::getpid()));
    fs::remove_all(dir);

    const HttpRequest request{"POST", "http://graph.test/q", R"({"query":"{ swaps }"})",
                              "application/json"};
    const HttpResponse response{200, R"({"data":{"swaps":[]}})"};
    {
        auto fake = std::make_unique<FakeTransport>();
        fake->expect(request, response);
        RecordingHttpTransport recorder(std::move(fake), dir.string());
        const HttpResponse out = recorder.send(request);
        CHECK(out.status == 200);
        CHECK(out.body == response.body);
    }
    {
        ReplayHttpTransport replay(dir.string());
        const HttpResponse out = replay.send(request);
        CHECK(out.status == 200);
        CHECK(out.body == response.body);

        HttpRequest other = request;
        other.body = R"({"query":"{ mints }"})";
        CHECK_THROWS_AS(replay.send(other), NetworkError);
    }
    CHECK_THROWS_AS(ReplayHttpTransport((dir / "missing").string()), NetworkError);
    fs::remove_all(dir);
}

TEST_CASE("request keys are stable and body-sensitive") {
    const HttpRequest a{"POST", "http://x/", "body", "application/json"};
    HttpRequest b = a;
    CHECK(request_key(a) == request_key(b));
    b.body = "other";
    CHECK(request_key(a) != request_key(b));
    b = a;
    b.url = "http://y/";
    CHECK(request_key(a) != request_key(b));
    CHECK(request_key(a).size() == 16);
}
