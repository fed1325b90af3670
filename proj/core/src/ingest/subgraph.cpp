#include "ammlab/ingest/subgraph.hpp"

#include "ammlab/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace ammlab::ingest {

namespace {

const char* entity_name(EventKind kind) {
    switch (kind) {
        case EventKind::Swap: return "swaps";
        case EventKind::Mint: return "mints";
        case EventKind::Burn: return "burns";
    }
    return "swaps";
}

nlohmann::json post_graphql(HttpTransport& http, const std::string& endpoint,
                            const std::string& body) {
    HttpResponse response = http.send({"POST", endpoint, body, "application/json"});
    if (response.status != 200)
        throw NetworkError("subgraph returned HTTP " + std::to_string(response.status));
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(response.body);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("subgraph response is not JSON: ") + e.what());
    }
    if (j.contains("errors"))
        throw NetworkError("subgraph query error: " + j.at("errors").dump());
    if (!j.contains("data"))
        throw ParseError("subgraph response has no 'data' field");
    return j.at("data");
}

std::int64_t int_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("event missing field '") + key + "'");
    const auto& v = j.at(key);
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_string()) {
        try {
            return std::stoll(v.get<std::string>());
        } catch (...) {
            throw ParseError(std::string("field '") + key + "' is not an integer: '" +
                             v.get<std::string>() + "'");
        }
    }
    throw ParseError(std::string("field '") + key + "' has unexpected type");
}

double double_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    const auto& v = j.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        try {
            return std::stod(v.get<std::string>());
        } catch (...) {
            throw ParseError(std::string("field '") + key + "' is not a number: '" +
                             v.get<std::string>() + "'");
        }
    }
    throw ParseError(std::string("field '") + key + "' has unexpected type");
}

BigInt raw_amount_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("event missing field '") + key + "'");
    const auto& v = j.at(key);
    std::string text = v.is_string() ? v.get<std::string>() : v.dump();
    try {
        return BigInt(text);
    } catch (...) {
        throw ParseError(std::string("field '") + key + "' is not a raw integer amount: '" +
                         text + "'");
    }
}

}  // namespace

std::string to_string(EventKind kind) {
    switch (kind) {
        case EventKind::Swap: return "swap";
        case EventKind::Mint: return "mint";
        case EventKind::Burn: return "burn";
    }
    return "swap";
}

Rational adjust_decimals(const BigInt& raw, int decimals) {
    if (decimals < 0 || decimals > 36)
        throw ValidationError("token decimals must lie in [0, 36]");
    return Rational(raw, pow10(static_cast<unsigned>(decimals)));
}

BigInt raw_from_adjusted(const Rational& adjusted, int decimals) {
    if (decimals < 0 || decimals > 36)
        throw ValidationError("token decimals must lie in [0, 36]");
    const Rational scaled = adjusted * Rational(pow10(static_cast<unsigned>(decimals)));
    if (denominator(scaled) != 1)
        throw ValidationError("amount is not representable in raw units at " +
                              std::to_string(decimals) + " decimals");
    return numerator(scaled);
}

SubgraphClient::SubgraphClient(HttpTransport& http, std::string endpoint)
    : http_(http), endpoint_(std::move(endpoint)) {}

std::string SubgraphClient::metadata_query_body(const std::string& pool_id) {
    std::ostringstream q;
    q << "{ pool(id: \"" << pool_id << "\") { id feeTier totalValueLockedUSD "
      << "token0 { decimals } token1 { decimals } } }";
    return nlohmann::json{{"query", q.str()}}.dump();
}

std::string SubgraphClient::events_query_body(const std::string& pool_id, EventKind kind,
                                              std::int64_t min_timestamp,
                                              std::size_t first) {
    std::ostringstream q;
    q << "{ " << entity_name(kind) << "(first: " << first
      << ", orderBy: timestamp, orderDirection: asc, where: {pool: \"" << pool_id
      << "\", timestamp_gte: " << min_timestamp
      << "}) { id timestamp amount0 amount1 amountUSD } }";
    return nlohmann::json{{"query", q.str()}}.dump();
}

std::string SubgraphClient::hourly_tvl_query_body(const std::string& pool_id,
                                                  std::int64_t min_timestamp,
                                                  std::size_t first) {
    std::ostringstream q;
    q << "{ poolHourDatas(first: " << first
      << ", orderBy: periodStartUnix, orderDirection: asc, where: {pool: \"" << pool_id
      << "\", periodStartUnix_gte: " << min_timestamp
      << "}) { periodStartUnix tvlUSD } }";
    return nlohmann::json{{"query", q.str()}}.dump();
}

PoolMetadata SubgraphClient::fetch_pool_metadata(const std::string& pool_id) {
    const nlohmann::json data =
        post_graphql(http_, endpoint_, metadata_query_body(pool_id));
    if (!data.contains("pool") || data.at("pool").is_null())
        throw NetworkError("unknown pool: " + pool_id);
    const auto& pool = data.at("pool");

    PoolMetadata meta;
    meta.pool_id = pool.value("id", pool_id);
    meta.token0_decimals = static_cast<int>(int_field(pool.at("token0"), "decimals"));
    meta.token1_decimals = static_cast<int>(int_field(pool.at("token1"), "decimals"));
    meta.fee_tier_ppm = static_cast<int>(int_field(pool, "feeTier"));
    meta.tvl_usd = double_field(pool, "totalValueLockedUSD");
    if (meta.token0_decimals < 0 || meta.token0_decimals > 36 ||
        meta.token1_decimals < 0 || meta.token1_decimals > 36)
        throw ParseError("pool metadata has token decimals outside [0, 36]");
    return meta;
}

std::vector<PoolEvent> SubgraphClient::fetch_events(const std::string& pool_id,
                                                    EventKind kind,
                                                    std::int64_t min_timestamp,
                                                    std::size_t limit,
                                                    const PoolMetadata& metadata,
                                                    std::size_t page_size) {
    page_size = std::min<std::size_t>(page_size == 0 ? 1000 : page_size, 1000);

    std::vector<PoolEvent> events;
    std::set<std::string> seen_ids;
    std::int64_t cursor = min_timestamp;

    while (events.size() < limit) {
        const std::size_t first = std::min(page_size, limit - events.size());
        const nlohmann::json data = post_graphql(
            http_, endpoint_, events_query_body(pool_id, kind, cursor, first));
        const auto& rows = data.at(entity_name(kind));
        if (!rows.is_array())
            throw ParseError(std::string("subgraph '") + entity_name(kind) +
                             "' field is not an array");

        std::size_t fresh = 0;
        for (const auto& row : rows) {
            PoolEvent event;
            event.kind = kind;
            event.tx_id = row.at("id").get<std::string>();
            if (!seen_ids.insert(event.tx_id).second) continue;  // page-joint overlap
            event.timestamp = int_field(row, "timestamp");
            event.amount0 = adjust_decimals(raw_amount_field(row, "amount0"),
                                            metadata.token0_decimals);
            event.amount1 = adjust_decimals(raw_amount_field(row, "amount1"),
                                            metadata.token1_decimals);
            event.amount_usd = double_field(row, "amountUSD");
            // Pool price derived from the event's own legs when both moved.
            if (event.amount0 != 0 && event.amount1 != 0) {
                Rational ratio = event.amount1 / event.amount0;
                if (ratio < 0) ratio = -ratio;
                event.price = to_double(ratio);
            }
            events.push_back(std::move(event));
            ++fresh;
        }

        if (rows.size() < first) break;              // final short page
        if (fresh == 0) break;                       // no progress; stop rather than loop
        cursor = events.back().timestamp;            // gte cursor + dedup keeps ties
    }

    std::stable_sort(events.begin(), events.end(),
                     [](const PoolEvent& a, const PoolEvent& b) {
                         return a.timestamp != b.timestamp ? a.timestamp < b.timestamp
                                                           : a.tx_id < b.tx_id;
                     });
    return events;
}

std::vector<std::pair<std::int64_t, double>> SubgraphClient::fetch_hourly_tvl(
    const std::string& pool_id, std::int64_t min_timestamp, std::size_t limit) {
    const nlohmann::json data = post_graphql(
        http_, endpoint_,
        hourly_tvl_query_body(pool_id, min_timestamp, std::min<std::size_t>(limit, 1000)));
    std::vector<std::pair<std::int64_t, double>> points;
    for (const auto& row : data.at("poolHourDatas"))
        points.emplace_back(int_field(row, "periodStartUnix"), double_field(row, "tvlUSD"));
    std::sort(points.begin(), points.end());
    return points;
}

}  // namespace ammlab::ingest
