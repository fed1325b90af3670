#include "ammlab/ingest/oracle.hpp"

#include "ammlab/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace ammlab::ingest {

namespace {

std::string to_hex_quantity(std::int64_t value) {
    std::ostringstream out;
    out << "0x" << std::hex << value;
    return out.str();
}

nlohmann::json rpc_call(HttpTransport& http, const std::string& url,
                        const std::string& body) {
    HttpResponse response = http.send({"POST", url, body, "application/json"});
    if (response.status != 200)
        throw NetworkError("rpc returned HTTP " + std::to_string(response.status));
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(response.body);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("rpc response is not JSON: ") + e.what());
    }
    if (j.contains("error")) throw NetworkError("rpc error: " + j.at("error").dump());
    if (!j.contains("result")) throw ParseError("rpc response has no 'result'");
    return j.at("result");
}

BigInt parse_hex_quantity(const std::string& hex) {
    std::string s = hex;
    if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) s = s.substr(2);
    if (s.empty()) throw ParseError("empty hex quantity");
    try {
        return BigInt("0x" + s);
    } catch (...) {
        throw ParseError("invalid hex quantity: '" + hex + "'");
    }
}

}  // namespace

OracleClient::OracleClient(HttpTransport& http, std::string rpc_url,
                           std::string aggregator, int answer_decimals)
    : http_(http),
      rpc_url_(std::move(rpc_url)),
      aggregator_(std::move(aggregator)),
      answer_decimals_(answer_decimals) {}

std::string OracleClient::latest_answer_body(const std::string& aggregator,
                                             std::int64_t block_number) {
    nlohmann::json j = {
        {"jsonrpc", "2.0"},
        {"id", 1},
        {"method", "eth_call"},
        {"params",
         {{{"to", aggregator}, {"data", "0x50d25bcd"}}, to_hex_quantity(block_number)}}};
    return j.dump();
}

std::string OracleClient::block_by_number_body(std::int64_t block_number) {
    nlohmann::json j = {{"jsonrpc", "2.0"},
                        {"id", 1},
                        {"method", "eth_getBlockByNumber"},
                        {"params", {to_hex_quantity(block_number), false}}};
    return j.dump();
}

OraclePoint OracleClient::fetch_one(std::int64_t block_number) {
    const nlohmann::json answer =
        rpc_call(http_, rpc_url_, latest_answer_body(aggregator_, block_number));
    if (!answer.is_string()) throw ParseError("eth_call result is not a hex string");
    const BigInt raw = parse_hex_quantity(answer.get<std::string>());
    // int256 wire encoding: a set top bit would be a negative answer.
    if (raw == 0 || boost::multiprecision::bit_test(raw, 255))
        throw ValidationError("oracle answer is not a positive price");

    const nlohmann::json block =
        rpc_call(http_, rpc_url_, block_by_number_body(block_number));
    if (block.is_null()) throw NetworkError("block not found");

    OraclePoint point;
    point.block_number = block_number;
    point.timestamp =
        static_cast<std::int64_t>(parse_hex_quantity(block.at("timestamp").get<std::string>()));
    point.eth_usd =
        to_double(Rational(raw, pow10(static_cast<unsigned>(answer_decimals_))));
    return point;
}

OracleClient::FetchResult OracleClient::fetch_oracle_prices(
    std::span<const std::int64_t> blocks, std::size_t parallelism) {
    FetchResult result;
    if (blocks.empty()) return result;
    parallelism = std::max<std::size_t>(1, std::min(parallelism, blocks.size()));

    struct Slot {
        bool ok = false;
        OraclePoint point;
        std::string error;
    };
    std::vector<Slot> slots(blocks.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < blocks.size(); i = next.fetch_add(1)) {
            try {
                slots[i].point = fetch_one(blocks[i]);
                slots[i].ok = true;
            } catch (const std::exception& e) {
                slots[i].error = e.what();
            }
        }
    };

    if (parallelism == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(parallelism);
        for (std::size_t t = 0; t < parallelism; ++t) threads.emplace_back(worker);
        for (auto& thread : threads) thread.join();
    }

    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (slots[i].ok)
            result.points.push_back(slots[i].point);
        else
            result.failures.push_back({blocks[i], slots[i].error});
    }
    std::sort(result.points.begin(), result.points.end(),
              [](const OraclePoint& a, const OraclePoint& b) {
                  return a.block_number < b.block_number;
              });
    return result;
}

double price_deviation(double amm_price, double oracle_price) {
    if (!(oracle_price > 0.0))
        throw ValidationError("oracle price must be positive");
    return (amm_price - oracle_price) / oracle_price;
}

}  // namespace ammlab::ingest
