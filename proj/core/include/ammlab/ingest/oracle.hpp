#pragma once

#include "ammlab/ingest/transport.hpp"
#include "ammlab/ingest/types.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ammlab::ingest {

/// JSON-RPC client reading a price-feed aggregator's latest answer at
/// specific blocks (eth_call of latestAnswer(), selector 0x50d25bcd), plus
/// the block timestamp via eth_getBlockByNumber.
class OracleClient {
public:
    struct BlockFailure {
        std::int64_t block_number = 0;
        std::string message;
    };
    struct FetchResult {
        std::vector<OraclePoint> points;     ///< sorted by block number
        std::vector<BlockFailure> failures;  ///< per-block errors, batch continues
    };

    OracleClient(HttpTransport& http, std::string rpc_url, std::string aggregator,
                 int answer_decimals = 8);

    /// One point per requested block. Individual block failures are
    /// collected, not thrown. Requests run on up to `parallelism` threads.
    FetchResult fetch_oracle_prices(std::span<const std::int64_t> blocks,
                                    std::size_t parallelism = 4);

    // Exact request bodies for fixture tooling.
    static std::string latest_answer_body(const std::string& aggregator,
                                          std::int64_t block_number);
    static std::string block_by_number_body(std::int64_t block_number);

private:
    OraclePoint fetch_one(std::int64_t block_number);

    HttpTransport& http_;
    std::string rpc_url_;
    std::string aggregator_;
    int answer_decimals_;
};

/// Relative gap (amm - oracle) / oracle; oracle price must be positive.
double price_deviation(double amm_price, double oracle_price);

}  // namespace ammlab::ingest
