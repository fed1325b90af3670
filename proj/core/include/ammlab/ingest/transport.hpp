#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace ammlab::ingest {

struct HttpRequest {
    std::string method = "POST";
    std::string url;
    std::string body;
    std::string content_type = "application/json";
};

struct HttpResponse {
    int status = 0;
    std::string body;
};

/// Blocking HTTP transport. Implementations must be safe to call from
/// multiple threads.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpResponse send(const HttpRequest& request) = 0;
};

/// Stable fixture key: FNV-1a 64 over method, url and body, as 16 hex
/// digits.
std::string request_key(const HttpRequest& request);

/// Real network client (one connection per call). Applies the configured
/// timeout and retries a failed request once.
class LiveHttpTransport : public HttpTransport {
public:
    explicit LiveHttpTransport(int timeout_seconds = 15);
    HttpResponse send(const HttpRequest& request) override;

private:
    int timeout_seconds_;
};

/// Serves recorded request/response pairs from a fixture directory; any
/// request without a fixture raises NetworkError.
class ReplayHttpTransport : public HttpTransport {
public:
    explicit ReplayHttpTransport(std::string fixture_dir);
    HttpResponse send(const HttpRequest& request) override;

private:
    std::string dir_;
    std::map<std::string, HttpResponse> fixtures_;
};

/// Forwards to an inner transport and writes each exchange to the fixture
/// directory as <request_key>.json.
class RecordingHttpTransport : public HttpTransport {
public:
    RecordingHttpTransport(std::unique_ptr<HttpTransport> inner, std::string fixture_dir);
    HttpResponse send(const HttpRequest& request) override;

private:
    std::unique_ptr<HttpTransport> inner_;
    std::string dir_;
    std::mutex write_mutex_;
};

/// Writes one fixture file; used by the recorder and by fixture tooling.
void write_fixture(const std::string& fixture_dir, const HttpRequest& request,
                   const HttpResponse& response);

}  // namespace ammlab::ingest
