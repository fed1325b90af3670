#include "ammlab/ingest/transport.hpp"

#include "ammlab/errors.hpp"

#define CPPHTTPLIB_NO_EXCEPTIONS
#include <httplib.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>

namespace ammlab::ingest {

namespace fs = std::filesystem;

std::string request_key(const HttpRequest& request) {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= '\n';
        h *= 1099511628211ull;
    };
    mix(request.method);
    mix(request.url);
    mix(request.body);

    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

LiveHttpTransport::LiveHttpTransport(int timeout_seconds)
    : timeout_seconds_(timeout_seconds) {}

HttpResponse LiveHttpTransport::send(const HttpRequest& request) {
    // Split scheme://host[:port] from the path.
    const auto scheme_end = request.url.find("://");
    if (scheme_end == std::string::npos)
        throw NetworkError("malformed url: " + request.url);
    const auto path_start = request.url.find('/', scheme_end + 3);
    const std::string origin =
        path_start == std::string::npos ? request.url : request.url.substr(0, path_start);
    const std::string path =
        path_start == std::string::npos ? "/" : request.url.substr(path_start);

    std::string last_error;
    for (int attempt = 0; attempt < 2; ++attempt) {
        httplib::Client client(origin);
        client.set_connection_timeout(timeout_seconds_, 0);
        client.set_read_timeout(timeout_seconds_, 0);
        client.set_write_timeout(timeout_seconds_, 0);

        httplib::Result result =
            request.method == "GET"
                ? client.Get(path)
                : client.Post(path, request.body, request.content_type);
        if (result) return {result->status, result->body};
        last_error = httplib::to_string(result.error());
    }
    throw NetworkError("request to " + request.url + " failed: " + last_error);
}

ReplayHttpTransport::ReplayHttpTransport(std::string fixture_dir)
    : dir_(std::move(fixture_dir)) {
    if (!fs::is_directory(dir_))
        throw NetworkError("fixture directory does not exist: " + dir_);
    for (const auto& entry : fs::directory_iterator(dir_)) {
        if (entry.path().extension() != ".json") continue;
        std::ifstream in(entry.path());
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("bad fixture " + entry.path().string() + ": " + e.what());
        }
        HttpRequest req;
        req.method = j.at("request").value("method", "POST");
        req.url = j.at("request").at("url").get<std::string>();
        req.body = j.at("request").value("body", "");
        HttpResponse resp;
        resp.status = j.at("response").at("status").get<int>();
        resp.body = j.at("response").at("body").get<std::string>();
        fixtures_[request_key(req)] = std::move(resp);
    }
}

HttpResponse ReplayHttpTransport::send(const HttpRequest& request) {
    const auto it = fixtures_.find(request_key(request));
    if (it == fixtures_.end())
        throw NetworkError("no fixture " + request_key(request) + " in " + dir_ +
                           " for request to " + request.url);
    return it->second;
}

void write_fixture(const std::string& fixture_dir, const HttpRequest& request,
                   const HttpResponse& response) {
    fs::create_directories(fixture_dir);
    nlohmann::json j;
    j["request"] = {{"method", request.method},
                    {"url", request.url},
                    {"body", request.body}};
    j["response"] = {{"status", response.status}, {"body", response.body}};
    const fs::path path = fs::path(fixture_dir) / (request_key(request) + ".json");
    std::ofstream out(path);
    if (!out) throw NetworkError("cannot write fixture: " + path.string());
    out << j.dump(2) << '\n';
}

RecordingHttpTransport::RecordingHttpTransport(std::unique_ptr<HttpTransport> inner,
                                               std::string fixture_dir)
    : inner_(std::move(inner)), dir_(std::move(fixture_dir)) {}

HttpResponse RecordingHttpTransport::send(const HttpRequest& request) {
    HttpResponse response = inner_->send(request);
    std::lock_guard lock(write_mutex_);
    write_fixture(dir_, request, response);
    return response;
}

}  // namespace ammlab::ingest
