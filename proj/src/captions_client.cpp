#include "captions_client.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

namespace sgvq {

using nlohmann::json;

CaptionsEndpoint resolve_endpoint(CaptionsEndpoint base) {
    if (base.url.empty()) {
        const char* env = std::getenv("SGVQ_CAPTIONS_URL");
        if (env) base.url = env;
    }
    if (base.api_key.empty()) {
        const char* env = std::getenv("SGVQ_CAPTIONS_KEY");
        if (env) base.api_key = env;
    }
    if (base.url.empty())
        throw ConfigError("captioning endpoint URL not configured "
                          "(--captions-endpoint or SGVQ_CAPTIONS_URL)");
    if (base.api_key.empty())
        throw ConfigError("captioning API key not configured (SGVQ_CAPTIONS_KEY)");
    return base;
}

std::vector<CaptionRecord> parse_captions_response(const std::string& body) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded())
        throw ParseError("unparseable captioning response");
    if (!j.is_object() || !j.contains("output") || !j["output"].is_object() ||
        !j["output"].contains("captions") || !j["output"]["captions"].is_array())
        throw ParseError("captioning response missing 'output.captions'");
    std::vector<CaptionRecord> out;
    for (const auto& jc : j["output"]["captions"]) {
        CaptionRecord rec;
        if (!jc.contains("caption") || !jc["caption"].is_string())
            throw ParseError("captioning response entry missing 'caption'");
        rec.text = jc["caption"].get<std::string>();
        if (!jc.contains("bounding_box") || !jc["bounding_box"].is_array() ||
            jc["bounding_box"].size() != 4)
            throw ParseError("captioning response entry missing 'bounding_box'");
        rec.bbox = BoundingBox{jc["bounding_box"][0].get<double>(),
                               jc["bounding_box"][1].get<double>(),
                               jc["bounding_box"][2].get<double>(),
                               jc["bounding_box"][3].get<double>()};
        rec.confidence = jc.value("confidence", 1.0);
        out.push_back(std::move(rec));
    }
    return out;
}

namespace {

// splits "http://host:port/path" into client base and path
std::pair<std::string, std::string> split_url(const std::string& url) {
    size_t scheme = url.find("://");
    size_t path_start = scheme == std::string::npos
                            ? url.find('/')
                            : url.find('/', scheme + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

} // namespace

std::vector<CaptionRecord> fetch_captions(const std::string& image_path,
                                          const CaptionsEndpoint& endpoint) {
    if (endpoint.url.empty() || endpoint.api_key.empty())
        throw ConfigError("captioning endpoint not resolved");

    std::ifstream in(image_path, std::ios::binary);
    if (!in) throw NotFoundError("cannot open image file: " + image_path);
    std::ostringstream buf;
    buf << in.rdbuf();

    auto [base, path] = split_url(endpoint.url);
    httplib::Client client(base);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);

    httplib::MultipartFormDataItems items = {
        {"image", buf.str(), "image", "application/octet-stream"},
    };
    httplib::Headers headers = {{"api-key", endpoint.api_key}};
    auto res = client.Post(path, headers, items);
    if (!res)
        throw NetworkError("captioning request failed: " +
                           httplib::to_string(res.error()));
    if (res->status == 401 || res->status == 403)
        throw AuthError("captioning endpoint rejected credentials (HTTP " +
                        std::to_string(res->status) + ")");
    if (res->status < 200 || res->status >= 300)
        throw NetworkError("captioning endpoint returned HTTP " +
                           std::to_string(res->status));
    return parse_captions_response(res->body);
}

} // namespace sgvq
