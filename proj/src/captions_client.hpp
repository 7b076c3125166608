#pragma once

#include <string>
#include <vector>

#include "ingest.hpp"

namespace sgvq {

struct CaptionsEndpoint {
    std::string url;     // e.g. http://host:port/densecap
    std::string api_key; // sent as "api-key" header
};

// Reads endpoint/key from SGVQ_CAPTIONS_URL / SGVQ_CAPTIONS_KEY unless
// already set; throws ConfigError when either is still missing.
CaptionsEndpoint resolve_endpoint(CaptionsEndpoint base);

// One multipart image upload per call. Expected response body:
// {"output":{"captions":[{"caption":str,"bounding_box":[x,y,w,h],
//   "confidence":float}]}}
std::vector<CaptionRecord> fetch_captions(const std::string& image_path,
                                          const CaptionsEndpoint& endpoint);

// Response mapping, exposed for tests.
std::vector<CaptionRecord> parse_captions_response(const std::string& body);

} // namespace sgvq
