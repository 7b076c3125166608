#pragma once

#include <string>
#include <vector>

#include "caption_parser.hpp"
#include "graph.hpp"

namespace sgvq {

struct CaptionRecord {
    std::string text;
    BoundingBox bbox;
    double confidence = 1.0;
    int frame_index = 0;
    double timestamp_s = 0.0;
};

struct Frame {
    int frame_index = 0;
    double timestamp_s = 0.0;
    std::vector<CaptionRecord> captions;
};

struct VideoCaptions {
    std::string video_id;
    std::vector<Frame> frames;
};

// Captions JSON: {"video_id":str,"frames":[{"frame_index":int,
//   "timestamp_s":float,"captions":[{"text":str,"bbox":[x,y,w,h],
//   "confidence":float}]}]}
VideoCaptions captions_from_json(const std::string& text);
VideoCaptions load_captions(const std::string& path);

// Parses each caption above min_confidence, unions the fragments, then
// merges same-label subjects whose boxes overlap at IoU >= iou_threshold
// (subjects without a box merge into a same-label peer unconditionally).
// Merging runs in caption order, into the earliest-created node.
SceneGraph build_frame_graph(const Tagger& tagger, const Frame& frame,
                             double min_confidence = 0.0,
                             double iou_threshold = 0.5);

} // namespace sgvq
