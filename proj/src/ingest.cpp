#include "ingest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "similarity.hpp"

namespace sgvq {

using nlohmann::json;

VideoCaptions captions_from_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed captions JSON");
    if (!j.is_object() || !j.contains("video_id") || !j["video_id"].is_string())
        throw ParseError("captions JSON missing string field 'video_id'");
    if (!j.contains("frames") || !j["frames"].is_array())
        throw ParseError("captions JSON missing array field 'frames'");

    VideoCaptions out;
    out.video_id = j["video_id"].get<std::string>();
    int prev_index = -1;
    double prev_ts = -1.0;
    for (const auto& jf : j["frames"]) {
        Frame f;
        if (!jf.contains("frame_index") || !jf["frame_index"].is_number_integer())
            throw ParseError("frame missing integer field 'frame_index'");
        f.frame_index = jf["frame_index"].get<int>();
        std::string where = "frame " + std::to_string(f.frame_index);
        if (f.frame_index < 0)
            throw ValidationError(where + ": 'frame_index' must be >= 0");
        if (f.frame_index <= prev_index)
            throw ValidationError(where + ": frame_index not strictly increasing");
        if (!jf.contains("timestamp_s") || !jf["timestamp_s"].is_number())
            throw ParseError(where + ": missing number field 'timestamp_s'");
        f.timestamp_s = jf["timestamp_s"].get<double>();
        if (f.timestamp_s < prev_ts)
            throw ValidationError(where + ": timestamp_s decreases");
        if (!jf.contains("captions") || !jf["captions"].is_array())
            throw ParseError(where + ": missing array field 'captions'");
        for (const auto& jc : jf["captions"]) {
            CaptionRecord rec;
            if (!jc.contains("text") || !jc["text"].is_string())
                throw ParseError(where + ": caption missing string field 'text'");
            rec.text = jc["text"].get<std::string>();
            if (!jc.contains("bbox") || !jc["bbox"].is_array() ||
                jc["bbox"].size() != 4)
                throw ParseError(where + ": caption 'bbox' must be [x,y,w,h]");
            rec.bbox = BoundingBox{jc["bbox"][0].get<double>(),
                                   jc["bbox"][1].get<double>(),
                                   jc["bbox"][2].get<double>(),
                                   jc["bbox"][3].get<double>()};
            validate_bbox(rec.bbox);
            if (!jc.contains("confidence") || !jc["confidence"].is_number())
                throw ParseError(where + ": caption missing number field 'confidence'");
            rec.confidence = jc["confidence"].get<double>();
            if (rec.confidence < 0.0 || rec.confidence > 1.0)
                throw ValidationError(where + ": confidence outside [0,1]");
            rec.frame_index = f.frame_index;
            rec.timestamp_s = f.timestamp_s;
            f.captions.push_back(std::move(rec));
        }
        prev_index = f.frame_index;
        prev_ts = f.timestamp_s;
        out.frames.push_back(std::move(f));
    }
    return out;
}

VideoCaptions load_captions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw NotFoundError("cannot open captions file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return captions_from_json(buf.str());
}

SceneGraph build_frame_graph(const Tagger& tagger, const Frame& frame,
                             double min_confidence, double iou_threshold) {
    SceneGraph g;
    g.frame_index = frame.frame_index;
    g.timestamp_s = frame.timestamp_s;
    for (const auto& rec : frame.captions) {
        if (rec.confidence < min_confidence) continue;
        ParseResult parsed = parse_caption(tagger, rec.text, rec.bbox);
        g.absorb(parsed.graph);
    }

    // merge same-label subjects in creation order, into the earliest node
    std::vector<int> subjects;
    for (const auto& [id, n] : g.nodes())
        if (n.kind == NodeKind::Subject) subjects.push_back(id);

    std::set<int> removed;
    for (size_t si = 0; si < subjects.size(); ++si) {
        int s = subjects[si];
        if (removed.count(s)) continue;
        for (size_t ki = 0; ki < si; ++ki) {
            int keep = subjects[ki];
            if (removed.count(keep)) continue;
            const Node& a = g.node(keep);
            const Node& b = g.node(s);
            if (a.label != b.label) continue;
            if (a.bbox && b.bbox && iou(*a.bbox, *b.bbox) < iou_threshold) continue;
            if (!a.bbox && b.bbox) g.set_bbox(keep, *b.bbox);
            g.redirect_edges(s, keep);
            g.remove_node(s);
            removed.insert(s);
            break;
        }
    }
    return g;
}

} // namespace sgvq
