#include "json_io.hpp"

#include <json.hpp>

namespace sgvq {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const char* where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) { known = true; break; }
        if (!known)
            throw ParseError(std::string("unknown field '") + it.key() + "' in " + where);
    }
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON");
    return j;
}

ordered_json graph_body(const SceneGraph& g) {
    ordered_json out;
    out["frame_index"] = g.frame_index;
    out["timestamp_s"] = g.timestamp_s;
    out["nodes"] = ordered_json::array();
    for (const auto& [id, n] : g.nodes()) {
        ordered_json jn;
        jn["id"] = n.id;
        jn["kind"] = kind_name(n.kind);
        jn["label"] = n.label;
        if (n.bbox)
            jn["bbox"] = {n.bbox->x, n.bbox->y, n.bbox->w, n.bbox->h};
        out["nodes"].push_back(std::move(jn));
    }
    out["edges"] = ordered_json::array();
    for (const auto& [key, ts] : g.edges()) {
        ordered_json je;
        je["src"] = key.first;
        je["dst"] = key.second;
        if (!ts.empty()) je["t"] = ts;
        out["edges"].push_back(std::move(je));
    }
    return out;
}

// Parses the graph body, returning the file-id -> graph-id remap so that
// aggregate node_types can be translated as well.
SceneGraph graph_from(const json& j, std::map<int, int>& remap,
                      std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ParseError("graph JSON must be an object");
    reject_unknown(j, allowed, "graph");
    SceneGraph g;
    if (!j.contains("frame_index") || !j["frame_index"].is_number_integer())
        throw ParseError("missing or invalid field 'frame_index'");
    g.frame_index = j["frame_index"].get<int>();
    if (g.frame_index < 0) throw ParseError("'frame_index' must be >= 0");
    if (!j.contains("timestamp_s") || !j["timestamp_s"].is_number())
        throw ParseError("missing or invalid field 'timestamp_s'");
    g.timestamp_s = j["timestamp_s"].get<double>();
    if (!j.contains("nodes") || !j["nodes"].is_array())
        throw ParseError("missing or invalid field 'nodes'");
    if (!j.contains("edges") || !j["edges"].is_array())
        throw ParseError("missing or invalid field 'edges'");

    for (const auto& jn : j["nodes"]) {
        reject_unknown(jn, {"id", "kind", "label", "bbox"}, "node");
        if (!jn.contains("id") || !jn["id"].is_number_integer())
            throw ParseError("node missing integer field 'id'");
        if (!jn.contains("kind") || !jn["kind"].is_string())
            throw ParseError("node missing string field 'kind'");
        if (!jn.contains("label") || !jn["label"].is_string())
            throw ParseError("node missing string field 'label'");
        int file_id = jn["id"].get<int>();
        if (remap.count(file_id))
            throw ParseError("duplicate node id " + std::to_string(file_id));
        std::optional<BoundingBox> bbox;
        if (jn.contains("bbox")) {
            const auto& b = jn["bbox"];
            if (!b.is_array() || b.size() != 4)
                throw ParseError("'bbox' must be [x,y,w,h]");
            bbox = BoundingBox{b[0].get<double>(), b[1].get<double>(),
                               b[2].get<double>(), b[3].get<double>()};
        }
        try {
            remap[file_id] = g.add_node(kind_from_name(jn["kind"].get<std::string>()),
                                        jn["label"].get<std::string>(), bbox);
        } catch (const ValidationError& e) {
            throw ParseError(std::string("node ") + std::to_string(file_id) + ": " +
                             e.what());
        }
    }
    for (const auto& je : j["edges"]) {
        reject_unknown(je, {"src", "dst", "t"}, "edge");
        if (!je.contains("src") || !je["src"].is_number_integer() ||
            !je.contains("dst") || !je["dst"].is_number_integer())
            throw ParseError("edge missing integer fields 'src'/'dst'");
        int src = je["src"].get<int>();
        int dst = je["dst"].get<int>();
        if (!remap.count(src))
            throw ParseError("edge field 'src' references missing node id " +
                             std::to_string(src));
        if (!remap.count(dst))
            throw ParseError("edge field 'dst' references missing node id " +
                             std::to_string(dst));
        std::vector<double> ts;
        if (je.contains("t")) {
            if (!je["t"].is_array()) throw ParseError("'t' must be an array");
            ts = je["t"].get<std::vector<double>>();
            for (size_t i = 1; i < ts.size(); ++i)
                if (ts[i] <= ts[i - 1])
                    throw ParseError("'t' must be strictly increasing");
        }
        try {
            if (ts.empty()) {
                g.add_edge(remap.at(src), remap.at(dst));
            } else {
                for (double t : ts) g.add_edge(remap.at(src), remap.at(dst), t);
            }
        } catch (const Error& e) {
            throw ParseError(std::string("edge ") + std::to_string(src) + "->" +
                             std::to_string(dst) + ": " + e.what());
        }
    }
    return g;
}

} // namespace

std::string graph_to_json(const SceneGraph& g) {
    return graph_body(g).dump(2);
}

SceneGraph graph_from_json(const std::string& text) {
    std::map<int, int> remap;
    return graph_from(parse(text), remap,
                      {"frame_index", "timestamp_s", "nodes", "edges"});
}

std::string aggregate_to_json(const AggregatedGraph& g) {
    ordered_json out = graph_body(g.graph);
    out["node_types"] = ordered_json::object();
    for (const auto& [id, label] : g.node_types)
        out["node_types"][std::to_string(id)] = label;
    out["attr_vocab"] = g.attr_vocab.labels();
    out["rel_vocab"] = g.rel_vocab.labels();
    return out.dump(2);
}

AggregatedGraph aggregate_from_json(const std::string& text) {
    json j = parse(text);
    std::map<int, int> remap;
    AggregatedGraph agg;
    agg.graph = graph_from(j, remap,
                           {"frame_index", "timestamp_s", "nodes", "edges",
                            "node_types", "attr_vocab", "rel_vocab"});
    if (!j.contains("node_types") || !j["node_types"].is_object())
        throw ParseError("missing or invalid field 'node_types'");
    for (auto it = j["node_types"].begin(); it != j["node_types"].end(); ++it) {
        int file_id;
        try {
            file_id = std::stoi(it.key());
        } catch (...) {
            throw ParseError("'node_types' key is not an integer id: " + it.key());
        }
        if (!remap.count(file_id))
            throw ParseError("'node_types' references missing node id " + it.key());
        agg.node_types[remap.at(file_id)] = it.value().get<std::string>();
    }
    for (const auto& [id, n] : agg.graph.nodes()) {
        if (n.kind == NodeKind::Subject && !agg.node_types.count(id))
            throw ParseError("'node_types' missing entry for subject node");
    }
    agg.rebuild_vocabs();
    if (j.contains("attr_vocab")) {
        auto v = j["attr_vocab"].get<std::vector<std::string>>();
        if (v != agg.attr_vocab.labels())
            throw ParseError("'attr_vocab' inconsistent with graph attributes");
    }
    if (j.contains("rel_vocab")) {
        auto v = j["rel_vocab"].get<std::vector<std::string>>();
        if (v != agg.rel_vocab.labels())
            throw ParseError("'rel_vocab' inconsistent with graph relationships");
    }
    return agg;
}

} // namespace sgvq
