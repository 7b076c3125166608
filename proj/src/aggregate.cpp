#include "aggregate.hpp"

#include <algorithm>
#include <sstream>

namespace sgvq {

void validate_params(const AggregationParams& p) {
    if (p.m < 1) throw ValidationError("aggregation lookback m must be >= 1");
    if (p.threshold < 0) throw ValidationError("merge threshold must be >= 0");
}

KeyframeSelection select_keyframes(const SimilaritySeries& series,
                                   const KeyframeParams& params) {
    KeyframeSelection sel;
    std::set<size_t> frames = {0};
    if (params.mode == KeyframeParams::Mode::ByCount) {
        if (params.k < 1) throw ValidationError("keyframe count k must be >= 1");
        size_t boundaries = series.scores.size();
        size_t k = params.k;
        if (k > boundaries) {
            sel.truncated = true;
            k = boundaries;
            for (size_t i = 0; i < boundaries + 1; ++i) frames.insert(i);
        } else {
            // largest drop first, earliest boundary on ties
            std::vector<size_t> order(boundaries);
            for (size_t i = 0; i < boundaries; ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
                return series.scores[a] < series.scores[b];
            });
            for (size_t i = 0; i < k; ++i) frames.insert(order[i] + 1);
        }
    } else {
        if (params.theta < 0 || params.theta > 1)
            throw ValidationError("keyframe threshold theta must be in [0,1]");
        for (size_t i = 0; i < series.scores.size(); ++i)
            if (series.scores[i] <= params.theta) frames.insert(i + 1);
    }
    sel.frames.assign(frames.begin(), frames.end());
    return sel;
}

namespace {

struct Aggregator {
    AggregatedGraph agg;
    std::map<std::string, int> rel_by_label;
    std::map<std::string, int> attr_by_label;

    struct SubjectInfo {
        int id;
        std::string cls;
        size_t created_pos;
        size_t last_pos;
    };
    std::vector<SubjectInfo> subjects;

    int attr_node(const std::string& label) {
        auto it = attr_by_label.find(label);
        if (it != attr_by_label.end()) return it->second;
        int id = agg.graph.add_node(NodeKind::Attribute, label);
        attr_by_label[label] = id;
        return id;
    }

    int rel_node(const std::string& label) {
        auto it = rel_by_label.find(label);
        if (it != rel_by_label.end()) return it->second;
        int id = agg.graph.add_node(NodeKind::Relationship, label);
        rel_by_label[label] = id;
        return id;
    }

    int new_subject(const std::string& label, size_t pos) {
        int id = agg.graph.add_node(NodeKind::Subject, label);
        agg.node_types[id] = label;
        subjects.push_back({id, label, pos, pos});
        return id;
    }

    SubjectInfo* find_candidate(const std::string& cls,
                                const std::set<std::string>& attrs, size_t pos,
                                size_t m, double threshold) {
        SubjectInfo* best = nullptr;
        double best_sim = -1;
        for (auto& info : subjects) {
            if (info.cls != cls) continue;
            if (info.created_pos >= pos) continue; // same-frame nodes never merge
            if (pos > m && info.last_pos < pos - m) continue;
            double sim = node_sim(attrs, agg.graph.attr_set(info.id));
            bool better = sim > best_sim ||
                          (sim == best_sim && best &&
                           std::tie(info.last_pos, info.id) >
                               std::tie(best->last_pos, best->id));
            if (better) {
                best = &info;
                best_sim = sim;
            }
        }
        if (best && best_sim >= threshold) return best;
        return nullptr;
    }

    void fold(const SceneGraph& frame, size_t pos, const AggregationParams& params,
              bool collapse_all) {
        double ts = frame.timestamp_s;
        std::map<int, int> subject_map; // frame id -> aggregate id
        for (const auto& [id, n] : frame.nodes()) {
            if (n.kind != NodeKind::Subject) continue;
            if (collapse_all) {
                // bag-of-nodes: one node per class label
                auto it = std::find_if(subjects.begin(), subjects.end(),
                                       [&](const SubjectInfo& s) {
                                           return s.cls == n.label;
                                       });
                if (it != subjects.end()) {
                    it->last_pos = pos;
                    subject_map[id] = it->id;
                } else {
                    subject_map[id] = new_subject(n.label, pos);
                }
                continue;
            }
            auto attrs = frame.attr_set(id);
            SubjectInfo* cand =
                find_candidate(n.label, attrs, pos, params.m, params.threshold);
            if (cand) {
                cand->last_pos = pos;
                subject_map[id] = cand->id;
            } else {
                subject_map[id] = new_subject(n.label, pos);
            }
        }
        for (const auto& [key, unused] : frame.edges()) {
            const Node& src = frame.node(key.first);
            const Node& dst = frame.node(key.second);
            if (src.kind == NodeKind::Subject && dst.kind == NodeKind::Attribute) {
                agg.graph.add_edge(subject_map.at(src.id), attr_node(dst.label), ts);
            } else if (src.kind == NodeKind::Subject &&
                       dst.kind == NodeKind::Relationship) {
                agg.graph.add_edge(subject_map.at(src.id), rel_node(dst.label), ts);
            } else {
                agg.graph.add_edge(rel_node(src.label), subject_map.at(dst.id), ts);
            }
        }
    }
};

} // namespace

AggregatedGraph aggregate_nodesim(const std::vector<SceneGraph>& frames,
                                  const AggregationParams& params) {
    validate_params(params);
    Aggregator a;
    for (size_t pos = 0; pos < frames.size(); ++pos)
        a.fold(frames[pos], pos, params, false);
    a.agg.rebuild_vocabs();
    if (!frames.empty()) {
        a.agg.graph.frame_index = frames.front().frame_index;
        a.agg.graph.timestamp_s = frames.front().timestamp_s;
    }
    return std::move(a.agg);
}

AggregatedGraph aggregate_bag_of_nodes(const std::vector<SceneGraph>& frames) {
    Aggregator a;
    AggregationParams dummy;
    for (size_t pos = 0; pos < frames.size(); ++pos)
        a.fold(frames[pos], pos, dummy, true);
    a.agg.rebuild_vocabs();
    if (!frames.empty()) {
        a.agg.graph.frame_index = frames.front().frame_index;
        a.agg.graph.timestamp_s = frames.front().timestamp_s;
    }
    return std::move(a.agg);
}

AggregatedGraph aggregate_keyframes(const std::vector<SceneGraph>& frames,
                                    const SimilaritySeries& series,
                                    const KeyframeParams& kf_params,
                                    const AggregationParams& agg_params) {
    if (!frames.empty() && series.scores.size() + 1 != frames.size())
        throw ValidationError("similarity series does not match frame count");
    KeyframeSelection sel = select_keyframes(series, kf_params);
    std::vector<SceneGraph> selected;
    for (size_t pos : sel.frames)
        if (pos < frames.size()) selected.push_back(frames[pos]);
    return aggregate_nodesim(selected, agg_params);
}

SceneGraph bag_projection(const AggregatedGraph& agg) {
    SceneGraph out;
    out.frame_index = agg.graph.frame_index;
    out.timestamp_s = agg.graph.timestamp_s;
    std::map<NodeKey, int> by_key;
    for (const auto& [id, n] : agg.graph.nodes()) {
        NodeKey key{n.kind, n.label};
        if (!by_key.count(key)) by_key[key] = out.add_node(n.kind, n.label);
    }
    for (const auto& [key, ts] : agg.graph.edges()) {
        const Node& s = agg.graph.node(key.first);
        const Node& d = agg.graph.node(key.second);
        int src = by_key.at({s.kind, s.label});
        int dst = by_key.at({d.kind, d.label});
        if (src == dst) continue;
        if (ts.empty()) {
            out.add_edge(src, dst);
        } else {
            for (double t : ts) out.add_edge(src, dst, t);
        }
    }
    return out;
}

VideoSimMatrix video_sim_matrix(const std::vector<AggregatedGraph>& aggregates,
                                const std::vector<std::string>& video_ids,
                                SimilarityMeasure measure, const McsBudget& budget) {
    if (aggregates.empty())
        throw ValidationError("video similarity matrix needs at least one video");
    if (video_ids.size() != aggregates.size())
        throw ValidationError("video id count does not match aggregate count");
    size_t n = aggregates.size();
    VideoSimMatrix m;
    m.video_ids = video_ids;
    m.scores.assign(n, std::vector<double>(n, 1.0));
    m.fallback.assign(n, std::vector<uint8_t>(n, 0));

    std::vector<SceneGraph> proj;
    proj.reserve(n);
    for (const auto& a : aggregates) proj.push_back(bag_projection(a));

    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            double score;
            uint8_t fb = 0;
            if (measure == SimilarityMeasure::Spectral) {
                score = spectral_sim(proj[i], proj[j]);
            } else {
                try {
                    score = mcs_sim(proj[i], proj[j], budget);
                } catch (const ResourceError&) {
                    score = spectral_sim(proj[i], proj[j]);
                    fb = 1;
                }
            }
            m.scores[i][j] = m.scores[j][i] = score;
            m.fallback[i][j] = m.fallback[j][i] = fb;
        }
    }
    return m;
}

std::string matrix_to_csv(const VideoSimMatrix& m) {
    std::ostringstream os;
    os << "video_id";
    for (const auto& id : m.video_ids) os << "," << id;
    os << "\n";
    for (size_t i = 0; i < m.video_ids.size(); ++i) {
        os << m.video_ids[i];
        for (size_t j = 0; j < m.video_ids.size(); ++j) os << "," << m.scores[i][j];
        os << "\n";
    }
    return os.str();
}

} // namespace sgvq
