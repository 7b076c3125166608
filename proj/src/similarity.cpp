#include "similarity.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

namespace sgvq {

SimilarityMeasure measure_from_name(const std::string& name) {
    if (name == "spectral") return SimilarityMeasure::Spectral;
    if (name == "mcs") return SimilarityMeasure::Mcs;
    throw ValidationError("unknown similarity measure: '" + name + "'");
}

const char* measure_name(SimilarityMeasure m) {
    return m == SimilarityMeasure::Spectral ? "spectral" : "mcs";
}

namespace {

// Embeds a graph's adjacency into the given union key order.
std::vector<std::vector<uint8_t>> embed(const SceneGraph& g,
                                        const std::map<NodeKey, size_t>& pos) {
    std::vector<std::vector<uint8_t>> m(pos.size(),
                                        std::vector<uint8_t>(pos.size(), 0));
    for (const auto& [key, ts] : g.edges()) {
        const Node& s = g.node(key.first);
        const Node& d = g.node(key.second);
        m[pos.at({s.kind, s.label})][pos.at({d.kind, d.label})] = 1;
    }
    return m;
}

} // namespace

double spectral_sim(const SceneGraph& g1, const SceneGraph& g2) {
    std::set<NodeKey> keys = g1.node_keys();
    auto k2 = g2.node_keys();
    keys.insert(k2.begin(), k2.end());
    if (keys.empty()) return 1.0;

    std::map<NodeKey, size_t> pos;
    size_t i = 0;
    for (const auto& k : keys) pos[k] = i++;
    auto a = embed(g1, pos);
    auto b = embed(g2, pos);

    double sq = 0;
    size_t n = keys.size();
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) {
            double d = double(a[r][c]) - double(b[r][c]);
            sq += d * d;
        }
    double score = 1.0 - std::sqrt(sq) / double(n);
    return std::clamp(score, 0.0, 1.0);
}

namespace {

struct McsSearch {
    struct NodeRef {
        int id;
        NodeKey key;
    };

    std::vector<NodeRef> left, right;
    std::set<std::pair<size_t, size_t>> left_edges, right_edges;
    std::chrono::steady_clock::time_point deadline;

    std::vector<int> assign;       // left idx -> right idx or -1
    std::vector<bool> used_right;
    size_t cur_edges = 0;

    size_t best_nodes = 0;
    size_t best_edges = 0;
    std::vector<std::pair<NodeKey, NodeKey>> best_edge_list;
    std::vector<int> best_assign;

    // max matching size is fixed per (kind,label) class
    size_t max_matchable = 0;

    static std::vector<NodeRef> canonical_nodes(const SceneGraph& g) {
        std::vector<NodeRef> out;
        for (const auto& [id, n] : g.nodes()) out.push_back({id, {n.kind, n.label}});
        std::sort(out.begin(), out.end(), [](const NodeRef& a, const NodeRef& b) {
            return std::tie(a.key, a.id) < std::tie(b.key, b.id);
        });
        return out;
    }

    static std::set<std::pair<size_t, size_t>> index_edges(
        const SceneGraph& g, const std::vector<NodeRef>& order) {
        std::map<int, size_t> pos;
        for (size_t i = 0; i < order.size(); ++i) pos[order[i].id] = i;
        std::set<std::pair<size_t, size_t>> out;
        for (const auto& [key, ts] : g.edges())
            out.insert({pos.at(key.first), pos.at(key.second)});
        return out;
    }

    void run(const SceneGraph& g1, const SceneGraph& g2, const McsBudget& budget) {
        if (g1.node_count() > budget.max_nodes || g2.node_count() > budget.max_nodes)
            throw ResourceError("graph exceeds MCS node budget");
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::milliseconds(budget.time_limit_ms);

        left = canonical_nodes(g1);
        right = canonical_nodes(g2);
        left_edges = index_edges(g1, left);
        right_edges = index_edges(g2, right);

        std::map<NodeKey, size_t> c1, c2;
        for (const auto& n : left) c1[n.key]++;
        for (const auto& n : right) c2[n.key]++;
        for (const auto& [k, c] : c1) {
            auto it = c2.find(k);
            if (it != c2.end()) max_matchable += std::min(c, it->second);
        }

        assign.assign(left.size(), -1);
        used_right.assign(right.size(), false);
        extend(0, 0);
    }

    void record_if_better(size_t nodes) {
        auto edge_list = current_edge_list();
        bool better;
        if (nodes != best_nodes) {
            better = nodes > best_nodes;
        } else if (cur_edges != best_edges) {
            better = cur_edges > best_edges;
        } else {
            better = !best_assign.empty() && edge_list < best_edge_list;
        }
        if (better || best_assign.empty()) {
            best_nodes = nodes;
            best_edges = cur_edges;
            best_edge_list = std::move(edge_list);
            best_assign = assign;
        }
    }

    std::vector<std::pair<NodeKey, NodeKey>> current_edge_list() const {
        std::vector<std::pair<NodeKey, NodeKey>> out;
        for (const auto& [s, d] : left_edges) {
            if (assign[s] < 0 || assign[d] < 0) continue;
            if (right_edges.count({size_t(assign[s]), size_t(assign[d])}))
                out.push_back({left[s].key, left[d].key});
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    size_t edges_gained(size_t li, size_t ri) const {
        size_t gained = 0;
        for (size_t lj = 0; lj < left.size(); ++lj) {
            if (assign[lj] < 0) continue;
            size_t rj = size_t(assign[lj]);
            if (left_edges.count({li, lj}) && right_edges.count({ri, rj})) ++gained;
            if (left_edges.count({lj, li}) && right_edges.count({rj, ri})) ++gained;
        }
        return gained;
    }

    void extend(size_t li, size_t matched) {
        if (std::chrono::steady_clock::now() > deadline)
            throw ResourceError("MCS time budget exhausted");
        if (li == left.size()) {
            record_if_better(matched);
            return;
        }
        // node-count bound
        size_t remaining = left.size() - li;
        if (matched + remaining < best_nodes) return;

        for (size_t ri = 0; ri < right.size(); ++ri) {
            if (used_right[ri] || right[ri].key != left[li].key) continue;
            size_t gained = edges_gained(li, ri);
            assign[li] = int(ri);
            used_right[ri] = true;
            cur_edges += gained;
            extend(li + 1, matched + 1);
            cur_edges -= gained;
            used_right[ri] = false;
            assign[li] = -1;
        }
        extend(li + 1, matched);
    }

    SceneGraph result() const {
        SceneGraph g;
        std::map<size_t, int> out_id;
        for (size_t li = 0; li < left.size(); ++li) {
            if (best_assign.empty() || li >= best_assign.size() || best_assign[li] < 0)
                continue;
            out_id[li] = g.add_node(left[li].key.first, left[li].key.second);
        }
        for (const auto& [s, d] : left_edges) {
            if (!out_id.count(s) || !out_id.count(d)) continue;
            if (right_edges.count({size_t(best_assign[s]), size_t(best_assign[d])}))
                g.add_edge(out_id.at(s), out_id.at(d));
        }
        return g;
    }
};

} // namespace

SceneGraph mcs(const SceneGraph& g1, const SceneGraph& g2, const McsBudget& budget) {
    McsSearch search;
    search.run(g1, g2, budget);
    return search.result();
}

double mcs_sim(const SceneGraph& g1, const SceneGraph& g2, const McsBudget& budget) {
    if (g1.empty() && g2.empty()) return 1.0;
    SceneGraph common = mcs(g1, g2, budget);
    double m = double(common.node_count());
    return m / (double(g1.node_count()) + double(g2.node_count()) - m);
}

double node_sim(const std::set<std::string>& attr_u,
                const std::set<std::string>& attr_v) {
    if (attr_u.empty() && attr_v.empty()) return 1.0;
    size_t inter = 0;
    for (const auto& a : attr_u) inter += attr_v.count(a);
    size_t uni = attr_u.size() + attr_v.size() - inter;
    return double(inter) / double(uni);
}

double iou(const BoundingBox& a, const BoundingBox& b) {
    double ix = std::max(0.0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
    double iy = std::max(0.0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
    double inter = ix * iy;
    double uni = a.area() + b.area() - inter;
    return uni <= 0 ? 0.0 : inter / uni;
}

SimilaritySeries frame_sim_series(const std::vector<SceneGraph>& frames,
                                  SimilarityMeasure measure, const McsBudget& budget) {
    SimilaritySeries out;
    out.measure = measure;
    for (size_t i = 0; i + 1 < frames.size(); ++i) {
        double score;
        if (measure == SimilarityMeasure::Spectral) {
            score = spectral_sim(frames[i], frames[i + 1]);
        } else {
            try {
                score = mcs_sim(frames[i], frames[i + 1], budget);
            } catch (const ResourceError&) {
                score = spectral_sim(frames[i], frames[i + 1]);
                out.fallback_indices.push_back(i);
            }
        }
        out.scores.push_back(score);
    }
    return out;
}

std::string series_to_csv(const SimilaritySeries& series) {
    std::ostringstream os;
    os << "boundary_index,score,fallback\n";
    std::set<size_t> fb(series.fallback_indices.begin(), series.fallback_indices.end());
    for (size_t i = 0; i < series.scores.size(); ++i) {
        os << i << "," << series.scores[i] << "," << (fb.count(i) ? 1 : 0) << "\n";
    }
    return os.str();
}

} // namespace sgvq
