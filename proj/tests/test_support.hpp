#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "graph.hpp"

namespace sgvq::testsupport {

// Structural equality up to node-id renaming: node key multisets plus
// edge multisets keyed by endpoint (kind,label). Exact for graphs whose
// duplicate-label instances have identical neighborhoods, which covers
// every fixture used here.
inline bool structurally_equal(const SceneGraph& a, const SceneGraph& b) {
    auto node_keys = [](const SceneGraph& g) {
        std::multiset<NodeKey> out;
        for (const auto& [id, n] : g.nodes()) out.insert({n.kind, n.label});
        return out;
    };
    auto edge_keys = [](const SceneGraph& g) {
        std::multiset<std::tuple<NodeKey, NodeKey, std::vector<double>>> out;
        for (const auto& [key, ts] : g.edges()) {
            const Node& s = g.node(key.first);
            const Node& d = g.node(key.second);
            out.insert({{s.kind, s.label}, {d.kind, d.label}, ts});
        }
        return out;
    };
    return a.frame_index == b.frame_index && a.timestamp_s == b.timestamp_s &&
           node_keys(a) == node_keys(b) && edge_keys(a) == edge_keys(b);
}

// Independent MCS-size oracle: enumerates every subset of g1's nodes and
// every injective (kind,label)-preserving mapping into g2. A common
// subgraph never needs more nodes than the largest embeddable subset.
inline size_t mcs_size_oracle(const SceneGraph& g1, const SceneGraph& g2) {
    std::vector<NodeKey> left, right;
    for (const auto& [id, n] : g1.nodes()) left.push_back({n.kind, n.label});
    for (const auto& [id, n] : g2.nodes()) right.push_back({n.kind, n.label});

    size_t best = 0;
    size_t n1 = left.size();
    for (size_t mask = 0; mask < (size_t(1) << n1); ++mask) {
        std::vector<size_t> subset;
        for (size_t i = 0; i < n1; ++i)
            if (mask & (size_t(1) << i)) subset.push_back(i);
        if (subset.size() <= best) continue;

        // backtracking injective mapping
        std::vector<bool> used(right.size(), false);
        std::function<bool(size_t)> embed = [&](size_t idx) {
            if (idx == subset.size()) return true;
            for (size_t j = 0; j < right.size(); ++j) {
                if (used[j] || right[j] != left[subset[idx]]) continue;
                used[j] = true;
                if (embed(idx + 1)) return true;
                used[j] = false;
            }
            return false;
        };
        if (embed(0)) best = subset.size();
    }
    return best;
}

inline double mcs_sim_oracle(const SceneGraph& g1, const SceneGraph& g2) {
    if (g1.empty() && g2.empty()) return 1.0;
    double m = double(mcs_size_oracle(g1, g2));
    return m / (double(g1.node_count()) + double(g2.node_count()) - m);
}

// Random labeled tripartite graph with valid edges only.
inline SceneGraph random_graph(std::mt19937& rng, size_t max_nodes = 5) {
    static const std::vector<std::string> subjects = {"man", "woman", "cat", "dog",
                                                      "bench"};
    static const std::vector<std::string> relations = {"sit", "eat", "wear",
                                                       "play"};
    static const std::vector<std::string> attributes = {"tall", "brown", "small"};

    SceneGraph g;
    std::uniform_int_distribution<size_t> node_count(0, max_nodes);
    size_t n = node_count(rng);
    std::vector<int> ids;
    for (size_t i = 0; i < n; ++i) {
        std::uniform_int_distribution<int> kind_pick(0, 2);
        int k = kind_pick(rng);
        NodeKind kind = k == 0   ? NodeKind::Subject
                        : k == 1 ? NodeKind::Relationship
                                 : NodeKind::Attribute;
        const auto& pool = kind == NodeKind::Subject      ? subjects
                           : kind == NodeKind::Relationship ? relations
                                                            : attributes;
        std::uniform_int_distribution<size_t> label_pick(0, pool.size() - 1);
        ids.push_back(g.add_node(kind, pool[label_pick(rng)]));
    }
    // attempt a handful of random edges, keeping only valid pairs
    std::uniform_int_distribution<size_t> edge_count(0, n * 2);
    size_t attempts = n == 0 ? 0 : edge_count(rng);
    std::uniform_int_distribution<size_t> pick(0, ids.empty() ? 0 : ids.size() - 1);
    for (size_t i = 0; i < attempts; ++i) {
        int a = ids[pick(rng)];
        int b = ids[pick(rng)];
        try {
            g.add_edge(a, b);
        } catch (const Error&) {
            // invalid kind pair or self loop, skip
        }
    }
    return g;
}

} // namespace sgvq::testsupport
