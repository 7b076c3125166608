#include "graph.hpp"

#include <algorithm>
#include <cctype>

namespace sgvq {

const char* kind_name(NodeKind k) {
    switch (k) {
    case NodeKind::Attribute: return "attribute";
    case NodeKind::Relationship: return "relationship";
    case NodeKind::Subject: return "subject";
    }
    return "?";
}

NodeKind kind_from_name(const std::string& name) {
    if (name == "attribute") return NodeKind::Attribute;
    if (name == "relationship") return NodeKind::Relationship;
    if (name == "subject") return NodeKind::Subject;
    throw ParseError("unknown node kind: '" + name + "'");
}

void validate_bbox(const BoundingBox& b) {
    if (b.w <= 0 || b.h <= 0)
        throw ValidationError("bbox extent must be positive");
    if (b.x < 0 || b.y < 0)
        throw ValidationError("bbox corner must be non-negative");
}

std::string SceneGraph::normalize_label(const std::string& label) {
    size_t begin = label.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    size_t end = label.find_last_not_of(" \t\r\n");
    std::string out = label.substr(begin, end - begin + 1);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

int SceneGraph::add_node(NodeKind kind, const std::string& label,
                         std::optional<BoundingBox> bbox) {
    std::string norm = normalize_label(label);
    if (norm.empty())
        throw ValidationError("node label is empty after normalization");
    if (bbox) {
        if (kind != NodeKind::Subject)
            throw ValidationError("bbox allowed on subject nodes only");
        validate_bbox(*bbox);
    }
    int id = next_id_++;
    nodes_[id] = Node{id, kind, std::move(norm), bbox};
    return id;
}

void SceneGraph::check_edge_kinds(const Node& src, const Node& dst) const {
    bool ok = (src.kind == NodeKind::Subject && dst.kind == NodeKind::Relationship) ||
              (src.kind == NodeKind::Relationship && dst.kind == NodeKind::Subject) ||
              (src.kind == NodeKind::Subject && dst.kind == NodeKind::Attribute);
    if (!ok)
        throw ValidationError(std::string("edge kind pair not allowed: ") +
                              kind_name(src.kind) + " -> " + kind_name(dst.kind));
}

void SceneGraph::add_edge(int src, int dst, std::optional<double> timestamp) {
    auto si = nodes_.find(src);
    auto di = nodes_.find(dst);
    if (si == nodes_.end() || di == nodes_.end())
        throw NotFoundError("edge endpoint does not exist");
    if (src == dst)
        throw ValidationError("self-loops are not allowed");
    check_edge_kinds(si->second, di->second);

    auto& ts = edges_[{src, dst}];
    if (timestamp) {
        // keep strictly increasing, duplicates dropped
        auto it = std::lower_bound(ts.begin(), ts.end(), *timestamp);
        if (it == ts.end() || *it != *timestamp) ts.insert(it, *timestamp);
    }
}

const Node& SceneGraph::node(int id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end())
        throw NotFoundError("no node with id " + std::to_string(id));
    return it->second;
}

std::set<std::string> SceneGraph::attr_set(int subject_id) const {
    const Node& n = node(subject_id);
    if (n.kind != NodeKind::Subject)
        throw ValidationError("attr_set requires a subject node");
    std::set<std::string> out;
    for (const auto& [key, ts] : edges_) {
        if (key.first != subject_id) continue;
        const Node& dst = nodes_.at(key.second);
        if (dst.kind == NodeKind::Attribute) out.insert(dst.label);
    }
    return out;
}

std::vector<std::pair<size_t, size_t>> SceneGraph::degree_stats() const {
    std::map<int, size_t> degree;
    for (const auto& [id, n] : nodes_) degree[id] = 0;
    for (const auto& [key, ts] : edges_) {
        degree[key.first]++;
        degree[key.second]++;
    }
    std::map<size_t, size_t> hist;
    for (const auto& [id, d] : degree) hist[d]++;
    return {hist.begin(), hist.end()};
}

std::set<NodeKey> SceneGraph::node_keys() const {
    std::set<NodeKey> keys;
    for (const auto& [id, n] : nodes_) keys.insert({n.kind, n.label});
    return keys;
}

AdjacencyMatrix SceneGraph::to_adjacency() const {
    auto keys = node_keys();
    AdjacencyMatrix m;
    m.order.assign(keys.begin(), keys.end());
    std::map<NodeKey, size_t> pos;
    for (size_t i = 0; i < m.order.size(); ++i) pos[m.order[i]] = i;
    m.cells.assign(m.order.size(), std::vector<uint8_t>(m.order.size(), 0));
    for (const auto& [key, ts] : edges_) {
        const Node& s = nodes_.at(key.first);
        const Node& d = nodes_.at(key.second);
        m.cells[pos.at({s.kind, s.label})][pos.at({d.kind, d.label})] = 1;
    }
    return m;
}

void SceneGraph::absorb(const SceneGraph& other) {
    std::map<int, int> remap;
    for (const auto& [id, n] : other.nodes_)
        remap[id] = add_node(n.kind, n.label, n.bbox);
    for (const auto& [key, ts] : other.edges_) {
        if (ts.empty()) {
            add_edge(remap.at(key.first), remap.at(key.second));
        } else {
            for (double t : ts)
                add_edge(remap.at(key.first), remap.at(key.second), t);
        }
    }
}

void SceneGraph::set_bbox(int id, const BoundingBox& b) {
    auto it = nodes_.find(id);
    if (it == nodes_.end())
        throw NotFoundError("no node with id " + std::to_string(id));
    if (it->second.kind != NodeKind::Subject)
        throw ValidationError("bbox allowed on subject nodes only");
    validate_bbox(b);
    it->second.bbox = b;
}

void SceneGraph::remove_node(int id) {
    nodes_.erase(id);
    for (auto it = edges_.begin(); it != edges_.end();) {
        if (it->first.first == id || it->first.second == id)
            it = edges_.erase(it);
        else
            ++it;
    }
}

void SceneGraph::redirect_edges(int from_id, int to_id) {
    std::vector<std::pair<std::pair<int, int>, std::vector<double>>> moved;
    for (auto it = edges_.begin(); it != edges_.end();) {
        auto [src, dst] = it->first;
        if (src == from_id || dst == from_id) {
            int ns = src == from_id ? to_id : src;
            int nd = dst == from_id ? to_id : dst;
            if (ns != nd) moved.push_back({{ns, nd}, it->second});
            it = edges_.erase(it);
        } else {
            ++it;
        }
    }
    for (auto& [key, ts] : moved) {
        auto& dest = edges_[key];
        for (double t : ts) {
            auto it = std::lower_bound(dest.begin(), dest.end(), t);
            if (it == dest.end() || *it != t) dest.insert(it, t);
        }
    }
}

Vocabulary::Vocabulary(const std::set<std::string>& labels)
    : labels_(labels.begin(), labels.end()) {
    for (size_t i = 0; i < labels_.size(); ++i) index_[labels_[i]] = i;
}

size_t Vocabulary::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end())
        throw NotFoundError("label '" + label + "' not in vocabulary");
    return it->second;
}

std::vector<uint8_t> Vocabulary::one_hot(const std::string& label) const {
    std::vector<uint8_t> v(labels_.size(), 0);
    v[index_of(label)] = 1;
    return v;
}

void AggregatedGraph::rebuild_vocabs() {
    std::set<std::string> attrs, rels;
    for (const auto& [id, n] : graph.nodes()) {
        if (n.kind == NodeKind::Attribute) attrs.insert(n.label);
        if (n.kind == NodeKind::Relationship) rels.insert(n.label);
    }
    attr_vocab = Vocabulary(attrs);
    rel_vocab = Vocabulary(rels);
}

} // namespace sgvq
