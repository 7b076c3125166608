#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace sgvq {

// Canonical kind order: Attribute < Relationship < Subject.
enum class NodeKind { Attribute = 0, Relationship = 1, Subject = 2 };

const char* kind_name(NodeKind k);
NodeKind kind_from_name(const std::string& name);

struct BoundingBox {
    double x = 0;
    double y = 0;
    double w = 0;
    double h = 0;

    double area() const { return w * h; }
    bool operator==(const BoundingBox&) const = default;
};

void validate_bbox(const BoundingBox& b);

struct Node {
    int id = 0;
    NodeKind kind = NodeKind::Subject;
    std::string label;
    std::optional<BoundingBox> bbox;
};

// (kind,label) key used for canonical adjacency ordering and bag-of-nodes
// collapsing. Ordering is kind first, then label.
using NodeKey = std::pair<NodeKind, std::string>;

struct AdjacencyMatrix {
    std::vector<NodeKey> order;
    std::vector<std::vector<uint8_t>> cells; // n x n, binary

    size_t size() const { return order.size(); }
};

// Tripartite labeled digraph for one frame. Edges keyed by (src,dst);
// duplicate adds merge timestamp lists.
class SceneGraph {
public:
    int frame_index = 0;
    double timestamp_s = 0.0;

    int add_node(NodeKind kind, const std::string& label,
                 std::optional<BoundingBox> bbox = std::nullopt);
    void add_edge(int src, int dst, std::optional<double> timestamp = std::nullopt);

    const Node& node(int id) const;
    bool has_node(int id) const { return nodes_.count(id) != 0; }
    const std::map<int, Node>& nodes() const { return nodes_; }
    const std::map<std::pair<int, int>, std::vector<double>>& edges() const {
        return edges_;
    }
    size_t node_count() const { return nodes_.size(); }
    size_t edge_count() const { return edges_.size(); }
    bool empty() const { return nodes_.empty(); }

    // Attribute labels one hop out of a Subject node.
    std::set<std::string> attr_set(int subject_id) const;

    // Total-degree histogram, sorted by degree ascending.
    std::vector<std::pair<size_t, size_t>> degree_stats() const;

    // Canonical adjacency over distinct (kind,label) keys; multiple
    // instances of a key collapse into one row/column.
    AdjacencyMatrix to_adjacency() const;

    std::set<NodeKey> node_keys() const;

    // Replaces node ids with fresh ones starting at next_id; used when
    // unioning caption fragments into a frame graph.
    void absorb(const SceneGraph& other);

    void set_bbox(int id, const BoundingBox& b);
    void remove_node(int id);
    void redirect_edges(int from_id, int to_id);

private:
    static std::string normalize_label(const std::string& label);
    void check_edge_kinds(const Node& src, const Node& dst) const;

    std::map<int, Node> nodes_;
    std::map<std::pair<int, int>, std::vector<double>> edges_;
    int next_id_ = 0;
};

// Ordered list of unique labels with index lookup.
class Vocabulary {
public:
    Vocabulary() = default;
    explicit Vocabulary(const std::set<std::string>& labels);

    size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    size_t index_of(const std::string& label) const;
    bool contains(const std::string& label) const { return index_.count(label) != 0; }

    std::vector<uint8_t> one_hot(const std::string& label) const;

private:
    std::vector<std::string> labels_;
    std::map<std::string, size_t> index_;
};

// Heterogeneous video graph: timestamped edges, per-subject class labels,
// attribute/relationship vocabularies.
struct AggregatedGraph {
    SceneGraph graph;
    std::map<int, std::string> node_types; // subject id -> class label
    Vocabulary attr_vocab;
    Vocabulary rel_vocab;

    void rebuild_vocabs();
};

} // namespace sgvq
