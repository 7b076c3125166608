#pragma once

#include <set>
#include <string>
#include <vector>

#include "graph.hpp"

namespace sgvq {

enum class SimilarityMeasure { Spectral, Mcs };

SimilarityMeasure measure_from_name(const std::string& name);
const char* measure_name(SimilarityMeasure m);

struct McsBudget {
    size_t max_nodes = 30;
    long time_limit_ms = 5000;
};

// 1 - ||A-B||_F / n over the union (kind,label) key set. Two empty
// graphs compare as 1.0; the result is clamped to [0,1].
double spectral_sim(const SceneGraph& g1, const SceneGraph& g2);

// Exact maximum common subgraph under (kind,label)-preserving node
// pairings; edges of the result are those present in both graphs under
// the pairing. Maximizes node count, then edge count, with a
// deterministic tie-break (smallest sorted label multiset, then smallest
// canonical edge list).
SceneGraph mcs(const SceneGraph& g1, const SceneGraph& g2, const McsBudget& budget);

// |mcs| / (|g1| + |g2| - |mcs|), cardinality = node count. Two empty
// graphs compare as 1.0.
double mcs_sim(const SceneGraph& g1, const SceneGraph& g2, const McsBudget& budget);

// Jaccard index over attribute label sets; two empty sets compare as 1.0.
double node_sim(const std::set<std::string>& attr_u, const std::set<std::string>& attr_v);

// Intersection-over-union of two boxes.
double iou(const BoundingBox& a, const BoundingBox& b);

struct SimilaritySeries {
    std::string video_id;
    SimilarityMeasure measure = SimilarityMeasure::Spectral;
    std::vector<double> scores;            // scores[i] = sim(frame i, frame i+1)
    std::vector<size_t> fallback_indices;  // boundaries where MCS fell back to spectral
};

SimilaritySeries frame_sim_series(const std::vector<SceneGraph>& frames,
                                  SimilarityMeasure measure, const McsBudget& budget);

// CSV export, header "boundary_index,score,fallback".
std::string series_to_csv(const SimilaritySeries& series);

} // namespace sgvq
