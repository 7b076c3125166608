#pragma once

#include <string>
#include <vector>

#include "graph.hpp"
#include "similarity.hpp"

namespace sgvq {

struct AggregationParams {
    size_t m = 5;           // lookback window in processed frames
    double threshold = 0.5; // NodeSim merge threshold; > 1 disables merging
};

void validate_params(const AggregationParams& p);

struct KeyframeParams {
    enum class Mode { ByCount, ByThreshold };
    Mode mode = Mode::ByCount;
    size_t k = 1;
    double theta = 0.3;
};

struct KeyframeSelection {
    std::vector<size_t> frames; // positions into the frame list, sorted
    bool truncated = false;     // k exceeded the boundary count
};

// ByCount: the k boundaries with the largest drops (1 - score), earliest
// boundary on ties; ByThreshold: every boundary with score <= theta.
// Frame 0 is always selected.
KeyframeSelection select_keyframes(const SimilaritySeries& series,
                                   const KeyframeParams& params);

// Folds frames in order. Incoming subjects merge into the best same-class
// candidate seen within the last m processed frames when NodeSim clears
// the threshold; relationships and attributes deduplicate by label; every
// mapped edge carries the frame's timestamp.
AggregatedGraph aggregate_nodesim(const std::vector<SceneGraph>& frames,
                                  const AggregationParams& params);

// Collapses all nodes by (kind,label); edges union their timestamp lists.
AggregatedGraph aggregate_bag_of_nodes(const std::vector<SceneGraph>& frames);

AggregatedGraph aggregate_keyframes(const std::vector<SceneGraph>& frames,
                                    const SimilaritySeries& series,
                                    const KeyframeParams& kf_params,
                                    const AggregationParams& agg_params);

// Pairwise similarity over bag-of-nodes projections; symmetric, unit
// diagonal. flags[i][j] is set where MCS fell back to spectral.
struct VideoSimMatrix {
    std::vector<std::string> video_ids;
    std::vector<std::vector<double>> scores;
    std::vector<std::vector<uint8_t>> fallback;
};

VideoSimMatrix video_sim_matrix(const std::vector<AggregatedGraph>& aggregates,
                                const std::vector<std::string>& video_ids,
                                SimilarityMeasure measure, const McsBudget& budget);

// CSV with a video_id header row/column.
std::string matrix_to_csv(const VideoSimMatrix& m);

// Re-collapse an aggregate by (kind,label) so matrix cells are
// well-defined regardless of which aggregation built the input.
SceneGraph bag_projection(const AggregatedGraph& agg);

} // namespace sgvq
