#include "sgvq/sgvq.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "aggregate.hpp"
#include "caption_parser.hpp"
#include "captions_client.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "ingest.hpp"
#include "json_io.hpp"
#include "query.hpp"
#include "similarity.hpp"

struct sgvq_graph {
    sgvq::SceneGraph g;
};
struct sgvq_aggregate {
    sgvq::AggregatedGraph a;
};
struct sgvq_captions {
    sgvq::VideoCaptions c;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return SGVQ_OK;
    } catch (const sgvq::AuthError& e) {
        g_last_error = e.what();
        return SGVQ_ERR_NETWORK;
    } catch (const sgvq::NetworkError& e) {
        g_last_error = e.what();
        return SGVQ_ERR_NETWORK;
    } catch (const sgvq::ConfigError& e) {
        g_last_error = e.what();
        return SGVQ_ERR_CONFIG;
    } catch (const sgvq::ParseError& e) {
        g_last_error = e.what();
        return SGVQ_ERR_PARSE;
    } catch (const sgvq::NotFoundError& e) {
        g_last_error = e.what();
        return SGVQ_ERR_NOT_FOUND;
    } catch (const sgvq::ResourceError& e) {
        g_last_error = e.what();
        return SGVQ_ERR_RESOURCE;
    } catch (const sgvq::ValidationError& e) {
        g_last_error = e.what();
        return SGVQ_ERR_VALIDATION;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SGVQ_ERR_RUNTIME;
    }
}

sgvq::Tagger make_tagger(const char* lexicon_path) {
    sgvq::Tagger tagger;
    if (lexicon_path && *lexicon_path) tagger.load_lexicon_file(lexicon_path);
    return tagger;
}

sgvq::SimilarityMeasure measure_from_int(int measure) {
    if (measure == SGVQ_MEASURE_SPECTRAL) return sgvq::SimilarityMeasure::Spectral;
    if (measure == SGVQ_MEASURE_MCS) return sgvq::SimilarityMeasure::Mcs;
    throw sgvq::ValidationError("unknown measure code " + std::to_string(measure));
}

std::vector<sgvq::SceneGraph> collect_frames(const sgvq_graph* const* frames,
                                             size_t n) {
    std::vector<sgvq::SceneGraph> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        if (!frames[i]) throw sgvq::ValidationError("null frame handle");
        out.push_back(frames[i]->g);
    }
    return out;
}

std::string degree_csv(const sgvq::SceneGraph& g) {
    std::string out = "degree,count\n";
    for (const auto& [deg, count] : g.degree_stats())
        out += std::to_string(deg) + "," + std::to_string(count) + "\n";
    return out;
}

std::string keyframes_json(const sgvq::KeyframeSelection& sel) {
    nlohmann::json j = nlohmann::json::array();
    for (size_t f : sel.frames) j.push_back(f);
    return j.dump();
}

sgvq::SimilaritySeries series_from_scores(const double* scores, size_t n) {
    sgvq::SimilaritySeries s;
    s.scores.assign(scores, scores + n);
    return s;
}

} // namespace

extern "C" {

const char* sgvq_last_error(void) { return g_last_error.c_str(); }

void sgvq_string_free(char* s) { std::free(s); }

int sgvq_graph_from_json(const char* json, sgvq_graph** out) {
    return guarded([&] { *out = new sgvq_graph{sgvq::graph_from_json(json)}; });
}

int sgvq_graph_to_json(const sgvq_graph* g, char** out_json) {
    return guarded([&] { *out_json = dup_string(sgvq::graph_to_json(g->g)); });
}

void sgvq_graph_free(sgvq_graph* g) { delete g; }

int sgvq_graph_node_count(const sgvq_graph* g, size_t* out) {
    return guarded([&] { *out = g->g.node_count(); });
}

int sgvq_graph_edge_count(const sgvq_graph* g, size_t* out) {
    return guarded([&] { *out = g->g.edge_count(); });
}

int sgvq_graph_degree_stats_csv(const sgvq_graph* g, char** out_csv) {
    return guarded([&] { *out_csv = dup_string(degree_csv(g->g)); });
}

int sgvq_parse_caption(const char* sentence, const double* bbox4,
                       const char* lexicon_path, sgvq_graph** out) {
    return guarded([&] {
        std::optional<sgvq::BoundingBox> bbox;
        if (bbox4) bbox = sgvq::BoundingBox{bbox4[0], bbox4[1], bbox4[2], bbox4[3]};
        auto tagger = make_tagger(lexicon_path);
        *out = new sgvq_graph{sgvq::parse_caption(tagger, sentence, bbox).graph};
    });
}

int sgvq_captions_from_json(const char* json, sgvq_captions** out) {
    return guarded(
        [&] { *out = new sgvq_captions{sgvq::captions_from_json(json)}; });
}

void sgvq_captions_free(sgvq_captions* c) { delete c; }

int sgvq_captions_frame_count(const sgvq_captions* c, size_t* out) {
    return guarded([&] { *out = c->c.frames.size(); });
}

int sgvq_captions_video_id(const sgvq_captions* c, char** out) {
    return guarded([&] { *out = dup_string(c->c.video_id); });
}

int sgvq_captions_frame_index(const sgvq_captions* c, size_t frame_pos, int* out) {
    return guarded([&] {
        if (frame_pos >= c->c.frames.size())
            throw sgvq::NotFoundError("frame position out of range");
        *out = c->c.frames[frame_pos].frame_index;
    });
}

int sgvq_build_frame_graph(const sgvq_captions* c, size_t frame_pos,
                           double min_confidence, double iou_threshold,
                           const char* lexicon_path, sgvq_graph** out) {
    return guarded([&] {
        if (frame_pos >= c->c.frames.size())
            throw sgvq::NotFoundError("frame position out of range");
        auto tagger = make_tagger(lexicon_path);
        *out = new sgvq_graph{sgvq::build_frame_graph(
            tagger, c->c.frames[frame_pos], min_confidence, iou_threshold)};
    });
}

int sgvq_fetch_captions(const char* image_path, const char* endpoint_url,
                        const char* api_key, char** out_json) {
    return guarded([&] {
        sgvq::CaptionsEndpoint ep;
        if (endpoint_url) ep.url = endpoint_url;
        if (api_key) ep.api_key = api_key;
        auto records = sgvq::fetch_captions(image_path, sgvq::resolve_endpoint(ep));
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : records) {
            j.push_back({{"text", r.text},
                         {"bbox", {r.bbox.x, r.bbox.y, r.bbox.w, r.bbox.h}},
                         {"confidence", r.confidence}});
        }
        *out_json = dup_string(j.dump(2));
    });
}

int sgvq_spectral_sim(const sgvq_graph* a, const sgvq_graph* b, double* out) {
    return guarded([&] { *out = sgvq::spectral_sim(a->g, b->g); });
}

int sgvq_mcs_sim(const sgvq_graph* a, const sgvq_graph* b, size_t max_nodes,
                 long time_limit_ms, double* out) {
    return guarded([&] {
        *out = sgvq::mcs_sim(a->g, b->g, sgvq::McsBudget{max_nodes, time_limit_ms});
    });
}

int sgvq_mcs(const sgvq_graph* a, const sgvq_graph* b, size_t max_nodes,
             long time_limit_ms, sgvq_graph** out) {
    return guarded([&] {
        *out = new sgvq_graph{
            sgvq::mcs(a->g, b->g, sgvq::McsBudget{max_nodes, time_limit_ms})};
    });
}

int sgvq_frame_sim_series_csv(const sgvq_graph* const* frames, size_t n,
                              int measure, size_t max_nodes, long time_limit_ms,
                              char** out_csv) {
    return guarded([&] {
        auto series = sgvq::frame_sim_series(collect_frames(frames, n),
                                             measure_from_int(measure),
                                             sgvq::McsBudget{max_nodes, time_limit_ms});
        *out_csv = dup_string(sgvq::series_to_csv(series));
    });
}

int sgvq_select_keyframes_by_count(const double* scores, size_t n_scores,
                                   size_t k, char** out_json) {
    return guarded([&] {
        sgvq::KeyframeParams p;
        p.mode = sgvq::KeyframeParams::Mode::ByCount;
        p.k = k;
        *out_json = dup_string(keyframes_json(
            sgvq::select_keyframes(series_from_scores(scores, n_scores), p)));
    });
}

int sgvq_select_keyframes_by_threshold(const double* scores, size_t n_scores,
                                       double theta, char** out_json) {
    return guarded([&] {
        sgvq::KeyframeParams p;
        p.mode = sgvq::KeyframeParams::Mode::ByThreshold;
        p.theta = theta;
        *out_json = dup_string(keyframes_json(
            sgvq::select_keyframes(series_from_scores(scores, n_scores), p)));
    });
}

int sgvq_aggregate_nodesim(const sgvq_graph* const* frames, size_t n, size_t m,
                           double threshold, sgvq_aggregate** out) {
    return guarded([&] {
        *out = new sgvq_aggregate{sgvq::aggregate_nodesim(
            collect_frames(frames, n), sgvq::AggregationParams{m, threshold})};
    });
}

int sgvq_aggregate_bag(const sgvq_graph* const* frames, size_t n,
                       sgvq_aggregate** out) {
    return guarded([&] {
        *out = new sgvq_aggregate{
            sgvq::aggregate_bag_of_nodes(collect_frames(frames, n))};
    });
}

int sgvq_aggregate_keyframes(const sgvq_graph* const* frames, size_t n,
                             const double* scores, size_t n_scores, int by_count,
                             size_t k, double theta, size_t m, double threshold,
                             sgvq_aggregate** out) {
    return guarded([&] {
        sgvq::KeyframeParams kp;
        kp.mode = by_count ? sgvq::KeyframeParams::Mode::ByCount
                           : sgvq::KeyframeParams::Mode::ByThreshold;
        kp.k = k;
        kp.theta = theta;
        *out = new sgvq_aggregate{sgvq::aggregate_keyframes(
            collect_frames(frames, n), series_from_scores(scores, n_scores), kp,
            sgvq::AggregationParams{m, threshold})};
    });
}

int sgvq_aggregate_from_json(const char* json, sgvq_aggregate** out) {
    return guarded(
        [&] { *out = new sgvq_aggregate{sgvq::aggregate_from_json(json)}; });
}

int sgvq_aggregate_to_json(const sgvq_aggregate* a, char** out_json) {
    return guarded([&] { *out_json = dup_string(sgvq::aggregate_to_json(a->a)); });
}

void sgvq_aggregate_free(sgvq_aggregate* a) { delete a; }

int sgvq_aggregate_node_count(const sgvq_aggregate* a, size_t* out) {
    return guarded([&] { *out = a->a.graph.node_count(); });
}

int sgvq_aggregate_edge_count(const sgvq_aggregate* a, size_t* out) {
    return guarded([&] { *out = a->a.graph.edge_count(); });
}

int sgvq_aggregate_degree_stats_csv(const sgvq_aggregate* a, char** out_csv) {
    return guarded([&] { *out_csv = dup_string(degree_csv(a->a.graph)); });
}

int sgvq_video_sim_matrix_csv(const sgvq_aggregate* const* aggs,
                              const char* const* video_ids, size_t n,
                              int measure, size_t max_nodes, long time_limit_ms,
                              char** out_csv) {
    return guarded([&] {
        std::vector<sgvq::AggregatedGraph> as;
        std::vector<std::string> ids;
        for (size_t i = 0; i < n; ++i) {
            if (!aggs[i]) throw sgvq::ValidationError("null aggregate handle");
            as.push_back(aggs[i]->a);
            ids.push_back(video_ids[i]);
        }
        auto m = sgvq::video_sim_matrix(as, ids, measure_from_int(measure),
                                        sgvq::McsBudget{max_nodes, time_limit_ms});
        *out_csv = dup_string(sgvq::matrix_to_csv(m));
    });
}

int sgvq_answer(const sgvq_aggregate* a, const char* question,
                const char* lexicon_path, char** out_json) {
    return guarded([&] {
        auto tagger = make_tagger(lexicon_path);
        sgvq::QueryEngine engine(a->a);
        sgvq::Answer ans = engine.answer(tagger, question);
        nlohmann::ordered_json j;
        j["question"] = question;
        j["kind"] = sgvq::query_kind_name(ans.kind);
        if (ans.kind == sgvq::QueryKind::Contextual)
            j["answer"] = ans.labels;
        else
            j["answer"] = ans.truth;
        *out_json = dup_string(j.dump());
    });
}

int sgvq_eval(const sgvq_aggregate* a, const char* annotations_json,
              const char* lexicon_path, char** out_json) {
    return guarded([&] {
        auto tagger = make_tagger(lexicon_path);
        auto annotations = sgvq::annotations_from_json(annotations_json);
        sgvq::QueryEngine engine(a->a);
        std::vector<sgvq::Answer> answers;
        for (const auto& ann : annotations) {
            try {
                answers.push_back(engine.answer(tagger, ann.question));
            } catch (const sgvq::ParseError&) {
                // unanswerable question scores zero
                sgvq::Answer blank;
                blank.kind = ann.kind == sgvq::QueryKind::Contextual
                                 ? sgvq::QueryKind::YesNo
                                 : sgvq::QueryKind::Contextual;
                answers.push_back(blank);
            }
        }
        auto report = sgvq::score_answers(answers, annotations);
        nlohmann::ordered_json j;
        j["overall"] = report.overall;
        j["correct"] = report.correct;
        j["total"] = report.total;
        j["per_kind"] = nlohmann::ordered_json::object();
        for (const auto& [kind, acc] : report.per_kind) {
            j["per_kind"][kind] = {{"accuracy", acc},
                                   {"total", report.counts.at(kind)}};
        }
        *out_json = dup_string(j.dump(2));
    });
}

} // extern "C"
