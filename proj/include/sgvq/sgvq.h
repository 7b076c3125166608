/* C interface to the scene-graph video query library.
 *
 * All functions return a status code (SGVQ_OK on success); on failure
 * sgvq_last_error() describes the problem for the calling thread.
 * Strings returned through char** are heap-allocated and must be
 * released with sgvq_string_free(); handles with the matching _free().
 */
#ifndef SGVQ_H
#define SGVQ_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sgvq_graph sgvq_graph;         /* one frame's scene graph */
typedef struct sgvq_aggregate sgvq_aggregate; /* video-level graph */
typedef struct sgvq_captions sgvq_captions;   /* parsed captions file */

/* status codes (aligned with the CLI exit codes where applicable) */
#define SGVQ_OK 0
#define SGVQ_ERR_RUNTIME 1
#define SGVQ_ERR_VALIDATION 2
#define SGVQ_ERR_CONFIG 3
#define SGVQ_ERR_NETWORK 4
#define SGVQ_ERR_NOT_FOUND 5
#define SGVQ_ERR_PARSE 6
#define SGVQ_ERR_RESOURCE 7

#define SGVQ_MEASURE_SPECTRAL 0
#define SGVQ_MEASURE_MCS 1

const char* sgvq_last_error(void);
void sgvq_string_free(char* s);

/* ---- scene graphs ---- */
int sgvq_graph_from_json(const char* json, sgvq_graph** out);
int sgvq_graph_to_json(const sgvq_graph* g, char** out_json);
void sgvq_graph_free(sgvq_graph* g);
int sgvq_graph_node_count(const sgvq_graph* g, size_t* out);
int sgvq_graph_edge_count(const sgvq_graph* g, size_t* out);
/* total-degree histogram, CSV "degree,count" */
int sgvq_graph_degree_stats_csv(const sgvq_graph* g, char** out_csv);

/* One caption sentence to a scene-graph fragment. bbox4 ([x,y,w,h]) and
 * lexicon_path may be NULL. */
int sgvq_parse_caption(const char* sentence, const double* bbox4,
                       const char* lexicon_path, sgvq_graph** out);

/* ---- caption ingestion ---- */
int sgvq_captions_from_json(const char* json, sgvq_captions** out);
void sgvq_captions_free(sgvq_captions* c);
int sgvq_captions_frame_count(const sgvq_captions* c, size_t* out);
int sgvq_captions_video_id(const sgvq_captions* c, char** out);
int sgvq_captions_frame_index(const sgvq_captions* c, size_t frame_pos, int* out);
int sgvq_build_frame_graph(const sgvq_captions* c, size_t frame_pos,
                           double min_confidence, double iou_threshold,
                           const char* lexicon_path, sgvq_graph** out);

/* One multipart image upload against a dense-captioning endpoint.
 * endpoint_url / api_key fall back to SGVQ_CAPTIONS_URL / SGVQ_CAPTIONS_KEY
 * when NULL or empty. Output is a JSON array of caption records. */
int sgvq_fetch_captions(const char* image_path, const char* endpoint_url,
                        const char* api_key, char** out_json);

/* ---- similarity ---- */
int sgvq_spectral_sim(const sgvq_graph* a, const sgvq_graph* b, double* out);
int sgvq_mcs_sim(const sgvq_graph* a, const sgvq_graph* b, size_t max_nodes,
                 long time_limit_ms, double* out);
int sgvq_mcs(const sgvq_graph* a, const sgvq_graph* b, size_t max_nodes,
             long time_limit_ms, sgvq_graph** out);
/* consecutive-frame series, CSV "boundary_index,score,fallback" */
int sgvq_frame_sim_series_csv(const sgvq_graph* const* frames, size_t n,
                              int measure, size_t max_nodes, long time_limit_ms,
                              char** out_csv);

/* ---- key frames ---- */
/* scores[i] = sim(frame i, frame i+1); output is a JSON array of selected
 * frame positions (frame 0 always included). */
int sgvq_select_keyframes_by_count(const double* scores, size_t n_scores,
                                   size_t k, char** out_json);
int sgvq_select_keyframes_by_threshold(const double* scores, size_t n_scores,
                                       double theta, char** out_json);

/* ---- aggregation ---- */
int sgvq_aggregate_nodesim(const sgvq_graph* const* frames, size_t n, size_t m,
                           double threshold, sgvq_aggregate** out);
int sgvq_aggregate_bag(const sgvq_graph* const* frames, size_t n,
                       sgvq_aggregate** out);
/* by_count != 0 selects the k largest drops, otherwise score <= theta */
int sgvq_aggregate_keyframes(const sgvq_graph* const* frames, size_t n,
                             const double* scores, size_t n_scores, int by_count,
                             size_t k, double theta, size_t m, double threshold,
                             sgvq_aggregate** out);
int sgvq_aggregate_from_json(const char* json, sgvq_aggregate** out);
int sgvq_aggregate_to_json(const sgvq_aggregate* a, char** out_json);
void sgvq_aggregate_free(sgvq_aggregate* a);
int sgvq_aggregate_node_count(const sgvq_aggregate* a, size_t* out);
int sgvq_aggregate_edge_count(const sgvq_aggregate* a, size_t* out);
int sgvq_aggregate_degree_stats_csv(const sgvq_aggregate* a, char** out_csv);

/* pairwise matrix over bag-of-nodes projections, CSV with video_id
 * header row/column */
int sgvq_video_sim_matrix_csv(const sgvq_aggregate* const* aggs,
                              const char* const* video_ids, size_t n,
                              int measure, size_t max_nodes, long time_limit_ms,
                              char** out_csv);

/* ---- queries ---- */
/* out: {"question":str,"kind":str,"answer":bool|[str,...]} */
int sgvq_answer(const sgvq_aggregate* a, const char* question,
                const char* lexicon_path, char** out_json);
/* annotations_json per the annotations file format; out: accuracy report */
int sgvq_eval(const sgvq_aggregate* a, const char* annotations_json,
              const char* lexicon_path, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* SGVQ_H */
