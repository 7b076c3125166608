#pragma once

#include <optional>
#include <string>
#include <vector>

#include "caption_parser.hpp"
#include "graph.hpp"

namespace sgvq {

enum class QueryKind { YesNo, Contextual, Temporal };
enum class TemporalOrder { Before, After };

const char* query_kind_name(QueryKind k);
QueryKind query_kind_from_name(const std::string& name);

struct QueryPattern {
    std::string subject;
    std::string relation;            // empty only when location_wildcard
    std::optional<std::string> object; // absent = the thing being asked for
    bool location_wildcard = false;  // "where is X": match location relations
};

struct Query {
    QueryKind kind = QueryKind::YesNo;
    QueryPattern pattern1;
    std::optional<QueryPattern> pattern2; // Temporal only
    TemporalOrder order = TemporalOrder::Before;
};

struct Answer {
    QueryKind kind = QueryKind::YesNo;
    bool truth = false;              // YesNo / Temporal
    std::vector<std::string> labels; // Contextual, sorted + deduplicated
};

// Deterministic rules: leading what/where/who -> Contextual; before/after
// splitting two clauses -> Temporal; leading is/does/did -> YesNo.
Query parse_question(const Tagger& tagger, const std::string& text);

// Label index over an AggregatedGraph for constant-time subject lookup.
class QueryEngine {
public:
    explicit QueryEngine(const AggregatedGraph& agg);

    bool exec_yesno(const QueryPattern& pattern) const;
    std::vector<std::string> exec_contextual(const QueryPattern& pattern) const;
    bool exec_temporal(const QueryPattern& p1, const QueryPattern& p2,
                       TemporalOrder order) const;

    Answer answer(const Tagger& tagger, const std::string& question) const;

private:
    bool relation_matches(const std::string& edge_label,
                          const QueryPattern& pattern) const;
    // earliest timestamp across all chains matching the pattern, if any
    std::optional<double> earliest_match(const QueryPattern& pattern) const;

    const AggregatedGraph& agg_;
    std::map<std::string, std::vector<int>> subjects_by_label_;
};

struct Annotation {
    std::string question;
    QueryKind kind = QueryKind::YesNo;
    std::vector<std::string> expected_labels; // contextual
    bool expected_truth = false;              // yesno / temporal
    bool is_boolean = false;
};

// Annotations JSON: [{"question":str,"expected":[...]|"yes"|"no"|"true"|
// "false","kind":"yesno|contextual|temporal"}]
std::vector<Annotation> annotations_from_json(const std::string& text);

struct AccuracyReport {
    double overall = 0.0;
    std::map<std::string, double> per_kind; // kind name -> accuracy
    std::map<std::string, size_t> counts;   // kind name -> total
    size_t total = 0;
    size_t correct = 0;
};

// One-zero scoring: a list answer matches after sorting/deduplication,
// a boolean answer by equality.
AccuracyReport score_answers(const std::vector<Answer>& answers,
                             const std::vector<Annotation>& annotations);

} // namespace sgvq
