#include "query.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace sgvq {

const char* query_kind_name(QueryKind k) {
    switch (k) {
    case QueryKind::YesNo: return "yesno";
    case QueryKind::Contextual: return "contextual";
    case QueryKind::Temporal: return "temporal";
    }
    return "?";
}

QueryKind query_kind_from_name(const std::string& name) {
    if (name == "yesno") return QueryKind::YesNo;
    if (name == "contextual") return QueryKind::Contextual;
    if (name == "temporal") return QueryKind::Temporal;
    throw ParseError("unknown query kind: '" + name + "'");
}

namespace {

const std::set<std::string>& location_relations() {
    static const std::set<std::string> locs = {
        "in",     "on",     "at",    "near",   "under", "over",
        "inside", "behind", "beside", "above", "below", "between",
    };
    return locs;
}

// subject, verb(+folded prep) or bare prep, optional object
std::optional<QueryPattern> extract_pattern(const std::vector<TaggedToken>& toks,
                                            size_t begin, size_t end) {
    QueryPattern p;
    size_t i = begin;
    while (i < end && toks[i].tag != PosTag::Noun) ++i;
    if (i >= end) return std::nullopt;
    p.subject = toks[i].text;
    ++i;

    size_t after_rel = end;
    for (size_t j = i; j < end; ++j) {
        if (toks[j].tag == PosTag::Verb) {
            p.relation = lemmatize_verb(toks[j].text);
            after_rel = j + 1;
            if (after_rel < end && toks[after_rel].tag == PosTag::Prep) {
                p.relation += " " + toks[after_rel].text;
                ++after_rel;
            }
            break;
        }
    }
    if (p.relation.empty()) {
        // copular-prepositional: "is the man in the kitchen"
        for (size_t j = i; j < end; ++j) {
            if (toks[j].tag == PosTag::Prep) {
                p.relation = toks[j].text;
                after_rel = j + 1;
                break;
            }
        }
    }
    for (size_t j = after_rel; j < end; ++j) {
        if (toks[j].tag == PosTag::Noun) {
            p.object = toks[j].text;
            break;
        }
    }
    if (p.relation.empty() && !p.location_wildcard) return std::nullopt;
    return p;
}

size_t find_text(const std::vector<TaggedToken>& toks, const char* text) {
    for (size_t i = 0; i < toks.size(); ++i)
        if (toks[i].text == text) return i;
    return toks.size();
}

} // namespace

Query parse_question(const Tagger& tagger, const std::string& text) {
    auto toks = tagger.tag_tokens(text);
    if (toks.empty()) throw ParseError("empty question");

    size_t before_pos = find_text(toks, "before");
    size_t after_pos = find_text(toks, "after");
    size_t split = std::min(before_pos, after_pos);
    if (split < toks.size()) {
        Query q;
        q.kind = QueryKind::Temporal;
        q.order = split == before_pos ? TemporalOrder::Before : TemporalOrder::After;
        auto p1 = extract_pattern(toks, 0, split);
        auto p2 = extract_pattern(toks, split + 1, toks.size());
        if (!p1 || !p2 || !p1->object || !p2->object)
            throw ParseError("temporal question needs two subject-relation-object "
                             "clauses: '" + text + "'");
        q.pattern1 = *p1;
        q.pattern2 = *p2;
        return q;
    }

    const std::string& lead = toks.front().text;
    if (lead == "what" || lead == "where" || lead == "who") {
        Query q;
        q.kind = QueryKind::Contextual;
        auto p = extract_pattern(toks, 1, toks.size());
        if (lead == "where") {
            if (!p) {
                // "where is the man": noun only, wildcard over location relations
                QueryPattern wp;
                size_t i = 1;
                while (i < toks.size() && toks[i].tag != PosTag::Noun) ++i;
                if (i >= toks.size())
                    throw ParseError("no subject found in question: '" + text + "'");
                wp.subject = toks[i].text;
                p = wp;
            }
            p->location_wildcard = true;
        }
        if (!p) throw ParseError("no pattern found in question: '" + text + "'");
        p->object.reset(); // the asked-for slot
        q.pattern1 = *p;
        return q;
    }

    auto p = extract_pattern(toks, 0, toks.size());
    if (!p) throw ParseError("no pattern found in question: '" + text + "'");
    Query q;
    q.kind = QueryKind::YesNo;
    q.pattern1 = *p;
    return q;
}

QueryEngine::QueryEngine(const AggregatedGraph& agg) : agg_(agg) {
    for (const auto& [id, n] : agg.graph.nodes())
        if (n.kind == NodeKind::Subject) subjects_by_label_[n.label].push_back(id);
}

bool QueryEngine::relation_matches(const std::string& edge_label,
                                   const QueryPattern& pattern) const {
    if (!pattern.relation.empty()) {
        if (edge_label == pattern.relation) return true;
        if (edge_label.size() > pattern.relation.size() &&
            edge_label.compare(0, pattern.relation.size(), pattern.relation) == 0 &&
            edge_label[pattern.relation.size()] == ' ')
            return true;
    }
    if (pattern.location_wildcard) {
        const auto& locs = location_relations();
        if (locs.count(edge_label)) return true;
        size_t sp = edge_label.rfind(' ');
        if (sp != std::string::npos && locs.count(edge_label.substr(sp + 1)))
            return true;
    }
    return false;
}

std::vector<std::string> QueryEngine::exec_contextual(
    const QueryPattern& pattern) const {
    std::set<std::string> out;
    auto it = subjects_by_label_.find(pattern.subject);
    if (it == subjects_by_label_.end()) return {};
    const auto& edges = agg_.graph.edges();
    for (int sid : it->second) {
        for (const auto& [key, ts] : edges) {
            if (key.first != sid) continue;
            const Node& rel = agg_.graph.node(key.second);
            if (rel.kind != NodeKind::Relationship || !relation_matches(rel.label, pattern))
                continue;
            for (const auto& [key2, ts2] : edges) {
                if (key2.first != key.second) continue;
                const Node& obj = agg_.graph.node(key2.second);
                if (obj.kind == NodeKind::Subject) out.insert(obj.label);
            }
        }
    }
    return {out.begin(), out.end()};
}

bool QueryEngine::exec_yesno(const QueryPattern& pattern) const {
    if (!pattern.object) {
        // no object in the question: true iff the subject-relation pair exists
        auto it = subjects_by_label_.find(pattern.subject);
        if (it == subjects_by_label_.end()) return false;
        for (int sid : it->second) {
            for (const auto& [key, ts] : agg_.graph.edges()) {
                if (key.first != sid) continue;
                const Node& rel = agg_.graph.node(key.second);
                if (rel.kind == NodeKind::Relationship &&
                    relation_matches(rel.label, pattern))
                    return true;
            }
        }
        return false;
    }
    auto completions = exec_contextual(QueryPattern{
        pattern.subject, pattern.relation, std::nullopt, pattern.location_wildcard});
    return std::binary_search(completions.begin(), completions.end(),
                              *pattern.object);
}

std::optional<double> QueryEngine::earliest_match(const QueryPattern& pattern) const {
    std::optional<double> earliest;
    auto it = subjects_by_label_.find(pattern.subject);
    if (it == subjects_by_label_.end()) return std::nullopt;
    const auto& edges = agg_.graph.edges();
    for (int sid : it->second) {
        for (const auto& [key, ts1] : edges) {
            if (key.first != sid) continue;
            const Node& rel = agg_.graph.node(key.second);
            if (rel.kind != NodeKind::Relationship || !relation_matches(rel.label, pattern))
                continue;
            for (const auto& [key2, ts2] : edges) {
                if (key2.first != key.second) continue;
                const Node& obj = agg_.graph.node(key2.second);
                if (obj.kind != NodeKind::Subject) continue;
                if (pattern.object && obj.label != *pattern.object) continue;
                double t = std::numeric_limits<double>::infinity();
                if (!ts1.empty()) t = std::min(t, ts1.front());
                if (!ts2.empty()) t = std::min(t, ts2.front());
                if (std::isinf(t)) continue; // untimestamped chain
                if (!earliest || t < *earliest) earliest = t;
            }
        }
    }
    return earliest;
}

bool QueryEngine::exec_temporal(const QueryPattern& p1, const QueryPattern& p2,
                                TemporalOrder order) const {
    auto t1 = earliest_match(p1);
    auto t2 = earliest_match(p2);
    if (!t1 || !t2) return false;
    return order == TemporalOrder::Before ? *t1 < *t2 : *t1 > *t2;
}

Answer QueryEngine::answer(const Tagger& tagger, const std::string& question) const {
    Query q = parse_question(tagger, question);
    Answer a;
    a.kind = q.kind;
    switch (q.kind) {
    case QueryKind::YesNo:
        a.truth = exec_yesno(q.pattern1);
        break;
    case QueryKind::Contextual:
        a.labels = exec_contextual(q.pattern1);
        break;
    case QueryKind::Temporal:
        a.truth = exec_temporal(q.pattern1, *q.pattern2, q.order);
        break;
    }
    return a;
}

std::vector<Annotation> annotations_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed annotations JSON");
    if (!j.is_array()) throw ParseError("annotations JSON must be an array");
    std::vector<Annotation> out;
    for (const auto& ja : j) {
        Annotation ann;
        if (!ja.contains("question") || !ja["question"].is_string())
            throw ParseError("annotation missing string field 'question'");
        ann.question = ja["question"].get<std::string>();
        if (!ja.contains("kind") || !ja["kind"].is_string())
            throw ParseError("annotation missing string field 'kind'");
        ann.kind = query_kind_from_name(ja["kind"].get<std::string>());
        if (!ja.contains("expected"))
            throw ParseError("annotation missing field 'expected'");
        const auto& je = ja["expected"];
        if (je.is_string()) {
            std::string v = je.get<std::string>();
            if (v == "yes" || v == "true") {
                ann.expected_truth = true;
            } else if (v == "no" || v == "false") {
                ann.expected_truth = false;
            } else {
                throw ParseError("annotation 'expected' string must be "
                                 "yes/no/true/false");
            }
            ann.is_boolean = true;
        } else if (je.is_array()) {
            if (je.empty())
                throw ValidationError("annotation 'expected' list is empty");
            for (const auto& l : je)
                ann.expected_labels.push_back(l.get<std::string>());
        } else {
            throw ParseError("annotation 'expected' must be a list or string");
        }
        out.push_back(std::move(ann));
    }
    return out;
}

AccuracyReport score_answers(const std::vector<Answer>& answers,
                             const std::vector<Annotation>& annotations) {
    if (annotations.empty())
        throw ValidationError("annotation set is empty");
    if (answers.size() != annotations.size())
        throw ValidationError("answer count does not match annotation count");

    AccuracyReport report;
    std::map<std::string, size_t> correct_per_kind;
    for (size_t i = 0; i < answers.size(); ++i) {
        const Answer& a = answers[i];
        const Annotation& ann = annotations[i];
        bool correct;
        if (ann.is_boolean) {
            correct = (a.kind == QueryKind::YesNo || a.kind == QueryKind::Temporal) &&
                      a.truth == ann.expected_truth;
        } else {
            std::set<std::string> want(ann.expected_labels.begin(),
                                       ann.expected_labels.end());
            std::set<std::string> got(a.labels.begin(), a.labels.end());
            correct = a.kind == QueryKind::Contextual && want == got;
        }
        std::string kind = query_kind_name(ann.kind);
        report.counts[kind]++;
        if (correct) {
            correct_per_kind[kind]++;
            report.correct++;
        }
        report.total++;
    }
    for (const auto& [kind, count] : report.counts)
        report.per_kind[kind] = double(correct_per_kind[kind]) / double(count);
    report.overall = double(report.correct) / double(report.total);
    return report;
}

} // namespace sgvq
