#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "aggregate.hpp"
#include "ingest.hpp"
#include "query.hpp"
#include "test_support.hpp"

using namespace sgvq;
using namespace sgvq::testsupport;

namespace {

const Tagger& tagger() {
    static Tagger t;
    return t;
}

std::string fixture(const char* name) {
    return std::string(SGVQ_FIXTURE_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const AggregatedGraph& demo_aggregate() {
    static const AggregatedGraph agg = [] {
        auto v = load_captions(fixture("demo_captions.json"));
        std::vector<SceneGraph> frames;
        for (const auto& f : v.frames)
            frames.push_back(build_frame_graph(tagger(), f));
        return aggregate_nodesim(frames, {5, 0.5});
    }();
    return agg;
}

} // namespace

TEST_CASE("parse_question classifies and extracts patterns") {
    SUBCASE("contextual what") {
        Query q = parse_question(tagger(), "What is the man wearing?");
        CHECK(q.kind == QueryKind::Contextual);
        CHECK(q.pattern1.subject == "man");
        CHECK(q.pattern1.relation == "wear");
        CHECK(!q.pattern1.object.has_value());
        CHECK(!q.pattern1.location_wildcard);
    }
    SUBCASE("contextual where without a verb") {
        Query q = parse_question(tagger(), "Where is the man?");
        CHECK(q.kind == QueryKind::Contextual);
        CHECK(q.pattern1.subject == "man");
        CHECK(q.pattern1.location_wildcard);
    }
    SUBCASE("yesno with folded preposition") {
        Query q = parse_question(tagger(), "Is the cat sitting on the bench?");
        CHECK(q.kind == QueryKind::YesNo);
        CHECK(q.pattern1.subject == "cat");
        CHECK(q.pattern1.relation == "sit on");
        CHECK(q.pattern1.object == "bench");
    }
    SUBCASE("yesno without an object") {
        Query q = parse_question(tagger(), "Is the man eating?");
        CHECK(q.kind == QueryKind::YesNo);
        CHECK(q.pattern1.relation == "eat");
        CHECK(!q.pattern1.object.has_value());
    }
    SUBCASE("temporal") {
        Query q = parse_question(
            tagger(), "Did the man eat pizza before the man play with dog?");
        CHECK(q.kind == QueryKind::Temporal);
        CHECK(q.order == TemporalOrder::Before);
        CHECK(q.pattern1.subject == "man");
        CHECK(q.pattern1.relation == "eat");
        CHECK(q.pattern1.object == "pizza");
        REQUIRE(q.pattern2.has_value());
        CHECK(q.pattern2->relation == "play with");
        CHECK(q.pattern2->object == "dog");

        Query after = parse_question(
            tagger(), "Did the man play with dog after the man eat pizza?");
        CHECK(after.order == TemporalOrder::After);
    }
    SUBCASE("parse failures") {
        CHECK_THROWS_AS(parse_question(tagger(), ""), ParseError);
        CHECK_THROWS_AS(parse_question(tagger(), "is very so"), ParseError);
        // temporal clauses must both carry objects
        CHECK_THROWS_AS(
            parse_question(tagger(), "Did the man eat before the man play with dog?"),
            ParseError);
    }
}

TEST_CASE("exec_contextual on the demo aggregate") {
    QueryEngine engine(demo_aggregate());
    CHECK(engine.exec_contextual({"man", "wear", std::nullopt, false}) ==
          std::vector<std::string>{"hat", "suit", "tie"});
    CHECK(engine.exec_contextual({"man", "", std::nullopt, true}) ==
          std::vector<std::string>{"kitchen"});
    CHECK(engine.exec_contextual({"dog", "wear", std::nullopt, false}).empty());
    CHECK(engine.exec_contextual({"robot", "wear", std::nullopt, false}).empty());
}

TEST_CASE("exec_yesno on the demo aggregate") {
    QueryEngine engine(demo_aggregate());
    CHECK(engine.exec_yesno({"man", "wear", "suit", false}));
    CHECK(!engine.exec_yesno({"man", "wear", "shoe", false}));
    CHECK(!engine.exec_yesno({"dog", "wear", "suit", false}));
    // no object: existence of the subject-relation pair
    CHECK(engine.exec_yesno({"man", "eat", std::nullopt, false}));
    CHECK(!engine.exec_yesno({"man", "drink", std::nullopt, false}));
    // relation prefix: "play" matches the "play with" edge
    CHECK(engine.exec_yesno({"man", "play", "dog", false}));
}

TEST_CASE("exec_temporal on the demo aggregate") {
    QueryEngine engine(demo_aggregate());
    QueryPattern eat{"man", "eat", "pizza", false};
    QueryPattern play{"man", "play with", "dog", false};
    QueryPattern stand{"man", "stand in", "kitchen", false};
    QueryPattern missing{"man", "drink", "milk", false};

    CHECK(engine.exec_temporal(eat, play, TemporalOrder::Before));
    CHECK(!engine.exec_temporal(eat, play, TemporalOrder::After));
    CHECK(!engine.exec_temporal(play, eat, TemporalOrder::Before));
    CHECK(engine.exec_temporal(play, eat, TemporalOrder::After));
    CHECK(engine.exec_temporal(stand, play, TemporalOrder::Before));
    // either side unmatched: false regardless of order
    CHECK(!engine.exec_temporal(missing, play, TemporalOrder::Before));
    CHECK(!engine.exec_temporal(eat, missing, TemporalOrder::After));
    // identical events are never strictly ordered
    CHECK(!engine.exec_temporal(eat, eat, TemporalOrder::Before));
    CHECK(!engine.exec_temporal(eat, eat, TemporalOrder::After));
}

TEST_CASE("answer dispatches on question kind") {
    QueryEngine engine(demo_aggregate());
    Answer a = engine.answer(tagger(), "What is the man wearing?");
    CHECK(a.kind == QueryKind::Contextual);
    CHECK(a.labels == std::vector<std::string>{"hat", "suit", "tie"});

    a = engine.answer(tagger(), "Is the man wearing a suit?");
    CHECK(a.kind == QueryKind::YesNo);
    CHECK(a.truth);

    a = engine.answer(tagger(), "Did the man eat pizza before the man play with dog?");
    CHECK(a.kind == QueryKind::Temporal);
    CHECK(a.truth);
}

TEST_CASE("annotations_from_json") {
    auto anns = annotations_from_json(slurp(fixture("demo_annotations.json")));
    REQUIRE(anns.size() == 6);
    CHECK(anns[0].kind == QueryKind::Contextual);
    CHECK(anns[0].expected_labels ==
          std::vector<std::string>{"hat", "suit", "tie"});
    CHECK(anns[2].is_boolean);
    CHECK(anns[2].expected_truth);
    CHECK(anns[3].is_boolean);
    CHECK(!anns[3].expected_truth);

    CHECK_THROWS_AS(annotations_from_json("{}"), ParseError);
    CHECK_THROWS_AS(annotations_from_json(R"([{"question":"q","kind":"yesno"}])"),
                    ParseError);
    CHECK_THROWS_AS(
        annotations_from_json(
            R"([{"question":"q","kind":"yesno","expected":"maybe"}])"),
        ParseError);
    CHECK_THROWS_AS(
        annotations_from_json(
            R"([{"question":"q","kind":"contextual","expected":[]}])"),
        ValidationError);
    CHECK_THROWS_AS(
        annotations_from_json(
            R"([{"question":"q","kind":"sometimes","expected":"yes"}])"),
        ParseError);
}

TEST_CASE("score_answers") {
    auto anns = annotations_from_json(slurp(fixture("demo_annotations.json")));
    QueryEngine engine(demo_aggregate());
    std::vector<Answer> answers;
    for (const auto& ann : anns)
        answers.push_back(engine.answer(tagger(), ann.question));

    auto report = score_answers(answers, anns);
    CHECK(report.overall == 1.0);
    CHECK(report.total == 6);
    CHECK(report.correct == 6);
    CHECK(report.per_kind.at("contextual") == 1.0);
    CHECK(report.per_kind.at("yesno") == 1.0);
    CHECK(report.per_kind.at("temporal") == 1.0);
    CHECK(report.counts.at("contextual") == 2);

    // flip one boolean answer
    answers[2].truth = !answers[2].truth;
    report = score_answers(answers, anns);
    CHECK(report.correct == 5);
    CHECK(report.per_kind.at("yesno") == 0.5);

    // a kind mismatch scores zero even with matching payloads
    answers[2].truth = !answers[2].truth;
    answers[0].kind = QueryKind::YesNo;
    report = score_answers(answers, anns);
    CHECK(report.per_kind.at("contextual") == 0.5);

    CHECK_THROWS_AS(score_answers({}, {}), ValidationError);
    CHECK_THROWS_AS(score_answers({}, anns), ValidationError);
}

TEST_CASE("yesno agrees with contextual membership on random aggregates") {
    const std::vector<std::string> subjects = {"man", "woman", "dog"};
    const std::vector<std::string> relations = {"eat", "wear", "play with"};
    std::mt19937 rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<SceneGraph> frames;
        size_t n_frames = 1 + rng() % 3;
        for (size_t f = 0; f < n_frames; ++f) {
            SceneGraph g;
            g.frame_index = int(f);
            g.timestamp_s = double(f);
            std::map<std::string, int> subj_id;
            for (const auto& s : subjects)
                if (rng() % 2) subj_id[s] = g.add_node(NodeKind::Subject, s);
            for (const auto& [s, sid] : subj_id) {
                for (const auto& r : relations) {
                    if (rng() % 3 != 0) continue;
                    int rid = g.add_node(NodeKind::Relationship, r);
                    g.add_edge(sid, rid, double(f));
                    for (const auto& [o, oid] : subj_id) {
                        if (oid == sid || rng() % 2) continue;
                        g.add_edge(rid, oid, double(f));
                    }
                }
            }
            frames.push_back(std::move(g));
        }
        auto agg = aggregate_nodesim(frames, {frames.size(), 0.5});
        QueryEngine engine(agg);
        CAPTURE(trial);
        for (const auto& s : subjects) {
            for (const auto& r : relations) {
                auto completions =
                    engine.exec_contextual({s, r, std::nullopt, false});
                for (const auto& o : subjects) {
                    bool member = std::find(completions.begin(), completions.end(),
                                            o) != completions.end();
                    CHECK(engine.exec_yesno({s, r, o, false}) == member);
                }
            }
        }
    }
}
