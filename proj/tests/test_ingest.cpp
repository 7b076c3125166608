#include <doctest.h>

#include "ingest.hpp"
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

std::vector<int> subjects_with_label(const SceneGraph& g, const std::string& label) {
    std::vector<int> out;
    for (const auto& [id, n] : g.nodes())
        if (n.kind == NodeKind::Subject && n.label == label) out.push_back(id);
    return out;
}

} // namespace

TEST_CASE("captions_from_json validates structure") {
    CHECK_THROWS_AS(captions_from_json("nope"), ParseError);
    CHECK_THROWS_AS(captions_from_json(R"({"frames":[]})"), ParseError);
    // duplicate frame_index
    CHECK_THROWS_WITH_AS(
        captions_from_json(R"({"video_id":"v","frames":[
            {"frame_index":1,"timestamp_s":0,"captions":[]},
            {"frame_index":1,"timestamp_s":1,"captions":[]}]})"),
        doctest::Contains("frame 1"), ValidationError);
    // decreasing timestamp
    CHECK_THROWS_AS(
        captions_from_json(R"({"video_id":"v","frames":[
            {"frame_index":0,"timestamp_s":5,"captions":[]},
            {"frame_index":1,"timestamp_s":4,"captions":[]}]})"),
        ValidationError);
    // confidence out of range
    CHECK_THROWS_AS(
        captions_from_json(R"({"video_id":"v","frames":[
            {"frame_index":0,"timestamp_s":0,"captions":[
              {"text":"man","bbox":[0,0,1,1],"confidence":1.5}]}]})"),
        ValidationError);
    CHECK_THROWS_AS(
        captions_from_json(R"({"video_id":"v","frames":[
            {"frame_index":0,"timestamp_s":0,"captions":[
              {"text":"man","bbox":[0,0,1],"confidence":0.5}]}]})"),
        ParseError);
}

TEST_CASE("load_captions reads the fixture") {
    auto v = load_captions(fixture("scene_captions.json"));
    CHECK(v.video_id == "scene");
    REQUIRE(v.frames.size() == 2);
    CHECK(v.frames[0].captions.size() == 3);
    CHECK(v.frames[1].timestamp_s == 1.0);
    CHECK_THROWS_AS(load_captions(fixture("missing.json")), NotFoundError);
}

TEST_CASE("build_frame_graph merges overlapping same-label subjects") {
    auto v = load_captions(fixture("scene_captions.json"));
    SceneGraph g = build_frame_graph(tagger(), v.frames[0]);

    // two boxed women at IoU ~0.8 merge; the boxless cat object adopts the
    // boxed cat's bounds
    auto women = subjects_with_label(g, "woman");
    auto cats = subjects_with_label(g, "cat");
    REQUIRE(women.size() == 1);
    REQUIRE(cats.size() == 1);
    CHECK(subjects_with_label(g, "bench").size() == 1);
    CHECK(g.attr_set(women[0]) == std::set<std::string>{"long hair"});
    CHECK(g.attr_set(cats[0]) == std::set<std::string>{"brown"});
    CHECK(g.node(cats[0]).bbox == BoundingBox{300, 200, 60, 40});
    CHECK(g.timestamp_s == 0.0);
}

TEST_CASE("build_frame_graph keeps disjoint same-label subjects apart") {
    Frame f;
    f.captions.push_back({"Woman wearing hat", {0, 0, 50, 100}, 0.9, 0, 0.0});
    f.captions.push_back({"Woman holding cup", {500, 0, 50, 100}, 0.9, 0, 0.0});
    SceneGraph g = build_frame_graph(tagger(), f);
    CHECK(subjects_with_label(g, "woman").size() == 2);

    // lowering the IoU bar to zero merges them
    SceneGraph merged = build_frame_graph(tagger(), f, 0.0, 0.0);
    CHECK(subjects_with_label(merged, "woman").size() == 1);
}

TEST_CASE("min_confidence filters captions monotonically") {
    auto v = load_captions(fixture("scene_captions.json"));
    size_t prev = SIZE_MAX;
    for (double cut : {0.0, 0.86, 0.89, 0.91, 0.99}) {
        SceneGraph g = build_frame_graph(tagger(), v.frames[0], cut);
        CHECK(g.node_count() <= prev);
        prev = g.node_count();
    }
    SceneGraph empty = build_frame_graph(tagger(), v.frames[0], 0.99);
    CHECK(empty.empty());
}

TEST_CASE("build_frame_graph is deterministic") {
    auto v = load_captions(fixture("scene_captions.json"));
    for (const auto& f : v.frames) {
        SceneGraph a = build_frame_graph(tagger(), f);
        SceneGraph b = build_frame_graph(tagger(), f);
        CHECK(structurally_equal(a, b));
    }
}
