#include <doctest.h>

#include <cmath>
#include <random>

#include "similarity.hpp"
#include "test_support.hpp"

using namespace sgvq;
using namespace sgvq::testsupport;

namespace {

SceneGraph chain(const std::string& s, const std::string& r, const std::string& o) {
    SceneGraph g;
    int a = g.add_node(NodeKind::Subject, s);
    int b = g.add_node(NodeKind::Relationship, r);
    int c = g.add_node(NodeKind::Subject, o);
    g.add_edge(a, b);
    g.add_edge(b, c);
    return g;
}

const McsBudget kBudget{};

} // namespace

TEST_CASE("spectral_sim hand-checked values") {
    // union keys {dog, man, feeding, throwing} -> n=4; the two relationship
    // rows/columns differ in 4 cells, so 1 - sqrt(4)/4 = 0.5
    CHECK(spectral_sim(chain("man", "feeding", "dog"),
                       chain("man", "throwing", "dog")) == doctest::Approx(0.5));
    CHECK(spectral_sim(SceneGraph{}, SceneGraph{}) == 1.0);

    SceneGraph g = chain("man", "feeding", "dog");
    CHECK(spectral_sim(g, g) == 1.0);
    CHECK(spectral_sim(g, SceneGraph{}) == doctest::Approx(1.0 - std::sqrt(2.0) / 3.0));
}

TEST_CASE("mcs hand-checked values") {
    SUBCASE("identical chains") {
        SceneGraph g = chain("man", "feeding", "dog");
        SceneGraph common = mcs(g, g, kBudget);
        CHECK(common.node_count() == 3);
        CHECK(common.edge_count() == 2);
        CHECK(mcs_sim(g, g, kBudget) == 1.0);
    }
    SUBCASE("shared subject and object, different relation") {
        SceneGraph a = chain("man", "feeding", "dog");
        SceneGraph b = chain("man", "throwing", "dog");
        SceneGraph common = mcs(a, b, kBudget);
        CHECK(common.node_count() == 2);
        CHECK(common.edge_count() == 0);
        CHECK(mcs_sim(a, b, kBudget) == doctest::Approx(0.5));
    }
    SUBCASE("wear suit vs wear hat keeps the man-wear edge") {
        SceneGraph a = chain("man", "wear", "suit");
        SceneGraph b = chain("man", "wear", "hat");
        SceneGraph common = mcs(a, b, kBudget);
        CHECK(common.node_count() == 2);
        CHECK(common.edge_count() == 1);
        CHECK(mcs_sim(a, b, kBudget) == doctest::Approx(0.5));
    }
    SUBCASE("disjoint graphs") {
        CHECK(mcs_sim(chain("man", "feeding", "dog"),
                      chain("woman", "holding", "cup"), kBudget) == 0.0);
        CHECK(mcs(chain("man", "feeding", "dog"), SceneGraph{}, kBudget).empty());
    }
    SUBCASE("empty graphs") {
        CHECK(mcs_sim(SceneGraph{}, SceneGraph{}, kBudget) == 1.0);
    }
}

TEST_CASE("mcs respects the budget") {
    SceneGraph big;
    for (int i = 0; i < 40; ++i)
        big.add_node(NodeKind::Subject, "s" + std::to_string(i));
    CHECK_THROWS_AS(mcs(big, big, McsBudget{30, 5000}), ResourceError);
    CHECK(mcs(big, big, McsBudget{64, 5000}).node_count() == 40);
}

TEST_CASE("mcs_sim matches the brute-force oracle") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        SceneGraph a = random_graph(rng, 5);
        SceneGraph b = random_graph(rng, 5);
        CAPTURE(trial);
        SceneGraph common = mcs(a, b, kBudget);
        CHECK(common.node_count() == mcs_size_oracle(a, b));
        if (a.empty() && b.empty()) continue;
        CHECK(mcs_sim(a, b, kBudget) == doctest::Approx(mcs_sim_oracle(a, b)));
    }
}

TEST_CASE("similarity axioms") {
    std::mt19937 rng(19);
    for (int trial = 0; trial < 100; ++trial) {
        SceneGraph a = random_graph(rng, 5);
        SceneGraph b = random_graph(rng, 5);
        double s = spectral_sim(a, b);
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
        CHECK(spectral_sim(b, a) == s);
        CHECK(spectral_sim(a, a) == 1.0);
        double m = mcs_sim(a, b, kBudget);
        CHECK(m >= 0.0);
        CHECK(m <= 1.0);
        CHECK(mcs_sim(b, a, kBudget) == doctest::Approx(m));
        CHECK(mcs_sim(a, a, kBudget) == 1.0);
    }
}

TEST_CASE("node_sim") {
    CHECK(node_sim({}, {}) == 1.0);
    CHECK(node_sim({"tall"}, {}) == 0.0);
    CHECK(node_sim({"brown"}, {"brown", "small"}) == doctest::Approx(0.5));
    CHECK(node_sim({"tall", "thin"}, {"tall", "thin", "old"}) ==
          doctest::Approx(2.0 / 3.0));
    CHECK(node_sim({"a"}, {"a"}) == 1.0);
}

TEST_CASE("iou") {
    CHECK(iou({0, 0, 2, 2}, {1, 1, 2, 2}) == doctest::Approx(1.0 / 7.0));
    CHECK(iou({0, 0, 2, 2}, {0, 0, 2, 2}) == 1.0);
    CHECK(iou({0, 0, 2, 2}, {5, 5, 2, 2}) == 0.0);
    CHECK(iou({0, 0, 0, 0}, {0, 0, 0, 0}) == 0.0); // degenerate boxes
}

TEST_CASE("frame_sim_series and CSV") {
    std::vector<SceneGraph> frames = {
        chain("man", "feeding", "dog"),
        chain("man", "throwing", "dog"),
        chain("man", "throwing", "dog"),
    };
    auto series = frame_sim_series(frames, SimilarityMeasure::Spectral, kBudget);
    REQUIRE(series.scores.size() == 2);
    CHECK(series.scores[0] == doctest::Approx(0.5));
    CHECK(series.scores[1] == 1.0);
    CHECK(series.fallback_indices.empty());
    CHECK(series_to_csv(series) ==
          "boundary_index,score,fallback\n0,0.5,0\n1,1,0\n");

    CHECK(frame_sim_series({}, SimilarityMeasure::Mcs, kBudget).scores.empty());
    CHECK(frame_sim_series({frames[0]}, SimilarityMeasure::Mcs, kBudget)
              .scores.empty());
}

TEST_CASE("mcs series falls back to spectral when over budget") {
    SceneGraph big;
    for (int i = 0; i < 40; ++i)
        big.add_node(NodeKind::Subject, "s" + std::to_string(i));
    std::vector<SceneGraph> frames = {big, big, chain("man", "feeding", "dog")};
    auto series = frame_sim_series(frames, SimilarityMeasure::Mcs, McsBudget{30, 5000});
    REQUIRE(series.scores.size() == 2);
    CHECK(series.fallback_indices == std::vector<size_t>{0, 1});
    CHECK(series.scores[0] == spectral_sim(big, big));
}

TEST_CASE("measure names round trip") {
    CHECK(measure_from_name("spectral") == SimilarityMeasure::Spectral);
    CHECK(measure_from_name("mcs") == SimilarityMeasure::Mcs);
    CHECK_THROWS_AS(measure_from_name("cosine"), ValidationError);
    CHECK(measure_name(SimilarityMeasure::Mcs) == std::string("mcs"));
}
