#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bigdeg/prefix.hpp"

using namespace bigdeg;

TEST_CASE("linear order N=3 follows the canonical schedule") {
    auto p = build_prefix(linear_order_class(), 3);
    REQUIRE(p.size() == 3);
    // v_1 realizes the first queued gap type (x < v_0); v_2 the next.
    CHECK(p.structure.has(0, {1, 0}));  // v_1 < v_0
    CHECK(p.structure.has(0, {0, 2}));  // v_0 < v_2
    CHECK(p.structure.has(0, {1, 2}));  // v_1 < v_2
    CHECK(p.log[1].scheduled == CodeSeq{1});
    CHECK(p.log[2].scheduled == CodeSeq{2});
    CHECK(p.log[2].realized == CodeSeq{2, 2});
}

TEST_CASE("triangle-free prefix stays triangle-free at every stage") {
    auto spec = triangle_free_class();
    auto p = build_prefix(spec, 10);
    std::vector<int> front;
    for (int n = 0; n <= 10; ++n) {
        CHECK(class_member(p.structure.restrict(front), spec));
        if (n < 10) front.push_back(n);
    }
}

TEST_CASE("graph prefix of size 6 contains every 2-vertex graph") {
    auto spec = rado_graph_class();
    auto p = build_prefix(spec, 6);
    FinStructure non_edge(spec.signature(), 2);
    FinStructure edge(spec.signature(), 2);
    edge.add(0, {0, 1});
    CHECK(embeds(non_edge, p.structure));
    CHECK(embeds(edge, p.structure));
}

TEST_CASE("build_prefix is prefix-monotone and deterministic") {
    for (auto spec : {linear_order_class(), rado_graph_class(), triangle_free_class()}) {
        auto a = build_prefix(spec, 6);
        auto b = build_prefix(spec, 7);
        std::vector<int> first6{0, 1, 2, 3, 4, 5};
        CHECK(b.structure.restrict(first6) == a.structure);
        for (int n = 0; n < 6; ++n) {
            CHECK(b.log[n].scheduled == a.log[n].scheduled);
            CHECK(b.log[n].realized == a.log[n].realized);
        }
        auto again = build_prefix(spec, 6);
        CHECK(again.structure == a.structure);
    }
}

TEST_CASE("schedule is FIFO-fair: realization step bounded by queue position") {
    for (auto spec : {linear_order_class(), rado_graph_class(), triangle_free_class()}) {
        auto p = build_prefix(spec, 20);
        for (int n = 0; n < 20; ++n) {
            const auto& e = p.log[n];
            CHECK(n <= e.enqueued_at + e.queue_len_at_enqueue + 1);
            CHECK(e.realized.size() == static_cast<std::size_t>(n));
            // realized extends the scheduled type
            CHECK(std::equal(e.scheduled.begin(), e.scheduled.end(), e.realized.begin()));
            CHECK(static_cast<int>(e.scheduled.size()) == e.stage);
        }
    }
}

TEST_CASE("every realizable stage-m type is eventually scheduled") {
    // Richness over the graph prefix: by stage 6 both extensions of the
    // root have been realized (one vertex adjacent to v_0, one not).
    auto p = build_prefix(rado_graph_class(), 6);
    bool saw_edge = false, saw_nonedge = false;
    for (int n = 1; n < 6; ++n) {
        if (p.log[n].realized[0] == 1) saw_edge = true;
        if (p.log[n].realized[0] == 0) saw_nonedge = true;
    }
    CHECK(saw_edge);
    CHECK(saw_nonedge);
}

TEST_CASE("prefix_from_structure accepts class-valid enumerations only") {
    auto lo = linear_order_class();
    // Hand enumeration v_1 < v_2 < v_0 (valid: every initial segment is a chain).
    FinStructure s(lo.signature(), 3);
    s.add(0, {1, 2});
    s.add(0, {2, 0});
    s.add(0, {1, 0});
    auto p = prefix_from_structure(lo, s);
    CHECK(p.size() == 3);
    CHECK(p.log[2].stage == 2);
    CHECK(p.log[2].realized == type_of(s, 2, 2));

    auto g3 = triangle_free_class();
    CHECK_THROWS_AS(prefix_from_structure(g3, complete_graph(3)), std::domain_error);
}

TEST_CASE("sierpinski coloring follows the order relation") {
    auto p = build_prefix(linear_order_class(), 5);
    for (int j = 1; j < 5; ++j)
        for (int i = 0; i < j; ++i) {
            auto expected = p.structure.has(0, {i, j}) ? PairColor::blue : PairColor::red;
            CHECK(sierpinski_color(p, i, j) == expected);
        }
    // N=3 prefix has v_1 < v_0: pair (0,1) is red, (0,2) blue.
    CHECK(sierpinski_color(p, 0, 1) == PairColor::red);
    CHECK(sierpinski_color(p, 0, 2) == PairColor::blue);
    CHECK_THROWS_AS(sierpinski_color(p, 2, 2), std::domain_error);
    CHECK_THROWS_AS(sierpinski_color(p, 3, 1), std::domain_error);
    CHECK_THROWS_AS(sierpinski_color(build_prefix(rado_graph_class(), 3), 0, 1),
                    std::domain_error);
    auto c = sierpinski_coloring(p);
    CHECK(c.at(0, 1) == static_cast<int>(PairColor::red));
    CHECK(c.at(0, 2) == static_cast<int>(PairColor::blue));
}

TEST_CASE("persistence sampling edge cases") {
    auto p = build_prefix(linear_order_class(), 12);
    auto constant = PairColoring::constant(12, 1);
    auto rep = persistence_sample(p, constant, 5, 8, 42);
    REQUIRE(rep.trials.size() == 8);
    for (const auto& t : rep.trials) {
        CHECK(t.colors_seen == std::set<int>{1});
        CHECK(t.subcopy.size() == 5);
        CHECK(std::is_sorted(t.subcopy.begin(), t.subcopy.end()));
    }
    CHECK(rep.every_trial_saw(1));
    CHECK_FALSE(rep.every_trial_saw(0));

    auto singleton = persistence_sample(p, constant, 1, 3, 7);
    for (const auto& t : singleton.trials) CHECK(t.colors_seen.empty());

    CHECK_THROWS_AS(persistence_sample(p, constant, 13, 1, 0), std::domain_error);
}

TEST_CASE("persistence sampling is reproducible and sees both sierpinski colors") {
    auto p = build_prefix(linear_order_class(), 40);
    auto col = sierpinski_coloring(p);
    auto a = persistence_sample(p, col, 6, 25, 2024);
    auto b = persistence_sample(p, col, 6, 25, 2024);
    REQUIRE(a.trials.size() == b.trials.size());
    for (std::size_t i = 0; i < a.trials.size(); ++i) {
        CHECK(a.trials[i].seed == b.trials[i].seed);
        CHECK(a.trials[i].subcopy == b.trials[i].subcopy);
    }
    CHECK(a.every_trial_saw(static_cast<int>(PairColor::blue)));
    CHECK(a.every_trial_saw(static_cast<int>(PairColor::red)));
}

TEST_CASE("build_prefix rejects degenerate input") {
    CHECK_THROWS_AS(build_prefix(linear_order_class(), 0), std::invalid_argument);
}
