#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bigdeg/coding_tree.hpp"

using namespace bigdeg;

namespace {

// The reference 6-element order q2 < q5 < q0 < q3 < q1 < q4 used by the
// coding-tree drawing.
EnumeratedPrefix reference_q_prefix() {
    auto spec = linear_order_class();
    std::vector<int> order{2, 5, 0, 3, 1, 4};
    FinStructure s(spec.signature(), 6);
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b) s.add(0, {order[a], order[b]});
    return prefix_from_structure(spec, s);
}

// The reference 7-vertex triangle-free graph whose coding nodes are
// 1, 01, 001, 1001, 00001, 010101.
EnumeratedPrefix reference_g3_prefix() {
    auto spec = triangle_free_class();
    FinStructure g(spec.signature(), 7);
    std::vector<CodeSeq> coding{{}, {1}, {0, 1}, {0, 0, 1}, {1, 0, 0, 1},
                                {0, 0, 0, 0, 1}, {0, 1, 0, 1, 0, 1}};
    for (int n = 0; n < 7; ++n)
        for (int i = 0; i < n; ++i)
            if (coding[n][i]) g.add(0, {i, n});
    return prefix_from_structure(spec, g);
}

}  // namespace

TEST_CASE("meet, incomparability and lex order") {
    CodeSeq a{0, 1}, b{1}, c{1, 0}, d{1, 1};
    CHECK(meet(a, b) == CodeSeq{});
    CHECK(meet(c, d) == CodeSeq{1});
    CHECK(incomparable(a, b));
    CHECK_FALSE(incomparable(b, c));
    CHECK(lex_compare(a, b) == LexOrder::less);
    CHECK(lex_compare(d, c) == LexOrder::greater);
    CHECK_THROWS_AS(lex_compare(b, c), std::domain_error);
    CHECK_THROWS_AS(lex_compare(b, b), std::domain_error);
}

TEST_CASE("passing numbers index the longer node at the shorter length") {
    CodeSeq t{1, 0, 1}, s1{1}, s2{1, 0};
    CHECK(passing_number(t, s1) == 0);
    CHECK(passing_number(t, s2) == 1);
    CHECK_THROWS_AS(passing_number(t, t), std::domain_error);
}

TEST_CASE("meet closure") {
    std::vector<CodeSeq> s{{0, 0}, {0, 1}};
    auto mc = meet_closure(s);
    CHECK(mc == std::vector<CodeSeq>{{0}, {0, 0}, {0, 1}});
    CHECK(meet_closure(mc) == mc);  // idempotent
    // a chain adds nothing
    std::vector<CodeSeq> chain{{1}, {1, 0}, {1, 0, 0}};
    CHECK(meet_closure(chain).size() == 3);
    // 3-antichain with distinct meets
    std::vector<CodeSeq> anti{{0, 0}, {0, 1}, {1}};
    CHECK(meet_closure(anti).size() == 5);
    // monotone
    for (const auto& node : meet_closure({anti[0], anti[1]})) {
        auto big = meet_closure(anti);
        CHECK(std::find(big.begin(), big.end(), node) != big.end());
    }
}

TEST_CASE("diagonality of antichains") {
    CHECK(is_diagonal({{0, 1, 1}}));
    CHECK(is_diagonal({{0, 0}, {0, 1, 0}}));
    // all four length-2 nodes: meets <0> and <1> share a length
    CHECK_FALSE(is_diagonal({{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
    CHECK_THROWS_AS(is_diagonal({{0}, {0, 1}}), std::domain_error);
}

TEST_CASE("coding tree of the reference rational order matches the drawing") {
    auto tree = build_coding_tree(reference_q_prefix(), 6);
    // one node per gap: level l has l+1 nodes
    for (int l = 0; l <= 6; ++l)
        CHECK(tree.levels[l].size() == static_cast<std::size_t>(l + 1));
    // coding nodes (codes: 1 = "x < q_i", 2 = "q_i < x")
    CHECK(tree.coding[1] == CodeSeq{2});
    CHECK(tree.coding[2] == CodeSeq{1, 1});
    CHECK(tree.coding[3] == CodeSeq{2, 1, 2});
    CHECK(tree.coding[4] == CodeSeq{2, 2, 2, 2});
    CHECK(tree.coding[5] == CodeSeq{1, 1, 2, 1, 1});
    // exactly one splitting node per level, and it is the coding node
    for (int l = 0; l < 6; ++l) {
        int splitters = 0;
        for (const auto& node : tree.levels[l]) {
            auto succ = tree.successors(node);
            CHECK(!succ.empty());
            if (succ.size() == 2) {
                ++splitters;
                CHECK(node == tree.coding[l]);
            } else {
                CHECK(succ.size() == 1);
            }
        }
        CHECK(splitters == 1);
    }
}

TEST_CASE("canonical linear-order prefix also splits exactly once per level") {
    auto tree = build_coding_tree(build_prefix(linear_order_class(), 8), 8);
    for (int l = 0; l < 8; ++l) {
        int splitters = 0;
        for (const auto& node : tree.levels[l])
            if (tree.successors(node).size() == 2) ++splitters;
        CHECK(splitters == 1);
        CHECK(tree.levels[l].size() == static_cast<std::size_t>(l + 1));
    }
}

TEST_CASE("unrestricted graph tree is the full binary tree") {
    auto tree = build_coding_tree(build_prefix(rado_graph_class(), 6), 6);
    for (int l = 0; l <= 6; ++l)
        CHECK(tree.levels[l].size() == static_cast<std::size_t>(1) << l);
}

TEST_CASE("triangle-free coding tree matches the drawing") {
    auto tree = build_coding_tree(reference_g3_prefix(), 6);
    CHECK(tree.coding[1] == CodeSeq{1});
    CHECK(tree.coding[2] == CodeSeq{0, 1});
    CHECK(tree.coding[3] == CodeSeq{0, 0, 1});
    CHECK(tree.coding[4] == CodeSeq{1, 0, 0, 1});
    CHECK(tree.coding[5] == CodeSeq{0, 0, 0, 0, 1});
    CHECK(tree.coding[6] == CodeSeq{0, 1, 0, 1, 0, 1});
    // v_0 E v_1, so no type has edges to both
    CHECK_FALSE(tree.contains({1, 1}));
    CHECK(tree.levels[2] ==
          std::vector<CodeSeq>{{0, 0}, {0, 1}, {1, 0}});
    CHECK(tree.levels[3] ==
          std::vector<CodeSeq>{{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 0, 1}});
}

TEST_CASE("coding-tree faithfulness: types decode the prefix relations") {
    for (auto spec : {linear_order_class(), rado_graph_class(), triangle_free_class()}) {
        auto prefix = build_prefix(spec, 7);
        auto tree = build_coding_tree(prefix, 7);
        for (int n = 0; n < 7; ++n)
            for (int m = 0; m < n; ++m)
                CHECK(tree.coding[n][m] == pair_code(prefix.structure, m, n));
    }
}

TEST_CASE("tree dump is one line per node with consistent parents") {
    auto tree = build_coding_tree(build_prefix(rado_graph_class(), 2), 2);
    CHECK(dump_tree(tree) ==
          "0 -1 -1 0\n"
          "1 0 0 1\n"
          "1 0 1 -1\n"
          "2 0 0 -1\n"
          "2 0 1 -1\n"
          "2 1 0 -1\n"
          "2 1 1 -1\n");
}

TEST_CASE("sauer relation on sequence pairs") {
    auto spec = rado_graph_class();
    FinStructure edge(spec.signature(), 2);
    edge.add(0, {0, 1});
    FinStructure non_edge(spec.signature(), 2);
    CHECK(sauer_relation(spec, {}, {1}) == edge);
    CHECK(sauer_relation(spec, {}, {0}) == non_edge);
    CHECK(sauer_relation(spec, {0}, {1}) == non_edge);  // equal lengths
    CHECK(sauer_relation(spec, {1, 1}, {1}) == edge);   // orientation-reversed
    CHECK_THROWS_AS(sauer_relation(spec, {1}, {1}), std::domain_error);
}

TEST_CASE("sauer universe of depth 6 contains every graph on at most 4 vertices") {
    auto spec = rado_graph_class();
    auto universe = sauer_universe(spec, 6);
    CHECK(universe.nodes.size() == 127);
    for (int n = 1; n <= 4; ++n)
        for (const auto& g : all_members_of_size(spec, n))
            CHECK(embeds(g, universe.structure));
}

TEST_CASE("strong subtrees") {
    // ambient: full binary tree of depth 3
    TreeSubset t;
    t.level_set = {0, 1, 2, 3};
    for (int l = 0; l <= 3; ++l)
        for (int x = 0; x < (1 << l); ++x) {
            CodeSeq node;
            for (int b = l - 1; b >= 0; --b) node.push_back((x >> b) & 1);
            t.nodes.push_back(node);
        }
    CHECK(is_strong_subtree(t, t));

    // hand-picked 2-strong subtree on levels {0, 2}
    TreeSubset s;
    s.level_set = {0, 2};
    s.nodes = {{}, {0, 1}, {1, 0}};
    CHECK(is_strong_subtree(t, s));

    // dropping one successor direction breaks it
    TreeSubset bad = s;
    bad.nodes = {{}, {0, 1}};
    CHECK_FALSE(is_strong_subtree(t, bad));

    // nodes outside the ambient tree are rejected
    TreeSubset alien;
    alien.level_set = {0};
    alien.nodes = {{7}};
    CHECK_FALSE(is_strong_subtree(t, alien));
}

TEST_CASE("build_coding_tree depth is bounded by the prefix") {
    CHECK_THROWS_AS(build_coding_tree(build_prefix(linear_order_class(), 3), 4),
                    std::domain_error);
}
