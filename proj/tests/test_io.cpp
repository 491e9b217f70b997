#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bigdeg/io.hpp"

using namespace bigdeg;

namespace {

bool specs_equal(const ClassSpec& a, const ClassSpec& b) {
    return a.name == b.name && a.variant == b.variant;
}

}  // namespace

TEST_CASE("structures survive a JSON round trip") {
    for (const auto& s : {path_graph(4), complete_graph(3), empty_graph(2), chain(5),
                          FinStructure(graph_signature(), 1)}) {
        auto back = structure_from_json(to_json(s));
        CHECK(back == s);
    }
}

TEST_CASE("structure reader rejects malformed documents") {
    auto good = to_json(path_graph(3));
    auto missing = good;
    missing.erase("tuples");
    CHECK_THROWS(structure_from_json(missing));
    auto extra = good;
    extra["color"] = "red";
    CHECK_THROWS_AS(structure_from_json(extra), std::runtime_error);
    auto short_tuples = good;
    short_tuples["tuples"] = Json::array();
    CHECK_THROWS_AS(structure_from_json(short_tuples), std::runtime_error);
    // a one-directional edge on a symmetric symbol breaks the invariant
    auto asymmetric = good;
    asymmetric["tuples"] = Json::array({Json::array({Json::array({0, 1})})});
    CHECK_THROWS_AS(structure_from_json(asymmetric), std::runtime_error);
}

TEST_CASE("class specs survive a JSON round trip") {
    for (const auto& spec :
         {linear_order_class(), rado_graph_class(), triangle_free_class()}) {
        auto back = class_spec_from_json(to_json(spec));
        CHECK(specs_equal(back, spec));
        CHECK(back.signature() == spec.signature());
    }
}

TEST_CASE("class spec reader rejects malformed documents") {
    CHECK_THROWS_AS(class_spec_from_json(Json{{"name", "x"}}), std::runtime_error);
    CHECK_THROWS_AS(class_spec_from_json(Json{{"class", "poset"}}), std::runtime_error);
    auto with_extra = to_json(linear_order_class());
    with_extra["budget"] = 7;
    CHECK_THROWS_AS(class_spec_from_json(with_extra), std::runtime_error);
    // an empty constraint set fails spec validation, not just parsing
    Json empty_constraints{{"class", "unrestricted-binary"},
                           {"name", "broken"},
                           {"constraints", Json::array()}};
    CHECK_THROWS_AS(class_spec_from_json(empty_constraints), std::runtime_error);
}

TEST_CASE("load_class_spec reads files and reports the path on failure") {
    const std::string path = "/tmp/bigdeg_io_spec.json";
    {
        std::ofstream out(path);
        out << to_json(rado_graph_class()).dump(2);
    }
    auto spec = load_class_spec(path);
    CHECK(specs_equal(spec, rado_graph_class()));
    std::remove(path.c_str());
    CHECK_THROWS_WITH_AS(load_class_spec(path),
                         doctest::Contains("/tmp/bigdeg_io_spec.json"),
                         std::runtime_error);
    {
        std::ofstream out(path);
        out << "{not json";
    }
    CHECK_THROWS_AS(load_class_spec(path), std::runtime_error);
    std::remove(path.c_str());
}

TEST_CASE("prefixes survive a JSON round trip") {
    for (const auto& spec :
         {linear_order_class(), rado_graph_class(), triangle_free_class()}) {
        auto prefix = build_prefix(spec, 6);
        auto back = prefix_from_json(to_json(prefix));
        CHECK(back.structure == prefix.structure);
        REQUIRE(back.log.size() == prefix.log.size());
        for (std::size_t i = 0; i < prefix.log.size(); ++i) {
            CHECK(back.log[i].scheduled == prefix.log[i].scheduled);
            CHECK(back.log[i].realized == prefix.log[i].realized);
            CHECK(back.log[i].stage == prefix.log[i].stage);
        }
    }
}

TEST_CASE("prefix reader re-validates initial segments") {
    auto doc = to_json(build_prefix(triangle_free_class(), 4));
    // smuggle a triangle into the structure block
    doc["structure"] = to_json(complete_graph(4));
    CHECK_THROWS(prefix_from_json(doc));
    auto prefix = build_prefix(linear_order_class(), 4);
    auto short_log = to_json(prefix);
    short_log["log"].erase(0);
    CHECK_THROWS_AS(prefix_from_json(short_log), std::runtime_error);
}

TEST_CASE("degree table CSV is the frozen column schema") {
    auto table = degree_table({linear_order_class()}, 2);
    auto csv = degree_table_csv(table);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "spec,target,degree,methods,depth,flags");
    std::getline(lines, line);
    CHECK(line == "linear-order,1:0,1,formula+generation+scan,11,");
    std::getline(lines, line);
    CHECK(line.substr(0, 15) == "linear-order,2:");
    CHECK(line.find(",2,formula+generation+scan,") != std::string::npos);
    CHECK_FALSE(std::getline(lines, line));
}

TEST_CASE("degree table JSON mirrors the CSV rows") {
    auto table = degree_table({linear_order_class()}, 3);
    auto j = degree_table_json(table);
    REQUIRE(j.at("rows").size() == table.rows.size());
    CHECK(j["rows"][2]["degree"] == 16);
    CHECK(j["rows"][2]["spec"] == "linear-order");
    CHECK(j["rows"][2]["flagged"] == false);
    CHECK(j["rows"][0]["methods"] == Json::array({"formula", "generation", "scan"}));
    // emitted documents parse back
    CHECK(Json::parse(j.dump()) == j);
}

TEST_CASE("persistence reports emit one CSV row per trial") {
    auto prefix = build_prefix(linear_order_class(), 30);
    auto report = persistence_sample(prefix, sierpinski_coloring(prefix), 8, 5, 42);
    auto csv = persistence_csv(report);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "trial,seed,colors_seen");
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK(line.find(std::to_string(rows) + ",") == 0);
        ++rows;
    }
    CHECK(rows == 5);
    CHECK(csv.find("0|1") != std::string::npos);  // both colors occur
}

TEST_CASE("catalog text joins the export lines") {
    auto catalog = enumerate_types(linear_order_class(), chain(2));
    auto text = catalog_text(catalog);
    CHECK(std::count(text.begin(), text.end(), '\n') == catalog.size());
}

TEST_CASE("config hash is stable and content-sensitive") {
    CHECK(config_hash("") == 1469598103934665603ull);
    CHECK(config_hash("a") == config_hash("a"));
    CHECK(config_hash("a") != config_hash("b"));
}
