#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace birep;

namespace {

TEST(JsonIo, RepresentationRoundTrip) {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = testing::random_graph(rng, 4, 5, true);
        auto dims = testing::random_dims(rng, g.vertex_count, 4, 0);
        auto rep = random_representation(g, dims, 1.0, 50 + trial);
        EXPECT_EQ(parse_representation(serialize(rep)), rep);
    }
}

TEST(JsonIo, EmptyGraphRoundTrips) {
    Representation rep{BidirectedGraph{1, {}}, {3}, {}};
    auto back = parse_representation(serialize(rep));
    EXPECT_EQ(back, rep);
}

TEST(JsonIo, MalformedKindIsParseError) {
    const std::string text = R"({
      "graph": {"t": 1, "edges": [{"id": "e", "tail": 1, "head": 1, "kind": "sideways"}]},
      "dims": [1], "matrices": {}})";
    EXPECT_THROW(parse_representation(text), ParseError);
}

TEST(JsonIo, SyntaxErrorCarriesPosition) {
    try {
        parse_representation("{\"graph\": ");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(e.position().find("byte"), std::string::npos);
    }
}

TEST(JsonIo, MatrixShapeChecked) {
    json j = {{"rows", 2}, {"cols", 2}, {"data", {{1.0, 0.0}}}};
    EXPECT_THROW(matrix_from_json(j), ParseError);
}

TEST(JsonIo, QuiverRepRoundTrip) {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto q = testing::random_quiver(rng, 3, 4);
        auto dims = testing::random_dims(rng, static_cast<int>(q.vertices.size()), 4);
        auto rep = random_representation(q, dims, 1.0, 60 + trial);
        EXPECT_EQ(parse_quiver_rep(serialize(rep)), rep);
    }
}

TEST(JsonIo, DoubledRepKeepsStarLabelsAndProvenance) {
    Rng rng(7);
    auto g = testing::random_graph(rng, 3, 3, true);
    auto dims = testing::random_dims(rng, g.vertex_count, 3);
    auto rep = random_representation(g, dims, 1.0, 70);
    auto doubled = underline_graph(g);
    auto urep = underline_rep(rep, doubled);
    auto j = doubled_rep_to_json(urep, doubled);
    EXPECT_EQ(j["quiver"]["vertices"][static_cast<std::size_t>(g.vertex_count)],
              "1*");
    auto [back_rep, back_doubled] = doubled_rep_from_json(j);
    EXPECT_EQ(back_rep, urep);
    EXPECT_EQ(back_doubled, doubled);
    EXPECT_NO_THROW(validate_doubled(back_rep, back_doubled));
}

TEST(JsonIo, IsomorphismRoundTrip) {
    auto iso = random_near_identity_iso({2, 3}, 0.1, 4);
    std::vector<std::string> labels = {"1", "2"};
    auto back = iso_from_json(iso_to_json(iso, labels), labels);
    for (std::size_t i = 0; i < iso.mats.size(); ++i)
        EXPECT_EQ((iso.mats[i] - back.mats[i]).norm(), 0.0);
}

TEST(JsonIo, PairAndLayoutRoundTrip) {
    Rng rng(9);
    auto q = testing::random_quiver(rng, 3, 3);
    auto dims = testing::random_dims(rng, static_cast<int>(q.vertices.size()), 3);
    auto rep = random_representation(q, dims, 1.0, 80);
    auto [pair, layout] = encode_pair(rep);
    auto pair_back = pair_from_json(pair_to_json(pair));
    EXPECT_EQ((pair.m - pair_back.m).norm(), 0.0);
    EXPECT_EQ((pair.n - pair_back.n).norm(), 0.0);
    auto layout_back = layout_from_json(layout_to_json(layout));
    EXPECT_EQ(layout_back.quiver, layout.quiver);
    EXPECT_EQ(layout_back.dims, layout.dims);
    EXPECT_EQ(layout_back.copy_size, layout.copy_size);
    EXPECT_EQ(layout_back.vertex_offsets, layout.vertex_offsets);
    EXPECT_EQ(layout_back.arrow_blocks.size(), layout.arrow_blocks.size());
}

TEST(JsonIo, ReportRoundTrip) {
    ExperimentReport report;
    report.description = "demo";
    report.trials.push_back({42, 1e-3, 2e-3, 1.9e-3, 0.95, 1e-12, Route::BidirectedDoubled});
    report.failures.push_back({43, 1e-3, "projection singular"});
    report.skipped = 1;
    detail::finalize_report(report);
    report.wall_seconds = 0.25;
    EXPECT_EQ(report_from_json(report_to_json(report)), report);
}

TEST(JsonIo, CsvHasFixedHeaderAndOneRowPerTrial) {
    ExperimentReport report;
    EXPECT_EQ(emit_report(report, ReportFormat::Csv), "seed,eps,dist,dev,ratio,residual,route\n");
    report.trials.push_back({1, 1e-3, 1.0, 1.0, 1.0, 0.0, Route::Pair});
    report.trials.push_back({2, 1e-3, 1.0, 1.0, 1.0, 0.0, Route::QuiverDirect});
    const std::string csv = emit_report(report, ReportFormat::Csv);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
    EXPECT_NE(csv.find("pair"), std::string::npos);
    EXPECT_NE(csv.find("quiver-direct"), std::string::npos);
}

}  // namespace
