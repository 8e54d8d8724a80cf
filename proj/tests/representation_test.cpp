#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace birep;

namespace {

BidirectedGraph one_directed_loop() {
    BidirectedGraph g;
    g.vertex_count = 1;
    g.edges = {{"loop", 1, 1, EdgeKind::Directed}};
    return g;
}

TEST(Validate, DirectedLoopShapesForced) {
    Representation rep{one_directed_loop(), {2}, {{"loop", CMatrix::Zero(2, 2)}}};
    EXPECT_NO_THROW(validate(rep));
    rep.matrices["loop"] = CMatrix::Zero(2, 3);
    EXPECT_THROW(validate(rep), ShapeMismatch);
}

TEST(Validate, NonDirectedEdgesAreNormalized) {
    BidirectedGraph g;
    g.vertex_count = 2;
    g.edges = {{"u", 2, 1, EdgeKind::Undirected}};
    Representation rep{g, {1, 1}, {{"u", CMatrix::Zero(1, 1)}}};
    EXPECT_THROW(validate(rep), BadEndpoint);
}

TEST(Validate, ReportsUnknownAndMissingEdges) {
    Representation rep{one_directed_loop(), {2}, {}};
    EXPECT_THROW(validate(rep), UnknownEdge);
    rep.matrices["loop"] = CMatrix::Zero(2, 2);
    rep.matrices["ghost"] = CMatrix::Zero(1, 1);
    EXPECT_THROW(validate(rep), UnknownEdge);
}

TEST(RepNorm, ZeroAndHandComputed) {
    Representation rep{one_directed_loop(), {2}, {{"loop", CMatrix::Zero(2, 2)}}};
    EXPECT_EQ(rep_norm(rep), 0.0);

    CMatrix m(2, 2);
    m << 3.0, 4.0, 0.0, 0.0;
    rep.matrices["loop"] = m;
    EXPECT_NEAR(rep_norm(rep), 5.0, 1e-15);
}

TEST(RepNorm, SumsOverEdges) {
    BidirectedGraph g;
    g.vertex_count = 1;
    g.edges = {{"a", 1, 1, EdgeKind::Directed}, {"b", 1, 1, EdgeKind::Directed}};
    Representation rep{g, {1}, {}};
    rep.matrices["a"] = CMatrix::Constant(1, 1, 1.0);
    rep.matrices["b"] = CMatrix::Constant(1, 1, 2.0);
    EXPECT_NEAR(rep_norm(rep), 3.0, 1e-15);
}

TEST(Apply, IdentityFixesEverything) {
    Rng rng(11);
    auto g = testing::random_graph(rng, 3, 4, true);
    auto dims = testing::random_dims(rng, g.vertex_count, 4);
    auto rep = random_representation(g, dims, 1.0, 5);
    auto out = apply_isomorphism(rep, identity_isomorphism(dims));
    EXPECT_EQ(rep_distance(rep, out), 0.0);
}

TEST(Apply, DirectedLoopBySimilarity) {
    Representation rep{one_directed_loop(), {2}, {}};
    CMatrix a(2, 2), s(2, 2), expected(2, 2);
    a << 0, 1, 0, 0;
    s << 2, 0, 0, 1;
    expected << 0, 2, 0, 0;
    rep.matrices["loop"] = a;
    Isomorphism phi{{s}};
    EXPECT_LT((apply_isomorphism(rep, phi).matrices["loop"] - expected).norm(), 1e-14);
}

TEST(Apply, RespectsComposition) {
    Rng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        auto g = testing::random_graph(rng, 3, 3, true);
        auto dims = testing::random_dims(rng, g.vertex_count, 5);
        auto rep = random_representation(g, dims, 1.0, 100 + trial);
        auto phi = testing::random_invertible_iso(dims, rng);
        auto psi = testing::random_invertible_iso(dims, rng);
        auto two_steps = apply_isomorphism(apply_isomorphism(rep, phi), psi);
        auto one_step = apply_isomorphism(rep, compose(psi, phi));
        EXPECT_LT(rep_distance(two_steps, one_step),
                  1e-12 * std::max(1.0, rep_norm(one_step)));
    }
}

TEST(Apply, GroupAction) {
    Rng rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        auto g = testing::random_graph(rng, 3, 3, true);
        auto dims = testing::random_dims(rng, g.vertex_count, 4);
        auto rep = random_representation(g, dims, 1.0, 200 + trial);
        auto phi = random_near_identity_iso(dims, 0.2, 300 + trial);
        auto back = apply_isomorphism(apply_isomorphism(rep, phi), inverse(phi));
        EXPECT_LT(rep_distance(rep, back), 1e-10);
    }
}

TEST(Apply, SingularComponentRejected) {
    Representation rep{one_directed_loop(), {2}, {{"loop", CMatrix::Identity(2, 2)}}};
    Isomorphism phi{{CMatrix::Zero(2, 2)}};
    EXPECT_THROW(apply_isomorphism(rep, phi), SingularComponent);
}

TEST(Deviation, HandValues) {
    EXPECT_EQ(deviation(identity_isomorphism({3, 2})), 0.0);
    CMatrix s(2, 2);
    s << 1.0, 0.3, 0.0, 1.0;
    EXPECT_NEAR(deviation(Isomorphism{{s}}), 0.3, 1e-15);

    auto iso = random_near_identity_iso({2, 3}, 0.1, 7);
    EXPECT_NEAR(deviation(iso), 0.2, 1e-13);
}

TEST(Deviation, PermutationInvariant) {
    auto iso = random_near_identity_iso({2, 2, 2}, 0.05, 9);
    Isomorphism swapped{{iso.mats[2], iso.mats[0], iso.mats[1]}};
    EXPECT_NEAR(deviation(iso), deviation(swapped), 1e-15);
}

TEST(RandomRep, ZeroDimsGiveEmptyMatrices) {
    auto g = one_directed_loop();
    auto rep = random_representation(g, {0}, 1.0, 1);
    EXPECT_EQ(rep.matrices["loop"].size(), 0);
    EXPECT_EQ(rep_norm(rep), 0.0);
}

TEST(RandomRep, DeterministicAndScaled) {
    Rng rng(31);
    auto g = testing::random_graph(rng, 3, 4, true);
    auto dims = testing::random_dims(rng, g.vertex_count, 4);
    auto r1 = random_representation(g, dims, 1.0, 42);
    auto r2 = random_representation(g, dims, 1.0, 42);
    EXPECT_EQ(rep_distance(r1, r2), 0.0);
    auto r0 = random_representation(g, dims, 0.0, 42);
    EXPECT_EQ(rep_norm(r0), 0.0);
}

TEST(NearIdentity, ZeroEpsIsIdentity) {
    auto iso = random_near_identity_iso({3, 2}, 0.0, 5);
    EXPECT_EQ(deviation(iso), 0.0);
}

TEST(NearIdentity, Deterministic) {
    auto a = random_near_identity_iso({3, 2}, 1e-3, 5);
    auto b = random_near_identity_iso({3, 2}, 1e-3, 5);
    for (std::size_t i = 0; i < a.mats.size(); ++i)
        EXPECT_EQ((a.mats[i] - b.mats[i]).norm(), 0.0);
}

TEST(RepNorm, TriangleInequality) {
    Rng rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = testing::random_graph(rng, 3, 3, false);
        auto dims = testing::random_dims(rng, g.vertex_count, 4, 0);
        auto a = random_representation(g, dims, 1.0, 3 * trial);
        auto b = random_representation(g, dims, 1.0, 3 * trial + 1);
        auto c = random_representation(g, dims, 1.0, 3 * trial + 2);
        EXPECT_LE(rep_distance(a, c), rep_distance(a, b) + rep_distance(b, c) + 1e-12);
    }
}

TEST(ZeroDimVertices, AreAllowed) {
    BidirectedGraph g;
    g.vertex_count = 2;
    g.edges = {{"d", 1, 2, EdgeKind::Directed}, {"u", 1, 2, EdgeKind::Undirected}};
    auto rep = random_representation(g, {0, 3}, 1.0, 8);
    EXPECT_EQ(rep.matrices["d"].rows(), 3);
    EXPECT_EQ(rep.matrices["d"].cols(), 0);
    EXPECT_EQ(rep_norm(rep), 0.0);
    auto phi = random_near_identity_iso(rep.dims, 0.01, 4);
    auto out = apply_isomorphism(rep, phi);
    EXPECT_EQ(rep_distance(rep, out), 0.0);
}

}  // namespace
