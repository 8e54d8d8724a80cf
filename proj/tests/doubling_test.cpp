#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace birep;

namespace {

/// The two-vertex graph with one edge of each kind (directed 1->2,
/// undirected 1--2, bidirected loop at 2) used throughout as a worked example.
BidirectedGraph example_graph() {
    BidirectedGraph g;
    g.vertex_count = 2;
    g.edges = {{"alpha", 1, 2, EdgeKind::Directed},
               {"beta", 1, 2, EdgeKind::Undirected},
               {"gamma", 2, 2, EdgeKind::Bidirected}};
    return g;
}

TEST(UnderlineGraph, ExampleGraph) {
    auto d = underline_graph(example_graph());
    ASSERT_EQ(d.base_vertex_count, 2);
    ASSERT_EQ(d.quiver.vertices,
              (std::vector<std::string>{"1", "2", "1*", "2*"}));
    // expected arrows: alpha: 1->2, alpha*: 2*->1*, beta: 2->1*, beta*: 1->2*,
    // gamma: 2*->2, gamma*: 2*->2
    auto arrow = [&](const std::string& id) { return *d.quiver.find_arrow(id); };
    EXPECT_EQ(arrow("alpha"), (Arrow{"alpha", 0, 1}));
    EXPECT_EQ(arrow("alpha*"), (Arrow{"alpha*", 3, 2}));
    EXPECT_EQ(arrow("beta"), (Arrow{"beta", 1, 2}));
    EXPECT_EQ(arrow("beta*"), (Arrow{"beta*", 0, 3}));
    EXPECT_EQ(arrow("gamma"), (Arrow{"gamma", 3, 1}));
    EXPECT_EQ(arrow("gamma*"), (Arrow{"gamma*", 3, 1}));
    EXPECT_NO_THROW(validate(d));
}

TEST(UnderlineGraph, NoEdges) {
    BidirectedGraph g;
    g.vertex_count = 3;
    auto d = underline_graph(g);
    EXPECT_EQ(d.quiver.vertices.size(), 6u);
    EXPECT_TRUE(d.quiver.arrows.empty());
}

TEST(UnderlineGraph, InvolutionIsSelfInverse) {
    Rng rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = testing::random_graph(rng, 4, 5, true);
        auto d = underline_graph(g);
        const auto& inv = *d.quiver.involution;
        for (std::size_t v = 0; v < d.quiver.vertices.size(); ++v)
            EXPECT_EQ(inv.vertex_map[static_cast<std::size_t>(inv.vertex_map[v])],
                      static_cast<int>(v));
        for (const auto& [id, star] : inv.arrow_map) EXPECT_EQ(inv.arrow_map.at(star), id);
        EXPECT_EQ(d.quiver.arrows.size(), 2 * g.edges.size());
    }
}

TEST(UnderlineRep, ExamplePlacements) {
    Rng rng(4);
    Representation rep{example_graph(), {2, 3}, {}};
    rep.matrices["alpha"] = random_gaussian(3, 2, rng);  // directed 1->2: n2 x n1
    rep.matrices["beta"] = random_gaussian(2, 3, rng);   // undirected: n1 x n2
    rep.matrices["gamma"] = random_gaussian(3, 3, rng);  // bidirected loop at 2
    auto d = underline_graph(rep.graph);
    auto u = underline_rep(rep, d);
    EXPECT_EQ(u.dims, (DimensionVector{2, 3, 2, 3}));
    EXPECT_EQ((u.matrices["alpha"] - rep.matrices["alpha"]).norm(), 0.0);
    EXPECT_EQ((u.matrices["alpha*"] - rep.matrices["alpha"].transpose()).norm(), 0.0);
    EXPECT_EQ((u.matrices["beta"] - rep.matrices["beta"]).norm(), 0.0);
    EXPECT_EQ((u.matrices["beta*"] - rep.matrices["beta"].transpose()).norm(), 0.0);
    EXPECT_EQ((u.matrices["gamma"] - rep.matrices["gamma"]).norm(), 0.0);
    EXPECT_EQ((u.matrices["gamma*"] - rep.matrices["gamma"].transpose()).norm(), 0.0);
    EXPECT_NO_THROW(validate_doubled(u, d));
}

TEST(UnderlineRep, ZeroRepDoublesToZero) {
    auto rep = random_representation(example_graph(), {2, 2}, 0.0, 1);
    EXPECT_EQ(rep_norm(underline_rep(rep)), 0.0);
}

TEST(UnderlineRep, NormDoubles) {
    Rng rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = testing::random_graph(rng, 4, 4, true);
        auto dims = testing::random_dims(rng, g.vertex_count, 4);
        auto a = random_representation(g, dims, 1.0, 2 * trial);
        auto b = random_representation(g, dims, 1.0, 2 * trial + 1);
        auto d = underline_graph(g);
        EXPECT_NEAR(rep_distance(underline_rep(a, d), underline_rep(b, d)),
                    2.0 * rep_distance(a, b), 1e-12);
        EXPECT_NEAR(rep_norm(underline_rep(a, d)), 2.0 * rep_norm(a), 1e-12);
    }
}

TEST(UnderlineIso, ScalarExample) {
    Isomorphism phi{{CMatrix::Constant(1, 1, 2.0)}};
    auto u = underline_iso(phi);
    ASSERT_EQ(u.mats.size(), 2u);
    EXPECT_NEAR(u.mats[0](0, 0).real(), 2.0, 1e-15);
    EXPECT_NEAR(u.mats[1](0, 0).real(), 0.5, 1e-15);
}

TEST(UnderlineIso, IdentityAndSingular) {
    auto id = identity_isomorphism({2, 3});
    EXPECT_EQ(deviation(underline_iso(id)), 0.0);
    EXPECT_THROW(underline_iso(Isomorphism{{CMatrix::Zero(2, 2)}}), SingularComponent);
}

TEST(UnderlineIso, IsDoubledIsomorphism) {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = testing::random_graph(rng, 3, 4, true);
        auto dims = testing::random_dims(rng, g.vertex_count, 5);
        auto a = random_representation(g, dims, 1.0, 400 + trial);
        auto phi = testing::random_invertible_iso(dims, rng);
        auto b = apply_isomorphism(a, phi);
        auto d = underline_graph(g);
        EXPECT_LT(iso_residual(underline_rep(a, d), underline_rep(b, d), underline_iso(phi)),
                  1e-10);
    }
}

TEST(Doubling, Equivariance) {
    Rng rng(10);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = testing::random_graph(rng, 3, 4, true);
        auto dims = testing::random_dims(rng, g.vertex_count, 5);
        auto a = random_representation(g, dims, 1.0, 500 + trial);
        auto phi = testing::random_invertible_iso(dims, rng);
        auto d = underline_graph(g);
        auto lhs = underline_rep(apply_isomorphism(a, phi), d);
        auto rhs = apply_isomorphism(underline_rep(a, d), underline_iso(phi));
        EXPECT_LT(rep_distance(lhs, rhs), 1e-10 * std::max(1.0, rep_norm(lhs)));
    }
}

TEST(ValidateDoubled, CatchesBrokenTransposePairing) {
    auto rep = random_representation(example_graph(), {2, 2}, 1.0, 3);
    auto d = underline_graph(rep.graph);
    auto u = underline_rep(rep, d);
    u.matrices["beta*"](0, 0) += 1e-9;
    EXPECT_THROW(validate_doubled(u, d), ShapeMismatch);
}

}  // namespace
