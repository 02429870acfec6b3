#include "doctest.h"
#include "support.hpp"

#include "qga/blocks.hpp"
#include "qga/canonical.hpp"
#include "qga/genus.hpp"
#include "qga/surface.hpp"

using namespace qga;

TEST_CASE("bundled blocks")
{
    CHECK(block(BlockKind::I).vertices == 2);
    CHECK(block(BlockKind::II).arrows.size() == 3);
    CHECK(block(BlockKind::II).outlets.size() == 3);
    CHECK(block(BlockKind::IIIa).outlets.size() == 1);
    CHECK(block(BlockKind::IV).vertices == 4);
    CHECK(block(BlockKind::IV).outlets.size() == 2);
    CHECK(block(BlockKind::V).vertices == 5);
    CHECK(block(BlockKind::V).arrows.size() == 8);
    CHECK_THROWS_AS(parse_blocks("block I\nvertices 2\nend\n"), FormatError);
}

TEST_CASE("gluing two type I blocks gives a path")
{
    const auto r = glue({BlockKind::I, BlockKind::I}, {{{0, 1}, {1, 0}}});
    CHECK(r.quiver == support::path_quiver(3));
    CHECK(r.vertex_map[1][0] == 1);
}

TEST_CASE("invalid matchings")
{
    CHECK_THROWS_AS(glue({BlockKind::II}, {{{0, 0}, {0, 1}}}), std::invalid_argument);
    CHECK_THROWS_AS(glue({BlockKind::I, BlockKind::I, BlockKind::I}, {{{0, 1}, {1, 0}}, {{0, 1}, {2, 0}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(glue({BlockKind::IIIa, BlockKind::I}, {{{0, 1}, {1, 0}}}), std::invalid_argument);
}

TEST_CASE("gluing cancels opposite arrows")
{
    // Two type II blocks sharing two outlets in opposite directions.
    const auto r = glue_labelled({{BlockKind::II, {"a", "b", "c"}}, {BlockKind::II, {"b", "a", "d"}}});
    CHECK(r.quiver.arrows(r.vertex_of.at("a"), r.vertex_of.at("b")) == 0);
    CHECK(r.quiver.arrows(r.vertex_of.at("b"), r.vertex_of.at("a")) == 0);
    CHECK(!validate(r.quiver));
}

TEST_CASE("rectangle gadget")
{
    std::vector<LabelledBlock> blocks;
    for (int i = 0; i < 4; ++i)
        blocks.push_back({BlockKind::II, {"m" + std::to_string(i), "m" + std::to_string((i + 1) % 4),
                                          "q" + std::to_string(i)}});
    const auto r = glue_labelled(blocks);
    CHECK(r.quiver.size() == 8);
    CHECK(r.quiver.arrow_count() == 12);
    CHECK(is_planar(underlying_graph(r.quiver)));
}

TEST_CASE("sphere quiver")
{
    const auto s = sphere4_glue();
    CHECK(s.quiver.size() == 6);
    CHECK(is_planar(underlying_graph(s.quiver)));
    CHECK(is_isomorphic(s.quiver, quiver_from_matrix(signed_adjacency(sphere4_triangulation()))));
}

TEST_CASE("R_n counts")
{
    for (int n = 1; n <= 4; ++n) {
        const auto g = construct_rn(n);
        CHECK(g.vertex_count() == static_cast<std::size_t>(4 * n * (n + 1)));
        CHECK(g.edge_count() == static_cast<std::size_t>(4 * n * (n + 1) + 4 * n * n + 2 * n));
    }
    CHECK_THROWS(construct_rn(0));
}

TEST_CASE("T_n structure")
{
    for (int n = 1; n <= 3; ++n) {
        const auto t = construct_tn(n);
        CHECK(t.type_ii_blocks == static_cast<std::size_t>(8 * n * n + 4 * n));
        CHECK(t.type_iv_blocks == static_cast<std::size_t>(2 * n));
        // One vertex per arc of the surface with 4n^2 + 2n + 2 punctures.
        CHECK(t.quiver.size() == static_cast<std::size_t>(arc_count({n, 0, 4 * n * n + 2 * n + 2, 0})));
        CHECK(!validate(t.quiver));
        CHECK(is_subdivision_embedding(underlying_graph(t.quiver), construct_rn(n), t.rn_vertex, t.rn_edge_paths));
    }
    CHECK_THROWS(construct_tn(0));
}

TEST_CASE("subdivision check rejects broken maps")
{
    const auto t = construct_tn(1);
    const auto host = underlying_graph(t.quiver);
    const auto rn = construct_rn(1);
    auto paths = t.rn_edge_paths;
    std::swap(paths[0], paths[1]);
    CHECK(!is_subdivision_embedding(host, rn, t.rn_vertex, paths));
    auto map = t.rn_vertex;
    map[0] = map[1];
    CHECK(!is_subdivision_embedding(host, rn, map, t.rn_edge_paths));
}

TEST_CASE("T_1 has genus 1")
{
    const auto r = min_genus(underlying_graph(construct_tn(1).quiver));
    CHECK(r.exact());
    CHECK(r.genus == 1);
}

TEST_CASE("torus quivers")
{
    CHECK(torus_planar_quiver(1) == support::markov());
    for (int p = 1; p <= 4; ++p) {
        const auto q = torus_planar_quiver(p);
        CHECK(q.size() == static_cast<std::size_t>(3 * p));
        CHECK(is_planar(underlying_graph(q)));
        CHECK(is_isomorphic(q, quiver_from_matrix(signed_adjacency(torus_triangulation(p)))));
    }
}
