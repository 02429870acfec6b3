#include "doctest.h"
#include "support.hpp"

#include "qga/canonical.hpp"
#include "qga/catalog.hpp"
#include "qga/genus.hpp"
#include "qga/mutation_class.hpp"
#include "qga/surface.hpp"

using namespace qga;

namespace {

SimpleGraph induced(const SimpleGraph& g, const std::vector<std::size_t>& keep)
{
    SimpleGraph h(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = i + 1; j < keep.size(); ++j)
            if (g.has_edge(keep[i], keep[j]))
                h.add_edge(i, j);
    return h;
}

// Searches every vertex subset of the right size.
bool has_full_subgraph(const SimpleGraph& host, const SimpleGraph& pattern)
{
    const std::size_t n = host.vertex_count(), k = pattern.vertex_count();
    const auto target = canonical_graph_key(pattern);
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
        std::vector<std::size_t> keep;
        for (std::size_t v = 0; v < n; ++v)
            if (pick[v])
                keep.push_back(v);
        if (canonical_graph_key(induced(host, keep)) == target)
            return true;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return false;
}

}  // namespace

TEST_CASE("vertex counts")
{
    CHECK(named("E6").quiver.size() == 6);
    CHECK(underlying_graph(named("E6").quiver).edge_count() == 5);
    CHECK(named("E7").quiver.size() == 7);
    CHECK(named("E8").quiver.size() == 8);
    CHECK(named("E6(1)").quiver.size() == 7);
    CHECK(named("E7(1)").quiver.size() == 8);
    CHECK(named("E8(1)").quiver.size() == 9);
    CHECK(named("E6(1,1)").quiver.size() == 8);
    CHECK(named("E7(1,1)").quiver.size() == 9);
    CHECK(named("E8(1,1)").quiver.size() == 10);
    CHECK(named("X6").quiver.size() == 6);
    CHECK(named("X7").quiver.size() == 7);
    for (const auto& name : catalog_names())
        CHECK(!validate(named(name).quiver));
    CHECK_THROWS_AS(named("E9"), std::invalid_argument);
}

TEST_CASE("X7 underlying graph collapses its double arrows")
{
    const auto x7 = named("X7");
    const auto g = underlying_graph(x7.quiver);
    CHECK(g.vertex_count() == 7);
    CHECK(g.edge_count() == 9);
    CHECK(x7.quiver.arrow_count() == 12);
    CHECK(x7.vertex("y4") == 3);
}

TEST_CASE("Markov equals the punctured torus quiver")
{
    const auto m = named("Markov").quiver;
    CHECK(matrix_from_quiver(m) == signed_adjacency(punctured_torus_triangulation()));
}

TEST_CASE("non-planar mutants of X6 and X7")
{
    const auto x6 = enumerate_class(named("X6").quiver, IsoMode::quiver);
    const auto x7 = enumerate_class(named("X7").quiver, IsoMode::quiver);
    for (int i = 1; i <= 4; ++i) {
        const auto q = nonplanar_mutant(i).quiver;
        CHECK((i <= 3 ? x6 : x7).contains(canonical_quiver_key(q)));
        CHECK(!is_planar(underlying_graph(q)));
        CHECK(min_genus(underlying_graph(q)).genus == 1);
    }
    CHECK(nonplanar_mutant(2).quiver == quiver_mutate(named("X6").quiver, named("X6").vertex("x4")));
    CHECK_THROWS(nonplanar_mutant(5));
}

TEST_CASE("containments in E8(1,1)")
{
    const auto host = underlying_graph(named("E8(1,1)").quiver);
    for (const char* name : {"E6", "E7", "E8", "E8(1)"})
        CHECK(has_full_subgraph(host, underlying_graph(named(name).quiver)));
}

TEST_CASE("expected table shape")
{
    const auto& rows = expected_table();
    REQUIRE(rows.size() == 11);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].name == exceptional_names()[i]);
        CHECK(rows[i].genus0 + rows[i].genus1 == rows[i].total);
    }
}
