#include "doctest.h"
#include "support.hpp"

#include "qga/quiver.hpp"

#include <random>

using namespace qga;

TEST_CASE("matrix mutation on small examples")
{
    CHECK(matrix_mutate({{0, 1}, {-1, 0}}, 0) == ExchangeMatrix{{0, -1}, {1, 0}});
    CHECK(matrix_mutate({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}, 1) ==
          ExchangeMatrix{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}});

    const ExchangeMatrix markov{{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}};
    const auto expected = support::from_oracle(oracle::mutate(support::to_oracle(markov), 0));
    CHECK(matrix_mutate(markov, 0) == expected);
    CHECK(expected == ExchangeMatrix{{0, -2, 2}, {2, 0, -2}, {-2, 2, 0}});
}

TEST_CASE("matrix mutation rejects bad indices and overflow")
{
    CHECK_THROWS_AS(matrix_mutate({{0, 1}, {-1, 0}}, 2), std::out_of_range);
    const Entry big = Entry{1} << 62;
    CHECK_THROWS_AS(matrix_mutate({{0, big, 0}, {-big, 0, big}, {0, -big, 0}}, 1), OverflowError);
}

TEST_CASE("quiver mutation by the three-step rule")
{
    const Quiver path = support::path_quiver(3);
    Quiver expected(3);
    expected.add_arrows(1, 0);
    expected.add_arrows(2, 1);
    expected.add_arrows(0, 2);
    CHECK(quiver_mutate(path, 1) == expected);
    CHECK(quiver_mutate(quiver_mutate(path, 1), 1) == path);
    CHECK(mutate_sequence(path, {1, 1}) == path);
}

TEST_CASE("matrix and quiver forms correspond")
{
    const Quiver m = quiver_from_matrix({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
    CHECK(m.arrows(0, 1) == 2);
    CHECK(m.arrows(1, 2) == 2);
    CHECK(m.arrows(2, 0) == 2);
    CHECK(m.arrows(1, 0) == 0);
    CHECK(matrix_from_quiver(m) == ExchangeMatrix{{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
    CHECK(quiver_from_matrix(ExchangeMatrix(3)).arrow_count() == 0);
}

TEST_CASE("underlying graph drops multiplicity and orientation")
{
    Quiver q(2);
    q.add_arrows(0, 1, 2);
    const auto g = underlying_graph(q);
    CHECK(g.edge_count() == 1);
    CHECK(underlying_graph(q.opposite()) == g);
    const auto tri = underlying_graph(support::markov());
    CHECK(tri == support::cycle_graph(3));
}

TEST_CASE("validation names the violated invariant")
{
    auto d = validate(ExchangeMatrix{{0, 1}, {1, 0}});
    REQUIRE(d);
    CHECK(d->find("not skew-symmetric") != std::string::npos);

    auto two_cycle = QuiverBuilder(2).set(0, 1, 1).set(1, 0, 1).build_unchecked();
    auto dq = validate(two_cycle);
    REQUIRE(dq);
    CHECK(dq->find("2-cycle") != std::string::npos);

    auto loop = QuiverBuilder(2).set(0, 0, 1).build_unchecked();
    REQUIRE(validate(loop));
    CHECK(!validate(support::markov()));
    CHECK(!validate(ExchangeMatrix{{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}}));
}

TEST_CASE("adding opposite arrows cancels")
{
    Quiver q(2);
    q.add_arrows(0, 1, 3);
    q.add_arrows(1, 0, 1);
    CHECK(q.arrows(0, 1) == 2);
    CHECK(q.arrows(1, 0) == 0);
    CHECK_THROWS_AS(q.add_arrows(1, 1), FormatError);
}

TEST_CASE("quiver text format round-trips byte for byte")
{
    const std::string text = "quiver 3\n1 2 2\n2 3 2\n3 1 2\n";
    const Quiver q = parse_quiver(text);
    CHECK(q == support::markov());
    CHECK(to_text(q) == text);
    CHECK(to_text(parse_quiver(to_text(q))) == text);

    CHECK(parse_quiver("# comment\nquiver 2\n\n1 2 1\n") == support::path_quiver(2));
    CHECK_THROWS_AS(parse_quiver("quiver 2\n1 3 1\n"), FormatError);
    CHECK_THROWS_AS(parse_quiver("quiver 2\n1 2 1\n2 1 1\n"), FormatError);
    CHECK_THROWS_AS(parse_quiver("graph 2\n"), FormatError);
}

TEST_CASE("graph text format")
{
    const auto g = parse_graph("graph 3\n1 2\n2 3\n");
    CHECK(g.edge_count() == 2);
    CHECK(to_text(g) == "graph 3\n1 2\n2 3\n");
}

TEST_CASE("random checks against the reference mutation")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = std::uniform_int_distribution<int>(2, 7)(rng);
        const auto ref = oracle::random_quiver_matrix(rng, n, 2, 0.5);
        const ExchangeMatrix b = support::from_oracle(ref);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
        const auto mu = matrix_mutate(b, k);
        CHECK(support::to_oracle(mu) == oracle::mutate(ref, static_cast<int>(k)));
        CHECK(matrix_mutate(mu, k) == b);
        CHECK(quiver_mutate(quiver_from_matrix(b), k) == quiver_from_matrix(mu));
        CHECK(!validate(mu));
        CHECK(matrix_from_quiver(quiver_from_matrix(b)) == b);
    }
}
