#pragma once

#include "oracles.hpp"
#include "qga/quiver.hpp"

namespace support {

inline oracle::Matrix to_oracle(const qga::ExchangeMatrix& b)
{
    oracle::Matrix m(b.size(), std::vector<long>(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            m[i][j] = static_cast<long>(b(i, j));
    return m;
}

inline qga::ExchangeMatrix from_oracle(const oracle::Matrix& m)
{
    qga::ExchangeMatrix b(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            b(i, j) = m[i][j];
    return b;
}

inline qga::SimpleGraph to_graph(int n, const oracle::Edges& edges)
{
    qga::SimpleGraph g(static_cast<std::size_t>(n));
    for (auto [u, v] : edges)
        g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    return g;
}

inline qga::SimpleGraph complete_graph(std::size_t n)
{
    qga::SimpleGraph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            g.add_edge(i, j);
    return g;
}

inline qga::SimpleGraph complete_bipartite(std::size_t a, std::size_t b)
{
    qga::SimpleGraph g(a + b);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j)
            g.add_edge(i, a + j);
    return g;
}

inline qga::SimpleGraph cycle_graph(std::size_t n)
{
    qga::SimpleGraph g(n);
    for (std::size_t i = 0; i < n; ++i)
        g.add_edge(i, (i + 1) % n);
    return g;
}

inline qga::Quiver path_quiver(std::size_t n)
{
    qga::Quiver q(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        q.add_arrows(i, i + 1);
    return q;
}

inline qga::Quiver markov()
{
    return qga::quiver_from_matrix({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
}

}  // namespace support
