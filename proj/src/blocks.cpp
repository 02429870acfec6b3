#include "qga/blocks.hpp"

#include "embedded_data.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qga {

namespace {

constexpr BlockKind kAllKinds[] = {BlockKind::I, BlockKind::II, BlockKind::IIIa,
                                   BlockKind::IIIb, BlockKind::IV, BlockKind::V};

const std::vector<Block>& bundled_blocks()
{
    static const std::vector<Block> blocks = parse_blocks(embedded::blocks_dat);
    return blocks;
}

}  // namespace

std::string to_string(BlockKind kind)
{
    switch (kind) {
    case BlockKind::I:
        return "I";
    case BlockKind::II:
        return "II";
    case BlockKind::IIIa:
        return "IIIa";
    case BlockKind::IIIb:
        return "IIIb";
    case BlockKind::IV:
        return "IV";
    case BlockKind::V:
        return "V";
    }
    return "?";
}

BlockKind parse_block_kind(const std::string& text)
{
    for (auto k : kAllKinds)
        if (to_string(k) == text)
            return k;
    throw FormatError("unknown block kind '" + text + "'");
}

bool Block::is_outlet(std::size_t v) const
{
    return std::find(outlets.begin(), outlets.end(), v) != outlets.end();
}

std::vector<Block> parse_blocks(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::vector<Block> blocks;
    Block* current = nullptr;
    bool format_seen = false;
    int line_no = 0;
    auto fail = [&](const std::string& msg) { throw FormatError("blocks line " + std::to_string(line_no) + ": " + msg); };
    auto vertex = [&](std::istringstream& ls) {
        long v = 0;
        if (!(ls >> v) || v < 1 || static_cast<std::size_t>(v) > current->vertices)
            fail("vertex out of range");
        return static_cast<std::size_t>(v - 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "format") {
            std::string v;
            ls >> v;
            if (v != "qga-blocks/1")
                fail("unsupported format '" + v + "'");
            format_seen = true;
        } else if (word == "block") {
            std::string kind;
            ls >> kind;
            blocks.push_back(Block{parse_block_kind(kind), 0, {}, {}});
            current = &blocks.back();
        } else if (!current) {
            fail("'" + word + "' outside a block stanza");
        } else if (word == "vertices") {
            ls >> current->vertices;
        } else if (word == "outlets") {
            while (ls.peek() != EOF && (ls >> std::ws, ls.peek() != EOF))
                current->outlets.push_back(vertex(ls));
        } else if (word == "arrow") {
            const auto a = vertex(ls);
            const auto b = vertex(ls);
            current->arrows.emplace_back(a, b);
        } else if (word == "end") {
            current = nullptr;
        } else {
            fail("unknown keyword '" + word + "'");
        }
    }
    if (!format_seen)
        throw FormatError("blocks data lacks a format line");
    return blocks;
}

const Block& block(BlockKind kind)
{
    for (const auto& b : bundled_blocks())
        if (b.kind == kind)
            return b;
    throw std::logic_error("block " + to_string(kind) + " missing from bundled data");
}

GlueResult glue(const std::vector<BlockKind>& blocks, const OutletMatching& matching)
{
    std::vector<std::size_t> offset(blocks.size() + 1, 0);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        offset[b + 1] = offset[b] + block(blocks[b]).vertices;
    const std::size_t total = offset.back();

    std::vector<std::size_t> partner(total, SIZE_MAX);
    for (const auto& [x, y] : matching) {
        for (const auto& r : {x, y}) {
            if (r.block >= blocks.size())
                throw std::invalid_argument("block index out of range");
            if (!block(blocks[r.block]).is_outlet(r.vertex))
                throw std::invalid_argument("vertex " + std::to_string(r.vertex + 1) + " of block " +
                                            std::to_string(r.block + 1) + " is not an outlet");
        }
        if (x.block == y.block)
            throw std::invalid_argument("outlets of the same block cannot be matched");
        const std::size_t a = offset[x.block] + x.vertex, b = offset[y.block] + y.vertex;
        if (partner[a] != SIZE_MAX || partner[b] != SIZE_MAX)
            throw std::invalid_argument("outlet matched twice");
        partner[a] = b;
        partner[b] = a;
    }

    GlueResult result;
    std::vector<std::size_t> id(total, SIZE_MAX);
    std::size_t next = 0;
    for (std::size_t g = 0; g < total; ++g) {
        if (id[g] != SIZE_MAX)
            continue;
        id[g] = next;
        if (partner[g] != SIZE_MAX)
            id[partner[g]] = next;
        ++next;
    }
    result.vertex_map.resize(blocks.size());
    ExchangeMatrix B(next);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const Block& blk = block(blocks[b]);
        for (std::size_t v = 0; v < blk.vertices; ++v)
            result.vertex_map[b].push_back(id[offset[b] + v]);
        for (const auto& [from, to] : blk.arrows) {
            const auto i = result.vertex_map[b][from], j = result.vertex_map[b][to];
            B(i, j) += 1;
            B(j, i) -= 1;
        }
    }
    result.quiver = quiver_from_matrix(B);
    return result;
}

LabelledGlue glue_labelled(const std::vector<LabelledBlock>& blocks)
{
    std::vector<BlockKind> kinds;
    std::map<std::string, std::vector<OutletRef>> uses;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        kinds.push_back(blocks[b].kind);
        if (blocks[b].labels.size() != block(blocks[b].kind).vertices)
            throw std::invalid_argument("block " + std::to_string(b + 1) + " needs one label per vertex");
        for (std::size_t v = 0; v < blocks[b].labels.size(); ++v)
            uses[blocks[b].labels[v]].push_back({b, v});
    }
    OutletMatching matching;
    for (const auto& [label, refs] : uses) {
        if (refs.size() > 2)
            throw std::invalid_argument("label '" + label + "' used more than twice");
        if (refs.size() == 2)
            matching.emplace_back(refs[0], refs[1]);
    }
    std::sort(matching.begin(), matching.end(), [](const auto& a, const auto& b) {
        return std::pair{a.first.block, a.first.vertex} < std::pair{b.first.block, b.first.vertex};
    });
    auto glued = glue(kinds, matching);
    LabelledGlue out;
    out.quiver = std::move(glued.quiver);
    out.label_of.resize(out.quiver.size());
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (std::size_t v = 0; v < blocks[b].labels.size(); ++v) {
            const auto id = glued.vertex_map[b][v];
            out.vertex_of[blocks[b].labels[v]] = id;
            out.label_of[id] = blocks[b].labels[v];
        }
    return out;
}

SimpleGraph construct_rn(int n)
{
    if (n < 1)
        throw std::invalid_argument("n must be at least 1");
    const std::size_t L = 4 * static_cast<std::size_t>(n);
    const std::size_t cycles = static_cast<std::size_t>(n) + 1;
    auto v = [&](std::size_t c, std::size_t k) { return c * L + k % L; };
    SimpleGraph g(cycles * L);
    for (std::size_t c = 0; c < cycles; ++c)
        for (std::size_t k = 0; k < L; ++k) {
            g.add_edge(v(c, k), v(c, k + 1));
            if (c + 1 < cycles)
                g.add_edge(v(c, k), v(c + 1, k));
        }
    for (std::size_t k = 0; k < L / 2; ++k)
        g.add_edge(v(cycles - 1, k), v(cycles - 1, k + L / 2));
    return g;
}

TnConstruction construct_tn(int n)
{
    const SimpleGraph rn = construct_rn(n);
    const std::size_t N = static_cast<std::size_t>(n);
    const std::size_t L = 4 * N;
    auto rv = [&](std::size_t c, std::size_t k) { return c * L + k % L; };
    auto name = [](std::size_t v) { return "r" + std::to_string(v); };

    // Rectangles of R_n as corner cycles. S is the checkerboard class that
    // contains the rectangle between the two innermost cycles at angle 0.
    std::vector<std::array<std::size_t, 4>> S;
    for (std::size_t c = 0; c < N; ++c)
        for (std::size_t k = 0; k < L; ++k)
            if ((c + k) % 2 == 0)
                S.push_back({rv(c, k), rv(c, k + 1), rv(c + 1, k + 1), rv(c + 1, k)});
    for (std::size_t j = 0; j < L / 2; ++j)
        if ((N + j) % 2 == 0)
            S.push_back({rv(N, j), rv(N, j + 1), rv(N, j + 1 + L / 2), rv(N, j + L / 2)});

    std::vector<LabelledBlock> blocks;
    std::map<std::pair<std::size_t, std::size_t>, std::string> midpoint;
    for (std::size_t r = 0; r < S.size(); ++r) {
        const auto& q = S[r];
        auto m = [&](std::size_t i) { return "m" + std::to_string(r) + "_" + std::to_string(i % 4); };
        for (std::size_t i = 0; i < 4; ++i) {
            blocks.push_back({BlockKind::II, {m(i), m(i + 1), name(q[i])}});
            // Side q[i-1] q[i] passes through m(i).
            const auto a = q[(i + 3) % 4], b = q[i];
            midpoint[{std::min(a, b), std::max(a, b)}] = m(i);
        }
    }
    const std::size_t type_ii = blocks.size();
    for (std::size_t k = 1; k < L; k += 2)
        blocks.push_back({BlockKind::IV,
                          {name(rv(0, k)), name(rv(0, k + 1)), "e" + std::to_string(k) + "_3",
                           "e" + std::to_string(k) + "_4"}});

    auto glued = glue_labelled(blocks);
    TnConstruction out;
    out.type_ii_blocks = type_ii;
    out.type_iv_blocks = blocks.size() - type_ii;
    for (std::size_t v = 0; v < rn.vertex_count(); ++v)
        out.rn_vertex.push_back(glued.vertex_of.at(name(v)));
    for (const auto& [a, b] : rn.edges()) {
        std::vector<std::size_t> path{out.rn_vertex[a]};
        if (auto it = midpoint.find({a, b}); it != midpoint.end())
            path.push_back(glued.vertex_of.at(it->second));
        path.push_back(out.rn_vertex[b]);
        out.rn_edge_paths.push_back(std::move(path));
    }
    out.quiver = std::move(glued.quiver);
    return out;
}

Quiver torus_planar_quiver(int p)
{
    if (p < 1)
        throw std::invalid_argument("p must be at least 1");
    auto a = [&](int i) { return "a" + std::to_string((i - 1) % p + 1); };
    auto b = [&](int i) { return "b" + std::to_string(i); };
    auto d = [&](int i) { return "d" + std::to_string(i); };
    std::vector<LabelledBlock> blocks;
    for (int i = 1; i <= p; ++i) {
        blocks.push_back({BlockKind::II, {a(i), b(i), d(i)}});
        blocks.push_back({BlockKind::II, {d(i), a(i + 1), b(i)}});
    }
    return glue_labelled(blocks).quiver;
}

LabelledGlue sphere4_glue()
{
    return glue_labelled({{BlockKind::II, {"1", "2", "3"}},
                          {BlockKind::II, {"1", "2'", "3'"}},
                          {BlockKind::II, {"1'", "2", "3'"}},
                          {BlockKind::II, {"1'", "2'", "3"}}});
}

bool is_subdivision_embedding(const SimpleGraph& host, const SimpleGraph& guest,
                              const std::vector<std::size_t>& vertex_map,
                              const std::vector<std::vector<std::size_t>>& paths)
{
    if (vertex_map.size() != guest.vertex_count())
        return false;
    const auto edges = guest.edges();
    if (paths.size() != edges.size())
        return false;
    std::vector<int> used(host.vertex_count(), 0);
    for (auto v : vertex_map) {
        if (v >= host.vertex_count() || used[v])
            return false;
        used[v] = 1;
    }
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto& path = paths[e];
        if (path.size() < 2 || path.front() != vertex_map[edges[e].first] ||
            path.back() != vertex_map[edges[e].second])
            return false;
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            if (path[i + 1] >= host.vertex_count() || !host.has_edge(path[i], path[i + 1]))
                return false;
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            if (used[path[i]])
                return false;
            used[path[i]] = 1;
        }
    }
    return true;
}

}  // namespace qga
