#pragma once

// Blocks, outlet gluing, and the explicit constructions built from them.

#include "qga/quiver.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qga {

enum class BlockKind { I, II, IIIa, IIIb, IV, V };

std::string to_string(BlockKind kind);
BlockKind parse_block_kind(const std::string& text);

struct Block {
    BlockKind kind = BlockKind::I;
    std::size_t vertices = 0;
    std::vector<std::size_t> outlets;                        ///< 0-based
    std::vector<std::pair<std::size_t, std::size_t>> arrows;  ///< 0-based

    bool is_outlet(std::size_t v) const;
};

/// Block data loaded from the bundled blocks.dat.
const Block& block(BlockKind kind);
std::vector<Block> parse_blocks(const std::string& text);

struct OutletRef {
    std::size_t block;   ///< index into the block list
    std::size_t vertex;  ///< 0-based vertex of that block
};
using OutletMatching = std::vector<std::pair<OutletRef, OutletRef>>;

struct GlueResult {
    Quiver quiver;
    /// vertex_map[b][v] is the vertex of the result that block b's vertex v
    /// became. Vertices are numbered in order of first appearance.
    std::vector<std::vector<std::size_t>> vertex_map;
};

/// Disjoint union, identification of matched outlets, then cancellation of
/// opposite arrows. Throws std::invalid_argument for invalid matchings.
GlueResult glue(const std::vector<BlockKind>& blocks, const OutletMatching& matching);

/// Gluing by labels: block vertices that share a label are matched. Each
/// label may occur at most twice, and only on outlets of different blocks.
struct LabelledBlock {
    BlockKind kind;
    std::vector<std::string> labels;
};
struct LabelledGlue {
    Quiver quiver;
    std::map<std::string, std::size_t> vertex_of;
    std::vector<std::string> label_of;
};
LabelledGlue glue_labelled(const std::vector<LabelledBlock>& blocks);

/// R_n: n+1 concentric 4n-cycles, radial edges between consecutive cycles,
/// and 2n chords joining antipodal vertices of the outer cycle. Vertex
/// (c, k) of cycle c (innermost c = 0) is c * 4n + k.
SimpleGraph construct_rn(int n);

struct TnConstruction {
    Quiver quiver;
    /// Vertex of the quiver for each vertex of construct_rn(n).
    std::vector<std::size_t> rn_vertex;
    /// For each edge of construct_rn(n) in edges() order, the path of quiver
    /// vertices realising it in the underlying graph.
    std::vector<std::vector<std::size_t>> rn_edge_paths;
    std::size_t type_ii_blocks = 0;
    std::size_t type_iv_blocks = 0;
};

/// T_n: each rectangle of the checkerboard class S of R_n is replaced by four
/// type II blocks around a new 4-cycle, and each innermost-cycle edge outside
/// S by a type IV block. R_n appears in the underlying graph with every edge
/// covered by an S rectangle subdivided once.
TnConstruction construct_tn(int n);

/// Quiver of the triangulation of a torus with p punctures built from p
/// rectangles with a diagonal: 2p type II blocks glued cyclically.
Quiver torus_planar_quiver(int p);

/// Four type II blocks (1,2,3), (1,2',3'), (1',2,3'), (1',2',3).
LabelledGlue sphere4_glue();

/// True if `paths` realise `guest` as a subdivision inside `host`: distinct
/// branch vertices, each guest edge a host path between the images of its
/// ends, interior vertices unused elsewhere.
bool is_subdivision_embedding(const SimpleGraph& host, const SimpleGraph& guest,
                              const std::vector<std::size_t>& vertex_map,
                              const std::vector<std::vector<std::size_t>>& paths);

}  // namespace qga
