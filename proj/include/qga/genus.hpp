#pragma once

// Planarity and exact minimum orientable genus of simple graphs.

#include "qga/quiver.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qga {

/// Cyclic order of neighbours around each vertex (one edge-end per
/// neighbour, since graphs are simple). Encodes an oriented embedding.
struct RotationSystem {
    std::vector<std::vector<std::size_t>> order;
};

enum class GenusStatus { exact, bounded };

struct GenusResult {
    GenusStatus status = GenusStatus::exact;
    int genus = 0;  ///< meaningful only when status == exact
    int lower = 0;
    int upper = 0;
    /// Faces of the best embedding found (components embedded separately).
    std::size_t faces = 0;
    std::uint64_t nodes_explored = 0;

    bool exact() const noexcept { return status == GenusStatus::exact; }
};

struct GenusBudget {
    double seconds = 60.0;
};

bool is_planar(const SimpleGraph& g);

/// Number of face orbits of the embedding; isolated vertices count as one
/// face each. Throws std::invalid_argument if rot is not a rotation system
/// of g.
std::size_t trace_faces(const SimpleGraph& g, const RotationSystem& rot);

/// Euler characteristic accounting: (2 * components - V + E - F) / 2.
/// Throws std::invalid_argument for odd or negative results.
int embedding_genus(std::size_t vertices, std::size_t edges, std::size_t faces, std::size_t components);

std::size_t connected_components(const SimpleGraph& g);

/// Smallest cycle length, or nullopt for forests.
std::optional<std::size_t> girth(const SimpleGraph& g);

/// Euler-formula lower bound, girth-refined, summed over components.
int genus_lower_bound(const SimpleGraph& g);

/// Removes vertices of degree <= 1 and suppresses degree-2 vertices until
/// none remain (parallel edges created by suppression are dropped). The
/// result has the same genus; isolated leftovers are discarded.
SimpleGraph reduce_for_genus(const SimpleGraph& g);

/// Biconnected blocks (as standalone graphs) with at least one edge.
std::vector<SimpleGraph> biconnected_blocks(const SimpleGraph& g);

/// Exact minimum genus when the search completes inside the budget,
/// otherwise certified bounds.
GenusResult min_genus(const SimpleGraph& g, GenusBudget budget = {});

/// Local search for an embedding with many faces; deterministic for a
/// given seed. Returns the best rotation system found.
RotationSystem heuristic_embedding(const SimpleGraph& g, unsigned restarts, std::uint64_t seed = 1);

}  // namespace qga
