#pragma once

// Named quivers: the exceptional mutation-finite types and a few others.

#include "qga/quiver.hpp"

#include <string>
#include <vector>

namespace qga {

struct NamedQuiver {
    std::string name;
    Quiver quiver;
    /// Optional vertex names, one per vertex.
    std::vector<std::string> labels;

    /// 0-based vertex carrying `label`; throws std::invalid_argument.
    std::size_t vertex(const std::string& label) const;
};

/// Names accepted by named(): the eleven exceptional types, Markov, Sphere4
/// and the mutants X6-46, X6-4, X6-43, X7-4 (suffix = mutation sequence).
std::vector<std::string> catalog_names();

/// The eleven exceptional types in table order.
const std::vector<std::string>& exceptional_names();

/// Throws std::invalid_argument("unknown quiver name ...").
NamedQuiver named(const std::string& name);

/// The non-planar mutations of X6 and X7:
/// 1: mu_{x6} mu_{x4} X6, 2: mu_{x4} X6, 3: mu_{x3} mu_{x4} X6, 4: mu_{y4} X7.
NamedQuiver nonplanar_mutant(int i);

struct TableRow {
    std::string name;
    std::size_t total;
    std::size_t genus0;
    std::size_t genus1;
};

/// Published class sizes and genus split for each exceptional type.
const std::vector<TableRow>& expected_table();

}  // namespace qga
