#pragma once

// Canonical labelling and isomorphism for quivers and simple graphs.

#include "qga/quiver.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace qga {

/// Byte serialization of a canonically relabelled quiver or graph. Two inputs
/// of the same kind have equal keys iff they are isomorphic.
class CanonicalKey {
public:
    CanonicalKey() = default;
    explicit CanonicalKey(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

    const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
    std::string hex() const;
    static CanonicalKey from_hex(const std::string& hex);

    friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
    friend std::strong_ordering operator<=>(const CanonicalKey&, const CanonicalKey&) = default;

private:
    std::vector<std::uint8_t> bytes_;
};

struct CanonicalForm {
    CanonicalKey key;
    /// labeling[v] is the canonical position of input vertex v.
    std::vector<std::size_t> labeling;
};

/// Canonical form of an integer-weighted complete digraph given as a dense
/// n x n matrix (weights(i, j) at i * n + j). Weight 0 means "no edge".
/// The matrix must be symmetric or skew-symmetric. The key serializes the
/// relabelled matrix as a varint length prefix followed by the entries above
/// the diagonal, column by column, each as a zigzag varint.
CanonicalForm canonical_form(std::size_t n, const std::vector<Entry>& weights);

/// Strict quiver isomorphism: arrow directions and multiplicities respected.
CanonicalKey canonical_quiver_key(const Quiver& q);
/// Like canonical_quiver_key, but Q and its opposite get the same key.
CanonicalKey canonical_quiver_key_up_to_opposite(const Quiver& q);
CanonicalKey canonical_graph_key(const SimpleGraph& g);

bool is_isomorphic(const Quiver& a, const Quiver& b);
bool is_isomorphic(const SimpleGraph& a, const SimpleGraph& b);

/// Canonically relabelled copy (vertex v moves to labeling[v]).
Quiver canonical_quiver(const Quiver& q);

}  // namespace qga
