#pragma once

// Exchange matrices, cluster quivers and mutation.
//
// Index convention: every function in the library takes 0-based vertex
// indices. The text formats and the command line use 1-based indices.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qga {

using Entry = std::int64_t;

/// Thrown when a mutation would overflow the entry type.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Thrown for malformed input text and invalid arguments.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense square integer matrix. Skew-symmetry is not enforced by the type;
/// use validate() or the checked constructors of Quiver.
class ExchangeMatrix {
public:
    ExchangeMatrix() = default;
    explicit ExchangeMatrix(std::size_t n) : n_(n), entries_(n * n, 0) {}
    ExchangeMatrix(std::initializer_list<std::initializer_list<Entry>> rows);

    std::size_t size() const noexcept { return n_; }
    Entry operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }
    Entry& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * n_ + j]; }

    Entry max_abs_entry() const noexcept;
    const std::vector<Entry>& entries() const noexcept { return entries_; }

    friend bool operator==(const ExchangeMatrix&, const ExchangeMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Entry> entries_;
};

/// Cluster quiver: a directed multigraph without loops or 2-cycles, stored as
/// a dense arrow-multiplicity matrix.
class Quiver {
public:
    Quiver() = default;
    explicit Quiver(std::size_t n) : n_(n), arrows_(n * n, 0) {}

    std::size_t size() const noexcept { return n_; }
    Entry arrows(std::size_t from, std::size_t to) const noexcept { return arrows_[from * n_ + to]; }

    /// Adds m arrows from -> to. Opposite arrows already present are cancelled
    /// first, so the result never contains a 2-cycle. Loops are rejected.
    void add_arrows(std::size_t from, std::size_t to, Entry m = 1);

    /// Total number of arrows (with multiplicity).
    Entry arrow_count() const noexcept;

    /// All arrows reversed.
    Quiver opposite() const;

    /// Relabel: vertex v of this quiver becomes vertex perm[v].
    Quiver relabeled(const std::vector<std::size_t>& perm) const;

    friend bool operator==(const Quiver&, const Quiver&) = default;

private:
    friend Quiver quiver_mutate(const Quiver&, std::size_t);
    friend Quiver quiver_from_matrix(const ExchangeMatrix&);
    friend std::optional<std::string> validate(const Quiver&);
    friend class QuiverBuilder;

    Entry& raw(std::size_t from, std::size_t to) noexcept { return arrows_[from * n_ + to]; }

    std::size_t n_ = 0;
    std::vector<Entry> arrows_;
};

/// Builds a quiver from raw multiplicities without cancelling; used by the
/// parser and by tests that need to construct invalid quivers.
class QuiverBuilder {
public:
    explicit QuiverBuilder(std::size_t n) : q_(n) {}
    QuiverBuilder& set(std::size_t from, std::size_t to, Entry m)
    {
        q_.raw(from, to) = m;
        return *this;
    }
    /// Returns the quiver without validation.
    Quiver build_unchecked() const { return q_; }
    /// Returns the quiver, throwing FormatError on an invariant violation.
    Quiver build() const;

private:
    Quiver q_;
};

/// Undirected simple graph on vertices 0..n-1.
class SimpleGraph {
public:
    SimpleGraph() = default;
    explicit SimpleGraph(std::size_t n) : adj_(n) {}

    std::size_t vertex_count() const noexcept { return adj_.size(); }
    std::size_t edge_count() const noexcept { return edges_; }

    /// Adds {u,v}; ignores duplicates. Throws FormatError for loops or
    /// out-of-range vertices.
    void add_edge(std::size_t u, std::size_t v);
    bool has_edge(std::size_t u, std::size_t v) const;

    /// Sorted neighbour list.
    const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_[v]; }
    std::size_t degree(std::size_t v) const { return adj_[v].size(); }

    /// Edges as (u,v) with u < v, sorted lexicographically.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    /// Disjoint union: other's vertices are shifted by vertex_count().
    SimpleGraph disjoint_union(const SimpleGraph& other) const;

    friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

private:
    std::vector<std::vector<std::size_t>> adj_;
    std::size_t edges_ = 0;
};

/// Matrix mutation at k (0-based). Throws std::out_of_range for a bad index
/// and OverflowError if an entry would not fit.
ExchangeMatrix matrix_mutate(const ExchangeMatrix& b, std::size_t k);

/// Quiver mutation at k by the three-step rule: add composite arrows for
/// every path i -> k -> j, reverse arrows at k, cancel 2-cycles.
Quiver quiver_mutate(const Quiver& q, std::size_t k);

/// Applies mutations left to right.
Quiver mutate_sequence(Quiver q, const std::vector<std::size_t>& seq);

Quiver quiver_from_matrix(const ExchangeMatrix& b);
ExchangeMatrix matrix_from_quiver(const Quiver& q);

SimpleGraph underlying_graph(const Quiver& q);

/// First violated invariant, or nullopt when valid.
std::optional<std::string> validate(const ExchangeMatrix& b);
std::optional<std::string> validate(const Quiver& q);

// Quiver text format:
//   quiver <n>
//   <i> <j> <m>      m arrows i -> j, 1-based, sorted by (i, j)
// Lines starting with '#' are comments.
std::string to_text(const Quiver& q);
Quiver parse_quiver(std::istream& in);
Quiver parse_quiver(const std::string& text);
Quiver read_quiver_file(const std::string& path);

// Graph text format:
//   graph <n>
//   <i> <j>          undirected edge, 1-based, i < j, sorted
std::string to_text(const SimpleGraph& g);
SimpleGraph parse_graph(std::istream& in);
SimpleGraph parse_graph(const std::string& text);

std::string to_text(const ExchangeMatrix& b);

}  // namespace qga
