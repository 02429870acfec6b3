#pragma once

// Ideal triangulations of marked surfaces, their signed adjacency matrices
// and flips.

#include "qga/quiver.hpp"

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qga {

struct SurfaceSignature {
    int g = 0;  ///< genus
    int b = 0;  ///< boundary components
    int p = 0;  ///< punctures
    int c = 0;  ///< marked points on the boundary

    friend bool operator==(const SurfaceSignature&, const SurfaceSignature&) = default;
};

std::optional<std::string> validate(const SurfaceSignature& sig);

/// n = 6g + 3b + 3p + c - 6. Throws std::invalid_argument if n < 1.
int arc_count(const SurfaceSignature& sig);

/// Three side labels in clockwise order. A repeated label marks a
/// self-folded triangle: the repeated label is the folded arc, the other one
/// its enclosing outer arc.
struct Triangle {
    std::array<int, 3> sides{};

    bool self_folded() const noexcept;
    int folded() const noexcept;  ///< 0 unless self-folded
    int outer() const noexcept;   ///< 0 unless self-folded

    friend bool operator==(const Triangle&, const Triangle&) = default;
};

/// Arcs carry labels 1..n and boundary segments n+1..n+c. Every arc fills
/// two side slots and every boundary segment one.
class Triangulation {
public:
    Triangulation() = default;
    /// Validates; throws FormatError with the diagnostic on failure.
    Triangulation(SurfaceSignature sig, int arcs, int boundary, std::vector<Triangle> triangles);

    const SurfaceSignature& signature() const noexcept { return sig_; }
    int arc_count() const noexcept { return arcs_; }
    int boundary_count() const noexcept { return boundary_; }
    const std::vector<Triangle>& triangles() const noexcept { return triangles_; }

    bool is_arc(int label) const noexcept { return label >= 1 && label <= arcs_; }
    bool is_flippable(int arc) const;

    /// Triangles with normalized rotations in sorted order; two triangulations
    /// with equal labels are equal iff their normal forms are.
    Triangulation normalized() const;

    friend bool operator==(const Triangulation&, const Triangulation&) = default;

private:
    SurfaceSignature sig_;
    int arcs_ = 0;
    int boundary_ = 0;
    std::vector<Triangle> triangles_;
};

/// Checks slot counts, the arc-count formula, and that the gluing of the
/// triangles has the claimed genus, boundary and marked points.
std::optional<std::string> validate_triangulation(const SurfaceSignature& sig, int arcs, int boundary,
                                                  const std::vector<Triangle>& triangles);
std::optional<std::string> validate_triangulation(const Triangulation& t);

/// Enclosing outer arc if `arc` is folded, otherwise `arc` (1-based labels).
int pi(const Triangulation& t, int arc);

/// B(T), indexed by arc label minus one.
ExchangeMatrix signed_adjacency(const Triangulation& t);

/// Replaces `arc` by the other diagonal of the quadrilateral formed by its two
/// triangles. The new arc keeps the label. Throws std::invalid_argument with
/// "arc not flippable" for the folded arc of a self-folded triangle.
Triangulation flip(const Triangulation& t, int arc);

// Text format, see docs/formats.md.
std::string to_text(const Triangulation& t);
Triangulation parse_triangulation(std::istream& in);
Triangulation parse_triangulation(const std::string& text);
Triangulation read_triangulation_file(const std::string& path);

// Generators.
Triangulation polygon_triangulation(int marks);  ///< disc, fan from one mark
Triangulation punctured_torus_triangulation();
Triangulation torus_triangulation(int punctures);
Triangulation sphere4_triangulation();

/// Applies `steps` flips at uniformly chosen flippable arcs.
Triangulation random_flips(Triangulation t, int steps, std::mt19937_64& rng);

}  // namespace qga
