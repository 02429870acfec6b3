#pragma once

// Breadth-first enumeration of mutation classes up to isomorphism.

#include "qga/canonical.hpp"
#include "qga/genus.hpp"
#include "qga/quiver.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qga {

/// How class members are identified.
///  quiver     - strict quiver isomorphism
///  opposite   - quiver isomorphism, Q identified with its opposite
///  reflection - quiver isomorphism plus mutation at sinks and sources
///               (the convention that reproduces the exceptional-type
///               class-size table)
///  graph      - isomorphism of the simple underlying graph
enum class IsoMode { quiver, opposite, reflection, graph };

std::string to_string(IsoMode mode);
IsoMode parse_iso_mode(const std::string& text);

struct ExplorationLimits {
    std::size_t max_members = 100000;  ///< cap on strict-isomorphism members
    Entry max_entry = 12;              ///< cap on |b_ij|
    double time_budget = 600.0;        ///< seconds
    unsigned threads = 1;
};

struct ClassMember {
    CanonicalKey key;
    Quiver representative;  ///< canonically labelled
};

struct GenusHistogram {
    std::map<int, std::size_t> counts;
    /// Members whose genus search ran out of budget, with their bounds.
    std::vector<std::pair<CanonicalKey, GenusResult>> unresolved;
};

struct ClassReport {
    Quiver seed;
    IsoMode mode = IsoMode::quiver;
    std::vector<ClassMember> members;  ///< sorted by key
    /// Number of quivers up to strict isomorphism that were explored.
    std::size_t strict_size = 0;
    bool truncated = false;
    std::string truncation_reason;
    std::optional<GenusHistogram> genus;

    std::size_t size() const noexcept { return members.size(); }
    bool contains(const CanonicalKey& key) const;
};

/// Key of a single quiver in the given mode. For reflection mode this is the
/// strict key; class-level identification happens during enumeration.
CanonicalKey mode_key(const Quiver& q, IsoMode mode);

/// Explores the class of q by mutating every member at every vertex.
/// Exploration always runs under strict isomorphism; the requested mode is
/// applied to the completed member set, so the result does not depend on
/// which member seeds the search.
ClassReport enumerate_class(const Quiver& q, IsoMode mode, const ExplorationLimits& limits = {});

enum class Equivalence { yes, no, unknown };

Equivalence are_mutation_equivalent(const Quiver& a, const Quiver& b, const ExplorationLimits& limits = {});

/// Fills report.genus. Genus depends only on the underlying graph, so each
/// distinct graph is solved once.
ClassReport genus_distribution(ClassReport report, GenusBudget budget = {});

// Cache files: <dir>/<mode>/<seed-key>.class. Only complete reports are
// written.
std::filesystem::path cache_path(const std::filesystem::path& dir, const Quiver& seed, IsoMode mode);
void save_cache(const std::filesystem::path& dir, const ClassReport& report, const ExplorationLimits& limits);
std::optional<ClassReport> load_cache(const std::filesystem::path& dir, const Quiver& seed, IsoMode mode);

}  // namespace qga
