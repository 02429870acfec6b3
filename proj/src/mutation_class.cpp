#include "qga/mutation_class.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace qga {

namespace {

using Clock = std::chrono::steady_clock;

struct KeyHash {
    std::size_t operator()(const CanonicalKey& k) const noexcept
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (auto b : k.bytes()) {
            h ^= b;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

std::string fnv_hex(const CanonicalKey& k)
{
    std::ostringstream os;
    os << std::hex << KeyHash{}(k);
    return os.str();
}

bool is_sink_or_source(const Quiver& q, std::size_t k)
{
    bool in = false, out = false;
    for (std::size_t j = 0; j < q.size(); ++j) {
        in = in || q.arrows(j, k) > 0;
        out = out || q.arrows(k, j) > 0;
    }
    return !(in && out);
}

struct Candidate {
    CanonicalKey key;
    Quiver quiver;
    bool over_cap = false;
};

// Mutates every quiver of `layer` at every vertex.
std::vector<Candidate> expand(const std::vector<ClassMember>& layer, std::size_t begin, std::size_t end,
                              Entry max_entry)
{
    std::vector<Candidate> out;
    for (std::size_t i = begin; i < end; ++i) {
        const Quiver& q = layer[i].representative;
        for (std::size_t k = 0; k < q.size(); ++k) {
            Candidate c;
            try {
                Quiver m = quiver_mutate(q, k);
                c.over_cap = matrix_from_quiver(m).max_abs_entry() > max_entry;
                if (!c.over_cap) {
                    auto form = canonical_form(m.size(), matrix_from_quiver(m).entries());
                    c.key = std::move(form.key);
                    c.quiver = m.relabeled(form.labeling);
                }
            } catch (const OverflowError&) {
                c.over_cap = true;
            }
            out.push_back(std::move(c));
        }
    }
    return out;
}

std::vector<ClassMember> group_members(const std::vector<ClassMember>& strict, IsoMode mode)
{
    if (mode == IsoMode::quiver)
        return strict;

    std::map<CanonicalKey, ClassMember> groups;
    if (mode == IsoMode::reflection) {
        std::unordered_map<CanonicalKey, std::size_t, KeyHash> index;
        for (std::size_t i = 0; i < strict.size(); ++i)
            index.emplace(strict[i].key, i);
        std::vector<std::size_t> parent(strict.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        for (std::size_t i = 0; i < strict.size(); ++i) {
            const Quiver& q = strict[i].representative;
            for (std::size_t k = 0; k < q.size(); ++k) {
                if (!is_sink_or_source(q, k))
                    continue;
                auto it = index.find(canonical_quiver_key(quiver_mutate(q, k)));
                if (it == index.end())
                    continue;
                auto a = find(i), b = find(it->second);
                // Root is the smallest index, hence the smallest key.
                if (a != b)
                    parent[std::max(a, b)] = std::min(a, b);
            }
        }
        for (std::size_t i = 0; i < strict.size(); ++i)
            if (find(i) == i)
                groups.emplace(strict[i].key, strict[i]);
    } else {
        // strict is sorted by key, so the first member seen in each group
        // has the smallest strict key.
        for (const auto& m : strict) {
            CanonicalKey k = mode_key(m.representative, mode);
            groups.try_emplace(std::move(k), ClassMember{CanonicalKey{}, m.representative});
        }
        for (auto& [k, m] : groups)
            m.key = k;
    }
    std::vector<ClassMember> out;
    out.reserve(groups.size());
    for (auto& [k, m] : groups)
        out.push_back(std::move(m));
    return out;
}

}  // namespace

std::string to_string(IsoMode mode)
{
    switch (mode) {
    case IsoMode::quiver:
        return "quiver";
    case IsoMode::opposite:
        return "opposite";
    case IsoMode::reflection:
        return "reflection";
    case IsoMode::graph:
        return "graph";
    }
    return "?";
}

IsoMode parse_iso_mode(const std::string& text)
{
    if (text == "quiver")
        return IsoMode::quiver;
    if (text == "opposite")
        return IsoMode::opposite;
    if (text == "reflection")
        return IsoMode::reflection;
    if (text == "graph")
        return IsoMode::graph;
    throw FormatError("unknown isomorphism mode '" + text + "'");
}

bool ClassReport::contains(const CanonicalKey& key) const
{
    return std::binary_search(members.begin(), members.end(), key,
                              [](const auto& a, const auto& b) {
                                  if constexpr (std::is_same_v<std::decay_t<decltype(a)>, CanonicalKey>)
                                      return a < b.key;
                                  else
                                      return a.key < b;
                              });
}

CanonicalKey mode_key(const Quiver& q, IsoMode mode)
{
    switch (mode) {
    case IsoMode::quiver:
    case IsoMode::reflection:
        return canonical_quiver_key(q);
    case IsoMode::opposite:
        return canonical_quiver_key_up_to_opposite(q);
    case IsoMode::graph:
        return canonical_graph_key(underlying_graph(q));
    }
    return {};
}

ClassReport enumerate_class(const Quiver& q, IsoMode mode, const ExplorationLimits& limits)
{
    if (auto diag = validate(q))
        throw FormatError(*diag);
    const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                             std::chrono::duration<double>(limits.time_budget));
    ClassReport report;
    report.seed = q;
    report.mode = mode;

    std::vector<ClassMember> strict;
    std::unordered_map<CanonicalKey, std::size_t, KeyHash> visited;

    if (matrix_from_quiver(q).max_abs_entry() > limits.max_entry) {
        report.truncated = true;
        report.truncation_reason = "entry cap exceeded by seed (mutation-infinite suspected)";
        return report;
    }
    auto seed_form = canonical_form(q.size(), matrix_from_quiver(q).entries());
    std::vector<ClassMember> layer{{seed_form.key, q.relabeled(seed_form.labeling)}};
    visited.emplace(seed_form.key, 0);
    strict.push_back(layer[0]);

    const unsigned threads = std::max(1u, limits.threads);
    while (!layer.empty() && !report.truncated) {
        std::vector<Candidate> candidates;
        if (threads == 1 || layer.size() < 2 * threads) {
            candidates = expand(layer, 0, layer.size(), limits.max_entry);
        } else {
            std::vector<std::vector<Candidate>> parts(threads);
            std::vector<std::jthread> pool;
            const std::size_t chunk = (layer.size() + threads - 1) / threads;
            for (unsigned t = 0; t < threads; ++t) {
                const std::size_t b = std::min(layer.size(), t * chunk), e = std::min(layer.size(), b + chunk);
                pool.emplace_back([&, t, b, e] { parts[t] = expand(layer, b, e, limits.max_entry); });
            }
            pool.clear();
            for (auto& p : parts)
                std::move(p.begin(), p.end(), std::back_inserter(candidates));
        }

        std::vector<ClassMember> next;
        for (auto& c : candidates) {
            if (c.over_cap) {
                report.truncated = true;
                report.truncation_reason = "entry cap exceeded (mutation-infinite suspected)";
                break;
            }
            if (visited.contains(c.key))
                continue;
            visited.emplace(c.key, strict.size());
            strict.push_back({c.key, c.quiver});
            next.push_back({std::move(c.key), std::move(c.quiver)});
        }
        if (report.truncated)
            break;
        if (strict.size() > limits.max_members) {
            report.truncated = true;
            report.truncation_reason = "member cap exceeded";
            break;
        }
        if (Clock::now() > deadline && !next.empty()) {
            report.truncated = true;
            report.truncation_reason = "time budget exhausted";
            break;
        }
        std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
        layer = std::move(next);
    }

    std::sort(strict.begin(), strict.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
    report.strict_size = strict.size();
    report.members = group_members(strict, mode);
    return report;
}

Equivalence are_mutation_equivalent(const Quiver& a, const Quiver& b, const ExplorationLimits& limits)
{
    if (a.size() != b.size())
        return Equivalence::no;
    const auto target = canonical_quiver_key(b);
    if (canonical_quiver_key(a) == target)
        return Equivalence::yes;
    auto report = enumerate_class(a, IsoMode::quiver, limits);
    if (report.contains(target))
        return Equivalence::yes;
    return report.truncated ? Equivalence::unknown : Equivalence::no;
}

ClassReport genus_distribution(ClassReport report, GenusBudget budget)
{
    GenusHistogram hist;
    std::map<CanonicalKey, GenusResult> by_graph;
    for (const auto& m : report.members) {
        const SimpleGraph g = underlying_graph(m.representative);
        const auto gk = canonical_graph_key(g);
        auto it = by_graph.find(gk);
        if (it == by_graph.end())
            it = by_graph.emplace(gk, min_genus(g, budget)).first;
        if (it->second.exact())
            ++hist.counts[it->second.genus];
        else
            hist.unresolved.emplace_back(m.key, it->second);
    }
    report.genus = std::move(hist);
    return report;
}

std::filesystem::path cache_path(const std::filesystem::path& dir, const Quiver& seed, IsoMode mode)
{
    const auto key = canonical_quiver_key(seed);
    std::string name = key.hex();
    // Keep file names within common filesystem limits.
    if (name.size() > 200)
        name = "h" + fnv_hex(key);
    return dir / to_string(mode) / (name + ".class");
}

void save_cache(const std::filesystem::path& dir, const ClassReport& report, const ExplorationLimits& limits)
{
    if (report.truncated)
        return;
    const auto path = cache_path(dir, report.seed, report.mode);
    std::filesystem::create_directories(path.parent_path());
    std::ostringstream os;
    os << "# mutation class cache: member keys (lowercase hex) with one representative each\n";
    os << "format qga-class/1\n";
    os << "mode " << to_string(report.mode) << '\n';
    os << "seed " << canonical_quiver_key(report.seed).hex() << '\n';
    os << "limits max_members=" << limits.max_members << " max_entry=" << limits.max_entry
       << " time_budget=" << limits.time_budget << '\n';
    os << "strict_size " << report.strict_size << '\n';
    os << "size " << report.size() << '\n';
    for (const auto& m : report.members) {
        os << "member " << m.key.hex() << '\n';
        os << to_text(m.representative);
        os << "end\n";
    }
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << os.str();
    }
    std::filesystem::rename(tmp, path);
}

std::optional<ClassReport> load_cache(const std::filesystem::path& dir, const Quiver& seed, IsoMode mode)
{
    const auto path = cache_path(dir, seed, mode);
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    ClassReport report;
    report.seed = seed;
    report.mode = mode;
    std::string line;
    std::size_t expected = 0;
    bool header_ok = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "format") {
            std::string v;
            ls >> v;
            if (v != "qga-class/1")
                return std::nullopt;
            header_ok = true;
        } else if (word == "mode") {
            std::string v;
            ls >> v;
            if (v != to_string(mode))
                return std::nullopt;
        } else if (word == "seed") {
            std::string v;
            ls >> v;
            if (v != canonical_quiver_key(seed).hex())
                return std::nullopt;
        } else if (word == "strict_size") {
            ls >> report.strict_size;
        } else if (word == "size") {
            ls >> expected;
        } else if (word == "member") {
            std::string hex;
            ls >> hex;
            std::string body;
            while (std::getline(in, line) && line != "end")
                body += line + '\n';
            ClassMember m{CanonicalKey::from_hex(hex), parse_quiver(body)};
            report.members.push_back(std::move(m));
        }
    }
    if (!header_ok || report.members.size() != expected)
        return std::nullopt;
    return report;
}

}  // namespace qga
