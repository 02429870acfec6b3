#include "qga/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace qga {

namespace {

using Cells = std::vector<std::vector<std::size_t>>;

class Labeler {
public:
    Labeler(std::size_t n, const std::vector<Entry>& w) : n_(n), w_(w) {}

    CanonicalForm run()
    {
        Cells cells;
        if (n_ > 0) {
            cells.emplace_back(n_);
            std::iota(cells[0].begin(), cells[0].end(), 0);
        }
        refine(cells);
        std::vector<std::size_t> seq;
        search(cells, seq);

        CanonicalForm out;
        out.labeling = best_labeling_;
        std::vector<std::uint8_t> bytes;
        put_varint(bytes, n_);
        for (Entry e : best_)
            put_varint(bytes, zigzag(e));
        out.key = CanonicalKey(std::move(bytes));
        return out;
    }

private:
    Entry w(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }

    static std::uint64_t zigzag(Entry e)
    {
        return (static_cast<std::uint64_t>(e) << 1) ^ static_cast<std::uint64_t>(e >> 63);
    }

    static void put_varint(std::vector<std::uint8_t>& out, std::uint64_t v)
    {
        while (v >= 0x80) {
            out.push_back(static_cast<std::uint8_t>(v | 0x80));
            v >>= 7;
        }
        out.push_back(static_cast<std::uint8_t>(v));
    }

    // Splits cells until every vertex in a cell sees the same multiset of
    // (cell, weight out, weight in) among its neighbours.
    void refine(Cells& cells) const
    {
        std::vector<std::size_t> cell_of(n_);
        using Sig = std::vector<std::tuple<std::size_t, Entry, Entry>>;
        for (;;) {
            for (std::size_t c = 0; c < cells.size(); ++c)
                for (std::size_t v : cells[c])
                    cell_of[v] = c;
            bool split = false;
            Cells next;
            next.reserve(cells.size());
            for (const auto& cell : cells) {
                if (cell.size() == 1) {
                    next.push_back(cell);
                    continue;
                }
                std::vector<std::pair<Sig, std::size_t>> sigs;
                sigs.reserve(cell.size());
                for (std::size_t v : cell) {
                    Sig s;
                    for (std::size_t u = 0; u < n_; ++u) {
                        if (u == v)
                            continue;
                        const Entry out = w(v, u), in = w(u, v);
                        if (out != 0 || in != 0)
                            s.emplace_back(cell_of[u], out, in);
                    }
                    std::sort(s.begin(), s.end());
                    sigs.emplace_back(std::move(s), v);
                }
                std::sort(sigs.begin(), sigs.end());
                std::size_t start = 0, groups = 0;
                for (std::size_t i = 1; i <= sigs.size(); ++i) {
                    if (i == sigs.size() || sigs[i].first != sigs[start].first) {
                        std::vector<std::size_t> part;
                        for (std::size_t k = start; k < i; ++k)
                            part.push_back(sigs[k].second);
                        std::sort(part.begin(), part.end());
                        next.push_back(std::move(part));
                        start = i;
                        ++groups;
                    }
                }
                if (groups > 1)
                    split = true;
            }
            cells = std::move(next);
            if (!split)
                return;
        }
    }

    // Column-major upper-triangle entries of the matrix relabelled so that
    // inv[p] sits at position p; only the first `prefix` positions.
    std::vector<Entry> serialize(const std::vector<std::size_t>& inv, std::size_t prefix) const
    {
        std::vector<Entry> out;
        out.reserve(prefix * (prefix - (prefix > 0)) / 2);
        for (std::size_t j = 0; j < prefix; ++j)
            for (std::size_t i = 0; i < j; ++i)
                out.push_back(w(inv[i], inv[j]));
        return out;
    }

    std::size_t orbit_root(std::vector<std::size_t>& parent, std::size_t x) const
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void search(const Cells& cells, std::vector<std::size_t>& seq)
    {
        std::vector<std::size_t> inv;
        inv.reserve(n_);
        std::size_t prefix = 0;
        bool leading = true;
        for (const auto& c : cells) {
            if (c.size() != 1)
                leading = false;
            if (leading)
                ++prefix;
            inv.insert(inv.end(), c.begin(), c.end());
        }

        if (have_best_) {
            auto partial = serialize(inv, prefix);
            auto cmp = std::lexicographical_compare_three_way(
                partial.begin(), partial.end(), best_.begin(),
                best_.begin() + static_cast<std::ptrdiff_t>(partial.size()));
            if (cmp > 0)
                return;
        }

        if (cells.size() == n_) {
            leaf(inv);
            return;
        }

        std::size_t target = 0, target_size = SIZE_MAX;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (cells[c].size() > 1 && cells[c].size() < target_size) {
                target = c;
                target_size = cells[c].size();
            }
        }

        std::vector<std::size_t> explored;
        for (std::size_t w : cells[target]) {
            if (!explored.empty() && same_orbit_as_explored(seq, explored, w))
                continue;
            explored.push_back(w);
            Cells child;
            child.reserve(cells.size() + 1);
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (c != target) {
                    child.push_back(cells[c]);
                    continue;
                }
                child.push_back({w});
                std::vector<std::size_t> rest;
                for (std::size_t v : cells[c])
                    if (v != w)
                        rest.push_back(v);
                child.push_back(std::move(rest));
            }
            refine(child);
            seq.push_back(w);
            search(child, seq);
            seq.pop_back();
        }
    }

    bool same_orbit_as_explored(const std::vector<std::size_t>& seq,
                                const std::vector<std::size_t>& explored, std::size_t w)
    {
        std::vector<std::size_t> parent(n_);
        std::iota(parent.begin(), parent.end(), 0);
        bool any = false;
        for (const auto& gamma : automorphisms_) {
            bool fixes = std::all_of(seq.begin(), seq.end(), [&](std::size_t v) { return gamma[v] == v; });
            if (!fixes)
                continue;
            any = true;
            for (std::size_t v = 0; v < n_; ++v) {
                auto a = orbit_root(parent, v), b = orbit_root(parent, gamma[v]);
                if (a != b)
                    parent[a] = b;
            }
        }
        if (!any)
            return false;
        const auto rw = orbit_root(parent, w);
        return std::any_of(explored.begin(), explored.end(),
                           [&](std::size_t u) { return orbit_root(parent, u) == rw; });
    }

    void leaf(const std::vector<std::size_t>& inv)
    {
        auto ser = serialize(inv, n_);
        if (!have_best_ || ser < best_) {
            best_ = std::move(ser);
            best_inv_ = inv;
            best_labeling_.assign(n_, 0);
            for (std::size_t p = 0; p < n_; ++p)
                best_labeling_[inv[p]] = p;
            have_best_ = true;
        } else if (ser == best_) {
            // inv and best_inv_ give the same matrix: v -> best_inv_[pos(v)]
            // is an automorphism.
            std::vector<std::size_t> gamma(n_);
            for (std::size_t p = 0; p < n_; ++p)
                gamma[inv[p]] = best_inv_[p];
            automorphisms_.push_back(std::move(gamma));
        }
    }

    std::size_t n_;
    const std::vector<Entry>& w_;
    bool have_best_ = false;
    std::vector<Entry> best_;
    std::vector<std::size_t> best_inv_;
    std::vector<std::size_t> best_labeling_;
    std::vector<std::vector<std::size_t>> automorphisms_;
};

int hex_value(char c)
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    return -1;
}

}  // namespace

std::string CanonicalKey::hex() const
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes_.size() * 2);
    for (auto b : bytes_) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

CanonicalKey CanonicalKey::from_hex(const std::string& hex)
{
    if (hex.size() % 2 != 0)
        throw FormatError("hex key has odd length");
    std::vector<std::uint8_t> bytes;
    bytes.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        int hi = hex_value(hex[i]), lo = hex_value(hex[i + 1]);
        if (hi < 0 || lo < 0)
            throw FormatError("invalid hex key");
        bytes.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
    }
    return CanonicalKey(std::move(bytes));
}

CanonicalForm canonical_form(std::size_t n, const std::vector<Entry>& weights)
{
    if (weights.size() != n * n)
        throw std::invalid_argument("weight matrix size mismatch");
    return Labeler(n, weights).run();
}

CanonicalKey canonical_quiver_key(const Quiver& q)
{
    return canonical_form(q.size(), matrix_from_quiver(q).entries()).key;
}

CanonicalKey canonical_quiver_key_up_to_opposite(const Quiver& q)
{
    return std::min(canonical_quiver_key(q), canonical_quiver_key(q.opposite()));
}

CanonicalKey canonical_graph_key(const SimpleGraph& g)
{
    const std::size_t n = g.vertex_count();
    std::vector<Entry> w(n * n, 0);
    for (auto [u, v] : g.edges()) {
        w[u * n + v] = 1;
        w[v * n + u] = 1;
    }
    return canonical_form(n, w).key;
}

bool is_isomorphic(const Quiver& a, const Quiver& b)
{
    if (a.size() != b.size() || a.arrow_count() != b.arrow_count())
        return false;
    return canonical_quiver_key(a) == canonical_quiver_key(b);
}

bool is_isomorphic(const SimpleGraph& a, const SimpleGraph& b)
{
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
        return false;
    return canonical_graph_key(a) == canonical_graph_key(b);
}

Quiver canonical_quiver(const Quiver& q)
{
    auto form = canonical_form(q.size(), matrix_from_quiver(q).entries());
    return q.relabeled(form.labeling);
}

}  // namespace qga
