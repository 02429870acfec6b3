#include "qga/genus.hpp"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <chrono>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace qga {

namespace {

using Clock = std::chrono::steady_clock;

// Half-edge view of a simple graph. Dart offset[v] + i leaves v towards
// neighbors(v)[i].
struct Darts {
    explicit Darts(const SimpleGraph& g) : offset(g.vertex_count() + 1, 0)
    {
        const std::size_t n = g.vertex_count();
        for (std::size_t v = 0; v < n; ++v)
            offset[v + 1] = offset[v] + g.degree(v);
        tail.resize(offset[n]);
        head.resize(offset[n]);
        rev.resize(offset[n]);
        for (std::size_t v = 0; v < n; ++v) {
            const auto& nb = g.neighbors(v);
            for (std::size_t i = 0; i < nb.size(); ++i) {
                const std::size_t d = offset[v] + i;
                tail[d] = v;
                head[d] = nb[i];
                const auto& back = g.neighbors(nb[i]);
                const auto pos = std::lower_bound(back.begin(), back.end(), v) - back.begin();
                rev[d] = offset[nb[i]] + static_cast<std::size_t>(pos);
            }
        }
    }

    std::size_t count() const noexcept { return head.size(); }
    std::size_t degree(std::size_t v) const noexcept { return offset[v + 1] - offset[v]; }

    std::vector<std::size_t> offset, tail, head, rev;
};

// succ[d]: dart following d in the rotation at tail(d).
std::size_t count_orbits(const Darts& darts, const std::vector<std::size_t>& succ)
{
    std::vector<char> seen(darts.count(), 0);
    std::size_t faces = 0;
    for (std::size_t d = 0; d < darts.count(); ++d) {
        if (seen[d])
            continue;
        ++faces;
        std::size_t cur = d;
        do {
            seen[cur] = 1;
            cur = succ[darts.rev[cur]];
        } while (cur != d);
    }
    return faces;
}

void set_rotation(const Darts& darts, std::vector<std::size_t>& succ, const std::vector<std::size_t>& cyc)
{
    for (std::size_t i = 0; i < cyc.size(); ++i)
        succ[cyc[i]] = cyc[(i + 1) % cyc.size()];
    (void)darts;
}

std::size_t isolated_vertices(const SimpleGraph& g)
{
    std::size_t k = 0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        k += g.degree(v) == 0;
    return k;
}

SimpleGraph induced_from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges)
{
    std::vector<std::size_t> id(n, SIZE_MAX);
    std::size_t next = 0;
    for (auto [u, v] : edges) {
        if (id[u] == SIZE_MAX)
            id[u] = next++;
        if (id[v] == SIZE_MAX)
            id[v] = next++;
    }
    SimpleGraph out(next);
    for (auto [u, v] : edges)
        out.add_edge(id[u], id[v]);
    return out;
}

// Exhaustive search over rotation systems. Vertices are taken in a fixed
// order and each rotation is built one successor at a time; setting a
// successor links exactly one pair of consecutive face darts, so at most one
// face closes per step. Prunes when the closed faces plus the best case for
// the remaining darts cannot beat the incumbent by the parity step of 2.
class BranchAndBound {
public:
    BranchAndBound(const SimpleGraph& g, std::size_t face_girth, Clock::time_point deadline)
        : g_(g), darts_(g), girth_(std::max<std::size_t>(face_girth, 3)), deadline_(deadline)
    {
        succ_.assign(darts_.count(), SIZE_MAX);
        used_.assign(darts_.count(), 0);
        other_end_.resize(darts_.count());
        std::iota(other_end_.begin(), other_end_.end(), 0);
        chain_len_.assign(darts_.count(), 1);
        for (std::size_t d = 0; d < darts_.count(); ++d)
            add_chain(1);
        order_ = vertex_order();
    }

    // Searches for an embedding with more than `incumbent` faces and at most
    // `ceiling` faces. Returns the best face count seen (>= incumbent) and
    // whether the search space was exhausted.
    std::pair<std::size_t, bool> run(std::size_t incumbent, std::size_t ceiling)
    {
        best_ = incumbent;
        ceiling_ = ceiling;
        parity_ = (g_.edge_count() + 2 - g_.vertex_count()) % 2;  // F = E - V + 2 - 2g
        timed_out_ = false;
        if (best_ < ceiling_)
            descend(0);
        return {best_, !timed_out_};
    }

    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    std::vector<std::size_t> vertex_order() const
    {
        const std::size_t n = g_.vertex_count();
        std::vector<std::size_t> order;
        std::vector<char> placed(n, 0);
        std::vector<std::size_t> placed_nb(n, 0);
        for (std::size_t step = 0; step < n; ++step) {
            std::size_t pick = SIZE_MAX;
            for (std::size_t v = 0; v < n; ++v) {
                if (placed[v])
                    continue;
                if (pick == SIZE_MAX || placed_nb[v] > placed_nb[pick] ||
                    (placed_nb[v] == placed_nb[pick] && g_.degree(v) > g_.degree(pick)))
                    pick = v;
            }
            placed[pick] = 1;
            order.push_back(pick);
            for (std::size_t u : g_.neighbors(pick))
                ++placed_nb[u];
        }
        return order;
    }

    bool out_of_time()
    {
        if ((++nodes_ & 0xffff) == 0 && Clock::now() > deadline_)
            timed_out_ = true;
        return timed_out_;
    }

    // Open darts form chains of consecutive face darts. A future face is a
    // union of chains with total length >= girth, so chains at least that
    // long count once each and shorter ones are pooled.
    void add_chain(std::size_t len)
    {
        if (len >= girth_)
            ++long_chains_;
        else
            short_darts_ += len;
    }
    void remove_chain(std::size_t len)
    {
        if (len >= girth_)
            --long_chains_;
        else
            short_darts_ -= len;
    }

    bool promising() const
    {
        std::size_t bound = faces_ + long_chains_ + short_darts_ / girth_;
        if (bound % 2 != parity_)
            --bound;
        return bound > best_;
    }

    struct Undo {
        std::size_t start, end, start_other, end_other, start_len, end_len, closed_len;
    };

    // Sets succ[a] = b, which makes b follow rev(a) in its face. Merges the
    // chain ending at rev(a) with the chain starting at b, or closes a face.
    Undo link(std::size_t a, std::size_t b)
    {
        succ_[a] = b;
        const std::size_t x = darts_.rev[a];
        const std::size_t s = other_end_[x], e = other_end_[b];
        Undo u{s, e, other_end_[s], other_end_[e], chain_len_[s], chain_len_[e], 0};
        const std::size_t la = chain_len_[x], lb = chain_len_[b];
        if (s == b) {
            remove_chain(la);
            ++faces_;
            closed_darts_ += la;
            u.closed_len = la;
            return u;
        }
        remove_chain(la);
        remove_chain(lb);
        add_chain(la + lb);
        other_end_[s] = e;
        other_end_[e] = s;
        chain_len_[s] = chain_len_[e] = la + lb;
        return u;
    }

    void unlink(std::size_t a, std::size_t b, const Undo& u)
    {
        succ_[a] = SIZE_MAX;
        if (u.closed_len) {
            --faces_;
            closed_darts_ -= u.closed_len;
            add_chain(u.closed_len);
            return;
        }
        remove_chain(chain_len_[u.start]);
        other_end_[u.end] = u.end_other;
        chain_len_[u.end] = u.end_len;
        other_end_[u.start] = u.start_other;
        chain_len_[u.start] = u.start_len;
        add_chain(chain_len_[darts_.rev[a]]);
        add_chain(chain_len_[b]);
    }

    bool finished() const { return timed_out_ || best_ >= ceiling_; }

    void descend(std::size_t level)
    {
        if (out_of_time() || finished())
            return;
        if (level == order_.size()) {
            if (faces_ > best_)
                best_ = faces_;
            return;
        }
        const std::size_t v = order_[level];
        const std::size_t lo = darts_.offset[v], hi = darts_.offset[v + 1];
        if (hi == lo) {
            descend(level + 1);
            return;
        }
        // The first vertex with degree >= 3 only gets one of each mirror
        // pair of rotations.
        const bool mirror_cut = !mirror_used_ && hi - lo >= 3;
        if (mirror_cut)
            mirror_used_ = true;
        used_[lo] = 1;
        extend(level, v, lo, 1, mirror_cut);
        used_[lo] = 0;
        if (mirror_cut)
            mirror_used_ = false;
    }

    // Rotation at v fixed from dart `lo` through `last`, `placed` darts so far.
    void extend(std::size_t level, std::size_t v, std::size_t last, std::size_t placed, bool mirror_cut)
    {
        const std::size_t lo = darts_.offset[v], hi = darts_.offset[v + 1];
        if (placed == hi - lo) {
            if (mirror_cut && second_ > last)
                return;
            const Undo u = link(last, lo);
            if (promising())
                descend(level + 1);
            unlink(last, lo, u);
            return;
        }
        for (std::size_t d = lo + 1; d < hi; ++d) {
            if (used_[d])
                continue;
            const Undo u = link(last, d);
            if (promising() && !out_of_time()) {
                used_[d] = 1;
                if (mirror_cut && placed == 1)
                    second_ = d;
                extend(level, v, d, placed + 1, mirror_cut);
                used_[d] = 0;
            }
            unlink(last, d, u);
            if (finished())
                return;
        }
    }

    const SimpleGraph& g_;
    Darts darts_;
    std::size_t girth_;
    Clock::time_point deadline_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> succ_;
    std::vector<char> used_;
    std::vector<std::size_t> other_end_;
    std::vector<std::size_t> chain_len_;
    std::size_t long_chains_ = 0;
    std::size_t short_darts_ = 0;
    std::size_t faces_ = 0;
    std::size_t closed_darts_ = 0;
    std::size_t best_ = 0;
    std::size_t ceiling_ = 0;
    std::size_t parity_ = 0;
    std::size_t second_ = 0;
    bool mirror_used_ = false;
    bool timed_out_ = false;
    std::uint64_t nodes_ = 0;
};

struct Bounds {
    int lower = 0;
    int upper = 0;
};

struct Solver {
    Clock::time_point deadline;
    std::uint64_t nodes = 0;

    // g is connected, biconnected, simple, minimum degree >= 3.
    Bounds solve_block(const SimpleGraph& g)
    {
        if (is_planar(g))
            return {0, 0};
        const int lower = std::max(1, genus_lower_bound(g));
        const std::size_t v = g.vertex_count(), e = g.edge_count();

        const unsigned restarts = static_cast<unsigned>(std::clamp<std::size_t>(2000 / (e + 1), 4, 100));
        RotationSystem rot = heuristic_embedding(g, restarts, 0x9e3779b97f4a7c15ULL ^ e);
        int upper = embedding_genus(v, e, trace_faces(g, rot), 1);

        // Decide "genus <= L?" for L = lower, lower + 1, ...: the first yes
        // is the genus, every exhausted no raises the certified lower bound.
        const std::size_t gi = girth(g).value_or(3);
        for (int L = lower; L < upper; ++L) {
            const std::size_t target = e + 2 - v - 2 * static_cast<std::size_t>(L);
            BranchAndBound bb(g, gi, deadline);
            auto [faces, complete] = bb.run(target - 2, target);
            nodes += bb.nodes();
            if (faces >= target)
                return {L, L};
            if (!complete)
                return {L, upper};
        }
        return {upper, upper};
    }

    Bounds solve(const SimpleGraph& input)
    {
        SimpleGraph g = reduce_for_genus(input);
        if (g.edge_count() == 0)
            return {0, 0};
        auto blocks = biconnected_blocks(g);
        if (blocks.size() == 1 && blocks[0].vertex_count() == g.vertex_count() &&
            blocks[0].edge_count() == g.edge_count())
            return solve_block(blocks[0]);
        Bounds total;
        for (const auto& b : blocks) {
            Bounds part = solve(b);
            total.lower += part.lower;
            total.upper += part.upper;
        }
        return total;
    }
};

void tarjan_blocks(const SimpleGraph& g, std::size_t v, std::size_t parent, std::size_t& timer,
                   std::vector<std::size_t>& disc, std::vector<std::size_t>& low,
                   std::vector<std::pair<std::size_t, std::size_t>>& stack, std::vector<SimpleGraph>& out)
{
    disc[v] = low[v] = ++timer;
    for (std::size_t u : g.neighbors(v)) {
        if (u == parent)
            continue;
        if (disc[u] == 0) {
            stack.emplace_back(v, u);
            tarjan_blocks(g, u, v, timer, disc, low, stack, out);
            low[v] = std::min(low[v], low[u]);
            if (low[u] >= disc[v]) {
                std::vector<std::pair<std::size_t, std::size_t>> edges;
                for (;;) {
                    auto e = stack.back();
                    stack.pop_back();
                    edges.push_back(e);
                    if (e == std::make_pair(v, u))
                        break;
                }
                out.push_back(induced_from_edges(g.vertex_count(), edges));
            }
        } else if (disc[u] < disc[v]) {
            stack.emplace_back(v, u);
            low[v] = std::min(low[v], disc[u]);
        }
    }
}

}  // namespace

bool is_planar(const SimpleGraph& g)
{
    using namespace boost;
    using Graph = adjacency_list<vecS, vecS, undirectedS, property<vertex_index_t, int>,
                                 property<edge_index_t, int>>;
    // Euler bound rejects dense graphs before building the Boost graph.
    if (g.vertex_count() >= 3 && g.edge_count() > 3 * g.vertex_count() - 6)
        return false;
    Graph bg(g.vertex_count());
    for (auto [u, v] : g.edges())
        add_edge(u, v, bg);
    return boyer_myrvold_planarity_test(bg);
}

std::size_t trace_faces(const SimpleGraph& g, const RotationSystem& rot)
{
    const std::size_t n = g.vertex_count();
    if (rot.order.size() != n)
        throw std::invalid_argument("rotation system has wrong vertex count");
    Darts darts(g);
    std::vector<std::size_t> succ(darts.count(), SIZE_MAX);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& cyc = rot.order[v];
        auto sorted = cyc;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != g.neighbors(v))
            throw std::invalid_argument("rotation at vertex " + std::to_string(v + 1) +
                                        " is not a permutation of its neighbours");
        const auto& nb = g.neighbors(v);
        auto dart_to = [&](std::size_t u) {
            return darts.offset[v] + static_cast<std::size_t>(std::lower_bound(nb.begin(), nb.end(), u) - nb.begin());
        };
        for (std::size_t i = 0; i < cyc.size(); ++i)
            succ[dart_to(cyc[i])] = dart_to(cyc[(i + 1) % cyc.size()]);
    }
    return count_orbits(darts, succ) + isolated_vertices(g);
}

int embedding_genus(std::size_t vertices, std::size_t edges, std::size_t faces, std::size_t components)
{
    const long long twice = 2LL * static_cast<long long>(components) - static_cast<long long>(vertices) +
                            static_cast<long long>(edges) - static_cast<long long>(faces);
    if (twice < 0 || twice % 2 != 0)
        throw std::invalid_argument("inconsistent embedding counts");
    return static_cast<int>(twice / 2);
}

std::size_t connected_components(const SimpleGraph& g)
{
    const std::size_t n = g.vertex_count();
    std::vector<char> seen(n, 0);
    std::size_t count = 0;
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        ++count;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto u : g.neighbors(v))
                if (!seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
        }
    }
    return count;
}

std::optional<std::size_t> girth(const SimpleGraph& g)
{
    const std::size_t n = g.vertex_count();
    std::optional<std::size_t> best;
    std::vector<std::size_t> dist(n), parent(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), SIZE_MAX);
        dist[s] = 0;
        parent[s] = SIZE_MAX;
        std::deque<std::size_t> queue{s};
        while (!queue.empty()) {
            auto v = queue.front();
            queue.pop_front();
            for (auto u : g.neighbors(v)) {
                if (dist[u] == SIZE_MAX) {
                    dist[u] = dist[v] + 1;
                    parent[u] = v;
                    queue.push_back(u);
                } else if (parent[v] != u) {
                    const std::size_t len = dist[u] + dist[v] + 1;
                    if (!best || len < *best)
                        best = len;
                }
            }
        }
    }
    return best;
}

int genus_lower_bound(const SimpleGraph& g)
{
    // Split into components; each contributes its own Euler bound.
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> comp(n, SIZE_MAX);
    std::size_t ncomp = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != SIZE_MAX)
            continue;
        std::vector<std::size_t> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto u : g.neighbors(v))
                if (comp[u] == SIZE_MAX) {
                    comp[u] = ncomp;
                    stack.push_back(u);
                }
        }
        ++ncomp;
    }
    int total = 0;
    for (std::size_t c = 0; c < ncomp; ++c) {
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (auto e : g.edges())
            if (comp[e.first] == c)
                edges.push_back(e);
        if (edges.empty())
            continue;
        SimpleGraph h = induced_from_edges(n, edges);
        auto gi = girth(h);
        if (!gi || h.vertex_count() < 3)
            continue;
        // g >= ((girth - 2) E - girth (V - 2)) / (2 girth)
        const long long girth_len = static_cast<long long>(*gi);
        const long long num = (girth_len - 2) * static_cast<long long>(h.edge_count()) -
                              girth_len * (static_cast<long long>(h.vertex_count()) - 2);
        const long long den = 2 * girth_len;
        if (num > 0)
            total += static_cast<int>((num + den - 1) / den);
    }
    return total;
}

SimpleGraph reduce_for_genus(const SimpleGraph& g)
{
    const std::size_t n = g.vertex_count();
    std::vector<std::set<std::size_t>> adj(n);
    for (auto [u, v] : g.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    std::vector<char> alive(n, 1);
    std::deque<std::size_t> work(n);
    std::iota(work.begin(), work.end(), 0);
    while (!work.empty()) {
        const std::size_t v = work.front();
        work.pop_front();
        if (!alive[v])
            continue;
        if (adj[v].size() <= 1) {
            alive[v] = 0;
            for (auto u : adj[v]) {
                adj[u].erase(v);
                work.push_back(u);
            }
            adj[v].clear();
        } else if (adj[v].size() == 2) {
            const std::size_t a = *adj[v].begin(), b = *adj[v].rbegin();
            alive[v] = 0;
            adj[a].erase(v);
            adj[b].erase(v);
            adj[v].clear();
            adj[a].insert(b);
            adj[b].insert(a);
            work.push_back(a);
            work.push_back(b);
        }
    }
    std::vector<std::size_t> id(n, SIZE_MAX);
    std::size_t next = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (alive[v] && !adj[v].empty())
            id[v] = next++;
    SimpleGraph out(next);
    for (std::size_t v = 0; v < n; ++v)
        for (auto u : adj[v])
            if (v < u && id[v] != SIZE_MAX && id[u] != SIZE_MAX)
                out.add_edge(id[v], id[u]);
    return out;
}

std::vector<SimpleGraph> biconnected_blocks(const SimpleGraph& g)
{
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> disc(n, 0), low(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    std::vector<SimpleGraph> out;
    std::size_t timer = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (disc[v] == 0 && g.degree(v) > 0)
            tarjan_blocks(g, v, SIZE_MAX, timer, disc, low, stack, out);
    return out;
}

RotationSystem heuristic_embedding(const SimpleGraph& g, unsigned restarts, std::uint64_t seed)
{
    const std::size_t n = g.vertex_count();
    Darts darts(g);
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::size_t>> rot(n), best_rot(n);
    std::vector<std::size_t> succ(darts.count());
    std::size_t best_faces = 0;

    std::vector<std::size_t> movable;
    for (std::size_t v = 0; v < n; ++v)
        if (darts.degree(v) >= 3)
            movable.push_back(v);

    for (unsigned r = 0; r < std::max(1u, restarts); ++r) {
        for (std::size_t v = 0; v < n; ++v) {
            rot[v].resize(darts.degree(v));
            std::iota(rot[v].begin(), rot[v].end(), darts.offset[v]);
            std::shuffle(rot[v].begin(), rot[v].end(), rng);
            set_rotation(darts, succ, rot[v]);
        }
        std::size_t faces = count_orbits(darts, succ);
        // Steepest ascent over single-dart reinsertions, with a bounded
        // number of sideways moves to cross plateaus.
        unsigned sideways = 0;
        for (;;) {
            std::size_t best_move_faces = 0;
            std::vector<std::pair<std::size_t, std::vector<std::size_t>>> best_moves;
            for (std::size_t v : movable) {
                const auto original = rot[v];
                const std::size_t d = original.size();
                for (std::size_t i = 0; i < d; ++i) {
                    for (std::size_t j = 0; j < d; ++j) {
                        if (j == i || (j + 1) % d == i)
                            continue;
                        std::vector<std::size_t> cand;
                        cand.reserve(d);
                        const std::size_t moved = original[i];
                        for (std::size_t k = 0; k < d; ++k) {
                            if (k == i)
                                continue;
                            cand.push_back(original[k]);
                            if (k == j)
                                cand.push_back(moved);
                        }
                        set_rotation(darts, succ, cand);
                        const std::size_t f = count_orbits(darts, succ);
                        if (f > best_move_faces) {
                            best_move_faces = f;
                            best_moves.clear();
                        }
                        if (f == best_move_faces)
                            best_moves.emplace_back(v, std::move(cand));
                    }
                }
                set_rotation(darts, succ, original);
            }
            if (best_moves.empty() || best_move_faces < faces)
                break;
            if (best_move_faces == faces && ++sideways > 4 * n)
                break;
            auto& pick = best_moves[std::uniform_int_distribution<std::size_t>(0, best_moves.size() - 1)(rng)];
            rot[pick.first] = pick.second;
            set_rotation(darts, succ, rot[pick.first]);
            faces = best_move_faces;
        }
        if (r == 0 || faces > best_faces) {
            best_faces = faces;
            best_rot = rot;
        }
        // All-faces-are-triangles cannot be beaten.
        if (3 * best_faces >= darts.count())
            break;
    }

    RotationSystem out;
    out.order.resize(n);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t d : best_rot[v])
            out.order[v].push_back(darts.head[d]);
    return out;
}

GenusResult min_genus(const SimpleGraph& g, GenusBudget budget)
{
    Solver solver;
    solver.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                         std::chrono::duration<double>(budget.seconds));
    Bounds b = solver.solve(g);
    GenusResult r;
    r.lower = b.lower;
    r.upper = b.upper;
    r.nodes_explored = solver.nodes;
    r.status = b.lower == b.upper ? GenusStatus::exact : GenusStatus::bounded;
    r.genus = r.exact() ? b.lower : 0;
    const long long faces = 2LL * static_cast<long long>(connected_components(g)) -
                            static_cast<long long>(g.vertex_count()) +
                            static_cast<long long>(g.edge_count()) - 2LL * b.upper;
    r.faces = static_cast<std::size_t>(faces);
    return r;
}

}  // namespace qga
