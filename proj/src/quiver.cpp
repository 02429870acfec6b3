#include "qga/quiver.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace qga {

namespace {

Entry checked_add(Entry a, Entry b)
{
    Entry r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("exchange matrix entry overflow");
    return r;
}

Entry checked_mul(Entry a, Entry b)
{
    Entry r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("exchange matrix entry overflow");
    return r;
}

Entry checked_abs(Entry a)
{
    if (a == std::numeric_limits<Entry>::min())
        throw OverflowError("exchange matrix entry overflow");
    return a < 0 ? -a : a;
}

// Reads the next non-comment, non-blank line. Returns false at EOF.
bool next_line(std::istream& in, std::string& line, int& lineno)
{
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        return true;
    }
    return false;
}

[[noreturn]] void fail(int lineno, const std::string& what)
{
    throw FormatError("line " + std::to_string(lineno) + ": " + what);
}

std::size_t read_header(std::istream& in, const char* keyword, int& lineno)
{
    std::string line;
    if (!next_line(in, line, lineno))
        fail(lineno, std::string("expected '") + keyword + " <n>'");
    std::istringstream ls(line);
    std::string word;
    long long n = -1;
    std::string rest;
    if (!(ls >> word >> n) || word != keyword || n < 0 || (ls >> rest))
        fail(lineno, std::string("expected '") + keyword + " <n>'");
    return static_cast<std::size_t>(n);
}

}  // namespace

ExchangeMatrix::ExchangeMatrix(std::initializer_list<std::initializer_list<Entry>> rows)
    : n_(rows.size()), entries_(rows.size() * rows.size(), 0)
{
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != n_)
            throw FormatError("exchange matrix must be square");
        std::size_t j = 0;
        for (Entry e : row)
            entries_[i * n_ + j++] = e;
        ++i;
    }
}

Entry ExchangeMatrix::max_abs_entry() const noexcept
{
    Entry m = 0;
    for (Entry e : entries_)
        m = std::max(m, e < 0 ? -e : e);
    return m;
}

void Quiver::add_arrows(std::size_t from, std::size_t to, Entry m)
{
    if (from >= n_ || to >= n_)
        throw std::out_of_range("quiver vertex out of range");
    if (from == to)
        throw FormatError("quiver arrows may not be loops");
    if (m < 0)
        throw FormatError("arrow multiplicity must be non-negative");
    Entry& back = raw(to, from);
    Entry cancel = std::min(back, m);
    back -= cancel;
    raw(from, to) = checked_add(raw(from, to), m - cancel);
}

Entry Quiver::arrow_count() const noexcept
{
    Entry s = 0;
    for (Entry e : arrows_)
        s += e;
    return s;
}

Quiver Quiver::opposite() const
{
    Quiver r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            r.raw(j, i) = arrows(i, j);
    return r;
}

Quiver Quiver::relabeled(const std::vector<std::size_t>& perm) const
{
    if (perm.size() != n_)
        throw std::invalid_argument("permutation size mismatch");
    Quiver r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            r.raw(perm[i], perm[j]) = arrows(i, j);
    return r;
}

Quiver QuiverBuilder::build() const
{
    if (auto diag = validate(q_))
        throw FormatError(*diag);
    return q_;
}

void SimpleGraph::add_edge(std::size_t u, std::size_t v)
{
    if (u >= adj_.size() || v >= adj_.size())
        throw FormatError("graph vertex out of range");
    if (u == v)
        throw FormatError("simple graphs have no loops");
    auto& au = adj_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v)
        return;
    au.insert(it, v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++edges_;
}

bool SimpleGraph::has_edge(std::size_t u, std::size_t v) const
{
    if (u >= adj_.size() || v >= adj_.size())
        return false;
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

std::vector<std::pair<std::size_t, std::size_t>> SimpleGraph::edges() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(edges_);
    for (std::size_t u = 0; u < adj_.size(); ++u)
        for (std::size_t v : adj_[u])
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

SimpleGraph SimpleGraph::disjoint_union(const SimpleGraph& other) const
{
    SimpleGraph r(vertex_count() + other.vertex_count());
    for (auto [u, v] : edges())
        r.add_edge(u, v);
    const std::size_t off = vertex_count();
    for (auto [u, v] : other.edges())
        r.add_edge(u + off, v + off);
    return r;
}

ExchangeMatrix matrix_mutate(const ExchangeMatrix& b, std::size_t k)
{
    const std::size_t n = b.size();
    if (k >= n)
        throw std::out_of_range("mutation index out of range");
    ExchangeMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == k || j == k) {
                r(i, j) = checked_mul(b(i, j), -1);
                continue;
            }
            const Entry bik = b(i, k);
            const Entry bkj = b(k, j);
            // |b_ik| b_kj + b_ik |b_kj| is always even.
            const Entry delta = checked_add(checked_mul(checked_abs(bik), bkj),
                                            checked_mul(bik, checked_abs(bkj))) / 2;
            r(i, j) = checked_add(b(i, j), delta);
        }
    }
    return r;
}

Quiver quiver_mutate(const Quiver& q, std::size_t k)
{
    const std::size_t n = q.size();
    if (k >= n)
        throw std::out_of_range("mutation index out of range");
    Quiver r = q;
    // (1) composite arrows i -> j for every path i -> k -> j
    for (std::size_t i = 0; i < n; ++i) {
        const Entry in = q.arrows(i, k);
        if (in == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            const Entry out = q.arrows(k, j);
            if (out == 0 || i == j)
                continue;
            r.raw(i, j) = checked_add(r.raw(i, j), checked_mul(in, out));
        }
    }
    // (2) reverse arrows incident with k
    for (std::size_t i = 0; i < n; ++i) {
        std::swap(r.raw(i, k), r.raw(k, i));
    }
    // (3) cancel 2-cycles
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Entry c = std::min(r.raw(i, j), r.raw(j, i));
            r.raw(i, j) -= c;
            r.raw(j, i) -= c;
        }
    }
    return r;
}

Quiver mutate_sequence(Quiver q, const std::vector<std::size_t>& seq)
{
    for (std::size_t k : seq)
        q = quiver_mutate(q, k);
    return q;
}

Quiver quiver_from_matrix(const ExchangeMatrix& b)
{
    if (auto diag = validate(b))
        throw FormatError(*diag);
    Quiver q(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            q.raw(i, j) = std::max<Entry>(b(i, j), 0);
    return q;
}

ExchangeMatrix matrix_from_quiver(const Quiver& q)
{
    ExchangeMatrix b(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j)
            b(i, j) = q.arrows(i, j) - q.arrows(j, i);
    return b;
}

SimpleGraph underlying_graph(const Quiver& q)
{
    SimpleGraph g(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j)
            if (q.arrows(i, j) + q.arrows(j, i) > 0)
                g.add_edge(i, j);
    return g;
}

std::optional<std::string> validate(const ExchangeMatrix& b)
{
    const std::size_t n = b.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (b(i, j) != -b(j, i)) {
                std::ostringstream os;
                os << "not skew-symmetric: b(" << i + 1 << "," << j + 1 << ")=" << b(i, j)
                   << ", b(" << j + 1 << "," << i + 1 << ")=" << b(j, i);
                return os.str();
            }
        }
    }
    return std::nullopt;
}

std::optional<std::string> validate(const Quiver& q)
{
    const std::size_t n = q.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (q.arrows(i, i) != 0)
            return "loop at vertex " + std::to_string(i + 1);
        for (std::size_t j = 0; j < n; ++j)
            if (q.arrows(i, j) < 0)
                return "negative multiplicity on " + std::to_string(i + 1) + "->" + std::to_string(j + 1);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (q.arrows(i, j) > 0 && q.arrows(j, i) > 0)
                return "2-cycle between vertices " + std::to_string(i + 1) + " and " + std::to_string(j + 1);
    return std::nullopt;
}

std::string to_text(const Quiver& q)
{
    std::ostringstream os;
    os << "quiver " << q.size() << '\n';
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j)
            if (q.arrows(i, j) > 0)
                os << i + 1 << ' ' << j + 1 << ' ' << q.arrows(i, j) << '\n';
    return os.str();
}

Quiver parse_quiver(std::istream& in)
{
    int lineno = 0;
    const std::size_t n = read_header(in, "quiver", lineno);
    QuiverBuilder builder(n);
    std::vector<char> seen(n * n, 0);
    std::string line;
    while (next_line(in, line, lineno)) {
        std::istringstream ls(line);
        long long i = 0, j = 0, m = 0;
        std::string rest;
        if (!(ls >> i >> j >> m) || (ls >> rest))
            fail(lineno, "expected '<i> <j> <m>'");
        if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n)
            fail(lineno, "vertex index out of range");
        if (m < 0)
            fail(lineno, "negative multiplicity");
        const std::size_t a = static_cast<std::size_t>(i - 1), b = static_cast<std::size_t>(j - 1);
        if (seen[a * n + b])
            fail(lineno, "duplicate arrow line");
        seen[a * n + b] = 1;
        builder.set(a, b, m);
    }
    return builder.build();
}

Quiver parse_quiver(const std::string& text)
{
    std::istringstream in(text);
    return parse_quiver(in);
}

Quiver read_quiver_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path);
    return parse_quiver(in);
}

std::string to_text(const SimpleGraph& g)
{
    std::ostringstream os;
    os << "graph " << g.vertex_count() << '\n';
    for (auto [u, v] : g.edges())
        os << u + 1 << ' ' << v + 1 << '\n';
    return os.str();
}

SimpleGraph parse_graph(std::istream& in)
{
    int lineno = 0;
    const std::size_t n = read_header(in, "graph", lineno);
    SimpleGraph g(n);
    std::string line;
    while (next_line(in, line, lineno)) {
        std::istringstream ls(line);
        long long i = 0, j = 0;
        std::string rest;
        if (!(ls >> i >> j) || (ls >> rest))
            fail(lineno, "expected '<i> <j>'");
        if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n)
            fail(lineno, "vertex index out of range");
        if (i == j)
            fail(lineno, "loop edge");
        g.add_edge(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
    }
    return g;
}

SimpleGraph parse_graph(const std::string& text)
{
    std::istringstream in(text);
    return parse_graph(in);
}

std::string to_text(const ExchangeMatrix& b)
{
    std::ostringstream os;
    os << "matrix " << b.size() << '\n';
    for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j)
            os << (j ? " " : "") << b(i, j);
        os << '\n';
    }
    return os.str();
}

}  // namespace qga
