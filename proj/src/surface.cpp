#include "qga/surface.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qga {

namespace {

struct UnionFind {
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
    std::vector<std::size_t> parent;
};

Triangle rotate_min(Triangle t)
{
    Triangle best = t;
    for (int r = 1; r < 3; ++r) {
        Triangle c{{t.sides[r], t.sides[(r + 1) % 3], t.sides[(r + 2) % 3]}};
        if (c.sides < best.sides)
            best = c;
    }
    return best;
}

// Side slots (triangle, position) holding each label.
std::vector<std::vector<std::pair<std::size_t, int>>> slots_by_label(int labels,
                                                                     const std::vector<Triangle>& triangles)
{
    std::vector<std::vector<std::pair<std::size_t, int>>> slots(static_cast<std::size_t>(labels) + 1);
    for (std::size_t t = 0; t < triangles.size(); ++t)
        for (int s = 0; s < 3; ++s)
            slots[static_cast<std::size_t>(triangles[t].sides[s])].emplace_back(t, s);
    return slots;
}

}  // namespace

std::optional<std::string> validate(const SurfaceSignature& sig)
{
    if (sig.g < 0 || sig.b < 0 || sig.p < 0 || sig.c < 0)
        return "signature entries must be non-negative";
    if (sig.b == 0 && sig.c != 0)
        return "marked boundary points without boundary";
    if (sig.b > 0 && sig.c < sig.b)
        return "each boundary component needs a marked point";
    if (6 * sig.g + 3 * sig.b + 3 * sig.p + sig.c - 6 < 1)
        return "surface admits no triangulation in scope";
    return std::nullopt;
}

int arc_count(const SurfaceSignature& sig)
{
    const int n = 6 * sig.g + 3 * sig.b + 3 * sig.p + sig.c - 6;
    if (n < 1)
        throw std::invalid_argument("surface admits no triangulation in scope");
    return n;
}

bool Triangle::self_folded() const noexcept
{
    return sides[0] == sides[1] || sides[1] == sides[2] || sides[2] == sides[0];
}

int Triangle::folded() const noexcept
{
    if (sides[0] == sides[1] || sides[0] == sides[2])
        return sides[0];
    return sides[1] == sides[2] ? sides[1] : 0;
}

int Triangle::outer() const noexcept
{
    const int f = folded();
    if (f == 0)
        return 0;
    for (int s : sides)
        if (s != f)
            return s;
    return 0;
}

std::optional<std::string> validate_triangulation(const SurfaceSignature& sig, int arcs, int boundary,
                                                  const std::vector<Triangle>& triangles)
{
    if (auto d = validate(sig))
        return d;
    const int expected = 6 * sig.g + 3 * sig.b + 3 * sig.p + sig.c - 6;
    if (arcs != expected)
        return "arc count mismatch: expected " + std::to_string(expected);
    if (boundary != sig.c)
        return "boundary segment count mismatch: expected " + std::to_string(sig.c);
    const int labels = arcs + boundary;
    for (const auto& t : triangles) {
        for (int s : t.sides)
            if (s < 1 || s > labels)
                return "unknown side label " + std::to_string(s);
        if (t.sides[0] == t.sides[1] && t.sides[1] == t.sides[2])
            return "triangle with three equal sides";
        if (t.self_folded() && t.folded() > arcs)
            return "boundary segment " + std::to_string(t.folded()) + " used twice in one triangle";
    }
    const auto slots = slots_by_label(labels, triangles);
    for (int l = 1; l <= labels; ++l) {
        const std::size_t want = l <= arcs ? 2 : 1;
        if (slots[static_cast<std::size_t>(l)].size() != want)
            return std::string(l <= arcs ? "arc " : "boundary segment ") + std::to_string(l) + " fills " +
                   std::to_string(slots[static_cast<std::size_t>(l)].size()) + " side slots, expected " +
                   std::to_string(want);
    }
    if (3 * triangles.size() != static_cast<std::size_t>(2 * arcs + boundary))
        return "side slot count mismatch: 3T must equal 2n + c";

    // Corner k of a triangle sits between sides k and k+1, so side k runs
    // from corner k-1 to corner k. Gluing two sides reverses direction.
    const std::size_t T = triangles.size();
    UnionFind corners(3 * T), faces(T);
    auto corner = [](std::size_t t, int k) { return 3 * t + static_cast<std::size_t>((k + 3) % 3); };
    for (int l = 1; l <= arcs; ++l) {
        const auto [t1, s1] = slots[static_cast<std::size_t>(l)][0];
        const auto [t2, s2] = slots[static_cast<std::size_t>(l)][1];
        corners.unite(corner(t1, s1 - 1), corner(t2, s2));
        corners.unite(corner(t1, s1), corner(t2, s2 - 1));
        faces.unite(t1, t2);
    }
    for (std::size_t t = 1; t < T; ++t)
        if (faces.find(t) != faces.find(0))
            return "triangles do not form a connected surface";

    std::map<std::size_t, int> vertex_id;
    for (std::size_t k = 0; k < 3 * T; ++k)
        vertex_id.emplace(corners.find(k), static_cast<int>(vertex_id.size()));
    const int V = static_cast<int>(vertex_id.size());

    // Boundary segments form the boundary cycles.
    UnionFind cycles(static_cast<std::size_t>(V));
    std::vector<bool> on_boundary(static_cast<std::size_t>(V), false);
    for (int l = arcs + 1; l <= labels; ++l) {
        const auto [t, s] = slots[static_cast<std::size_t>(l)][0];
        const auto a = static_cast<std::size_t>(vertex_id[corners.find(corner(t, s - 1))]);
        const auto b = static_cast<std::size_t>(vertex_id[corners.find(corner(t, s))]);
        on_boundary[a] = on_boundary[b] = true;
        cycles.unite(a, b);
    }
    int boundary_vertices = 0, components = 0;
    for (std::size_t v = 0; v < on_boundary.size(); ++v) {
        if (!on_boundary[v])
            continue;
        ++boundary_vertices;
        if (cycles.find(v) == v)
            ++components;
    }
    const int chi = V - labels + static_cast<int>(T);
    const int twice_g = 2 - components - chi;
    SurfaceSignature actual{twice_g / 2, components, V - boundary_vertices, boundary_vertices};
    if (twice_g % 2 != 0 || actual != sig) {
        std::ostringstream os;
        os << "gluing yields surface g=" << actual.g << " b=" << actual.b << " p=" << actual.p << " c=" << actual.c
           << " which differs from the signature";
        return os.str();
    }
    return std::nullopt;
}

std::optional<std::string> validate_triangulation(const Triangulation& t)
{
    return validate_triangulation(t.signature(), t.arc_count(), t.boundary_count(), t.triangles());
}

Triangulation::Triangulation(SurfaceSignature sig, int arcs, int boundary, std::vector<Triangle> triangles)
    : sig_(sig), arcs_(arcs), boundary_(boundary), triangles_(std::move(triangles))
{
    if (auto d = validate_triangulation(sig_, arcs_, boundary_, triangles_))
        throw FormatError(*d);
}

bool Triangulation::is_flippable(int arc) const
{
    if (!is_arc(arc))
        return false;
    for (const auto& t : triangles_)
        if (t.self_folded() && t.folded() == arc)
            return false;
    return true;
}

Triangulation Triangulation::normalized() const
{
    Triangulation out = *this;
    for (auto& t : out.triangles_)
        t = rotate_min(t);
    std::sort(out.triangles_.begin(), out.triangles_.end(),
              [](const Triangle& a, const Triangle& b) { return a.sides < b.sides; });
    return out;
}

int pi(const Triangulation& t, int arc)
{
    if (!t.is_arc(arc))
        throw std::invalid_argument("unknown arc label " + std::to_string(arc));
    for (const auto& tri : t.triangles())
        if (tri.self_folded() && tri.folded() == arc)
            return tri.outer();
    return arc;
}

ExchangeMatrix signed_adjacency(const Triangulation& t)
{
    const int n = t.arc_count();
    std::vector<int> image(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i)
        image[static_cast<std::size_t>(i)] = pi(t, i);
    ExchangeMatrix B(static_cast<std::size_t>(n));
    for (const auto& tri : t.triangles()) {
        if (tri.self_folded())
            continue;
        for (int s = 0; s < 3; ++s) {
            const int from = tri.sides[s], to = tri.sides[(s + 1) % 3];
            if (!t.is_arc(from) || !t.is_arc(to))
                continue;
            for (int i = 1; i <= n; ++i) {
                if (image[static_cast<std::size_t>(i)] != from)
                    continue;
                for (int j = 1; j <= n; ++j) {
                    if (image[static_cast<std::size_t>(j)] != to)
                        continue;
                    B(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) += 1;
                    B(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1)) -= 1;
                }
            }
        }
    }
    return B;
}

Triangulation flip(const Triangulation& t, int arc)
{
    if (!t.is_arc(arc))
        throw std::invalid_argument("unknown arc label " + std::to_string(arc));
    std::vector<std::pair<std::size_t, int>> slots;
    for (std::size_t i = 0; i < t.triangles().size(); ++i)
        for (int s = 0; s < 3; ++s)
            if (t.triangles()[i].sides[s] == arc)
                slots.emplace_back(i, s);
    if (slots[0].first == slots[1].first)
        throw std::invalid_argument("arc not flippable");

    auto tail = [&](std::pair<std::size_t, int> slot) {
        const auto& sides = t.triangles()[slot.first].sides;
        return std::pair{sides[(slot.second + 1) % 3], sides[(slot.second + 2) % 3]};
    };
    // Quadrilateral sides in clockwise order: a1 a2 b1 b2.
    const auto [a1, a2] = tail(slots[0]);
    const auto [b1, b2] = tail(slots[1]);
    std::vector<Triangle> triangles = t.triangles();
    triangles[slots[0].first] = Triangle{{arc, a2, b1}};
    triangles[slots[1].first] = Triangle{{arc, b2, a1}};
    return Triangulation(t.signature(), t.arc_count(), t.boundary_count(), std::move(triangles));
}

std::string to_text(const Triangulation& t)
{
    const Triangulation norm = t.normalized();
    std::ostringstream os;
    const auto& s = norm.signature();
    os << "triangulation v1\n";
    os << "surface g=" << s.g << " b=" << s.b << " p=" << s.p << " c=" << s.c << '\n';
    os << "arcs " << norm.arc_count() << '\n';
    os << "boundary " << norm.boundary_count() << '\n';
    for (const auto& tri : norm.triangles()) {
        os << "triangle " << tri.sides[0] << ' ' << tri.sides[1] << ' ' << tri.sides[2];
        if (tri.self_folded())
            os << " folded=" << tri.folded() << " outer=" << tri.outer();
        os << '\n';
    }
    return os.str();
}

Triangulation parse_triangulation(std::istream& in)
{
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& msg) { throw FormatError("line " + std::to_string(line_no) + ": " + msg); };
    bool header = false, have_surface = false, have_arcs = false, have_boundary = false;
    SurfaceSignature sig;
    int arcs = 0, boundary = 0;
    std::vector<Triangle> triangles;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (!header) {
            std::string version;
            if (word != "triangulation" || !(ls >> version) || version != "v1")
                fail("expected header 'triangulation v1'");
            header = true;
            continue;
        }
        if (word == "surface") {
            std::string field;
            int seen = 0;
            while (ls >> field) {
                const auto eq = field.find('=');
                if (eq == std::string::npos)
                    fail("malformed surface field '" + field + "'");
                const std::string key = field.substr(0, eq);
                int value = 0;
                try {
                    value = std::stoi(field.substr(eq + 1));
                } catch (const std::exception&) {
                    fail("malformed surface field '" + field + "'");
                }
                if (key == "g")
                    sig.g = value;
                else if (key == "b")
                    sig.b = value;
                else if (key == "p")
                    sig.p = value;
                else if (key == "c")
                    sig.c = value;
                else
                    fail("unknown surface field '" + key + "'");
                ++seen;
            }
            if (seen != 4)
                fail("surface line needs g, b, p and c");
            have_surface = true;
        } else if (word == "arcs") {
            if (!(ls >> arcs))
                fail("malformed arcs line");
            have_arcs = true;
        } else if (word == "boundary") {
            if (!(ls >> boundary))
                fail("malformed boundary line");
            have_boundary = true;
        } else if (word == "triangle") {
            Triangle tri;
            if (!(ls >> tri.sides[0] >> tri.sides[1] >> tri.sides[2]))
                fail("triangle needs three side labels");
            std::string field;
            int folded = 0, outer = 0;
            while (ls >> field) {
                if (field.rfind("folded=", 0) == 0)
                    folded = std::atoi(field.c_str() + 7);
                else if (field.rfind("outer=", 0) == 0)
                    outer = std::atoi(field.c_str() + 6);
                else
                    fail("unknown triangle field '" + field + "'");
            }
            if ((folded != 0 || outer != 0 || tri.self_folded()) &&
                (folded != tri.folded() || outer != tri.outer()))
                fail("self-folded annotation does not match the side labels");
            triangles.push_back(tri);
        } else {
            fail("unknown keyword '" + word + "'");
        }
    }
    if (!header || !have_surface || !have_arcs || !have_boundary)
        throw FormatError("incomplete triangulation: need header, surface, arcs and boundary lines");
    return Triangulation(sig, arcs, boundary, std::move(triangles));
}

Triangulation parse_triangulation(const std::string& text)
{
    std::istringstream in(text);
    return parse_triangulation(in);
}

Triangulation read_triangulation_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path);
    return parse_triangulation(in);
}

Triangulation polygon_triangulation(int marks)
{
    if (marks < 4)
        throw std::invalid_argument("a polygon needs at least 4 marked points");
    const int n = marks - 3;
    // Diagonal from mark 0 to mark i (2 <= i <= marks-2) is arc i-1; the
    // boundary edge from mark j to mark j+1 is segment n+1+j.
    auto side = [&](int from, int to) {
        if (from == 0 && to >= 2 && to <= marks - 2)
            return to - 1;
        if (to == 0 && from >= 2 && from <= marks - 2)
            return from - 1;
        const int j = (to == (from + 1) % marks) ? from : to;
        return n + 1 + j;
    };
    std::vector<Triangle> triangles;
    for (int i = 1; i + 1 < marks; ++i)
        triangles.push_back(Triangle{{side(0, i), side(i, i + 1), side(i + 1, 0)}});
    return Triangulation({0, 1, 0, marks}, n, marks, std::move(triangles));
}

Triangulation punctured_torus_triangulation()
{
    return Triangulation({1, 0, 1, 0}, 3, 0, {Triangle{{1, 2, 3}}, Triangle{{1, 2, 3}}});
}

Triangulation torus_triangulation(int punctures)
{
    if (punctures < 1)
        throw std::invalid_argument("torus needs at least one puncture");
    const int p = punctures;
    std::vector<Triangle> triangles;
    for (int i = 1; i <= p; ++i) {
        const int next = i % p + 1;
        triangles.push_back(Triangle{{i, p + i, 2 * p + i}});
        triangles.push_back(Triangle{{2 * p + i, next, p + i}});
    }
    return Triangulation({1, 0, p, 0}, 3 * p, 0, std::move(triangles));
}

Triangulation sphere4_triangulation()
{
    return Triangulation({0, 0, 4, 0}, 6, 0,
                         {Triangle{{1, 2, 3}}, Triangle{{1, 4, 4}}, Triangle{{2, 5, 5}}, Triangle{{3, 6, 6}}});
}

Triangulation random_flips(Triangulation t, int steps, std::mt19937_64& rng)
{
    for (int s = 0; s < steps; ++s) {
        std::vector<int> arcs;
        for (int a = 1; a <= t.arc_count(); ++a)
            if (t.is_flippable(a))
                arcs.push_back(a);
        std::uniform_int_distribution<std::size_t> pick(0, arcs.size() - 1);
        t = flip(t, arcs[pick(rng)]);
    }
    return t;
}

}  // namespace qga
