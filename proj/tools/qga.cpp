// qga: command-line front end for the quiver/genus library.
//
// Exit codes: 0 success, 1 usage or validation error, 2 budget exhausted,
// truncated enumeration or table mismatch.

#include "qga/blocks.hpp"
#include "qga/canonical.hpp"
#include "qga/catalog.hpp"
#include "qga/genus.hpp"
#include "qga/mutation_class.hpp"
#include "qga/quiver.hpp"
#include "qga/surface.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace qga;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kIncomplete = 2;

struct Output {
    bool machine = false;
    std::ostringstream text;
    std::vector<std::pair<std::string, std::string>> fields;

    template <typename T>
    void field(const std::string& key, const T& value)
    {
        std::ostringstream os;
        os << value;
        fields.emplace_back(key, os.str());
    }
    void flush(const std::string& command)
    {
        if (machine) {
            std::cout << "format=qga-machine/1\ncommand=" << command << '\n';
            for (const auto& [k, v] : fields)
                std::cout << k << '=' << v << '\n';
        } else {
            std::cout << text.str();
        }
    }
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<std::size_t> parse_sequence(const std::string& text, std::size_t n)
{
    std::vector<std::size_t> seq;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        long k = 0;
        try {
            std::size_t used = 0;
            k = std::stol(item, &used);
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw FormatError("bad vertex '" + item + "' in sequence");
        }
        if (k < 1 || static_cast<std::size_t>(k) > n)
            throw FormatError("vertex " + item + " out of range 1.." + std::to_string(n));
        seq.push_back(static_cast<std::size_t>(k - 1));
    }
    return seq;
}

std::string sequence_text(const std::vector<std::size_t>& seq)
{
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i)
        out += (i ? "," : "") + std::to_string(seq[i] + 1);
    return out;
}

std::filesystem::path cache_dir()
{
    if (const char* env = std::getenv("QGA_CACHE_DIR"); env && *env)
        return env;
    return "cache";
}

Quiver load_quiver(const std::string& file, const std::string& name)
{
    if (!name.empty())
        return named(name).quiver;
    if (file.empty())
        throw FormatError("give a quiver file with -q or a catalog name with --name");
    return parse_quiver(slurp(file));
}

std::string status_text(const GenusResult& r)
{
    if (r.exact())
        return "genus " + std::to_string(r.genus) + " (exact)";
    return "genus in [" + std::to_string(r.lower) + ", " + std::to_string(r.upper) + "] (bounded)";
}

void genus_fields(Output& out, const GenusResult& r)
{
    out.field("status", r.exact() ? "exact" : "bounded");
    if (r.exact())
        out.field("genus", r.genus);
    out.field("lower", r.lower);
    out.field("upper", r.upper);
    out.field("faces", r.faces);
    out.field("nodes", r.nodes_explored);
}

struct ClassOptions {
    std::string file, name, iso = "reflection";
    ExplorationLimits limits;
    bool members = false, genus = false, no_cache = false;
    double genus_budget = 60.0;
};

ClassReport class_report(const Quiver& q, const ClassOptions& o, bool& from_cache)
{
    const IsoMode mode = parse_iso_mode(o.iso);
    from_cache = false;
    if (!o.no_cache) {
        if (auto cached = load_cache(cache_dir(), q, mode)) {
            from_cache = true;
            return *cached;
        }
    }
    auto report = enumerate_class(q, mode, o.limits);
    if (!o.no_cache && !report.truncated) {
        try {
            save_cache(cache_dir(), report, o.limits);
        } catch (const std::exception& e) {
            std::cerr << "warning: cache not written: " << e.what() << '\n';
        }
    }
    return report;
}

void add_limit_options(CLI::App* cmd, ClassOptions& o)
{
    cmd->add_option("--iso", o.iso, "Isomorphism mode: quiver, opposite, reflection or graph")
        ->check(CLI::IsMember({"quiver", "opposite", "reflection", "graph"}));
    cmd->add_option("--max-members", o.limits.max_members, "Cap on quivers explored")->check(CLI::PositiveNumber);
    cmd->add_option("--max-entry", o.limits.max_entry, "Cap on |b_ij|")->check(CLI::PositiveNumber);
    cmd->add_option("--time-budget", o.limits.time_budget, "Seconds for the enumeration")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", o.limits.threads, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--no-cache", o.no_cache, "Neither read nor write the class cache");
}

int run_mutate(const std::string& file, const std::string& name, const std::string& seq_text, Output& out)
{
    const Quiver q = load_quiver(file, name);
    const auto seq = parse_sequence(seq_text, q.size());
    const Quiver r = mutate_sequence(q, seq);
    out.text << to_text(r);
    out.field("sequence", sequence_text(seq));
    out.field("key", canonical_quiver_key(r).hex());
    std::istringstream lines(to_text(r));
    std::string line;
    while (std::getline(lines, line))
        out.field("line", line);
    return kOk;
}

int run_class(const ClassOptions& o, Output& out)
{
    const Quiver q = load_quiver(o.file, o.name);
    bool cached = false;
    auto report = class_report(q, o, cached);
    if (o.genus && !report.truncated) {
        GenusBudget b;
        b.seconds = o.genus_budget;
        report = genus_distribution(report, b);
    }
    out.text << "size " << report.size() << ", " << (report.truncated ? "truncated" : "complete");
    if (report.truncated)
        out.text << " (" << report.truncation_reason << ")";
    out.text << '\n';
    out.field("mode", to_string(report.mode));
    out.field("size", report.size());
    out.field("complete", report.truncated ? "false" : "true");
    if (report.truncated)
        out.field("truncation", report.truncation_reason);
    out.field("cached", cached ? "true" : "false");
    if (report.genus) {
        for (const auto& [g, c] : report.genus->counts) {
            out.text << "genus " << g << ": " << c << '\n';
            out.field("genus." + std::to_string(g), c);
        }
        for (const auto& [key, r] : report.genus->unresolved) {
            out.text << "unresolved " << key.hex() << ' ' << status_text(r) << '\n';
            out.field("unresolved", key.hex());
        }
    }
    if (o.members) {
        for (const auto& m : report.members) {
            out.text << "member " << m.key.hex() << '\n' << to_text(m.representative);
            out.field("member", m.key.hex());
        }
    }
    if (report.truncated)
        return kIncomplete;
    if (report.genus && !report.genus->unresolved.empty())
        return kIncomplete;
    return kOk;
}

SimpleGraph construct_graph(const std::string& family, int n)
{
    if (family == "rn")
        return construct_rn(n);
    if (family == "tn")
        return underlying_graph(construct_tn(n).quiver);
    if (family == "torus")
        return underlying_graph(torus_planar_quiver(n));
    if (family == "sphere4")
        return underlying_graph(sphere4_glue().quiver);
    throw FormatError("unknown family '" + family + "'");
}

int run_genus(const std::string& file, const std::string& name, const std::string& graph_file,
              const std::string& family, int n, double budget, Output& out)
{
    SimpleGraph g;
    if (!graph_file.empty())
        g = parse_graph(slurp(graph_file));
    else if (!family.empty())
        g = construct_graph(family, n);
    else
        g = underlying_graph(load_quiver(file, name));
    GenusBudget b;
    b.seconds = budget;
    const auto r = min_genus(g, b);
    out.text << status_text(r) << '\n';
    out.text << "vertices " << g.vertex_count() << ", edges " << g.edge_count() << ", faces " << r.faces << '\n';
    out.field("vertices", g.vertex_count());
    out.field("edges", g.edge_count());
    genus_fields(out, r);
    return r.exact() ? kOk : kIncomplete;
}

int run_table(const std::string& only, const std::string& iso, double budget, unsigned threads, bool no_cache,
              Output& out)
{
    const IsoMode mode = parse_iso_mode(iso);
    const bool compare = mode == IsoMode::reflection;
    std::size_t mismatches = 0, rows = 0;
    out.text << "type        total  genus0  genus1  expected        status\n";
    for (const auto& row : expected_table()) {
        if (!only.empty() && row.name != only)
            continue;
        ++rows;
        ClassOptions o;
        o.iso = iso;
        o.no_cache = no_cache;
        o.limits.threads = threads;
        bool cached = false;
        auto report = class_report(named(row.name).quiver, o, cached);
        GenusBudget b;
        b.seconds = budget;
        report = genus_distribution(report, b);
        const auto count = [&](int g) {
            auto it = report.genus->counts.find(g);
            return it == report.genus->counts.end() ? std::size_t{0} : it->second;
        };
        const std::size_t g0 = count(0), g1 = count(1);
        const bool match = !report.truncated && report.genus->unresolved.empty() && report.size() == row.total &&
                           g0 == row.genus0 && g1 == row.genus1;
        if (compare && !match)
            ++mismatches;
        std::ostringstream expected;
        expected << '(' << row.total << ',' << row.genus0 << ',' << row.genus1 << ')';
        char line[160];
        std::snprintf(line, sizeof line, "%-10s %6zu  %6zu  %6zu  %-14s  %s\n", row.name.c_str(), report.size(), g0, g1,
                      expected.str().c_str(), compare ? (match ? "ok" : "MISMATCH") : "-");
        out.text << line;
        const std::string prefix = "row." + row.name + ".";
        out.field(prefix + "total", report.size());
        out.field(prefix + "genus0", g0);
        out.field(prefix + "genus1", g1);
        if (compare)
            out.field(prefix + "match", match ? "true" : "false");
        if (report.truncated)
            out.field(prefix + "truncation", report.truncation_reason);
    }
    if (rows == 0)
        throw FormatError("no exceptional type named '" + only + "'");
    if (!compare)
        out.text << "no reference values for mode " << iso << "; the table counts use mode reflection\n";
    else if (mismatches)
        out.text << mismatches << " row(s) differ from the reference table\n";
    else
        out.text << "all rows match the reference table\n";
    out.field("mode", iso);
    out.field("mismatches", mismatches);
    return mismatches ? kIncomplete : kOk;
}

int run_construct(const std::string& family, int n, Output& out)
{
    std::string text;
    if (family == "rn") {
        text = to_text(construct_rn(n));
    } else if (family == "tn") {
        const auto t = construct_tn(n);
        text = to_text(t.quiver);
        out.field("type_ii_blocks", t.type_ii_blocks);
        out.field("type_iv_blocks", t.type_iv_blocks);
    } else if (family == "torus") {
        text = to_text(torus_planar_quiver(n));
    } else if (family == "sphere4") {
        text = to_text(sphere4_glue().quiver);
    } else {
        throw FormatError("unknown family '" + family + "'");
    }
    out.text << text;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line))
        out.field("line", line);
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quiver mutation classes, graph genus and surface triangulations"};
    app.require_subcommand(1);
    Output out;
    app.add_flag("--machine", out.machine, "Line-oriented key=value output");

    std::string file, name, seq, graph_file, family, tri_file, only;
    int n = 1, arc = 0;
    double budget = 60.0;
    ClassOptions copts;

    auto* mutate = app.add_subcommand("mutate", "Mutate a quiver along a vertex sequence");
    mutate->add_option("-q,--quiver", file, "Quiver file");
    mutate->add_option("--name", name, "Catalog quiver instead of a file");
    mutate->add_option("-s,--sequence", seq, "Comma-separated 1-based vertices, applied left to right")->required();
    mutate->fallthrough();

    auto* cls = app.add_subcommand("class", "Enumerate a mutation class");
    cls->add_option("-q,--quiver", copts.file, "Quiver file");
    cls->add_option("--name", copts.name, "Catalog quiver instead of a file");
    add_limit_options(cls, copts);
    cls->add_flag("--members", copts.members, "List member keys and representatives");
    cls->add_flag("--genus", copts.genus, "Add the genus histogram");
    cls->add_option("--budget", copts.genus_budget, "Seconds per genus computation")->check(CLI::PositiveNumber);
    cls->fallthrough();

    auto* genus = app.add_subcommand("genus", "Minimum genus of a quiver's underlying graph or of a graph");
    genus->add_option("-q,--quiver", file, "Quiver file");
    genus->add_option("--name", name, "Catalog quiver");
    genus->add_option("-g,--graph", graph_file, "Graph file");
    genus->add_option("--construct", family, "Construction: rn, tn, torus or sphere4")
        ->check(CLI::IsMember({"rn", "tn", "torus", "sphere4"}));
    genus->add_option("-n", n, "Construction parameter")->check(CLI::PositiveNumber);
    genus->add_option("--budget", budget, "Seconds")->check(CLI::NonNegativeNumber);
    genus->fallthrough();

    auto* table = app.add_subcommand("table", "Class sizes and genus split of the exceptional types");
    std::string table_iso = "reflection";
    unsigned threads = 1;
    bool table_no_cache = false;
    table->add_option("--only", only, "Single type, e.g. X7");
    table->add_option("--iso", table_iso, "Isomorphism mode")
        ->check(CLI::IsMember({"quiver", "opposite", "reflection", "graph"}));
    table->add_option("--budget", budget, "Seconds per genus computation")->check(CLI::PositiveNumber);
    table->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    table->add_flag("--no-cache", table_no_cache, "Neither read nor write the class cache");
    table->fallthrough();

    auto* construct = app.add_subcommand("construct", "Emit a construction: rn (graph), tn, torus, sphere4 (quivers)");
    construct->add_option("family", family, "rn, tn, torus or sphere4")
        ->required()
        ->check(CLI::IsMember({"rn", "tn", "torus", "sphere4"}));
    construct->add_option("-n,-p", n, "Parameter n or p")->check(CLI::PositiveNumber);
    construct->fallthrough();

    auto* flip_cmd = app.add_subcommand("flip", "Flip an arc of a triangulation");
    flip_cmd->add_option("-t,--triangulation", tri_file, "Triangulation file")->required();
    flip_cmd->add_option("-a,--arc", arc, "Arc label")->required();
    flip_cmd->fallthrough();

    auto* badj = app.add_subcommand("badj", "Signed adjacency matrix of a triangulation and its quiver");
    badj->add_option("-t,--triangulation", tri_file, "Triangulation file")->required();
    badj->add_option("-a,--flip", arc, "Flip this arc first");
    badj->fallthrough();

    auto* key = app.add_subcommand("key", "Canonical key of a quiver");
    key->add_option("-q,--quiver", file, "Quiver file");
    key->add_option("--name", name, "Catalog quiver");
    key->add_option("--iso", copts.iso, "Isomorphism mode")
        ->check(CLI::IsMember({"quiver", "opposite", "reflection", "graph"}));
    key->fallthrough();

    auto* catalog = app.add_subcommand("catalog", "List catalog names or print a named quiver");
    catalog->add_option("name", name, "Quiver name");
    catalog->fallthrough();

    CLI11_PARSE(app, argc, argv);

    int code = kOk;
    std::string command;
    try {
        if (mutate->parsed()) {
            command = "mutate";
            code = run_mutate(file, name, seq, out);
        } else if (cls->parsed()) {
            command = "class";
            code = run_class(copts, out);
        } else if (genus->parsed()) {
            command = "genus";
            code = run_genus(file, name, graph_file, family, n, budget, out);
        } else if (table->parsed()) {
            command = "table";
            code = run_table(only, table_iso, budget, threads, table_no_cache, out);
        } else if (construct->parsed()) {
            command = "construct";
            code = run_construct(family, n, out);
        } else if (flip_cmd->parsed()) {
            command = "flip";
            const auto t = flip(read_triangulation_file(tri_file), arc);
            out.text << to_text(t);
            out.field("arc", arc);
            std::istringstream lines(to_text(t));
            std::string line;
            while (std::getline(lines, line))
                out.field("line", line);
        } else if (badj->parsed()) {
            command = "badj";
            auto t = read_triangulation_file(tri_file);
            if (arc != 0)
                t = flip(t, arc);
            const auto b = signed_adjacency(t);
            out.text << to_text(b) << to_text(quiver_from_matrix(b));
            out.field("n", b.size());
            for (std::size_t i = 0; i < b.size(); ++i) {
                std::string row;
                for (std::size_t j = 0; j < b.size(); ++j)
                    row += (j ? " " : "") + std::to_string(b(i, j));
                out.field("row", row);
            }
        } else if (key->parsed()) {
            command = "key";
            const Quiver q = load_quiver(file, name);
            const auto k = mode_key(q, parse_iso_mode(copts.iso));
            out.text << k.hex() << '\n';
            out.field("mode", copts.iso);
            out.field("key", k.hex());
        } else if (catalog->parsed()) {
            command = "catalog";
            if (name.empty()) {
                for (const auto& nm : catalog_names()) {
                    out.text << nm << '\n';
                    out.field("name", nm);
                }
            } else {
                const auto nq = named(name);
                if (!nq.labels.empty()) {
                    out.text << "# labels";
                    for (const auto& l : nq.labels)
                        out.text << ' ' << l;
                    out.text << '\n';
                }
                out.text << to_text(nq.quiver);
                out.field("name", nq.name);
                out.field("vertices", nq.quiver.size());
                out.field("key", canonical_quiver_key(nq.quiver).hex());
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (out.machine) {
            std::cout << "format=qga-machine/1\ncommand=" << command << "\nerror=" << e.what() << '\n';
        }
        return kInvalid;
    }
    out.field("exit", code);
    out.flush(command);
    return code;
}
