#include "qga/catalog.hpp"

#include "embedded_data.hpp"
#include "qga/blocks.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qga {

namespace {

std::map<std::string, NamedQuiver> parse_catalog(const std::string& text)
{
    std::map<std::string, NamedQuiver> out;
    std::istringstream in(text);
    std::string line;
    NamedQuiver current;
    std::string body;
    bool open = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "name") {
            current = NamedQuiver{};
            body.clear();
            ls >> current.name;
            open = true;
        } else if (word == "labels" && open) {
            std::string l;
            while (ls >> l)
                current.labels.push_back(l);
        } else if (word == "end" && open) {
            current.quiver = parse_quiver(body);
            if (!current.labels.empty() && current.labels.size() != current.quiver.size())
                throw FormatError("catalog entry " + current.name + " has a wrong label count");
            out.emplace(current.name, current);
            open = false;
        } else if (open) {
            body += line + '\n';
        }
    }
    return out;
}

const std::map<std::string, NamedQuiver>& bundled()
{
    static const auto data = parse_catalog(embedded::catalog_dat);
    return data;
}

NamedQuiver mutated(const NamedQuiver& base, const std::string& name, std::vector<std::string> sequence)
{
    NamedQuiver q = base;
    q.name = name;
    for (const auto& label : sequence)
        q.quiver = quiver_mutate(q.quiver, base.vertex(label));
    return q;
}

const char* const mutant_names[] = {"X6-46", "X6-4", "X6-43", "X7-4"};

}  // namespace

std::size_t NamedQuiver::vertex(const std::string& label) const
{
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end())
        throw std::invalid_argument("quiver " + name + " has no vertex " + label);
    return static_cast<std::size_t>(it - labels.begin());
}

const std::vector<std::string>& exceptional_names()
{
    static const std::vector<std::string> names{"E6",     "E7",     "E8",     "E6(1)",  "E7(1)", "E8(1)",
                                                "E6(1,1)", "E7(1,1)", "E8(1,1)", "X6", "X7"};
    return names;
}

std::vector<std::string> catalog_names()
{
    std::vector<std::string> names = exceptional_names();
    for (const char* extra : {"Markov", "Sphere4", "X6-46", "X6-4", "X6-43", "X7-4"})
        names.emplace_back(extra);
    return names;
}

NamedQuiver named(const std::string& name)
{
    if (auto it = bundled().find(name); it != bundled().end())
        return it->second;
    if (name == "Sphere4") {
        auto g = sphere4_glue();
        return {name, g.quiver, g.label_of};
    }
    for (int i = 1; i <= 4; ++i)
        if (name == mutant_names[i - 1])
            return nonplanar_mutant(i);
    throw std::invalid_argument("unknown quiver name '" + name + "'");
}

NamedQuiver nonplanar_mutant(int i)
{
    if (i < 1 || i > 4)
        throw std::invalid_argument("mutant index must be 1 to 4");
    const std::string name = mutant_names[i - 1];
    switch (i) {
    case 1:
        return mutated(named("X6"), name, {"x4", "x6"});
    case 2:
        return mutated(named("X6"), name, {"x4"});
    case 3:
        return mutated(named("X6"), name, {"x4", "x3"});
    default:
        return mutated(named("X7"), name, {"y4"});
    }
}

const std::vector<TableRow>& expected_table()
{
    static const std::vector<TableRow> rows{
        {"E6", 21, 21, 0},        {"E7", 112, 112, 0},      {"E8", 391, 391, 0},     {"E6(1)", 52, 52, 0},
        {"E7(1)", 338, 338, 0},   {"E8(1)", 1935, 1935, 0}, {"E6(1,1)", 27, 27, 0},  {"E7(1,1)", 217, 217, 0},
        {"E8(1,1)", 1886, 1886, 0}, {"X6", 4, 1, 3},        {"X7", 2, 1, 1},
    };
    return rows;
}

}  // namespace qga
