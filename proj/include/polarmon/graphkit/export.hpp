#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "polarmon/graphkit/graph.hpp"

namespace polarmon::graphkit {

/// Per-node labels written as GraphML attributes. Missing entries are written
/// as "Neutral" (stance) and "Unannotated" (category).
struct NodeLabels {
    std::map<UserId, std::string> stance;
    std::map<UserId, std::string> category;
};

void write_graphml(std::ostream& out, const InteractionGraph& g, const NodeLabels& labels);
void export_graphml(const InteractionGraph& g, const NodeLabels& labels, const std::filesystem::path& path);

struct ImportedGraph {
    InteractionGraph graph;
    NodeLabels labels;
};

ImportedGraph import_graphml(const std::filesystem::path& path);
ImportedGraph read_graphml(std::istream& in);

/// "a b" per edge with a < b lexicographically, lines sorted.
void write_edge_list(std::ostream& out, const InteractionGraph& g);
void export_edge_list(const InteractionGraph& g, const std::filesystem::path& path);

}  // namespace polarmon::graphkit
