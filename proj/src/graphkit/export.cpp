#include "polarmon/graphkit/export.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace polarmon::graphkit {
namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

const std::string& label_or(const std::map<UserId, std::string>& m, const UserId& id, const std::string& fallback) {
    const auto it = m.find(id);
    return it == m.end() ? fallback : it->second;
}

}  // namespace

void write_graphml(std::ostream& out, const InteractionGraph& g, const NodeLabels& labels) {
    static const std::string kNeutral = "Neutral";
    static const std::string kUnannotated = "Unannotated";
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"user_id\" for=\"node\" attr.name=\"user_id\" attr.type=\"string\"/>\n"
        << "  <key id=\"stance\" for=\"node\" attr.name=\"stance\" attr.type=\"string\"/>\n"
        << "  <key id=\"category\" for=\"node\" attr.name=\"category\" attr.type=\"string\"/>\n"
        << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
    for (std::size_t i = 0; i < g.node_count(); ++i) {
        const UserId& id = g.node_ids()[i];
        out << "    <node id=\"n" << i << "\">"
            << "<data key=\"user_id\">" << xml_escape(id) << "</data>"
            << "<data key=\"stance\">" << xml_escape(label_or(labels.stance, id, kNeutral)) << "</data>"
            << "<data key=\"category\">" << xml_escape(label_or(labels.category, id, kUnannotated)) << "</data>"
            << "</node>\n";
    }
    for (const auto& [a, b] : g.edges()) out << "    <edge source=\"n" << a << "\" target=\"n" << b << "\"/>\n";
    out << "  </graph>\n</graphml>\n";
}

void export_graphml(const InteractionGraph& g, const NodeLabels& labels, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    write_graphml(out, g, labels);
    if (!out) throw Error("write failed on " + path.string());
}

ImportedGraph read_graphml(std::istream& in) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error& e) {
        throw ParseError(std::string("GraphML: ") + e.what());
    }
    const auto graph_node = tree.get_child_optional("graphml.graph");
    if (!graph_node) throw ParseError("GraphML: missing <graph>");

    ImportedGraph out;
    std::map<std::string, UserId> by_xml_id;
    std::set<UserId> nodes;
    std::vector<std::pair<std::string, std::string>> raw_edges;
    for (const auto& [tag, child] : *graph_node) {
        if (tag == "node") {
            const std::string xml_id = child.get<std::string>("<xmlattr>.id");
            UserId user = xml_id;
            for (const auto& [dtag, data] : child) {
                if (dtag != "data") continue;
                const std::string key = data.get<std::string>("<xmlattr>.key");
                const std::string value = data.get_value<std::string>();
                if (key == "user_id") user = value;
                else if (key == "stance") out.labels.stance[xml_id] = value;
                else if (key == "category") out.labels.category[xml_id] = value;
            }
            by_xml_id[xml_id] = user;
            nodes.insert(user);
        } else if (tag == "edge") {
            raw_edges.emplace_back(child.get<std::string>("<xmlattr>.source"),
                                   child.get<std::string>("<xmlattr>.target"));
        }
    }
    // Labels were keyed by xml id while reading; rekey by user id.
    NodeLabels rekeyed;
    for (const auto& [xml_id, v] : out.labels.stance) rekeyed.stance[by_xml_id.at(xml_id)] = v;
    for (const auto& [xml_id, v] : out.labels.category) rekeyed.category[by_xml_id.at(xml_id)] = v;
    out.labels = std::move(rekeyed);

    std::vector<std::pair<UserId, UserId>> edges;
    for (const auto& [s, t] : raw_edges) {
        const auto si = by_xml_id.find(s);
        const auto ti = by_xml_id.find(t);
        if (si == by_xml_id.end() || ti == by_xml_id.end()) throw ParseError("GraphML: edge to unknown node");
        edges.emplace_back(si->second, ti->second);
    }
    out.graph = InteractionGraph::from_edges(std::move(nodes), edges);
    return out;
}

ImportedGraph import_graphml(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    return read_graphml(in);
}

void write_edge_list(std::ostream& out, const InteractionGraph& g) {
    // Node order is lexicographic, so index order already gives sorted lines.
    for (const auto& [a, b] : g.edges()) out << g.id(a) << ' ' << g.id(b) << '\n';
}

void export_edge_list(const InteractionGraph& g, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    write_edge_list(out, g);
    if (!out) throw Error("write failed on " + path.string());
}

}  // namespace polarmon::graphkit
