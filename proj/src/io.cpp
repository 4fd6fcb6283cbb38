#include "conway/io.hpp"

#include <set>
#include <sstream>

namespace conway {

namespace {

const Json& require_field(const Json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key))
        fail(ErrorCode::schema_error, where + ": missing field '" + key + "'");
    return obj.at(key);
}

std::string require_string(const Json& obj, const std::string& key, const std::string& where) {
    const Json& value = require_field(obj, key, where);
    if (!value.is_string())
        fail(ErrorCode::schema_error, where + ": field '" + key + "' must be a string");
    return value.get<std::string>();
}

} // namespace

GraphDocument parse_graph_document(const std::string& text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::parse_error, e.what());
    }
    if (!root.is_object()) fail(ErrorCode::schema_error, "document: top level must be an object");

    GraphDocument doc;
    const Json& version = require_field(root, "format_version", "document");
    if (!version.is_number_integer())
        fail(ErrorCode::schema_error, "document: format_version must be an integer");
    doc.format_version = version.get<int>();
    if (doc.format_version != 1)
        fail(ErrorCode::schema_error,
             "document: unsupported format_version " + std::to_string(doc.format_version));

    doc.role = require_string(root, "role", "document");
    if (doc.role != "system" && doc.role != "organization" && doc.role != "task")
        fail(ErrorCode::schema_error, "document: role must be system, organization or task");

    const Json& vertices = require_field(root, "vertices", "document");
    if (!vertices.is_array()) fail(ErrorCode::schema_error, "document: vertices must be an array");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Json& v = vertices[i];
        std::string where = "vertices[" + std::to_string(i) + "]";
        if (!v.is_object()) fail(ErrorCode::schema_error, where + ": must be an object");
        DocumentVertex vertex;
        vertex.id = require_string(v, "id", where);
        vertex.label = v.contains("label") ? require_string(v, "label", where) : vertex.id;
        doc.vertices.push_back(std::move(vertex));
    }

    const Json& edges = require_field(root, "edges", "document");
    if (!edges.is_array()) fail(ErrorCode::schema_error, "document: edges must be an array");
    std::set<std::string> vertex_ids;
    for (const auto& v : doc.vertices) vertex_ids.insert(v.id);
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const Json& e = edges[i];
        std::string where = "edges[" + std::to_string(i) + "]";
        if (!e.is_object()) fail(ErrorCode::schema_error, where + ": must be an object");
        DocumentEdge edge;
        edge.id = require_string(e, "id", where);
        const Json& endpoints = require_field(e, "endpoints", where);
        if (!endpoints.is_array() || endpoints.size() != 2 || !endpoints[0].is_string() ||
            !endpoints[1].is_string())
            fail(ErrorCode::schema_error, where + ": endpoints must be two vertex ids");
        edge.from = endpoints[0].get<std::string>();
        edge.to = endpoints[1].get<std::string>();
        if (!vertex_ids.count(edge.from))
            fail(ErrorCode::schema_error, where + ": endpoint '" + edge.from + "' is not declared");
        if (!vertex_ids.count(edge.to))
            fail(ErrorCode::schema_error, where + ": endpoint '" + edge.to + "' is not declared");
        doc.edges.push_back(std::move(edge));
    }

    if (root.contains("hierarchy")) {
        const Json& hierarchy = root.at("hierarchy");
        if (!hierarchy.is_array())
            fail(ErrorCode::schema_error, "document: hierarchy must be an array of partitions");
        for (std::size_t p = 0; p < hierarchy.size(); ++p) {
            const Json& partition = hierarchy[p];
            std::string where = "hierarchy[" + std::to_string(p) + "]";
            if (!partition.is_array()) fail(ErrorCode::schema_error, where + ": must be an array");
            std::vector<std::vector<std::string>> blocks;
            for (const Json& block : partition) {
                if (!block.is_array())
                    fail(ErrorCode::schema_error, where + ": blocks must be arrays of vertex ids");
                std::vector<std::string> ids;
                for (const Json& id : block) {
                    if (!id.is_string())
                        fail(ErrorCode::schema_error, where + ": vertex ids must be strings");
                    if (!vertex_ids.count(id.get<std::string>()))
                        fail(ErrorCode::schema_error,
                             where + ": block references undeclared vertex '" +
                                 id.get<std::string>() + "'");
                    ids.push_back(id.get<std::string>());
                }
                blocks.push_back(std::move(ids));
            }
            doc.hierarchy.push_back(std::move(blocks));
        }
    }
    return doc;
}

std::string serialize_graph_document(const GraphDocument& doc) {
    Json root;
    root["format_version"] = doc.format_version;
    root["role"] = doc.role;
    root["vertices"] = Json::array();
    for (const auto& v : doc.vertices)
        root["vertices"].push_back(Json{{"id", v.id}, {"label", v.label}});
    root["edges"] = Json::array();
    for (const auto& e : doc.edges)
        root["edges"].push_back(Json{{"id", e.id}, {"endpoints", Json::array({e.from, e.to})}});
    if (!doc.hierarchy.empty()) {
        root["hierarchy"] = Json::array();
        for (const auto& partition : doc.hierarchy) {
            Json blocks = Json::array();
            for (const auto& block : partition) blocks.push_back(block);
            root["hierarchy"].push_back(std::move(blocks));
        }
    }
    return root.dump(2) + "\n";
}

Graph graph_from_document(const GraphDocument& doc) {
    std::vector<std::string> names;
    for (const auto& v : doc.vertices) names.push_back(v.id);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& e : doc.edges) pairs.emplace_back(e.from, e.to);
    try {
        return build_graph(names, pairs);
    } catch (const Error& e) {
        fail(ErrorCode::validation_error, e.what());
    }
}

GraphDocument document_from_graph(const Graph& g, const std::string& role) {
    GraphDocument doc;
    doc.role = role;
    for (int v = 1; v <= g.vertex_count(); ++v)
        doc.vertices.push_back({g.vertex_name(v), g.vertex_name(v)});
    for (int e = 1; e <= g.edge_count(); ++e) {
        auto [u, v] = g.edge_ends(e);
        doc.edges.push_back({"e" + std::to_string(e), g.vertex_name(u), g.vertex_name(v)});
    }
    return doc;
}

std::vector<VertexPartition> hierarchy_plan(const GraphDocument& doc, const Graph& g) {
    std::vector<VertexPartition> plan;
    for (const auto& partition : doc.hierarchy) {
        VertexPartition blocks;
        for (const auto& block : partition) {
            std::vector<int> ids;
            for (const auto& id : block) {
                auto v = g.vertex_index(id);
                if (!v) fail(ErrorCode::schema_error, "hierarchy references unknown vertex " + id);
                ids.push_back(*v);
            }
            blocks.push_back(std::move(ids));
        }
        plan.push_back(std::move(blocks));
    }
    return plan;
}

GraphMap parse_map_document(const std::string& text, const Graph& source, const Graph& target) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::parse_error, e.what());
    }
    if (!root.is_object() || !root.contains("assignment") || !root.at("assignment").is_object())
        fail(ErrorCode::schema_error, "map: expected an object with an 'assignment' object");
    std::vector<int> assignment(static_cast<std::size_t>(source.vertex_count()), 0);
    for (const auto& [key, value] : root.at("assignment").items()) {
        auto v = source.vertex_index(key);
        if (!v) fail(ErrorCode::schema_error, "map: unknown source vertex '" + key + "'");
        if (!value.is_string())
            fail(ErrorCode::schema_error, "map: image of '" + key + "' must be a vertex id");
        auto w = target.vertex_index(value.get<std::string>());
        if (!w)
            fail(ErrorCode::schema_error,
                 "map: unknown target vertex '" + value.get<std::string>() + "'");
        assignment[static_cast<std::size_t>(*v - 1)] = *w;
    }
    for (int v = 1; v <= source.vertex_count(); ++v)
        if (assignment[static_cast<std::size_t>(v - 1)] == 0)
            fail(ErrorCode::schema_error,
                 "map: no image for source vertex '" + source.vertex_name(v) + "'");
    return GraphMap{source, target, std::move(assignment)};
}

namespace {

const char* kPalette[] = {"lightblue", "lightsalmon", "palegreen",  "gold",
                          "plum",      "lightgray",   "lightcyan",  "wheat",
                          "pink",      "darkseagreen"};

} // namespace

std::string export_dot(const Graph& g, const DotAnnotations& annotations) {
    std::ostringstream out;
    out << "graph \"" << annotations.graph_name << "\" {\n";
    for (int v = 1; v <= g.vertex_count(); ++v) {
        out << "  \"" << g.vertex_name(v) << "\"";
        std::string label = g.vertex_name(v);
        if (auto it = annotations.labels.find(v); it != annotations.labels.end())
            label = it->second;
        out << " [label=\"" << label << "\"";
        if (auto it = annotations.fiber_class.find(v); it != annotations.fiber_class.end()) {
            const char* color = kPalette[static_cast<std::size_t>(it->second - 1) %
                                         (sizeof(kPalette) / sizeof(kPalette[0]))];
            out << ", style=filled, fillcolor=\"" << color << "\"";
        }
        out << "];\n";
    }
    for (int e = 1; e <= g.edge_count(); ++e) {
        auto [u, v] = g.edge_ends(e);
        out << "  \"" << g.vertex_name(u) << "\" -- \"" << g.vertex_name(v) << "\" [label=\"e"
            << e << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

Json graph_summary_json(const Graph& g) {
    Json summary;
    summary["vertices"] = Json::array();
    for (int v = 1; v <= g.vertex_count(); ++v) summary["vertices"].push_back(g.vertex_name(v));
    summary["edges"] = Json::array();
    for (int e = 1; e <= g.edge_count(); ++e) {
        auto [u, v] = g.edge_ends(e);
        summary["edges"].push_back(Json::array({g.vertex_name(u), g.vertex_name(v)}));
    }
    return summary;
}

Json graph_map_json(const GraphMap& f) {
    Json assignment;
    for (int v = 1; v <= f.source.vertex_count(); ++v)
        assignment[f.source.vertex_name(v)] = f.target.vertex_name(f.image_of(v));
    return assignment;
}

Json collection_map_json(const CollectionMap& m) {
    Json assignment = Json::array();
    for (int i = 0; i < m.source->size(); ++i)
        assignment.push_back(Json::array(
            {subgraph_label(m.source->graph(), m.source->element(i)),
             subgraph_label(m.target->graph(), m.target->element(m.image_of(i)))}));
    return assignment;
}

namespace {

Json finding_json(const LevelFinding& finding) {
    Json out;
    out["status"] = search_status_name(finding.status);
    out["witness"] = finding.witness ? graph_map_json(*finding.witness) : Json();
    out["nodes_explored"] = finding.nodes_explored;
    return out;
}

constexpr const char* kTrivialityCaveat =
    "constant maps are always w-homomorphisms and always continuous; the non-trivial "
    "rows and the verdict exclude maps whose image is a single element";

} // namespace

Json doublet_report_json(const DoubletReport& report) {
    Json payload;
    payload["system"] = graph_summary_json(report.system);
    payload["organization"] = graph_summary_json(report.organization);
    payload["hom"] = finding_json(report.hom);
    payload["w_hom"] = finding_json(report.w_hom);
    payload["w_hom_nontrivial"] = finding_json(report.w_hom_nontrivial);
    payload["topological"] = Json{
        {"status", search_status_name(report.topological)},
        {"witness",
         report.topological_witness ? collection_map_json(*report.topological_witness) : Json()}};
    payload["nontrivial_continuous"] = Json{
        {"status", search_status_name(report.nontrivial_continuous)},
        {"witness",
         report.nontrivial_witness ? collection_map_json(*report.nontrivial_witness) : Json()}};
    payload["continuous_injection"] = Json{
        {"status", search_status_name(report.continuous_injection)},
        {"witness",
         report.injection_witness ? collection_map_json(*report.injection_witness) : Json()}};
    payload["chain_consistent"] = report.chain_consistent;
    payload["more_complicated"] = report.more_complicated;
    payload["caveat"] = kTrivialityCaveat;
    return report_envelope("doublet", std::move(payload));
}

namespace {

std::string map_oneliner(const GraphMap& f) {
    std::ostringstream out;
    for (int v = 1; v <= f.source.vertex_count(); ++v) {
        if (v > 1) out << " ";
        out << f.source.vertex_name(v) << "->" << f.target.vertex_name(f.image_of(v));
    }
    return out.str();
}

} // namespace

std::string doublet_report_text(const DoubletReport& report) {
    std::ostringstream out;
    out << "doublet: system (" << report.system.vertex_count() << " vertices, "
        << report.system.edge_count() << " edges) vs organization ("
        << report.organization.vertex_count() << " vertices, "
        << report.organization.edge_count() << " edges)\n";
    out << "  hom: " << search_status_name(report.hom.status);
    if (report.hom.witness) out << "  [" << map_oneliner(*report.hom.witness) << "]";
    out << "\n";
    out << "  w-hom: " << search_status_name(report.w_hom.status);
    if (report.w_hom.witness) out << "  [" << map_oneliner(*report.w_hom.witness) << "]";
    out << "\n";
    out << "  w-hom (non-trivial): " << search_status_name(report.w_hom_nontrivial.status);
    if (report.w_hom_nontrivial.witness)
        out << "  [" << map_oneliner(*report.w_hom_nontrivial.witness) << "]";
    out << "\n";
    out << "  continuous: " << search_status_name(report.topological) << "\n";
    out << "  continuous (non-trivial): " << search_status_name(report.nontrivial_continuous)
        << "\n";
    out << "  continuous injection: " << search_status_name(report.continuous_injection) << "\n";
    out << "  chain hom => w-hom => continuous: "
        << (report.chain_consistent ? "consistent" : "violated") << "\n";
    if (report.more_complicated)
        out << "  verdict: the system is more complicated than the organization (no non-trivial "
               "continuous map)\n";
    else
        out << "  verdict: the system is not more complicated than the organization\n";
    out << "  note: " << kTrivialityCaveat << "\n";
    return out.str();
}

Json triplet_json(const ConwayTriplet& triplet) {
    Json payload;
    payload["level"] = conway_level_name(triplet.level);
    payload["system"] = graph_summary_json(triplet.system);
    payload["organization"] = graph_summary_json(triplet.organization);
    payload["task"] = graph_summary_json(triplet.task);
    payload["p"] = graph_map_json(triplet.p);
    payload["i"] = triplet.i ? graph_map_json(*triplet.i) : Json();
    payload["q"] = triplet.q ? graph_map_json(*triplet.q) : Json();
    Json fiber_table;
    for (const auto& [task_vertex, members] : fibers(triplet.p)) {
        Json names = Json::array();
        for (int v : members) names.push_back(triplet.system.vertex_name(v));
        fiber_table[triplet.task.vertex_name(task_vertex)] = std::move(names);
    }
    payload["fibers"] = std::move(fiber_table);
    payload["task_complexity"] =
        Json{{"edges", triplet.task_edge_count()}, {"vertices", triplet.task_vertex_count()}};
    if (triplet.phat) payload["p_hat"] = collection_map_json(*triplet.phat);
    if (triplet.ihat) payload["i_hat"] = collection_map_json(*triplet.ihat);
    if (triplet.qhat) payload["q_hat"] = collection_map_json(*triplet.qhat);
    return report_envelope("triplet", std::move(payload));
}

std::string triplet_text(const ConwayTriplet& triplet) {
    std::ostringstream out;
    out << "triplet at level " << conway_level_name(triplet.level) << "\n";
    out << "  task graph: " << triplet.task_vertex_count() << " vertices, "
        << triplet.task_edge_count() << " edges\n";
    out << "  p: " << map_oneliner(triplet.p) << "\n";
    if (triplet.i) out << "  i: " << map_oneliner(*triplet.i) << "\n";
    if (triplet.q) out << "  q = i.p: " << map_oneliner(*triplet.q) << "\n";
    out << "  fibers:\n";
    for (const auto& [task_vertex, members] : fibers(triplet.p)) {
        out << "    " << triplet.task.vertex_name(task_vertex) << " <- {";
        for (std::size_t k = 0; k < members.size(); ++k)
            out << (k ? "," : "") << triplet.system.vertex_name(members[k]);
        out << "}\n";
    }
    if (triplet.ihat) out << "  i_hat: continuous injection on " << triplet.ihat->source->size()
                          << " collection elements\n";
    return out.str();
}

Json tasks_json(const TaskEnumeration& tasks) {
    Json payload;
    payload["status"] = search_status_name(tasks.status);
    payload["complete"] = tasks.complete;
    payload["triplets"] = Json::array();
    for (const auto& triplet : tasks.triplets) payload["triplets"].push_back(triplet_json(triplet));
    return report_envelope("tasks", std::move(payload));
}

std::string tasks_text(const TaskEnumeration& tasks) {
    std::ostringstream out;
    out << tasks.triplets.size() << " task graph(s)";
    if (!tasks.complete) out << " (enumeration hit the budget; list may be partial)";
    out << "\n";
    for (std::size_t k = 0; k < tasks.triplets.size(); ++k) {
        out << "#" << (k + 1) << " ";
        out << triplet_text(tasks.triplets[k]);
    }
    return out.str();
}

Json topology_report_json(const GraphTopologySpace& space) {
    Json payload;
    payload["graph"] = graph_summary_json(space.graph());
    payload["element_count"] = space.size();
    payload["elements"] = Json::array();
    for (int i = 0; i < space.size(); ++i)
        payload["elements"].push_back(subgraph_label(space.graph(), space.element(i)));
    payload["covers"] = Json::array();
    const FinitePoset& poset = space.poset();
    for (int b = 0; b < space.size(); ++b)
        for (int a = 0; a < space.size(); ++a)
            if (poset.covers(b, a))
                payload["covers"].push_back(Json::array({poset.name(a), poset.name(b)}));
    return report_envelope("topology", std::move(payload));
}

std::string topology_report_text(const GraphTopologySpace& space) {
    std::ostringstream out;
    out << space.size() << " connected subgraphs\n";
    for (int i = 0; i < space.size(); ++i)
        out << "  #" << (i + 1) << " " << subgraph_label(space.graph(), space.element(i)) << "\n";
    out << "cover relations:\n";
    const FinitePoset& poset = space.poset();
    for (int b = 0; b < space.size(); ++b)
        for (int a = 0; a < space.size(); ++a)
            if (poset.covers(b, a))
                out << "  " << poset.name(a) << " < " << poset.name(b) << "\n";
    return out.str();
}

Json induced_map_json(const InducedMap& induced) {
    Json payload;
    Json vertex_table;
    for (int v = 1; v <= induced.source.vertex_count(); ++v)
        vertex_table[induced.source.vertex_name(v)] =
            pointed_element_label(induced.target, induced.of_vertex(v));
    Json edge_table;
    for (int e = 1; e <= induced.source.edge_count(); ++e)
        edge_table["e" + std::to_string(e)] =
            pointed_element_label(induced.target, induced.of_edge(e));
    payload["vertices"] = std::move(vertex_table);
    payload["edges"] = std::move(edge_table);
    return report_envelope("induced", std::move(payload));
}

std::string induced_map_text(const InducedMap& induced) {
    std::ostringstream out;
    out << "induced map:\n";
    for (int v = 1; v <= induced.source.vertex_count(); ++v)
        out << "  " << induced.source.vertex_name(v) << " -> "
            << pointed_element_label(induced.target, induced.of_vertex(v)) << "\n";
    for (int e = 1; e <= induced.source.edge_count(); ++e)
        out << "  e" << e << " -> " << pointed_element_label(induced.target, induced.of_edge(e))
            << "\n";
    out << "  * -> *\n";
    return out.str();
}

namespace {

Json responsibility_json(const Graph& system, const ResponsibilityEntry& entry) {
    switch (entry.kind) {
        case ResponsibilityEntry::Kind::unassigned:
            return Json{{"kind", "unassigned"}};
        case ResponsibilityEntry::Kind::system_vertices: {
            Json ids = Json::array();
            for (int v : entry.ids) ids.push_back(system.vertex_name(v));
            return Json{{"kind", "modules"}, {"ids", std::move(ids)}};
        }
        case ResponsibilityEntry::Kind::system_edges: {
            Json ids = Json::array();
            for (int e : entry.ids) ids.push_back("e" + std::to_string(e));
            return Json{{"kind", "relations"}, {"ids", std::move(ids)}};
        }
    }
    return Json();
}

std::string responsibility_text(const Graph& system, const ResponsibilityEntry& entry) {
    switch (entry.kind) {
        case ResponsibilityEntry::Kind::unassigned:
            return "*";
        case ResponsibilityEntry::Kind::system_vertices: {
            std::string out = "modules {";
            for (std::size_t k = 0; k < entry.ids.size(); ++k)
                out += (k ? "," : "") + system.vertex_name(entry.ids[k]);
            return out + "}";
        }
        case ResponsibilityEntry::Kind::system_edges: {
            std::string out = "relations {";
            for (std::size_t k = 0; k < entry.ids.size(); ++k)
                out += (k ? ",e" : "e") + std::to_string(entry.ids[k]);
            return out + "}";
        }
    }
    return "?";
}

} // namespace

Json fsharp_json(const TConwayMorphism& morphism) {
    Json payload;
    payload["system"] = graph_summary_json(morphism.system);
    payload["task"] = graph_summary_json(morphism.task);
    payload["organization"] = graph_summary_json(morphism.organization);
    Json istar;
    for (int v = 1; v <= morphism.organization.vertex_count(); ++v)
        istar[morphism.organization.vertex_name(v)] =
            pointed_element_label(morphism.task, morphism.istar.of_vertex(v));
    for (int e = 1; e <= morphism.organization.edge_count(); ++e)
        istar["e" + std::to_string(e)] =
            pointed_element_label(morphism.task, morphism.istar.of_edge(e));
    payload["induced"] = std::move(istar);
    Json responsibility;
    for (int v = 1; v <= morphism.organization.vertex_count(); ++v)
        responsibility[morphism.organization.vertex_name(v)] = responsibility_json(
            morphism.system, morphism.vertex_responsibility[static_cast<std::size_t>(v - 1)]);
    for (int e = 1; e <= morphism.organization.edge_count(); ++e)
        responsibility["e" + std::to_string(e)] = responsibility_json(
            morphism.system, morphism.edge_responsibility[static_cast<std::size_t>(e - 1)]);
    payload["responsibility"] = std::move(responsibility);
    return report_envelope("fsharp", std::move(payload));
}

std::string fsharp_text(const TConwayMorphism& morphism) {
    std::ostringstream out;
    out << "responsibility table (organization -> system):\n";
    for (int v = 1; v <= morphism.organization.vertex_count(); ++v)
        out << "  " << morphism.organization.vertex_name(v) << " -> "
            << responsibility_text(morphism.system,
                                   morphism.vertex_responsibility[static_cast<std::size_t>(v - 1)])
            << "\n";
    for (int e = 1; e <= morphism.organization.edge_count(); ++e)
        out << "  e" << e << " -> "
            << responsibility_text(morphism.system,
                                   morphism.edge_responsibility[static_cast<std::size_t>(e - 1)])
            << "\n";
    return out.str();
}

Json fallback_json(const Graph& gs, const FallbackResult& fallback) {
    Json payload;
    payload["kept"] = subgraph_label(gs, fallback.kept);
    payload["witness"] = fallback.witness ? graph_map_json(*fallback.witness) : Json();
    Json dropped_vertices = Json::array();
    for (int v : fallback.dropped_vertices) dropped_vertices.push_back(gs.vertex_name(v));
    Json dropped_edges = Json::array();
    for (int e : fallback.dropped_edges) dropped_edges.push_back("e" + std::to_string(e));
    payload["dropped_vertices"] = std::move(dropped_vertices);
    payload["dropped_edges"] = std::move(dropped_edges);
    payload["exhaustive"] = fallback.exhaustive;
    return report_envelope("fallback", std::move(payload));
}

std::string fallback_text(const Graph& gs, const FallbackResult& fallback) {
    std::ostringstream out;
    out << "truncated system: " << subgraph_label(gs, fallback.kept) << "\n";
    if (fallback.witness) out << "  witness: " << map_oneliner(*fallback.witness) << "\n";
    if (fallback.dropped_vertices.empty() && fallback.dropped_edges.empty()) {
        out << "  nothing dropped\n";
    } else {
        out << "  dropped:";
        for (int v : fallback.dropped_vertices) out << " " << gs.vertex_name(v);
        for (int e : fallback.dropped_edges) out << " e" << e;
        out << "\n";
        out << "  warning: the produced system would reflect the organization, not the intended "
               "design\n";
    }
    return out.str();
}

Json ladder_report_json(const LadderDiagram& ladder, const LadderReport& report) {
    Json payload;
    payload["levels"] = ladder.system.levels.size();
    payload["squares"] = Json::array();
    for (std::size_t i = 0; i < report.squares.size(); ++i) {
        Json square;
        square["level"] = i;
        square["commutes"] = report.squares[i].commutes;
        square["witness_vertex"] =
            report.squares[i].witness_vertex
                ? Json(ladder.system.levels[i].vertex_name(*report.squares[i].witness_vertex))
                : Json();
        payload["squares"].push_back(std::move(square));
    }
    payload["rungs"] = Json::array();
    for (const auto& rung : report.rungs)
        payload["rungs"].push_back(Json{{"hom", rung.is_hom}, {"w_hom", rung.is_w_hom}});
    payload["triangles"] = Json::array();
    for (const auto& triangle : report.triangles)
        payload["triangles"].push_back(triangle ? Json{{"holds", triangle->holds}} : Json());
    payload["diagonals"] = Json::array();
    for (const auto& diagonal : report.diagonals)
        payload["diagonals"].push_back(
            Json{{"w_hom", search_status_name(diagonal.w_hom)},
                 {"nontrivial_continuous", search_status_name(diagonal.nontrivial_continuous)}});
    payload["all_squares_commute"] = report.all_squares_commute;
    return report_envelope("ladder", std::move(payload));
}

std::string ladder_report_text(const LadderDiagram& ladder, const LadderReport& report) {
    std::ostringstream out;
    out << "ladder with " << ladder.system.levels.size() << " levels\n";
    for (std::size_t i = 0; i < report.squares.size(); ++i) {
        out << "  square " << i << ": "
            << (report.squares[i].commutes ? "commutes" : "does NOT commute");
        if (report.squares[i].witness_vertex)
            out << " (witness "
                << ladder.system.levels[i].vertex_name(*report.squares[i].witness_vertex) << ")";
        out << "\n";
    }
    for (std::size_t i = 0; i < report.rungs.size(); ++i)
        out << "  rung " << i << ": "
            << (report.rungs[i].is_hom ? "hom"
                                       : (report.rungs[i].is_w_hom ? "w-hom" : "not a w-hom"))
            << "\n";
    for (std::size_t i = 0; i < report.triangles.size(); ++i)
        if (report.triangles[i])
            out << "  triangle " << i << ": " << (report.triangles[i]->holds ? "q = i.p" : "broken")
                << "\n";
    for (std::size_t i = 0; i < report.diagonals.size(); ++i)
        out << "  diagonal " << i + 1 << " -> " << i
            << ": w-hom " << search_status_name(report.diagonals[i].w_hom)
            << ", non-trivial continuous "
            << search_status_name(report.diagonals[i].nontrivial_continuous) << "\n";
    out << (report.all_squares_commute ? "all squares commute\n" : "commutativity FAILED\n");
    return out.str();
}

Json report_envelope(const std::string& kind, Json payload) {
    Json report;
    report["format_version"] = 1;
    report["kind"] = kind;
    report["payload"] = std::move(payload);
    return report;
}

bool validate_report_json(const Json& report, std::string* why) {
    auto reject = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    if (!report.is_object()) return reject("report must be an object");
    if (!report.contains("format_version") || !report.at("format_version").is_number_integer())
        return reject("format_version must be an integer");
    if (report.at("format_version").get<int>() != 1) return reject("unsupported format_version");
    if (!report.contains("kind") || !report.at("kind").is_string())
        return reject("kind must be a string");
    static const std::set<std::string> kKinds = {"doublet", "triplet",  "tasks",  "topology",
                                                 "induced", "fsharp",   "fallback", "ladder",
                                                 "dot"};
    std::string kind = report.at("kind").get<std::string>();
    if (!kKinds.count(kind)) return reject("unknown kind '" + kind + "'");
    if (!report.contains("payload") || !report.at("payload").is_object())
        return reject("payload must be an object");
    const Json& payload = report.at("payload");
    auto need = [&](std::initializer_list<const char*> keys) {
        for (const char* key : keys)
            if (!payload.contains(key)) return reject(std::string("payload misses '") + key + "'");
        return true;
    };
    if (kind == "doublet")
        return need({"system", "organization", "hom", "w_hom", "w_hom_nontrivial", "topological",
                     "nontrivial_continuous", "continuous_injection", "chain_consistent",
                     "more_complicated", "caveat"});
    if (kind == "triplet")
        return need({"level", "system", "organization", "task", "p", "i", "q", "fibers",
                     "task_complexity"});
    if (kind == "tasks") return need({"status", "complete", "triplets"});
    if (kind == "topology") return need({"graph", "element_count", "elements", "covers"});
    if (kind == "induced") return need({"vertices", "edges"});
    if (kind == "fsharp")
        return need({"system", "task", "organization", "induced", "responsibility"});
    if (kind == "fallback")
        return need({"kept", "witness", "dropped_vertices", "dropped_edges", "exhaustive"});
    if (kind == "ladder")
        return need({"levels", "squares", "rungs", "triangles", "diagonals",
                     "all_squares_commute"});
    if (kind == "dot") return need({"dot"});
    return true;
}

} // namespace conway
