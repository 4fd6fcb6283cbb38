#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "conway/analysis.hpp"

namespace conway {

using Json = nlohmann::ordered_json;

// One graph per file. `role` records what the graph stands for; `hierarchy`
// optionally carries a contraction plan (partitions of the vertex ids,
// finest first, ending in a single block).
struct DocumentVertex {
    std::string id;
    std::string label;
    bool operator==(const DocumentVertex&) const = default;
};

struct DocumentEdge {
    std::string id;
    std::string from;
    std::string to;
    bool operator==(const DocumentEdge&) const = default;
};

struct GraphDocument {
    int format_version = 1;
    std::string role = "system";
    std::vector<DocumentVertex> vertices;
    std::vector<DocumentEdge> edges;
    std::vector<std::vector<std::vector<std::string>>> hierarchy;
    bool operator==(const GraphDocument&) const = default;
};

GraphDocument parse_graph_document(const std::string& text);
std::string serialize_graph_document(const GraphDocument& doc);

Graph graph_from_document(const GraphDocument& doc);
GraphDocument document_from_graph(const Graph& g, const std::string& role = "system");
std::vector<VertexPartition> hierarchy_plan(const GraphDocument& doc, const Graph& g);

// Vertex-map files: {"format_version": 1, "assignment": {"v1": "A", ...}}.
GraphMap parse_map_document(const std::string& text, const Graph& source, const Graph& target);

struct DotAnnotations {
    std::map<int, int> fiber_class;        // vertex -> color class (1-based classes)
    std::map<int, std::string> labels;     // vertex -> display label
    std::string graph_name = "G";
};

std::string export_dot(const Graph& g, const DotAnnotations& annotations = {});

// Machine-readable reports. Every payload goes through report_envelope so the
// output always matches the published schema; the text renderings are derived
// from the same structures.
Json graph_summary_json(const Graph& g);
Json graph_map_json(const GraphMap& f);
Json collection_map_json(const CollectionMap& m);

Json doublet_report_json(const DoubletReport& report);
std::string doublet_report_text(const DoubletReport& report);

Json triplet_json(const ConwayTriplet& triplet);
std::string triplet_text(const ConwayTriplet& triplet);

Json tasks_json(const TaskEnumeration& tasks);
std::string tasks_text(const TaskEnumeration& tasks);

Json topology_report_json(const GraphTopologySpace& space);
std::string topology_report_text(const GraphTopologySpace& space);

Json induced_map_json(const InducedMap& induced);
std::string induced_map_text(const InducedMap& induced);

Json fsharp_json(const TConwayMorphism& morphism);
std::string fsharp_text(const TConwayMorphism& morphism);

Json fallback_json(const Graph& gs, const FallbackResult& fallback);
std::string fallback_text(const Graph& gs, const FallbackResult& fallback);

Json ladder_report_json(const LadderDiagram& ladder, const LadderReport& report);
std::string ladder_report_text(const LadderDiagram& ladder, const LadderReport& report);

Json report_envelope(const std::string& kind, Json payload);

// Structural check mirroring docs/analysis-report.schema.json.
bool validate_report_json(const Json& report, std::string* why = nullptr);

} // namespace conway
