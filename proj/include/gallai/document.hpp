#pragma once

// On-disk form of a decomposition: a small JSON document and a DOT view.
// Serialization is canonical — field order fixed, removed edges sorted,
// paths orientation-normalized and sorted — so deserializing and
// reserializing any emitted document is byte-identical.

#include <map>
#include <string>

#include <json.hpp>

#include "gallai/core.hpp"
#include "gallai/removal.hpp"

namespace gallai {

struct DecompositionDocument {
    int n = 0;
    std::vector<Edge> removed_edges;             // sorted, smaller endpoint first
    std::vector<Path> paths;                     // normalized, sorted
    std::map<std::string, std::string> metadata; // semantic fields only

    static DecompositionDocument from_decomposition(const PathDecomposition& d,
                                                    std::map<std::string, std::string> meta = {}) {
        DecompositionDocument doc;
        doc.n = d.host.n;
        const LabeledGraph full = complete_graph(d.host.n);
        for (Edge e : full.edges)
            if (!d.host.contains(e)) doc.removed_edges.push_back(e);
        doc.paths = d.paths;
        std::sort(doc.paths.begin(), doc.paths.end());
        doc.metadata = std::move(meta);
        return doc;
    }

    static DecompositionDocument from_removal(const RemovalResult& r) {
        std::map<std::string, std::string> meta;
        meta["removal"] = to_string(r.record.kind);
        meta["removed_count"] = std::to_string(r.record.removed_edges.size());
        if (r.record.center) meta["center"] = std::to_string(*r.record.center);
        if (r.record.cycle_length)
            meta["cycle_length"] = std::to_string(*r.record.cycle_length);
        return from_decomposition(r.decomposition, std::move(meta));
    }

    PathDecomposition to_decomposition() const {
        PathDecomposition d;
        d.host = complete_graph(n);
        for (Edge e : removed_edges) d.host.remove(e);
        d.paths = paths;
        d.sort_paths();
        return d;
    }

    std::string to_json() const {
        nlohmann::ordered_json j;
        j["n"] = n;
        auto removed = nlohmann::ordered_json::array();
        std::vector<Edge> sorted_removed = removed_edges;
        std::sort(sorted_removed.begin(), sorted_removed.end());
        for (Edge e : sorted_removed) removed.push_back({e.u, e.v});
        j["removed_edges"] = std::move(removed);
        auto parr = nlohmann::ordered_json::array();
        std::vector<Path> sorted_paths = paths;
        std::sort(sorted_paths.begin(), sorted_paths.end());
        for (const Path& p : sorted_paths) parr.push_back(p.vertices);
        j["paths"] = std::move(parr);
        j["metadata"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : metadata) j["metadata"][k] = v;
        return j.dump() + "\n";
    }

    static DecompositionDocument parse_json(const std::string& text) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& ex) {
            throw std::invalid_argument(std::string("document: malformed JSON: ") + ex.what());
        }
        if (!j.is_object()) throw std::invalid_argument("document: top level must be an object");
        for (const auto& [key, _] : j.items())
            if (key != "n" && key != "removed_edges" && key != "paths" && key != "metadata")
                throw std::invalid_argument("document: unknown field '" + key + "'");
        if (!j.contains("n") || !j["n"].is_number_integer())
            throw std::invalid_argument("document: missing integer field 'n'");
        DecompositionDocument doc;
        doc.n = j["n"].get<int>();
        if (doc.n < 1) throw std::invalid_argument("document: n must be positive");
        if (j.contains("removed_edges")) {
            if (!j["removed_edges"].is_array())
                throw std::invalid_argument("document: removed_edges must be an array");
            for (const auto& pair : j["removed_edges"]) {
                if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
                    !pair[1].is_number_integer())
                    throw std::invalid_argument("document: removed edge must be a vertex pair");
                int a = pair[0].get<int>(), b = pair[1].get<int>();
                if (a < 1 || b < 1 || a > doc.n || b > doc.n || a == b)
                    throw std::invalid_argument("document: removed edge out of range");
                doc.removed_edges.push_back(Edge(a, b));
            }
            std::sort(doc.removed_edges.begin(), doc.removed_edges.end());
            if (std::adjacent_find(doc.removed_edges.begin(), doc.removed_edges.end()) !=
                doc.removed_edges.end())
                throw std::invalid_argument("document: duplicate removed edge");
        }
        if (!j.contains("paths") || !j["paths"].is_array())
            throw std::invalid_argument("document: missing array field 'paths'");
        for (const auto& seq : j["paths"]) {
            if (!seq.is_array()) throw std::invalid_argument("document: path must be an array");
            std::vector<Vertex> verts;
            for (const auto& v : seq) {
                if (!v.is_number_integer())
                    throw std::invalid_argument("document: path vertex must be an integer");
                int w = v.get<int>();
                if (w < 1 || w > doc.n)
                    throw std::invalid_argument("document: path vertex out of range");
                verts.push_back(w);
            }
            try {
                doc.paths.push_back(Path(std::move(verts)));
            } catch (const std::invalid_argument& ex) {
                throw std::invalid_argument(std::string("document: bad path: ") + ex.what());
            }
        }
        std::sort(doc.paths.begin(), doc.paths.end());
        if (j.contains("metadata")) {
            if (!j["metadata"].is_object())
                throw std::invalid_argument("document: metadata must be an object");
            for (const auto& [k, v] : j["metadata"].items()) {
                if (!v.is_string())
                    throw std::invalid_argument("document: metadata values must be strings");
                doc.metadata[k] = v.get<std::string>();
            }
        }
        return doc;
    }

    /// One undirected graph; each path gets a distinct palette color in
    /// path-sorted order, removed edges show dotted gray.  With split
    /// set, one graph per path instead.
    std::string to_dot(bool split = false) const;
};

namespace detail {

inline const std::vector<std::string>& dot_palette() {
    static const std::vector<std::string> palette = {
        "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf",
        "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#666666",
        "#1f78b4", "#b2df8a", "#fb9a99", "#fdbf6f", "#cab2d6", "#b15928"};
    return palette;
}

}  // namespace detail

inline std::string DecompositionDocument::to_dot(bool split) const {
    std::vector<Path> sorted_paths = paths;
    std::sort(sorted_paths.begin(), sorted_paths.end());
    const auto& palette = detail::dot_palette();
    std::string out;
    auto emit_edge = [&out](Edge e, const std::string& attrs) {
        out += "  " + std::to_string(e.u) + " -- " + std::to_string(e.v) + " [" + attrs + "];\n";
    };
    if (split) {
        for (std::size_t i = 0; i < sorted_paths.size(); ++i) {
            out += "graph path_" + std::to_string(i) + " {\n";
            out += "  node [shape=circle];\n";
            for (Edge e : sorted_paths[i].edges())
                emit_edge(e, "color=\"" + palette[i % palette.size()] + "\"");
            out += "}\n";
        }
        return out;
    }
    out += "graph decomposition {\n";
    out += "  node [shape=circle];\n";
    for (Vertex v = 1; v <= n; ++v) out += "  " + std::to_string(v) + ";\n";
    for (std::size_t i = 0; i < sorted_paths.size(); ++i)
        for (Edge e : sorted_paths[i].edges())
            emit_edge(e, "color=\"" + palette[i % palette.size()] + "\"");
    std::vector<Edge> sorted_removed = removed_edges;
    std::sort(sorted_removed.begin(), sorted_removed.end());
    for (Edge e : sorted_removed) emit_edge(e, "style=dotted, color=\"#999999\"");
    out += "}\n";
    return out;
}

}  // namespace gallai
