#pragma once

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kha/quiver.hpp"

namespace kha {

// Quiver config schema:
//   { "vertices": ["1", "2"], "edges": [{"src": "1", "dst": "2", "id": "e"}] }
inline Quiver quiver_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
        throw Error(errc::malformed_quiver, "expected object with a 'vertices' array");
    std::vector<std::string> verts;
    for (const auto& v : j["vertices"]) {
        if (!v.is_string()) throw Error(errc::malformed_quiver, "vertex names must be strings");
        verts.push_back(v.get<std::string>());
    }
    std::vector<Edge> edges;
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw Error(errc::malformed_quiver, "'edges' must be an array");
        for (const auto& e : j["edges"]) {
            if (!e.is_object() || !e.contains("src") || !e.contains("dst") || !e.contains("id"))
                throw Error(errc::malformed_quiver, "edge needs src, dst, id");
            edges.push_back({e["src"].get<std::string>(), e["dst"].get<std::string>(),
                             e["id"].get<std::string>()});
        }
    }
    return Quiver(std::move(verts), std::move(edges));
}

inline Quiver quiver_from_string(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(errc::malformed_quiver, "invalid json");
    return quiver_from_json(j);
}

inline Quiver quiver_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::malformed_quiver, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return quiver_from_string(ss.str());
}

// Dimension vector given as comma-separated entries aligned with the vertex
// order of the config, e.g. "2,1"; a single entry broadcasts to all vertices.
inline DimVector dimvector_from_string(const Quiver& Q, const std::string& s) {
    std::vector<long> entries;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            entries.push_back(std::stol(item));
        } catch (...) {
            throw Error(errc::malformed_input, "bad dimension entry '" + item + "'");
        }
    }
    const auto& verts = Q.vertices();
    if (entries.size() == 1 && verts.size() > 1) entries.assign(verts.size(), entries[0]);
    if (entries.size() != verts.size())
        throw Error(errc::malformed_input, "expected " + std::to_string(verts.size()) +
                                               " dimension entries, got " +
                                               std::to_string(entries.size()));
    DimVector v;
    for (std::size_t k = 0; k < verts.size(); ++k)
        if (entries[k] != 0) v[verts[k]] = entries[k];
    return v;
}

} // namespace kha
