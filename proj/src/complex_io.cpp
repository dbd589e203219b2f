#include "glueback/complex_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace glueback {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

void reject_unknown_fields(const json& obj, const std::vector<std::string>& allowed,
                           const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw ParseError("unknown field '" + it.key() + "' in " + where);
    }
}

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + " must be a list of strings");
    std::vector<std::string> out;
    for (const auto& item : j) {
        if (!item.is_string()) throw ParseError(where + " must contain only strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

} // namespace

CornerComplex parse_complex(const std::string& text) {
    json doc = parse_json(text, "complex file");
    if (!doc.is_object()) throw ParseError("complex file must be a JSON object");
    reject_unknown_fields(doc, {"name", "dim", "vertices", "top_cells", "panels"},
                          "complex document");
    for (const char* field : {"name", "dim", "vertices", "top_cells", "panels"})
        if (!doc.contains(field))
            throw ParseError(std::string("complex document is missing field '") + field +
                             "'");

    if (!doc["name"].is_string()) throw ParseError("'name' must be a string");
    if (!doc["dim"].is_number_integer()) throw ParseError("'dim' must be an integer");
    const int dim = doc["dim"].get<int>();
    if (dim < 1) throw ParseError("'dim' must be at least 1");

    std::vector<std::string> vertices = string_list(doc["vertices"], "'vertices'");

    if (!doc["top_cells"].is_array()) throw ParseError("'top_cells' must be a list");
    std::vector<std::vector<std::string>> tops;
    for (const auto& cell : doc["top_cells"])
        tops.push_back(string_list(cell, "a top cell"));

    if (!doc["panels"].is_array()) throw ParseError("'panels' must be a list");
    std::vector<PanelSpec> panels;
    for (const auto& p : doc["panels"]) {
        if (!p.is_object()) throw ParseError("each panel must be an object");
        reject_unknown_fields(p, {"id", "kind", "cells", "involution"}, "panel");
        for (const char* field : {"id", "kind", "cells"})
            if (!p.contains(field))
                throw ParseError(std::string("panel is missing field '") + field + "'");
        PanelSpec spec;
        if (!p["id"].is_string()) throw ParseError("panel 'id' must be a string");
        spec.id = p["id"].get<std::string>();
        const std::string kind = p["kind"].is_string() ? p["kind"].get<std::string>() : "";
        if (kind == "principal")
            spec.kind = PanelKind::Principal;
        else if (kind == "reflexive")
            spec.kind = PanelKind::Reflexive;
        else
            throw ParseError("panel '" + spec.id +
                             "': 'kind' must be \"principal\" or \"reflexive\"");
        if (!p["cells"].is_array())
            throw ParseError("panel '" + spec.id + "': 'cells' must be a list");
        for (const auto& cell : p["cells"])
            spec.cells.push_back(string_list(cell, "a panel cell"));
        if (spec.kind == PanelKind::Reflexive) {
            if (p.contains("involution"))
                throw ParseError("panel '" + spec.id +
                                 "': reflexive panels must omit 'involution'");
        } else {
            if (!p.contains("involution"))
                throw ParseError("panel '" + spec.id +
                                 "': principal panels need an 'involution'");
            if (!p["involution"].is_object())
                throw ParseError("panel '" + spec.id + "': 'involution' must be an object");
            for (auto it = p["involution"].begin(); it != p["involution"].end(); ++it) {
                if (!it.value().is_string())
                    throw ParseError("panel '" + spec.id +
                                     "': involution values must be strings");
                spec.involution[it.key()] = it.value().get<std::string>();
            }
        }
        panels.push_back(std::move(spec));
    }

    try {
        return CornerComplex(doc["name"].get<std::string>(), dim, vertices, tops, panels);
    } catch (const ValidationError& e) {
        throw ParseError(std::string("complex document is inconsistent: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CornerComplex load_complex(const std::string& path) {
    try {
        return parse_complex(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string serialize_complex(const CornerComplex& c) {
    ordered_json doc;
    doc["name"] = c.name();
    doc["dim"] = c.dim();
    doc["vertices"] = c.vertex_labels();
    ordered_json tops = ordered_json::array();
    for (const auto& cell : c.cells(c.dim())) {
        ordered_json labels = ordered_json::array();
        for (Vertex v : cell) labels.push_back(c.label(v));
        tops.push_back(labels);
    }
    doc["top_cells"] = tops;
    ordered_json panels = ordered_json::array();
    for (const auto& p : c.panels()) {
        ordered_json pj;
        pj["id"] = p.id;
        pj["kind"] = to_string(p.kind);
        ordered_json cells = ordered_json::array();
        for (const auto& f : p.facets) {
            ordered_json labels = ordered_json::array();
            for (Vertex v : f) labels.push_back(c.label(v));
            cells.push_back(labels);
        }
        pj["cells"] = cells;
        if (p.kind == PanelKind::Principal) {
            ordered_json inv = ordered_json::object();
            for (const auto& [k, v] : p.involution) inv[c.label(k)] = c.label(v);
            pj["involution"] = inv;
        }
        panels.push_back(pj);
    }
    doc["panels"] = panels;
    return doc.dump(2) + "\n";
}

void check_panel_permutation(const CornerComplex& c, const PanelPermutation& perm) {
    // Vertex map: a bijection of the vertex set that sends top cells to top
    // cells.
    std::map<Vertex, Vertex> vmap;
    std::set<Vertex> image;
    for (const auto& [a, b] : perm.vertex_map)
        image.insert(vmap[c.vertex_index(a)] = c.vertex_index(b));
    if (vmap.size() != c.vertex_labels().size() || image.size() != vmap.size())
        throw ValidationError("automorphism vertex map is not a bijection of the vertices");
    for (const auto& top : c.cells(c.dim())) {
        Simplex img;
        for (Vertex v : top) img.push_back(vmap.at(v));
        std::sort(img.begin(), img.end());
        if (!c.has_cell(img) || static_cast<int>(img.size()) != c.dim() + 1)
            throw ValidationError("automorphism does not map top cells to top cells");
    }
    // Panel map: kind-preserving, consistent with the vertex map, and
    // intertwining the involutions.
    std::set<std::string> pimage;
    for (const auto& p : c.panels()) {
        auto it = perm.panel_map.find(p.id);
        if (it == perm.panel_map.end())
            throw ValidationError("automorphism panel map misses panel '" + p.id + "'");
        if (!c.has_panel(it->second))
            throw ValidationError("automorphism maps '" + p.id + "' to unknown panel '" +
                                  it->second + "'");
        const Panel& q = c.panel(it->second);
        if (q.kind != p.kind)
            throw ValidationError("automorphism is not kind-preserving on panel '" + p.id +
                                  "'");
        pimage.insert(q.id);
        std::set<Simplex> qfacets(q.facets.begin(), q.facets.end());
        for (const auto& f : p.facets) {
            Simplex img;
            for (Vertex v : f) img.push_back(vmap.at(v));
            std::sort(img.begin(), img.end());
            if (!qfacets.count(img))
                throw ValidationError("automorphism does not map panel '" + p.id +
                                      "' onto panel '" + q.id + "'");
        }
        for (const auto& [a, b] : p.involution) {
            // h(tau_p(a)) must equal tau_q(h(a)).
            const Vertex lhs = vmap.at(b);
            const Vertex rhs = q.involution.at(vmap.at(a));
            if (lhs != rhs)
                throw ValidationError("automorphism does not intertwine the involutions of '" +
                                      p.id + "' and '" + q.id + "'");
        }
    }
    if (pimage.size() != c.panels().size())
        throw ValidationError("automorphism panel map is not a bijection of the panels");
}

std::vector<PanelPermutation> parse_aut_generators(const std::string& text) {
    json doc = parse_json(text, "generator file");
    if (!doc.is_array()) throw ParseError("generator file must be a JSON list");
    std::vector<PanelPermutation> out;
    for (const auto& g : doc) {
        if (!g.is_object()) throw ParseError("each generator must be an object");
        reject_unknown_fields(g, {"vertices", "panels"}, "generator");
        for (const char* field : {"vertices", "panels"})
            if (!g.contains(field) || !g[field].is_object())
                throw ParseError(std::string("generator needs object field '") + field + "'");
        PanelPermutation perm;
        for (auto it = g["vertices"].begin(); it != g["vertices"].end(); ++it) {
            if (!it.value().is_string()) throw ParseError("vertex map values must be strings");
            perm.vertex_map[it.key()] = it.value().get<std::string>();
        }
        for (auto it = g["panels"].begin(); it != g["panels"].end(); ++it) {
            if (!it.value().is_string()) throw ParseError("panel map values must be strings");
            perm.panel_map[it.key()] = it.value().get<std::string>();
        }
        out.push_back(std::move(perm));
    }
    return out;
}

std::vector<PanelPermutation> load_aut_generators(const std::string& path) {
    try {
        return parse_aut_generators(read_file(path));
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << h;
    return "fnv1a:" + out.str();
}

} // namespace glueback
