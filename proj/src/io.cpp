#include "io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace anchorfoam {

using nlohmann::json;

namespace {

constexpr const char* kFoamSchema = "anchorfoam/foam/v1";
constexpr const char* kWebSchema = "anchorfoam/web/v1";
constexpr const char* kDiagramSchema = "anchorfoam/diagram/v1";

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("JSON parse error at byte " + std::to_string(e.byte) + ": " +
                         e.what());
    }
}

void check_schema(const json& j, const char* expect) {
    if (j.contains("schema") && j["schema"].get<std::string>() != expect)
        throw SchemaVersionMismatch("expected schema " + std::string(expect) + ", found " +
                                    j["schema"].get<std::string>());
}

Subset label_from_json(const json& j, int n) {
    Subset s = 0;
    for (int v : j.get<std::vector<int>>()) {
        if (v < 1 || v > 16) throw ParseError("label element out of range");
        (void)n;
        s |= static_cast<Subset>(1u << (v - 1));
    }
    return s;
}

json label_to_json(Subset s) {
    json out = json::array();
    for (int e : subset_elements(s)) out.push_back(e);
    return out;
}

SymFn decoration_from_json(const json& j, int arity) {
    if (j.is_null()) return SymFn::one(arity);
    SymFn f(arity);
    if (j.is_number_integer()) {
        long c = j.get<long>();
        f.add_term(std::vector<int>(arity, 0), BigInt(c));
        return f;
    }
    if (!j.contains("e")) throw ParseError("decoration must be an integer or {\"e\": [...]}");
    for (const json& term : j["e"]) {
        std::vector<int> exp = term.at("exp").get<std::vector<int>>();
        if (static_cast<int>(exp.size()) != arity)
            throw ParseError("decoration exponent arity mismatch");
        f.add_term(exp, BigInt(term.at("coeff").get<long>()));
    }
    return f;
}

json decoration_to_json(const SymFn& f) {
    json terms = json::array();
    for (const auto& [exp, c] : f.terms()) {
        json t;
        t["coeff"] = std::stol(c.str());
        t["exp"] = exp;
        terms.push_back(t);
    }
    json out;
    out["e"] = terms;
    return out;
}

AnnularWeb web_from_json(const json& j, int n);
json web_to_json(const AnnularWeb& w);

}  // namespace

CellFoam parse_foam(const std::string& text, int n) {
    json j = parse_json(text);
    check_schema(j, kFoamSchema);
    if (j.contains("N") && j["N"].get<int>() != n)
        throw ValidationFailed("foam file declares N=" + std::to_string(j["N"].get<int>()) +
                               " but the run context is N=" + std::to_string(n));
    CellFoam f;
    std::map<std::string, int> c0, c1, c2, fid;
    for (const json& v : j.value("cells0", json::array())) {
        std::string tag = v.value("tag", "facet-interior");
        Cell0 c;
        c.name = v.at("id").get<std::string>();
        if (tag == "singular-vertex") c.tag = Cell0Tag::SingularVertex;
        else if (tag == "seam-subdivision") c.tag = Cell0Tag::SeamSubdivision;
        else if (tag == "facet-interior") c.tag = Cell0Tag::FacetInterior;
        else if (tag == "web-boundary") c.tag = Cell0Tag::WebBoundary;
        else throw ParseError("unknown 0-cell tag " + tag);
        c0[c.name] = static_cast<int>(f.cells0.size());
        f.cells0.push_back(c);
    }
    for (const json& v : j.value("facets", json::array())) {
        Facet fa;
        fa.name = v.at("id").get<std::string>();
        fa.thickness = v.at("thickness").get<int>();
        fa.orient = v.value("orient", 1);
        fa.decoration = decoration_from_json(v.value("decoration", json()), fa.thickness);
        fid[fa.name] = static_cast<int>(f.facets.size());
        f.facets.push_back(fa);
    }
    for (const json& v : j.value("cells1", json::array())) {
        Cell1 c;
        c.name = v.at("id").get<std::string>();
        auto ends = v.at("ends").get<std::vector<std::string>>();
        if (ends.size() != 2) throw ParseError("1-cell needs two endpoints");
        if (!c0.count(ends[0]) || !c0.count(ends[1]))
            throw ParseError("1-cell endpoint not found: " + c.name);
        c.v0 = c0[ends[0]];
        c.v1 = c0[ends[1]];
        std::string tag = v.value("tag", "facet-interior");
        if (tag == "seam") c.tag = Cell1Tag::Seam;
        else if (tag == "facet-interior") c.tag = Cell1Tag::FacetInterior;
        else if (tag == "web-boundary") c.tag = Cell1Tag::WebBoundary;
        else throw ParseError("unknown 1-cell tag " + tag);
        if (v.contains("seam")) {
            SeamData sd;
            sd.dir_plus = v["seam"].value("dir", "+") == "+";
            auto cyc = v["seam"].at("cyclic").get<std::vector<std::string>>();
            if (cyc.size() != 3) throw ParseError("seam cyclic triple needs three facets");
            for (int t = 0; t < 3; ++t) {
                if (!fid.count(cyc[t])) throw ParseError("seam facet not found: " + cyc[t]);
                sd.cyclic[t] = fid[cyc[t]];
            }
            c.seam = sd;
        }
        c1[c.name] = static_cast<int>(f.cells1.size());
        f.cells1.push_back(c);
    }
    for (const json& v : j.value("cells2", json::array())) {
        Cell2 c;
        c.name = v.at("id").get<std::string>();
        std::string fname = v.at("facet").get<std::string>();
        if (!fid.count(fname)) throw ParseError("2-cell facet not found: " + fname);
        c.facet = fid[fname];
        for (const json& b : v.at("boundary")) {
            std::string ename = b.at(0).get<std::string>();
            std::string dir = b.at(1).get<std::string>();
            if (!c1.count(ename)) throw ParseError("boundary 1-cell not found: " + ename);
            c.boundary.push_back({c1[ename], dir == "+"});
        }
        c2[c.name] = static_cast<int>(f.cells2.size());
        f.cells2.push_back(c);
    }
    // Negative facet orientation: store the reversed word instead.
    for (Cell2& c : f.cells2) {
        if (f.facets[c.facet].orient < 0) {
            std::reverse(c.boundary.begin(), c.boundary.end());
            for (auto& [e, fwd] : c.boundary) fwd = !fwd;
        }
    }
    for (Facet& fa : f.facets) fa.orient = 1;
    for (const json& v : j.value("anchors", json::array())) {
        AnchorPoint p;
        std::string cname = v.at("cell2").get<std::string>();
        if (!c2.count(cname)) throw ParseError("anchor 2-cell not found: " + cname);
        p.cell2 = c2[cname];
        p.label = label_from_json(v.at("label"), n);
        p.sign = v.value("sign", 1);
        f.anchors.push_back(p);
    }
    auto boundary_from = [&](const json& b) {
        FoamBoundary fb;
        fb.web = web_from_json(b.at("web"), n);
        for (const json& e : b.value("edges", json::array()))
            fb.edge_cell1.push_back(c1.at(e.get<std::string>()));
        for (const json& vv : b.value("vertices", json::array()))
            fb.vertex_cell0.push_back(c0.at(vv.get<std::string>()));
        for (const json& l : b.value("loops", json::array()))
            fb.loop_cells.push_back({c1.at(l.at(0).get<std::string>()),
                                     c0.at(l.at(1).get<std::string>())});
        return fb;
    };
    if (j.contains("boundary")) {
        if (j["boundary"].contains("bottom")) f.bottom = boundary_from(j["boundary"]["bottom"]);
        if (j["boundary"].contains("top")) f.top = boundary_from(j["boundary"]["top"]);
    }
    f.finalize();
    return f;
}

namespace {

AnnularWeb web_from_json(const json& j, int n) {
    check_schema(j, kWebSchema);
    AnnularWeb w;
    std::map<std::string, int> vid, eid;
    for (const json& v : j.value("vertices", json::array())) {
        WebVertex wv;
        wv.name = v.at("id").get<std::string>();
        vid[wv.name] = static_cast<int>(w.vertices.size());
        w.vertices.push_back(wv);
    }
    std::vector<bool> flipped;
    for (const json& e : j.value("edges", json::array())) {
        WebEdge we;
        we.name = e.at("id").get<std::string>();
        std::string from = e.at("from").get<std::string>();
        std::string to = e.at("to").get<std::string>();
        if (!vid.count(from) || !vid.count(to))
            throw ParseError("edge endpoint not found: " + we.name);
        we.from = vid[from];
        we.to = vid[to];
        we.thickness = e.at("thickness").get<int>();
        bool flip = e.value("orient", "+") == "-";
        if (flip) std::swap(we.from, we.to);
        flipped.push_back(flip);
        eid[we.name] = static_cast<int>(w.edges.size());
        w.edges.push_back(we);
    }
    int k = 0;
    for (const json& v : j.value("vertices", json::array())) {
        WebVertex& wv = w.vertices[k++];
        for (const json& h : v.value("rot", json::array())) {
            std::string ename = h.at(0).get<std::string>();
            std::string end = h.at(1).get<std::string>();
            if (!eid.count(ename)) throw ParseError("rotation edge not found: " + ename);
            int e = eid[ename];
            int endv = end == "head" ? 1 : 0;
            if (flipped[e]) endv = 1 - endv;
            wv.rot.push_back({e, endv});
        }
    }
    for (const json& l : j.value("loops", json::array())) {
        WebLoop wl;
        wl.thickness = l.at("thickness").get<int>();
        wl.ccw = l.value("orient", "ccw") == "ccw";
        std::string wind = l.value("winding", "contractible");
        if (wind == "essential") wl.winding = Winding::Essential;
        else if (wind == "contractible") wl.winding = Winding::Contractible;
        else throw ParseError("unknown winding class " + wind);
        w.loops.push_back(wl);
    }
    auto marker_from = [&](const json& m) {
        FaceMarker fm;
        std::string ename = m.at("edge").get<std::string>();
        if (!eid.count(ename)) throw ParseError("marker edge not found: " + ename);
        fm.edge = eid[ename];
        fm.fwd = m.value("side", "+") == "+";
        if (flipped[fm.edge]) fm.fwd = !fm.fwd;
        return fm;
    };
    if (j.contains("puncture") && !j["puncture"].is_null()) w.puncture = marker_from(j["puncture"]);
    if (j.contains("outer") && !j["outer"].is_null()) w.outer = marker_from(j["outer"]);
    return w;
}

json web_to_json(const AnnularWeb& w) {
    json j;
    j["schema"] = kWebSchema;
    json vertices = json::array();
    auto vname = [&](int v) {
        return w.vertices[v].name.empty() ? "v" + std::to_string(v) : w.vertices[v].name;
    };
    auto ename = [&](int e) {
        return w.edges[e].name.empty() ? "e" + std::to_string(e) : w.edges[e].name;
    };
    for (size_t v = 0; v < w.vertices.size(); ++v) {
        json jv;
        jv["id"] = vname(static_cast<int>(v));
        json rot = json::array();
        for (const HalfEdge& h : w.vertices[v].rot)
            rot.push_back({ename(h.edge), h.end == 1 ? "head" : "tail"});
        jv["rot"] = rot;
        vertices.push_back(jv);
    }
    j["vertices"] = vertices;
    json edges = json::array();
    for (size_t e = 0; e < w.edges.size(); ++e) {
        json je;
        je["id"] = ename(static_cast<int>(e));
        je["from"] = vname(w.edges[e].from);
        je["to"] = vname(w.edges[e].to);
        je["thickness"] = w.edges[e].thickness;
        je["orient"] = "+";
        edges.push_back(je);
    }
    j["edges"] = edges;
    json loops = json::array();
    for (const WebLoop& l : w.loops) {
        json jl;
        jl["thickness"] = l.thickness;
        jl["orient"] = l.ccw ? "ccw" : "cw";
        jl["winding"] = l.winding == Winding::Essential ? "essential" : "contractible";
        loops.push_back(jl);
    }
    j["loops"] = loops;
    auto marker_to = [&](const FaceMarker& m) {
        json jm;
        jm["edge"] = ename(m.edge);
        jm["side"] = m.fwd ? "+" : "-";
        return jm;
    };
    if (w.puncture) j["puncture"] = marker_to(*w.puncture);
    if (w.outer) j["outer"] = marker_to(*w.outer);
    return j;
}

}  // namespace

AnnularWeb parse_web(const std::string& text, int n) {
    return web_from_json(parse_json(text), n);
}

ColoredAnnularDiagram parse_diagram(const std::string& text) {
    json j = parse_json(text);
    check_schema(j, kDiagramSchema);
    ColoredAnnularDiagram d;
    d.points = j.value("points", 0);
    for (const json& s : j.value("strands", json::array())) {
        int color = s.at("color").get<int>();
        bool fwd = s.value("dir", "+") == "+";
        d.strands.push_back({color, fwd});
    }
    if (d.points != static_cast<int>(d.strands.size()) && d.points > 0 && d.strands.empty())
        throw ParseError("diagram with points > 0 needs a strands list");
    for (const json& s : j.value("slices", json::array())) {
        Slice sl;
        std::string kind = s.at("kind").get<std::string>();
        if (kind == "x+") sl.kind = SliceKind::PositiveCrossing;
        else if (kind == "x-") sl.kind = SliceKind::NegativeCrossing;
        else if (kind == "cup") sl.kind = SliceKind::Cup;
        else if (kind == "cap") sl.kind = SliceKind::Cap;
        else if (kind == "id") sl.kind = SliceKind::Identity;
        else throw ParseError("unknown slice kind " + kind);
        sl.pos = s.value("pos", 1);
        sl.colors = s.value("colors", std::vector<int>{});
        sl.orient_plus = s.value("orient", "+") == "+";
        d.slices.push_back(sl);
    }
    return d;
}

std::vector<CellFoam> parse_foam_list(const std::string& text, int n) {
    json j = parse_json(text);
    json arr = j.is_array() ? j : j.value("foams", json::array());
    std::vector<CellFoam> out;
    for (const json& item : arr) out.push_back(parse_foam(item.dump(), n));
    return out;
}

CellFoam load_foam(const std::string& text, int n) {
    CellFoam f = parse_foam(text, n);
    std::string problems;
    for (const Diagnostic& d : f.validate(n)) {
        if (d.warning) continue;
        problems += (problems.empty() ? "" : "; ") + d.code + ": " + d.detail;
    }
    if (!problems.empty()) throw ValidationFailed(problems);
    return f;
}

AnnularWeb load_web(const std::string& text, int n) {
    AnnularWeb w = parse_web(text, n);
    std::string problems;
    for (const WebDiagnostic& d : validate_web(w, n))
        problems += (problems.empty() ? "" : "; ") + d.code + ": " + d.detail;
    if (!problems.empty()) throw ValidationFailed(problems);
    return w;
}

ColoredAnnularDiagram load_diagram(const std::string& text, int n) {
    ColoredAnnularDiagram d = parse_diagram(text);
    auto problems = validate_diagram(d, n);
    if (!problems.empty()) {
        std::string all;
        for (const auto& p : problems) all += (all.empty() ? "" : "; ") + p;
        throw ValidationFailed(all);
    }
    return d;
}

namespace {

// Unique serialization ids: prefer stored names, disambiguating duplicates.
template <typename T>
std::vector<std::string> unique_ids(const std::vector<T>& cells, const char* prefix) {
    std::vector<std::string> ids;
    std::set<std::string> used;
    for (size_t i = 0; i < cells.size(); ++i) {
        std::string candidate = cells[i].name.empty() ? prefix + std::to_string(i)
                                                      : cells[i].name;
        while (used.count(candidate)) candidate += "'";
        used.insert(candidate);
        ids.push_back(candidate);
    }
    return ids;
}

}  // namespace

std::string serialize_foam(const CellFoam& f, int n) {
    json j;
    j["schema"] = kFoamSchema;
    if (n > 0) j["N"] = n;
    std::vector<std::string> id0 = unique_ids(f.cells0, "v");
    std::vector<std::string> id1 = unique_ids(f.cells1, "e");
    std::vector<std::string> id2 = unique_ids(f.cells2, "d");
    std::vector<std::string> idf = unique_ids(f.facets, "f");
    auto name0 = [&](int v) { return id0[v]; };
    auto name1 = [&](int e) { return id1[e]; };
    auto name2 = [&](int c) { return id2[c]; };
    auto namef = [&](int fa) { return idf[fa]; };
    json cells0 = json::array();
    for (size_t v = 0; v < f.cells0.size(); ++v) {
        json c;
        c["id"] = name0(static_cast<int>(v));
        switch (f.cells0[v].tag) {
            case Cell0Tag::SingularVertex: c["tag"] = "singular-vertex"; break;
            case Cell0Tag::SeamSubdivision: c["tag"] = "seam-subdivision"; break;
            case Cell0Tag::FacetInterior: c["tag"] = "facet-interior"; break;
            case Cell0Tag::WebBoundary: c["tag"] = "web-boundary"; break;
        }
        cells0.push_back(c);
    }
    j["cells0"] = cells0;
    json facets = json::array();
    for (size_t fa = 0; fa < f.facets.size(); ++fa) {
        json c;
        c["id"] = namef(static_cast<int>(fa));
        c["thickness"] = f.facets[fa].thickness;
        c["orient"] = 1;
        c["decoration"] = decoration_to_json(f.facets[fa].decoration);
        facets.push_back(c);
    }
    j["facets"] = facets;
    json cells1 = json::array();
    for (size_t e = 0; e < f.cells1.size(); ++e) {
        json c;
        c["id"] = name1(static_cast<int>(e));
        c["ends"] = {name0(f.cells1[e].v0), name0(f.cells1[e].v1)};
        switch (f.cells1[e].tag) {
            case Cell1Tag::Seam: c["tag"] = "seam"; break;
            case Cell1Tag::FacetInterior: c["tag"] = "facet-interior"; break;
            case Cell1Tag::WebBoundary: c["tag"] = "web-boundary"; break;
        }
        if (f.cells1[e].seam) {
            json s;
            s["dir"] = f.cells1[e].seam->dir_plus ? "+" : "-";
            s["cyclic"] = {namef(f.cells1[e].seam->cyclic[0]),
                           namef(f.cells1[e].seam->cyclic[1]),
                           namef(f.cells1[e].seam->cyclic[2])};
            c["seam"] = s;
        }
        cells1.push_back(c);
    }
    j["cells1"] = cells1;
    json cells2 = json::array();
    for (size_t c2 = 0; c2 < f.cells2.size(); ++c2) {
        json c;
        c["id"] = name2(static_cast<int>(c2));
        c["facet"] = namef(f.cells2[c2].facet);
        json b = json::array();
        for (auto [e, fwd] : f.cells2[c2].boundary)
            b.push_back({name1(e), fwd ? "+" : "-"});
        c["boundary"] = b;
        cells2.push_back(c);
    }
    j["cells2"] = cells2;
    json anchors = json::array();
    for (const AnchorPoint& p : f.anchors) {
        json a;
        a["cell2"] = name2(p.cell2);
        a["label"] = label_to_json(p.label);
        a["sign"] = p.sign;
        anchors.push_back(a);
    }
    j["anchors"] = anchors;
    auto boundary_to = [&](const FoamBoundary& fb) {
        json b;
        b["web"] = web_to_json(fb.web);
        json edges = json::array();
        for (int e : fb.edge_cell1) edges.push_back(name1(e));
        b["edges"] = edges;
        json vertices = json::array();
        for (int v : fb.vertex_cell0) vertices.push_back(name0(v));
        b["vertices"] = vertices;
        json loops = json::array();
        for (auto [e, v] : fb.loop_cells) loops.push_back({name1(e), name0(v)});
        b["loops"] = loops;
        return b;
    };
    if (f.bottom || f.top) {
        json b;
        if (f.bottom) b["bottom"] = boundary_to(*f.bottom);
        if (f.top) b["top"] = boundary_to(*f.top);
        j["boundary"] = b;
    }
    return j.dump(2);
}

std::string serialize_web(const AnnularWeb& w) { return web_to_json(w).dump(2); }

std::string serialize_diagram(const ColoredAnnularDiagram& d) {
    json j;
    j["schema"] = kDiagramSchema;
    j["points"] = d.points;
    json strands = json::array();
    for (auto [color, fwd] : d.strands) {
        json s;
        s["color"] = color;
        s["dir"] = fwd ? "+" : "-";
        strands.push_back(s);
    }
    j["strands"] = strands;
    json slices = json::array();
    for (const Slice& s : d.slices) {
        json js;
        switch (s.kind) {
            case SliceKind::PositiveCrossing: js["kind"] = "x+"; break;
            case SliceKind::NegativeCrossing: js["kind"] = "x-"; break;
            case SliceKind::Cup: js["kind"] = "cup"; break;
            case SliceKind::Cap: js["kind"] = "cap"; break;
            case SliceKind::Identity: js["kind"] = "id"; break;
        }
        js["pos"] = s.pos;
        js["colors"] = s.colors;
        if (s.kind == SliceKind::Cup) js["orient"] = s.orient_plus ? "+" : "-";
        slices.push_back(js);
    }
    j["slices"] = slices;
    return j.dump(2);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace anchorfoam
