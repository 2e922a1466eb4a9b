#include "web.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace anchorfoam {

bool AnnularWeb::same_shape(const AnnularWeb& o) const {
    if (vertices.size() != o.vertices.size() || edges.size() != o.edges.size() ||
        loops.size() != o.loops.size())
        return false;
    for (size_t v = 0; v < vertices.size(); ++v) {
        if (vertices[v].rot.size() != o.vertices[v].rot.size()) return false;
        for (size_t k = 0; k < vertices[v].rot.size(); ++k)
            if (!(vertices[v].rot[k] == o.vertices[v].rot[k])) return false;
    }
    for (size_t e = 0; e < edges.size(); ++e)
        if (edges[e].from != o.edges[e].from || edges[e].to != o.edges[e].to ||
            edges[e].thickness != o.edges[e].thickness)
            return false;
    for (size_t l = 0; l < loops.size(); ++l)
        if (loops[l].thickness != o.loops[l].thickness || loops[l].ccw != o.loops[l].ccw ||
            loops[l].winding != o.loops[l].winding)
            return false;
    return true;
}

std::vector<WebDiagnostic> validate_web(const AnnularWeb& w, int n) {
    std::vector<WebDiagnostic> out;
    auto err = [&](const std::string& code, const std::string& detail) {
        out.push_back({code, detail});
    };
    std::vector<int> seen_tail(w.edges.size(), 0), seen_head(w.edges.size(), 0);
    for (size_t v = 0; v < w.vertices.size(); ++v) {
        for (const HalfEdge& h : w.vertices[v].rot) {
            if (h.edge < 0 || h.edge >= static_cast<int>(w.edges.size())) {
                err("BadEdgeReference", "vertex " + std::to_string(v));
                continue;
            }
            const WebEdge& e = w.edges[h.edge];
            if (h.end == 0) {
                ++seen_tail[h.edge];
                if (e.from != static_cast<int>(v))
                    err("RotationMismatch", "edge " + std::to_string(h.edge) + " tail");
            } else {
                ++seen_head[h.edge];
                if (e.to != static_cast<int>(v))
                    err("RotationMismatch", "edge " + std::to_string(h.edge) + " head");
            }
        }
    }
    for (size_t e = 0; e < w.edges.size(); ++e) {
        if (seen_tail[e] != 1 || seen_head[e] != 1)
            err("RotationIncomplete", "edge " + std::to_string(e));
        if (w.edges[e].thickness < 0 || w.edges[e].thickness > n)
            err("ThicknessRange", "edge " + std::to_string(e));
    }
    for (size_t v = 0; v < w.vertices.size(); ++v) {
        const auto& rot = w.vertices[v].rot;
        if (rot.size() == 2) {
            // Through-vertex or loop bead: equal thickness, one in, one out.
            if (rot[0].edge == rot[1].edge) continue;
            int tin = -1, tout = -1;
            for (const HalfEdge& h : rot)
                (h.end == 1 ? tin : tout) = w.edges[h.edge].thickness;
            if (tin != tout) err("FlowViolation", "vertex " + std::to_string(v));
            continue;
        }
        if (rot.size() != 3) {
            err("NotTrivalent", "vertex " + std::to_string(v));
            continue;
        }
        int in_sum = 0, out_sum = 0, ins = 0;
        for (const HalfEdge& h : rot) {
            if (h.end == 1) {
                in_sum += w.edges[h.edge].thickness;
                ++ins;
            } else {
                out_sum += w.edges[h.edge].thickness;
            }
        }
        bool ok = (ins == 2 && in_sum == out_sum) || (ins == 1 && in_sum == out_sum);
        if (!ok) err("FlowViolation", "vertex " + std::to_string(v) + " thicknesses " +
                                          std::to_string(in_sum) + " vs " +
                                          std::to_string(out_sum));
    }
    for (const WebLoop& l : w.loops)
        if (l.thickness < 0 || l.thickness > n) err("ThicknessRange", "loop");
    auto check_marker = [&](const std::optional<FaceMarker>& m, const char* which) {
        if (m && (m->edge < 0 || m->edge >= static_cast<int>(w.edges.size())))
            err("BadMarker", which);
    };
    check_marker(w.puncture, "puncture");
    check_marker(w.outer, "outer");
    if (w.puncture && !w.outer && !w.edges.empty())
        err("MissingOuterMarker", "puncture marker without outer marker");
    return out;
}

namespace {

Dart next_dart(const AnnularWeb& w, Dart d) {
    const WebEdge& e = w.edges[d.edge];
    int v = d.fwd ? e.to : e.from;
    int end = d.fwd ? 1 : 0;
    const auto& rot = w.vertices[v].rot;
    int pos = -1;
    for (size_t k = 0; k < rot.size(); ++k)
        if (rot[k].edge == d.edge && rot[k].end == end) {
            pos = static_cast<int>(k);
            break;
        }
    if (pos < 0) throw std::logic_error("next_dart: broken rotation system");
    const HalfEdge& h = rot[(pos + rot.size() - 1) % rot.size()];
    return Dart{h.edge, h.end == 0};
}

}  // namespace

std::vector<Face> faces(const AnnularWeb& w) {
    std::vector<Face> out;
    std::set<std::pair<int, bool>> seen;
    for (size_t e = 0; e < w.edges.size(); ++e) {
        for (bool fwd : {true, false}) {
            if (seen.count({static_cast<int>(e), fwd})) continue;
            Face f;
            Dart d{static_cast<int>(e), fwd};
            while (!seen.count({d.edge, d.fwd})) {
                seen.insert({d.edge, d.fwd});
                f.darts.push_back(d);
                d = next_dart(w, d);
            }
            out.push_back(std::move(f));
        }
    }
    return out;
}

namespace {

// Mutable reduction state with face-marker maintenance through rewrites.
struct WebState {
    AnnularWeb w;
    std::optional<Dart> punc;
    std::optional<Dart> outer;

    explicit WebState(const AnnularWeb& in) : w(in) {
        if (in.puncture) punc = Dart{in.puncture->edge, in.puncture->fwd};
        if (in.outer) outer = Dart{in.outer->edge, in.outer->fwd};
        w.puncture.reset();
        w.outer.reset();
        w.loops.clear();
    }

    int face_of(const std::vector<Face>& fs, Dart d) const {
        for (size_t i = 0; i < fs.size(); ++i)
            for (const Dart& x : fs[i].darts)
                if (x == d) return static_cast<int>(i);
        return -1;
    }
    int punc_face(const std::vector<Face>& fs) const {
        return punc ? face_of(fs, *punc) : -1;
    }
    int outer_face(const std::vector<Face>& fs) const {
        return outer ? face_of(fs, *outer) : -1;
    }

    // Move markers off the edges about to disappear, preferring a surviving
    // dart on the same face; fall back to the rewrite's dart map afterwards.
    void relocate_markers(const std::set<int>& dying) {
        std::vector<Face> fs = faces(w);
        auto relocate = [&](std::optional<Dart>& m) {
            if (!m || !dying.count(m->edge)) return;
            int fi = face_of(fs, *m);
            if (fi < 0) return;
            for (const Dart& d : fs[fi].darts)
                if (!dying.count(d.edge)) {
                    m = d;
                    return;
                }
        };
        relocate(punc);
        relocate(outer);
    }

    void apply_dart_map(const std::map<std::pair<int, bool>, Dart>& dm) {
        auto apply = [&](std::optional<Dart>& m) {
            if (!m) return;
            auto it = dm.find({m->edge, m->fwd});
            if (it != dm.end()) m = it->second;
        };
        apply(punc);
        apply(outer);
    }
};

struct Rewriter {
    WebState& s;
    std::map<std::pair<int, bool>, Dart> dart_map;
    std::set<int> dead_edges;
    std::set<int> dead_vertices;

    void kill_edge(int e) {
        dead_edges.insert(e);
        auto strip = [&](int v) {
            auto& rot = s.w.vertices[v].rot;
            rot.erase(std::remove_if(rot.begin(), rot.end(),
                                     [&](const HalfEdge& h) { return h.edge == e; }),
                      rot.end());
        };
        strip(s.w.edges[e].from);
        strip(s.w.edges[e].to);
    }

    int add_arc(int from, int to, int thickness) {
        int id = static_cast<int>(s.w.edges.size());
        s.w.edges.push_back({from, to, thickness, ""});
        s.w.vertices[from].rot.push_back({id, 0});
        s.w.vertices[to].rot.push_back({id, 1});
        return id;
    }

    void map_edge(int old_edge, int new_edge, bool same_sense) {
        dart_map[{old_edge, true}] = Dart{new_edge, same_sense};
        dart_map[{old_edge, false}] = Dart{new_edge, !same_sense};
    }

    // Fuse every 2-valent through-vertex; self-closures stay as bead loops.
    void smooth() {
        bool again = true;
        while (again) {
            again = false;
            for (size_t v = 0; v < s.w.vertices.size(); ++v) {
                auto& rot = s.w.vertices[v].rot;
                if (rot.size() != 2) continue;
                if (rot[0].edge == rot[1].edge) continue;  // bead loop
                HalfEdge hin{}, hout{};
                bool have_in = false, have_out = false;
                for (const HalfEdge& h : rot) {
                    if (h.end == 1) {
                        hin = h;
                        have_in = true;
                    } else {
                        hout = h;
                        have_out = true;
                    }
                }
                if (!have_in || !have_out)
                    throw NonTerminating("smoothing hit a non-through 2-valent vertex");
                int ein = hin.edge, eout = hout.edge;
                int id = static_cast<int>(s.w.edges.size());
                s.w.edges.push_back({s.w.edges[ein].from, s.w.edges[eout].to,
                                     s.w.edges[ein].thickness, ""});
                // Rewire far endpoints.
                auto replace = [&](int vv, int old_e, int end, int new_e) {
                    for (HalfEdge& h : s.w.vertices[vv].rot)
                        if (h.edge == old_e && h.end == end) {
                            h.edge = new_e;
                            return;
                        }
                    throw std::logic_error("smooth: rotation rewire failed");
                };
                replace(s.w.edges[ein].from, ein, 0, id);
                replace(s.w.edges[eout].to, eout, 1, id);
                rot.clear();
                dead_vertices.insert(static_cast<int>(v));
                dead_edges.insert(ein);
                dead_edges.insert(eout);
                map_edge(ein, id, true);
                map_edge(eout, id, true);
                again = true;
                break;
            }
        }
    }

    // Compact indices, drop dead cells, and push the dart map through.
    void finish() {
        // Resolve chained dart mappings.
        const int guard_max = static_cast<int>(dart_map.size()) + 2;
        auto resolve = [&](Dart d) {
            for (int guard = 0; guard < guard_max; ++guard) {
                auto it = dart_map.find({d.edge, d.fwd});
                if (it == dart_map.end()) return d;
                d = it->second;
            }
            throw std::logic_error("dart map cycle");
        };
        auto fix_marker = [&](std::optional<Dart>& m) {
            if (m) m = resolve(*m);
        };
        fix_marker(s.punc);
        fix_marker(s.outer);

        std::vector<int> vmap(s.w.vertices.size(), -1), emap(s.w.edges.size(), -1);
        AnnularWeb out;
        for (size_t v = 0; v < s.w.vertices.size(); ++v) {
            if (dead_vertices.count(static_cast<int>(v)) || s.w.vertices[v].rot.empty())
                continue;
            vmap[v] = static_cast<int>(out.vertices.size());
            out.vertices.push_back(s.w.vertices[v]);
        }
        for (size_t e = 0; e < s.w.edges.size(); ++e) {
            if (dead_edges.count(static_cast<int>(e))) continue;
            emap[e] = static_cast<int>(out.edges.size());
            WebEdge we = s.w.edges[e];
            we.from = vmap[we.from];
            we.to = vmap[we.to];
            out.edges.push_back(we);
        }
        for (WebVertex& v : out.vertices)
            for (HalfEdge& h : v.rot) h.edge = emap[h.edge];
        auto fix2 = [&](std::optional<Dart>& m) {
            if (m && (m->edge >= static_cast<int>(emap.size()) || emap[m->edge] < 0)) m.reset();
            else if (m) m->edge = emap[m->edge];
        };
        fix2(s.punc);
        fix2(s.outer);
        s.w = std::move(out);
    }
};

LaurentGraded loop_multiplier(int n, int thickness, bool essential, bool ccw) {
    if (!essential) return quantum_binomial(n, n, thickness);
    LaurentGraded sum(n);
    for (Subset a : subsets_of_size(n, thickness))
        sum += LaurentGraded::a_monomial(n, a, ccw ? 1 : -1);
    return sum;
}

struct Candidate {
    ReducibleKind kind = ReducibleKind::None;
    int bead_vertex = -1;     // loop removal
    std::vector<Dart> darts;  // face boundary for bigon/square
};

struct BeadClass {
    bool essential = false;
    bool ccw = true;
};

// Classification of a bead loop at removal time. Returns nullopt when the loop
// cannot be removed yet (it encloses web that still carries the puncture marker).
std::optional<BeadClass> classify_bead(const WebState& s, const std::vector<Face>& fs, int v) {
    int e = s.w.vertices[v].rot[0].edge;
    int pf = s.punc_face(fs);
    int of = s.outer_face(fs);
    int left = -1, right = -1;
    for (size_t i = 0; i < fs.size(); ++i)
        if (fs[i].darts.size() == 1 && fs[i].darts[0].edge == e)
            (fs[i].darts[0].fwd ? left : right) = static_cast<int>(i);
    if (left < 0 || right < 0) return std::nullopt;
    BeadClass out;
    if (pf == left || pf == right) {
        // Puncture side is one of the loop's own faces.
        out.essential = !(of == pf);
        out.ccw = pf == left;
        return out;
    }
    if (of == left || of == right) {
        // This loop bounds the outer face. If a puncture marker survives on
        // another component, it is enclosed but not yet exposed: defer.
        if (pf >= 0) return std::nullopt;
        out.essential = false;
        return out;
    }
    // Neither marker touches this component: by convention it does not
    // enclose the puncture.
    out.essential = false;
    return out;
}

// All rewritable configurations in deterministic order: removable bead loops
// first, then bigon and square faces by their smallest dart.
std::vector<Candidate> find_candidates(const WebState& s, int n) {
    std::vector<Candidate> out;
    std::vector<Face> fs = faces(s.w);
    int pf = s.punc_face(fs);
    int of = s.outer_face(fs);

    for (size_t v = 0; v < s.w.vertices.size(); ++v) {
        const auto& rot = s.w.vertices[v].rot;
        if (rot.size() != 2 || rot[0].edge != rot[1].edge) continue;
        if (!classify_bead(s, fs, static_cast<int>(v))) continue;
        Candidate c;
        c.kind = ReducibleKind::Loop;
        c.bead_vertex = static_cast<int>(v);
        out.push_back(c);
    }

    for (size_t i = 0; i < fs.size(); ++i) {
        if (static_cast<int>(i) == pf || static_cast<int>(i) == of) continue;
        const auto& ds = fs[i].darts;
        if (ds.size() == 2) {
            int e1 = ds[0].edge, e2 = ds[1].edge;
            if (e1 == e2) continue;
            const WebEdge &a = s.w.edges[e1], &b = s.w.edges[e2];
            if (s.w.vertices[a.from].rot.size() != 3 || s.w.vertices[a.to].rot.size() != 3)
                continue;
            bool parallel = (a.from == b.from && a.to == b.to);
            bool cycle = (a.from == b.to && a.to == b.from);
            if (!parallel && !cycle) continue;
            Candidate c;
            c.kind = ReducibleKind::Bigon;
            c.darts = ds;
            out.push_back(c);
        } else if (ds.size() == 4) {
            // Directed square with alternating thicknesses (2,1,2,1).
            bool all_fwd = std::all_of(ds.begin(), ds.end(), [](const Dart& d) { return d.fwd; });
            bool all_bwd = std::all_of(ds.begin(), ds.end(), [](const Dart& d) { return !d.fwd; });
            if (!all_fwd && !all_bwd) continue;
            std::set<int> vs;
            for (const Dart& d : ds) {
                vs.insert(s.w.edges[d.edge].from);
                vs.insert(s.w.edges[d.edge].to);
            }
            if (vs.size() != 4) continue;
            bool alternating = true;
            for (int k = 0; k < 4; ++k) {
                int t0 = s.w.edges[ds[k].edge].thickness;
                int t1 = s.w.edges[ds[(k + 1) % 4].edge].thickness;
                if (t0 == t1) alternating = false;
                if (t0 != 1 && t0 != 2) alternating = false;
            }
            if (!alternating) continue;
            bool deg_ok = true;
            for (int v : vs)
                if (s.w.vertices[v].rot.size() != 3) deg_ok = false;
            if (!deg_ok) continue;
            Candidate c;
            c.kind = ReducibleKind::Square;
            c.darts = ds;
            out.push_back(c);
        }
    }
    return out;
}

// Third half-edge at a trivalent vertex, excluding the listed edges.
HalfEdge third_at(const AnnularWeb& w, int v, int skip1, int skip2) {
    for (const HalfEdge& h : w.vertices[v].rot)
        if (h.edge != skip1 && h.edge != skip2) return h;
    throw std::logic_error("third_at: no third edge");
}

std::vector<ReduceSummand> apply_candidate(const WebState& in, int n, const Candidate& c);

LaurentGraded evaluate_state(WebState s, int n, std::mt19937_64* rng, int depth);

}  // namespace

AnnularWeb zero_edge_removal(const AnnularWeb& w) {
    WebState s(w);
    // Preserve loops and markers: WebState cleared loops, so stash them.
    std::vector<WebLoop> loops;
    for (const WebLoop& l : w.loops)
        if (l.thickness > 0) loops.push_back(l);
    std::set<int> zero;
    for (size_t e = 0; e < w.edges.size(); ++e)
        if (w.edges[e].thickness == 0) zero.insert(static_cast<int>(e));
    s.relocate_markers(zero);
    Rewriter rw{s};
    for (int e : zero) rw.kill_edge(e);
    rw.smooth();
    rw.finish();
    AnnularWeb out = s.w;
    out.loops = loops;
    if (s.punc) out.puncture = FaceMarker{s.punc->edge, s.punc->fwd};
    if (s.outer) out.outer = FaceMarker{s.outer->edge, s.outer->fwd};
    return out;
}

namespace {

std::vector<ReduceSummand> apply_candidate(const WebState& in, int n, const Candidate& c) {
    std::vector<ReduceSummand> out;
    if (c.kind == ReducibleKind::Loop) {
        WebState s = in;
        int v = c.bead_vertex;
        int e = s.w.vertices[v].rot[0].edge;
        int thickness = s.w.edges[e].thickness;
        std::vector<Face> fs = faces(s.w);
        auto cls = classify_bead(s, fs, v);
        if (!cls) throw std::logic_error("apply_candidate: loop is not removable");
        bool essential = cls->essential;
        bool ccw = cls->ccw;
        // Drop the loop. Markers pointing at it lose their face; once a loop
        // around the puncture is gone, remaining components cannot enclose it.
        WebState next = s;
        Rewriter rw{next};
        auto move_marker = [&](std::optional<Dart>& m) {
            if (m && m->edge == e) m.reset();
        };
        move_marker(next.punc);
        move_marker(next.outer);
        rw.kill_edge(e);
        rw.dead_vertices.insert(v);
        rw.finish();
        ReduceSummand rs;
        rs.web = next.w;
        if (next.punc) rs.web.puncture = FaceMarker{next.punc->edge, next.punc->fwd};
        if (next.outer) rs.web.outer = FaceMarker{next.outer->edge, next.outer->fwd};
        rs.multiplier = loop_multiplier(n, thickness, essential, ccw);
        out.push_back(std::move(rs));
        return out;
    }

    if (c.kind == ReducibleKind::Bigon) {
        WebState s = in;
        int e1 = c.darts[0].edge, e2 = c.darts[1].edge;
        const WebEdge a = s.w.edges[e1], b = s.w.edges[e2];
        LaurentGraded mult(n);
        int arc_from, arc_to, arc_thickness;
        bool parallel = (a.from == b.from && a.to == b.to);
        if (parallel) {
            // (p,q)-digon inside a (p+q)-edge: multiplier [p+q choose p].
            mult = quantum_binomial(n, a.thickness + b.thickness, a.thickness);
            arc_from = a.from;
            arc_to = a.to;
            arc_thickness = a.thickness + b.thickness;
        } else {
            // Return digon: an m-edge detours through m+r and back through r.
            int er = a.thickness < b.thickness ? e1 : e2;      // the returning edge
            int ee = a.thickness < b.thickness ? e2 : e1;      // the m+r edge
            if (a.thickness == b.thickness)
                throw UnsupportedThickness("degenerate return digon");
            int r = s.w.edges[er].thickness;
            int m = s.w.edges[ee].thickness - r;
            mult = quantum_binomial(n, n - m, r);
            arc_from = s.w.edges[ee].from;
            arc_to = s.w.edges[ee].to;
            arc_thickness = m;
        }
        Rewriter rw{s};
        s.relocate_markers({e1, e2});
        rw.kill_edge(e1);
        rw.kill_edge(e2);
        int arc = rw.add_arc(arc_from, arc_to, arc_thickness);
        if (parallel) {
            rw.map_edge(e1, arc, true);
            rw.map_edge(e2, arc, true);
        } else {
            int ee = a.thickness < b.thickness ? e2 : e1;
            rw.map_edge(ee, arc, true);
            rw.map_edge(ee == e1 ? e2 : e1, arc, false);
        }
        rw.smooth();
        rw.finish();
        ReduceSummand rs;
        rs.web = s.w;
        if (s.punc) rs.web.puncture = FaceMarker{s.punc->edge, s.punc->fwd};
        if (s.outer) rs.web.outer = FaceMarker{s.outer->edge, s.outer->fwd};
        rs.multiplier = mult;
        out.push_back(std::move(rs));
        return out;
    }

    // Square: two summands.
    // Normalize the walk to run with the flow and start on a thickness-2 side.
    std::vector<Dart> ds = c.darts;
    if (!ds[0].fwd) {
        std::reverse(ds.begin(), ds.end());
        for (Dart& d : ds) d.fwd = true;
    }
    if (in.w.edges[ds[0].edge].thickness != 2) std::rotate(ds.begin(), ds.begin() + 1, ds.end());
    // Vertices u_k between side k and side k+1; legs alternate out, in, out, in.
    std::array<int, 4> u{};
    for (int k = 0; k < 4; ++k) u[k] = in.w.edges[ds[k].edge].to;
    std::array<HalfEdge, 4> legs{};
    for (int k = 0; k < 4; ++k)
        legs[k] = third_at(in.w, u[k], ds[k].edge, ds[(k + 1) % 4].edge);

    struct ArcSpec {
        int from, to;
        int along_side;  // side whose position the arc follows
        bool same_sense;
    };
    auto make_summand = [&](std::array<ArcSpec, 2> arcs, const LaurentGraded& mult) {
        WebState s = in;
        Rewriter rw{s};
        std::set<int> dying;
        for (const Dart& d : ds) dying.insert(d.edge);
        s.relocate_markers(dying);
        for (const Dart& d : ds) rw.kill_edge(d.edge);
        for (const ArcSpec& a : arcs) {
            int arc = rw.add_arc(a.from, a.to, 1);
            rw.map_edge(ds[a.along_side].edge, arc, a.same_sense);
        }
        rw.smooth();
        rw.finish();
        ReduceSummand rs;
        rs.web = s.w;
        if (s.punc) rs.web.puncture = FaceMarker{s.punc->edge, s.punc->fwd};
        if (s.outer) rs.web.outer = FaceMarker{s.outer->edge, s.outer->fwd};
        rs.multiplier = mult;
        return rs;
    };

    // Along the 1-edge sides (sides 1 and 3), walking against them: multiplier 1.
    out.push_back(make_summand({ArcSpec{u[1], u[0], 1, false}, ArcSpec{u[3], u[2], 3, false}},
                               LaurentGraded::constant(n, 1)));
    // Along the 2-edge sides (sides 0 and 2), same sense: multiplier [N-2].
    out.push_back(make_summand({ArcSpec{u[3], u[0], 0, true}, ArcSpec{u[1], u[2], 2, true}},
                               quantum_binomial(n, n - 2, 1)));
    return out;
}

LaurentGraded evaluate_state(WebState s, int n, std::mt19937_64* rng, int depth) {
    if (depth > 4000) throw NonTerminating("web reduction exceeded step budget");
    if (s.w.edges.empty()) return LaurentGraded::constant(n, 1);
    std::vector<Candidate> cands = find_candidates(s, n);
    if (cands.empty())
        throw UnsupportedThickness("no reducible loop, bigon, or square configuration");
    size_t pick = 0;
    if (rng) pick = (*rng)() % cands.size();
    std::vector<ReduceSummand> nexts = apply_candidate(s, n, cands[pick]);
    LaurentGraded total(n);
    for (ReduceSummand& rs : nexts) {
        WebState ns(rs.web);
        total += rs.multiplier * evaluate_state(std::move(ns), n, rng, depth + 1);
    }
    return total;
}

LaurentGraded evaluate_web_impl(const AnnularWeb& w, int n, std::mt19937_64* rng) {
    for (const auto& d : validate_web(w, n))
        throw std::invalid_argument("invalid web: " + d.code + " (" + d.detail + ")");
    AnnularWeb clean = zero_edge_removal(w);
    LaurentGraded product = LaurentGraded::constant(n, 1);
    for (const WebLoop& l : clean.loops)
        product = product * loop_multiplier(n, l.thickness, l.winding == Winding::Essential,
                                            l.ccw);
    clean.loops.clear();
    WebState s(clean);
    return product * evaluate_state(std::move(s), n, rng, 0);
}

}  // namespace

Reducible find_reducible(const AnnularWeb& w, int n) {
    WebState s(w);
    std::vector<Candidate> cands = find_candidates(s, n);
    Reducible r;
    if (cands.empty()) return r;
    const Candidate& c = cands.front();
    r.kind = c.kind;
    r.loop_vertex = c.bead_vertex;
    if (c.kind != ReducibleKind::Loop) {
        std::vector<Face> fs = faces(w);
        for (size_t i = 0; i < fs.size(); ++i)
            if (!fs[i].darts.empty() && fs[i].darts[0] == c.darts[0]) r.face = static_cast<int>(i);
    }
    return r;
}

std::vector<ReduceSummand> reduce_step(const AnnularWeb& w, int n, const Reducible& r) {
    WebState s(w);
    std::vector<Candidate> cands = find_candidates(s, n);
    for (const Candidate& c : cands) {
        if (c.kind != r.kind) continue;
        if (c.kind == ReducibleKind::Loop && c.bead_vertex != r.loop_vertex) continue;
        if (c.kind != ReducibleKind::Loop && r.face >= 0) {
            std::vector<Face> fs = faces(w);
            if (fs[r.face].darts.empty() || !(fs[r.face].darts[0] == c.darts[0])) continue;
        }
        auto outs = apply_candidate(s, n, c);
        // Re-attach untouched loops.
        for (auto& rs : outs)
            for (const WebLoop& l : w.loops) rs.web.loops.push_back(l);
        return outs;
    }
    throw std::invalid_argument("reduce_step: configuration not found");
}

LaurentGraded evaluate_web(const AnnularWeb& w, int n) {
    return evaluate_web_impl(w, n, nullptr);
}

LaurentGraded evaluate_web_randomized(const AnnularWeb& w, int n, std::mt19937_64& rng) {
    return evaluate_web_impl(w, n, &rng);
}

}  // namespace anchorfoam
