#include "complex.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace anchorfoam {

namespace {

// Key of a primitive strand arc: (slice, position, tag). Tags distinguish the
// smoothing pieces at a crossing site ('w'/'e' turnbacks, '-' pass, 'B' bridge,
// 'a'..'d' legs) from plain pass-throughs (' ').
struct ArcKey {
    int slice = 0;
    int pos = 0;
    char tag = ' ';
    auto operator<=>(const ArcKey&) const = default;
};

enum class CrossCase { Parallel, AntiUpFwd, AntiDownFwd };
// AntiUpFwd: strand at pos flows forward, pos+1 backward (case A).
// AntiDownFwd: the mirror (case B).

struct CrossingSite {
    int slice = -1;
    int pos = 1;
    bool positive = true;
    CrossCase ccase = CrossCase::Parallel;
    int color = 1;
};

// Segment of a resolution web between pins. Pins: boundary points or ports.
struct Pin {
    // kind 0: boundary point (boundary index b, position); kind 1: vertex port.
    int kind = 0;
    int b = 0, pos = 0;
    int vertex = -1, port = -1;
    auto operator<=>(const Pin&) const = default;
};

struct Segment {
    Pin from, to;
    int thickness = 1;
    std::vector<ArcKey> arcs;
    int closure_cross = 0;  // +1 when the segment crosses the section eastwards
};

struct BuildVertexInfo {
    int crossing = -1;  // index into the cube-crossing list
    char role = 'm';    // 'm' merge, 's' split
    CrossCase ccase = CrossCase::Parallel;
};

struct BuiltWeb {
    AnnularWeb web;
    std::vector<std::vector<ArcKey>> edge_arcs;
    std::vector<std::vector<ArcKey>> loop_arcs;
    std::vector<int> loop_wraps;
    std::vector<BuildVertexInfo> vertex_info;
};

struct NormalizedDiagram {
    int n_colors = 1;
    std::vector<std::pair<int, bool>> strands;  // section strands (color, forward)
    std::vector<Slice> slices;                  // zero-colored strands removed
    std::vector<CrossingSite> cube_sites;       // the (1,1) crossings, in order
};

// State tracking with validation; fills crossing case info.
NormalizedDiagram normalize(const ColoredAnnularDiagram& d, int n) {
    NormalizedDiagram out;
    out.n_colors = n;
    for (auto [c, fwd] : d.strands) {
        if (c < 0 || c > n) throw BadColors("strand color out of range");
    }
    if (static_cast<int>(d.strands.size()) != d.points)
        throw BadDiagram("points count does not match strand list");
    // Drop 0-colored strands entirely; remaining positions are renumbered on
    // the fly by tracking the live strand list.
    std::vector<std::pair<int, bool>> state;  // (color, forward)
    for (auto [c, fwd] : d.strands)
        if (c > 0) state.push_back({c, fwd});
    out.strands = state;

    for (const Slice& s : d.slices) {
        int p = s.pos;
        switch (s.kind) {
            case SliceKind::Identity:
                break;
            case SliceKind::Cup: {
                if (s.colors.size() != 1) throw BadDiagram("cup needs one color");
                int c = s.colors[0];
                if (c < 0 || c > n) throw BadColors("cup color out of range");
                if (p < 1 || p > static_cast<int>(state.size()) + 1)
                    throw BadDiagram("cup position out of range");
                if (c > 0) {
                    state.insert(state.begin() + (p - 1),
                                 {{c, s.orient_plus}, {c, !s.orient_plus}});
                    Slice copy = s;
                    out.slices.push_back(copy);
                }
                break;
            }
            case SliceKind::Cap: {
                if (s.colors.size() != 1) throw BadDiagram("cap needs one color");
                int c = s.colors[0];
                if (p < 1 || p + 1 > static_cast<int>(state.size()))
                    throw BadDiagram("cap position out of range");
                if (c == 0) break;
                auto a = state[p - 1], b = state[p];
                if (a.first != c || b.first != c) throw BadDiagram("cap colors do not match");
                if (a.second == b.second) throw BadDiagram("cap strands must be antiparallel");
                state.erase(state.begin() + (p - 1), state.begin() + (p + 1));
                out.slices.push_back(s);
                break;
            }
            case SliceKind::PositiveCrossing:
            case SliceKind::NegativeCrossing: {
                if (s.colors.size() != 2) throw BadDiagram("crossing needs two colors");
                if (p < 1 || p + 1 > static_cast<int>(state.size()))
                    throw BadDiagram("crossing position out of range");
                auto a = state[p - 1], b = state[p];
                if (a.first != s.colors[0] || b.first != s.colors[1])
                    throw BadDiagram("crossing colors do not match the strands");
                if (a.first != 1 || b.first != 1)
                    throw UnsupportedThickness(
                        "only 1-colored crossings are supported in the cube");
                CrossingSite site;
                site.slice = static_cast<int>(out.slices.size());
                site.pos = p;
                site.positive = s.kind == SliceKind::PositiveCrossing;
                site.color = 1;
                if (a.second && b.second) site.ccase = CrossCase::Parallel;
                else if (a.second && !b.second) site.ccase = CrossCase::AntiUpFwd;
                else if (!a.second && b.second) site.ccase = CrossCase::AntiDownFwd;
                else throw BadDiagram("crossing between two backward strands unsupported; "
                                      "reverse the diagram orientation");
                out.cube_sites.push_back(site);
                std::swap(state[p - 1], state[p]);
                out.slices.push_back(s);
                break;
            }
        }
    }
    if (state != out.strands) throw BadDiagram("slices do not close up around the annulus");
    return out;
}

// Per-crossing cube data: resolution choice t in {0,1} maps to the MOY index k.
int choice_to_k(const CrossingSite& s, int t) { return s.positive ? t : 1 - t; }
int choice_hdeg(const CrossingSite& s, int t, int /*n*/) {
    return s.positive ? t : t - 1;
}
int choice_shift(const CrossingSite& s, int t, int n) {
    int k = choice_to_k(s, t);
    int c = -k - (n - 1);
    return s.positive ? c : -c;
}

struct PendingVertex {
    BuildVertexInfo info;
    std::vector<int> port_segment;  // per port: segment id, filled during build
};

BuiltWeb build_resolution(const NormalizedDiagram& nd, int n,
                          const std::vector<int>& choices) {
    int S = static_cast<int>(nd.slices.size());
    std::vector<Segment> segs;
    std::vector<PendingVertex> verts;

    auto pinB = [&](int b, int pos) {
        Pin p;
        p.kind = 0;
        p.b = b;
        p.pos = pos;
        return p;
    };
    auto pinV = [&](int v, int port) {
        Pin p;
        p.kind = 1;
        p.vertex = v;
        p.port = port;
        return p;
    };
    auto add_seg = [&](Pin a, Pin b, int th, std::vector<ArcKey> arcs, int wrap = 0) {
        segs.push_back({a, b, th, std::move(arcs), wrap});
    };

    // Track how many strands are live at each boundary; positions renumber as
    // cups and caps come and go, so record per-slice live counts.
    std::vector<std::pair<int, bool>> state = nd.strands;
    std::map<int, int> slice_site;  // slice index -> cube site index
    for (size_t i = 0; i < nd.cube_sites.size(); ++i)
        slice_site[nd.cube_sites[i].slice] = static_cast<int>(i);

    for (int s = 0; s < S; ++s) {
        const Slice& sl = nd.slices[s];
        int p = sl.pos;
        std::set<int> touched;
        switch (sl.kind) {
            case SliceKind::Identity:
                break;
            case SliceKind::Cup: {
                // New strand pair appears at the right boundary of this slice.
                state.insert(state.begin() + (p - 1),
                             {{sl.colors[0], sl.orient_plus}, {sl.colors[0], !sl.orient_plus}});
                // Nose segment: from the backward leg to the forward leg.
                int fwd_leg = sl.orient_plus ? p : p + 1;
                int bwd_leg = sl.orient_plus ? p + 1 : p;
                add_seg(pinB(s + 1, bwd_leg), pinB(s + 1, fwd_leg), sl.colors[0],
                        {{s, p, 'u'}});
                touched.insert(p);
                touched.insert(p + 1);
                // Positions above the cup shift by two on the right boundary.
                break;
            }
            case SliceKind::Cap: {
                int fwd_leg = state[p - 1].second ? p : p + 1;
                int bwd_leg = state[p - 1].second ? p + 1 : p;
                add_seg(pinB(s, fwd_leg), pinB(s, bwd_leg), sl.colors[0], {{s, p, 'n'}});
                state.erase(state.begin() + (p - 1), state.begin() + (p + 1));
                touched.insert(p);
                touched.insert(p + 1);
                break;
            }
            case SliceKind::PositiveCrossing:
            case SliceKind::NegativeCrossing: {
                int ci = slice_site.at(s);
                const CrossingSite& site = nd.cube_sites[ci];
                int k = choice_to_k(site, choices[ci]);
                touched.insert(p);
                touched.insert(p + 1);
                if (k == 0) {
                    switch (site.ccase) {
                        case CrossCase::Parallel:
                            add_seg(pinB(s, p), pinB(s + 1, p), 1, {{s, p, '-'}});
                            add_seg(pinB(s, p + 1), pinB(s + 1, p + 1), 1, {{s, p + 1, '-'}});
                            break;
                        case CrossCase::AntiUpFwd:
                            // West turnback p (in) -> p+1 (out); east p -> p+1.
                            add_seg(pinB(s, p), pinB(s, p + 1), 1, {{s, p, 'w'}});
                            add_seg(pinB(s + 1, p), pinB(s + 1, p + 1), 1, {{s, p, 'e'}});
                            break;
                        case CrossCase::AntiDownFwd:
                            add_seg(pinB(s, p + 1), pinB(s, p), 1, {{s, p, 'w'}});
                            add_seg(pinB(s + 1, p + 1), pinB(s + 1, p), 1, {{s, p, 'e'}});
                            break;
                    }
                } else {
                    int vm = static_cast<int>(verts.size());
                    verts.push_back({{ci, 'm', site.ccase}, {-1, -1, -1}});
                    int vs = static_cast<int>(verts.size());
                    verts.push_back({{ci, 's', site.ccase}, {-1, -1, -1}});
                    // Bridge: port 2 of both vertices.
                    add_seg(pinV(vm, 2), pinV(vs, 2), 2, {{s, p, 'B'}});
                    switch (site.ccase) {
                        case CrossCase::Parallel:
                            // vm ports: 0 in-upper, 1 in-lower; vs: 0 out-upper, 1 out-lower.
                            add_seg(pinB(s, p), pinV(vm, 0), 1, {{s, p, 'a'}});
                            add_seg(pinB(s, p + 1), pinV(vm, 1), 1, {{s, p + 1, 'a'}});
                            add_seg(pinV(vs, 0), pinB(s + 1, p), 1, {{s, p, 'b'}});
                            add_seg(pinV(vs, 1), pinB(s + 1, p + 1), 1, {{s, p + 1, 'b'}});
                            break;
                        case CrossCase::AntiUpFwd:
                            // vm ports: 0 west-in, 1 east-in; vs: 0 west-out, 1 east-out.
                            add_seg(pinB(s, p), pinV(vm, 0), 1, {{s, p, 'a'}});
                            add_seg(pinB(s + 1, p), pinV(vm, 1), 1, {{s, p, 'b'}});
                            add_seg(pinV(vs, 0), pinB(s, p + 1), 1, {{s, p + 1, 'a'}});
                            add_seg(pinV(vs, 1), pinB(s + 1, p + 1), 1, {{s, p + 1, 'b'}});
                            break;
                        case CrossCase::AntiDownFwd:
                            add_seg(pinB(s, p + 1), pinV(vm, 0), 1, {{s, p + 1, 'a'}});
                            add_seg(pinB(s + 1, p + 1), pinV(vm, 1), 1, {{s, p + 1, 'b'}});
                            add_seg(pinV(vs, 0), pinB(s, p), 1, {{s, p, 'a'}});
                            add_seg(pinV(vs, 1), pinB(s + 1, p), 1, {{s, p, 'b'}});
                            break;
                    }
                }
                std::swap(state[p - 1], state[p]);
                break;
            }
        }
        // Pass-through segments for untouched live positions.
        int right_count = static_cast<int>(state.size());
        int left_count = right_count;
        if (sl.kind == SliceKind::Cup && sl.colors[0] > 0) left_count -= 2;
        if (sl.kind == SliceKind::Cap && sl.colors[0] > 0) left_count += 2;
        for (int q = 1; q <= left_count; ++q) {
            int qr = q;  // matching right-boundary position
            if (sl.kind == SliceKind::Cup && sl.colors[0] > 0 && q >= p) qr = q + 2;
            if (sl.kind == SliceKind::Cap && sl.colors[0] > 0) {
                if (q >= p && q <= p + 1) continue;  // consumed by the cap
                if (q > p + 1) qr = q - 2;
            }
            if ((sl.kind == SliceKind::PositiveCrossing ||
                 sl.kind == SliceKind::NegativeCrossing) &&
                (q == p || q == p + 1))
                continue;
            if (sl.kind == SliceKind::Cup && sl.colors[0] > 0 && (qr == p || qr == p + 1))
                continue;
            // Direction: recover from the state at the right boundary.
            int color;
            bool fwd;
            if (sl.kind == SliceKind::Cap && sl.colors[0] > 0 && q > p + 1) {
                color = state[qr - 1].first;
                fwd = state[qr - 1].second;
            } else {
                color = state[qr - 1].first;
                fwd = state[qr - 1].second;
            }
            if (fwd) add_seg(pinB(s, q), pinB(s + 1, qr), color, {{s, q, ' '}});
            else add_seg(pinB(s + 1, qr), pinB(s, q), color, {{s, q, ' '}});
        }
    }
    // Closure: boundary S is identified with boundary 0.
    // Section segments carry the closure crossing count.
    for (size_t q = 1; q <= nd.strands.size(); ++q) {
        auto [color, fwd] = nd.strands[q - 1];
        if (fwd)
            add_seg(pinB(S, static_cast<int>(q)), pinB(0, static_cast<int>(q)), color,
                    {{S, static_cast<int>(q), 'c'}}, 1);
        else
            add_seg(pinB(0, static_cast<int>(q)), pinB(S, static_cast<int>(q)), color,
                    {{S, static_cast<int>(q), 'c'}}, -1);
    }
    // Chain segments through boundary pins. Each boundary pin has exactly one
    // incoming and one outgoing segment.
    std::map<Pin, int> out_of, into;
    for (size_t i = 0; i < segs.size(); ++i) {
        if (segs[i].from.kind == 0) {
            if (out_of.count(segs[i].from)) throw BadDiagram("strand geometry conflict");
            out_of[segs[i].from] = static_cast<int>(i);
        }
        if (segs[i].to.kind == 0) {
            if (into.count(segs[i].to)) throw BadDiagram("strand geometry conflict");
            into[segs[i].to] = static_cast<int>(i);
        }
    }
    for (const auto& [pin, _] : out_of)
        if (!into.count(pin)) throw BadDiagram("open strand end in a closed diagram");
    for (const auto& [pin, _] : into)
        if (!out_of.count(pin)) throw BadDiagram("open strand end in a closed diagram");

    // Extract edges (vertex port to vertex port) and vertex-free loops.
    BuiltWeb out;
    std::vector<bool> used(segs.size(), false);
    struct RawEdge {
        Pin start, end;
        int thickness;
        std::vector<ArcKey> arcs;
    };
    std::vector<RawEdge> raw;
    for (size_t i = 0; i < segs.size(); ++i) {
        if (used[i] || segs[i].from.kind != 1) continue;
        RawEdge e;
        e.start = segs[i].from;
        e.thickness = segs[i].thickness;
        int cur = static_cast<int>(i);
        while (true) {
            used[cur] = true;
            for (const ArcKey& k : segs[cur].arcs) e.arcs.push_back(k);
            if (segs[cur].to.kind == 1) {
                e.end = segs[cur].to;
                break;
            }
            cur = out_of.at(segs[cur].to);
        }
        raw.push_back(std::move(e));
    }
    for (size_t i = 0; i < segs.size(); ++i) {
        if (used[i]) continue;
        // Vertex-free cycle.
        std::vector<ArcKey> arcs;
        int wraps = 0;
        int cur = static_cast<int>(i);
        while (!used[cur]) {
            used[cur] = true;
            wraps += segs[cur].closure_cross;
            for (const ArcKey& k : segs[cur].arcs) arcs.push_back(k);
            cur = out_of.at(segs[cur].to);
        }
        WebLoop l;
        l.thickness = segs[i].thickness;
        if (wraps == 0) {
            l.winding = Winding::Contractible;
            l.ccw = true;
        } else if (wraps == 1 || wraps == -1) {
            l.winding = Winding::Essential;
            l.ccw = wraps > 0;
        } else {
            throw BadDiagram("strand wraps the annulus more than once");
        }
        out.web.loops.push_back(l);
        out.loop_arcs.push_back(std::move(arcs));
        out.loop_wraps.push_back(wraps);
    }

    // Vertices and rotations.
    out.web.vertices.resize(verts.size());
    for (size_t v = 0; v < verts.size(); ++v) out.vertex_info.push_back(verts[v].info);
    // Edge list: deterministic order by construction.
    std::vector<std::array<int, 3>> port_edge(verts.size(), {-1, -1, -1});
    std::vector<std::array<int, 3>> port_end(verts.size(), {0, 0, 0});
    for (const RawEdge& e : raw) {
        int id = static_cast<int>(out.web.edges.size());
        WebEdge we;
        we.from = e.start.vertex;
        we.to = e.end.vertex;
        we.thickness = e.thickness;
        out.web.edges.push_back(we);
        out.edge_arcs.push_back(e.arcs);
        port_edge[e.start.vertex][e.start.port] = id;
        port_end[e.start.vertex][e.start.port] = 0;
        port_edge[e.end.vertex][e.end.port] = id;
        port_end[e.end.vertex][e.end.port] = 1;
    }
    for (size_t v = 0; v < verts.size(); ++v) {
        auto he = [&](int port) {
            return HalfEdge{port_edge[v][port], port_end[v][port]};
        };
        const BuildVertexInfo& info = verts[v].info;
        std::vector<HalfEdge> rot;
        if (info.role == 'm') {
            switch (info.ccase) {
                case CrossCase::Parallel: rot = {he(2), he(0), he(1)}; break;
                case CrossCase::AntiUpFwd: rot = {he(1), he(0), he(2)}; break;
                case CrossCase::AntiDownFwd: rot = {he(1), he(2), he(0)}; break;
            }
        } else {
            switch (info.ccase) {
                case CrossCase::Parallel: rot = {he(0), he(2), he(1)}; break;
                case CrossCase::AntiUpFwd: rot = {he(1), he(2), he(0)}; break;
                case CrossCase::AntiDownFwd: rot = {he(1), he(0), he(2)}; break;
            }
        }
        out.web.vertices[v].rot = rot;
    }

    // Markers: the first and last section positions whose chains are edges.
    if (!out.web.edges.empty()) {
        int first_edge = -1, last_edge = -1;
        bool first_fwd = true, last_fwd = true;
        for (size_t q = 1; q <= nd.strands.size(); ++q) {
            ArcKey key{S, static_cast<int>(q), 'c'};
            for (size_t e = 0; e < out.edge_arcs.size(); ++e) {
                if (std::find(out.edge_arcs[e].begin(), out.edge_arcs[e].end(), key) ==
                    out.edge_arcs[e].end())
                    continue;
                bool fwd = nd.strands[q - 1].second;
                if (first_edge < 0) {
                    first_edge = static_cast<int>(e);
                    first_fwd = fwd;
                }
                last_edge = static_cast<int>(e);
                last_fwd = fwd;
            }
        }
        if (first_edge >= 0 && last_edge != first_edge) {
            // Both markers must live in one component; two disjoint graph
            // components wrapping the annulus cannot be classified.
            std::vector<int> comp(out.web.vertices.size(), -1);
            for (size_t v = 0, next = 0; v < comp.size(); ++v) {
                if (comp[v] >= 0) continue;
                std::vector<size_t> stack{v};
                comp[v] = static_cast<int>(next);
                while (!stack.empty()) {
                    size_t cur = stack.back();
                    stack.pop_back();
                    for (const HalfEdge& h : out.web.vertices[cur].rot) {
                        int other = h.end == 1 ? out.web.edges[h.edge].from
                                               : out.web.edges[h.edge].to;
                        if (comp[other] < 0) {
                            comp[other] = static_cast<int>(next);
                            stack.push_back(static_cast<size_t>(other));
                        }
                    }
                }
                ++next;
            }
            if (comp[out.web.edges[first_edge].from] != comp[out.web.edges[last_edge].from])
                throw BadDiagram(
                    "two disjoint graph components wrap the annulus; unsupported");
        }
        if (first_edge >= 0) {
            // Eastward traversal keeps the puncture side on the left of the
            // innermost strand; westward traversal of the outermost strand
            // keeps the outer region on the left.
            out.web.puncture = FaceMarker{first_edge, first_fwd};
            out.web.outer = FaceMarker{last_edge, !last_fwd};
        } else {
            // No wrapped graph strand: the graph part sits beside the core.
            out.web.puncture = FaceMarker{0, true};
            out.web.outer = FaceMarker{0, true};
        }
    }
    return out;
}

AnnularWeb strip(const BuiltWeb& bw) { return bw.web; }

// Differential foam from web(vecA) to web(vecB) where the two vectors differ
// at `site` only, with k = 0 on the A side.
CellFoam zip_foam(const NormalizedDiagram& nd, int n, const std::vector<int>& vecA,
                  const std::vector<int>& vecB, int site) {
    BuiltWeb A = build_resolution(nd, n, vecA);
    BuiltWeb B = build_resolution(nd, n, vecB);
    const CrossingSite& cs = nd.cube_sites[site];
    int s = cs.slice;

    auto is_site_key = [&](const ArcKey& k) { return k.slice == s && k.tag != ' ' && k.tag != 'c' && k.tag != 'u' && k.tag != 'n'; };

    // Locate B's site vertices and bridge.
    int vmB = -1, vsB = -1;
    for (size_t v = 0; v < B.vertex_info.size(); ++v) {
        if (B.vertex_info[v].crossing != site) continue;
        (B.vertex_info[v].role == 'm' ? vmB : vsB) = static_cast<int>(v);
    }
    if (vmB < 0 || vsB < 0) throw std::logic_error("zip_foam: bridge vertices missing");
    int bridgeB = -1;
    for (size_t e = 0; e < B.edge_arcs.size(); ++e)
        for (const ArcKey& k : B.edge_arcs[e])
            if (k.slice == s && k.tag == 'B') bridgeB = static_cast<int>(e);
    if (bridgeB < 0) throw std::logic_error("zip_foam: bridge edge missing");

    // Shared vertices match by (crossing, role).
    std::map<std::pair<int, char>, int> bvert;
    for (size_t v = 0; v < B.vertex_info.size(); ++v)
        bvert[{B.vertex_info[v].crossing, B.vertex_info[v].role}] = static_cast<int>(v);
    std::vector<int> vmatch(A.web.vertices.size(), -1);
    for (size_t v = 0; v < A.web.vertices.size(); ++v)
        vmatch[v] = bvert.at({A.vertex_info[v].crossing, A.vertex_info[v].role});

    // Match bottom items to top items through shared (non-site) arc keys.
    std::map<ArcKey, std::pair<int, bool>> top_owner;  // key -> (index, is_loop)
    for (size_t e = 0; e < B.edge_arcs.size(); ++e)
        for (const ArcKey& k : B.edge_arcs[e])
            if (!is_site_key(k)) top_owner[k] = {static_cast<int>(e), false};
    for (size_t l = 0; l < B.loop_arcs.size(); ++l)
        for (const ArcKey& k : B.loop_arcs[l])
            if (!is_site_key(k)) top_owner[k] = {static_cast<int>(l), true};

    CellFoam f;
    // 0-cells: bottom vertices, top vertices, loop bases.
    std::vector<int> b0(A.web.vertices.size()), t0(B.web.vertices.size());
    for (size_t v = 0; v < A.web.vertices.size(); ++v) {
        b0[v] = static_cast<int>(f.cells0.size());
        f.cells0.push_back({Cell0Tag::WebBoundary, "b0"});
    }
    for (size_t v = 0; v < B.web.vertices.size(); ++v) {
        t0[v] = static_cast<int>(f.cells0.size());
        f.cells0.push_back({Cell0Tag::WebBoundary, "t0"});
    }
    std::vector<int> bl0(A.web.loops.size(), -1), tl0(B.web.loops.size(), -1);
    for (size_t l = 0; l < A.web.loops.size(); ++l) {
        bl0[l] = static_cast<int>(f.cells0.size());
        f.cells0.push_back({Cell0Tag::WebBoundary, "bl0"});
    }
    for (size_t l = 0; l < B.web.loops.size(); ++l) {
        tl0[l] = static_cast<int>(f.cells0.size());
        f.cells0.push_back({Cell0Tag::WebBoundary, "tl0"});
    }

    // 1-cells: bottom and top web cells.
    std::vector<int> b1(A.web.edges.size()), t1(B.web.edges.size());
    for (size_t e = 0; e < A.web.edges.size(); ++e) {
        b1[e] = static_cast<int>(f.cells1.size());
        f.cells1.push_back({b0[A.web.edges[e].from], b0[A.web.edges[e].to],
                            Cell1Tag::WebBoundary, std::nullopt, "b1"});
    }
    std::vector<int> bl1(A.web.loops.size(), -1), tl1(B.web.loops.size(), -1);
    for (size_t l = 0; l < A.web.loops.size(); ++l) {
        bl1[l] = static_cast<int>(f.cells1.size());
        f.cells1.push_back({bl0[l], bl0[l], Cell1Tag::WebBoundary, std::nullopt, "bl1"});
    }
    for (size_t e = 0; e < B.web.edges.size(); ++e) {
        t1[e] = static_cast<int>(f.cells1.size());
        f.cells1.push_back({t0[B.web.edges[e].from], t0[B.web.edges[e].to],
                            Cell1Tag::WebBoundary, std::nullopt, "t1"});
    }
    for (size_t l = 0; l < B.web.loops.size(); ++l) {
        tl1[l] = static_cast<int>(f.cells1.size());
        f.cells1.push_back({tl0[l], tl0[l], Cell1Tag::WebBoundary, std::nullopt, "tl1"});
    }

    // Vertical seams at shared vertices.
    std::vector<int> vseam(A.web.vertices.size(), -1);
    // Facets are assigned one per 2-cell after the cells are listed; the seam
    // triples reference them, so collect 2-cells first and patch triples after.
    struct PendingSeam {
        int cell1 = -1;
        std::array<int, 3> facet_of_cell2{};  // indices of 2-cells, mapped later
        bool dir_plus = true;
    };
    std::vector<PendingSeam> pending;

    // The seam sigma of the zip patch comes after the vertical seams.
    int sigma = -1;
    for (size_t v = 0; v < A.web.vertices.size(); ++v) {
        vseam[v] = static_cast<int>(f.cells1.size());
        SeamData sd;  // placeholder; triple patched below
        int ins = 0;
        for (const HalfEdge& h : A.web.vertices[v].rot)
            if (h.end == 1) ++ins;
        sd.dir_plus = ins == 2;
        f.cells1.push_back({b0[v], t0[vmatch[v]], Cell1Tag::Seam, sd, "vseam"});
    }
    {
        SeamData sd;
        sd.dir_plus = false;  // flows vs -> vm
        sigma = static_cast<int>(f.cells1.size());
        f.cells1.push_back({t0[vmB], t0[vsB], Cell1Tag::Seam, sd, "sigma"});
    }
    // Interior verticals for non-consumed loop pairs and consumed loops.
    std::vector<int> vloop(A.web.loops.size(), -1);

    // 2-cells. One facet per 2-cell.
    auto word_cell = [&](std::vector<std::pair<int, bool>> word, int thickness,
                         const std::string& name) {
        int c2 = static_cast<int>(f.cells2.size());
        int facet = static_cast<int>(f.facets.size());
        f.facets.push_back({thickness, 1, SymFn::one(thickness), name});
        f.cells2.push_back({std::move(word), facet, name});
        return c2;
    };

    // Sheet assignments for seam triples at shared vertices: facet over edge.
    std::vector<int> cell_of_Aedge(A.web.edges.size(), -1);
    std::vector<int> cell_of_Aloop(A.web.loops.size(), -1);

    // Identify consumed bottom items: arcs passing the zip site.
    auto consumed = [&](const std::vector<ArcKey>& arcs) {
        for (const ArcKey& k : arcs)
            if (is_site_key(k)) return true;
        return false;
    };

    // Build the reversed top path of a consumed bottom chain. Forward top
    // path: sequence of (t1 dart or sigma dart) from the chain's tail to head.
    auto top_path_reversed = [&](const std::vector<ArcKey>& arcs) {
        std::vector<std::pair<int, bool>> fwd;  // (cell1, forward)
        int last_top = -2;
        for (const ArcKey& k : arcs) {
            if (is_site_key(k)) continue;
            auto it = top_owner.find(k);
            if (it == top_owner.end()) continue;
            if (it->second.second) throw std::logic_error("zip_foam: consumed chain maps to loop");
            int e = it->second.first;
            if (e == last_top) continue;
            // Insert sigma when the path passes through the bridge: the
            // previous top edge ends at vm and the next leaves vs.
            if (last_top >= 0) {
                if (B.web.edges[last_top].to == vmB && B.web.edges[e].from == vsB)
                    fwd.push_back({sigma, true});  // vm -> sigma -> vs: stored vs->vm, traverse v0->v1
            }
            fwd.push_back({t1[e], true});
            last_top = e;
        }
        if (fwd.empty()) throw std::logic_error("zip_foam: empty top path");
        // Closed chains (loops) need the sigma closure between last and first.
        // Handled by callers for loops; edges end at shared vertices.
        std::vector<std::pair<int, bool>> rev(fwd.rbegin(), fwd.rend());
        for (auto& [c, dir] : rev) dir = !dir;
        return rev;
    };

    // Wait-free handling: sigma traversal direction. Stored sigma: v0 = t0[vmB],
    // v1 = t0[vsB], dir_plus = false (flow vs->vm). Traversing vm->vs is the
    // v0->v1 occurrence (forward). The thin sheets walk the top path reversed,
    // so they traverse vs->vm: reversed occurrence, matching dir_plus.

    for (size_t e = 0; e < A.web.edges.size(); ++e) {
        const std::vector<ArcKey>& arcs = A.edge_arcs[e];
        int head = A.web.edges[e].to, tail = A.web.edges[e].from;
        if (!consumed(arcs)) {
            // Identity rectangle over a shared edge.
            auto it = top_owner.find(arcs.front());
            if (it == top_owner.end() || it->second.second)
                throw std::logic_error("zip_foam: shared edge unmatched");
            int te = it->second.first;
            cell_of_Aedge[e] = word_cell({{b1[e], true},
                                          {vseam[head], true},
                                          {t1[te], false},
                                          {vseam[tail], false}},
                                         A.web.edges[e].thickness, "sheet");
        } else {
            std::vector<std::pair<int, bool>> word;
            word.push_back({b1[e], true});
            word.push_back({vseam[head], true});
            auto rev = top_path_reversed(arcs);
            for (auto& p : rev) word.push_back(p);
            word.push_back({vseam[tail], false});
            cell_of_Aedge[e] = word_cell(std::move(word), A.web.edges[e].thickness, "zipsheet");
        }
    }
    std::map<int, int> tloop_of_aloop;
    {
        // Match non-consumed loops pairwise.
        for (size_t l = 0; l < A.web.loops.size(); ++l) {
            if (consumed(A.loop_arcs[l])) continue;
            auto it = top_owner.find(A.loop_arcs[l].front());
            if (it == top_owner.end() || !it->second.second)
                throw std::logic_error("zip_foam: loop matching failed");
            tloop_of_aloop[static_cast<int>(l)] = it->second.first;
        }
    }
    for (size_t l = 0; l < A.web.loops.size(); ++l) {
        if (!consumed(A.loop_arcs[l])) {
            int tl = tloop_of_aloop.at(static_cast<int>(l));
            vloop[l] = static_cast<int>(f.cells1.size());
            f.cells1.push_back({bl0[l], tl0[tl], Cell1Tag::FacetInterior, std::nullopt, "vl"});
            cell_of_Aloop[l] = word_cell({{bl1[l], true},
                                          {vloop[l], true},
                                          {tl1[tl], false},
                                          {vloop[l], false}},
                                         A.web.loops[l].thickness, "annulus");
        } else {
            // Consumed loop: interior vertical up to t0[vmB], then around the
            // reversed top cycle and back.
            vloop[l] = static_cast<int>(f.cells1.size());
            f.cells1.push_back({bl0[l], t0[vmB], Cell1Tag::FacetInterior, std::nullopt, "vzip"});
            // The forward top cycle starts at vs (leaving the split) and ends
            // into vm; order arcs so the walk starts just after the site.
            std::vector<ArcKey> arcs = A.loop_arcs[l];
            // Rotate so that a site key comes first.
            size_t cut = 0;
            for (size_t i = 0; i < arcs.size(); ++i)
                if (is_site_key(arcs[i])) cut = i;
            std::rotate(arcs.begin(), arcs.begin() + cut, arcs.end());
            auto rev = top_path_reversed(arcs);
            std::vector<std::pair<int, bool>> word;
            word.push_back({bl1[l], true});
            word.push_back({vloop[l], true});
            for (auto& p : rev) word.push_back(p);
            word.push_back({sigma, false});  // vs -> vm traversal closing the cycle
            word.push_back({vloop[l], false});
            cell_of_Aloop[l] = word_cell(std::move(word), A.web.loops[l].thickness, "zipannulus");
        }
    }
    // Bridge membrane.
    int bridge_cell = word_cell({{t1[bridgeB], false}, {sigma, true}}, 2, "membrane");

    // Patch seam triples: vertical seams at shared vertices.
    for (size_t v = 0; v < A.web.vertices.size(); ++v) {
        std::vector<int> fs;
        for (const HalfEdge& h : A.web.vertices[v].rot)
            fs.push_back(f.cells2[cell_of_Aedge[h.edge]].facet);
        bool merge = f.cells1[vseam[v]].seam->dir_plus;
        if (!merge) std::reverse(fs.begin(), fs.end());
        int thick_pos = 0;
        for (int t = 0; t < 3; ++t) {
            int t0_ = f.facets[fs[t]].thickness;
            int t1_ = f.facets[fs[(t + 1) % 3]].thickness;
            int t2_ = f.facets[fs[(t + 2) % 3]].thickness;
            if (t0_ == t1_ + t2_) thick_pos = t;
        }
        f.cells1[vseam[v]].seam->cyclic = {fs[(thick_pos + 1) % 3], fs[(thick_pos + 2) % 3],
                                           fs[thick_pos]};
    }
    // Sigma triple by crossing case.
    {
        auto facet_over_chain = [&](char tag_a, char tag_b, int pos) {
            // The facet whose bottom chain passes through (s, pos, tag).
            for (size_t e = 0; e < A.web.edges.size(); ++e)
                for (const ArcKey& k : A.edge_arcs[e])
                    if (k.slice == s && k.pos == pos && (k.tag == tag_a || k.tag == tag_b))
                        return f.cells2[cell_of_Aedge[e]].facet;
            for (size_t l = 0; l < A.web.loops.size(); ++l)
                for (const ArcKey& k : A.loop_arcs[l])
                    if (k.slice == s && k.pos == pos && (k.tag == tag_a || k.tag == tag_b))
                        return f.cells2[cell_of_Aloop[l]].facet;
            throw std::logic_error("zip_foam: sheet lookup failed");
        };
        int thick = f.cells2[bridge_cell].facet;
        std::array<int, 3> cyc{};
        switch (cs.ccase) {
            case CrossCase::Parallel: {
                int north = facet_over_chain('-', '-', cs.pos);
                int south = facet_over_chain('-', '-', cs.pos + 1);
                cyc = {south, north, thick};
                break;
            }
            case CrossCase::AntiUpFwd: {
                int west = facet_over_chain('w', 'w', cs.pos);
                int east = facet_over_chain('e', 'e', cs.pos);
                cyc = {west, east, thick};
                break;
            }
            case CrossCase::AntiDownFwd: {
                int west = facet_over_chain('w', 'w', cs.pos);
                int east = facet_over_chain('e', 'e', cs.pos);
                cyc = {east, west, thick};
                break;
            }
        }
        f.cells1[sigma].seam->cyclic = cyc;
    }

    // Boundaries.
    FoamBoundary bb, tb;
    bb.web = A.web;
    tb.web = B.web;
    for (size_t e = 0; e < A.web.edges.size(); ++e) bb.edge_cell1.push_back(b1[e]);
    for (size_t v = 0; v < A.web.vertices.size(); ++v) bb.vertex_cell0.push_back(b0[v]);
    for (size_t l = 0; l < A.web.loops.size(); ++l) bb.loop_cells.push_back({bl1[l], bl0[l]});
    for (size_t e = 0; e < B.web.edges.size(); ++e) tb.edge_cell1.push_back(t1[e]);
    for (size_t v = 0; v < B.web.vertices.size(); ++v) tb.vertex_cell0.push_back(t0[v]);
    for (size_t l = 0; l < B.web.loops.size(); ++l) tb.loop_cells.push_back({tl1[l], tl0[l]});
    f.bottom = std::move(bb);
    f.top = std::move(tb);
    f.finalize();
    return f;
}

}  // namespace

std::vector<std::string> validate_diagram(const ColoredAnnularDiagram& d, int n) {
    std::vector<std::string> out;
    try {
        normalize(d, n);
    } catch (const std::exception& e) {
        out.push_back(e.what());
    }
    return out;
}

std::vector<ResolutionInfo> crossing_resolutions(int color_i, int color_j, bool positive,
                                                 int n) {
    if (color_i < 0 || color_i > n || color_j < 0 || color_j > n)
        throw BadColors("crossing colors out of range");
    std::vector<ResolutionInfo> out;
    int j = std::min(color_i, color_j);
    if (j == 0) {
        out.push_back({"identity strands (invisible 0-colored crossing)", 0});
        return out;
    }
    if (color_i != 1 || color_j != 1)
        throw UnsupportedThickness("crossing resolutions beyond 1-colored strands");
    for (int k = 0; k <= 1; ++k) {
        int c = -k - j * (n - j);
        if (!positive) c = -c;
        out.push_back({k == 0 ? "oriented smoothing (parallel strands)"
                              : "bridge web with a middle 2-edge",
                       c});
    }
    return out;
}

AnnularWeb resolution_web(const ColoredAnnularDiagram& d, int n,
                          const std::vector<int>& choices) {
    NormalizedDiagram nd = normalize(d, n);
    if (choices.size() != nd.cube_sites.size())
        throw BadDiagram("resolution vector length mismatch");
    return strip(build_resolution(nd, n, choices));
}

CubeComplex build_complex(const ColoredAnnularDiagram& d, int n, bool with_foams) {
    NormalizedDiagram nd = normalize(d, n);
    int nc = static_cast<int>(nd.cube_sites.size());
    CubeComplex cube;
    cube.crossings = nc;
    int total = 1 << nc;
    for (int mask = 0; mask < total; ++mask) {
        CubeVertex v;
        v.choices.resize(nc);
        for (int c = 0; c < nc; ++c) v.choices[c] = (mask >> c) & 1;
        for (int c = 0; c < nc; ++c) {
            v.hdeg += choice_hdeg(nd.cube_sites[c], v.choices[c], n);
            v.qshift += choice_shift(nd.cube_sites[c], v.choices[c], n);
        }
        v.web = strip(build_resolution(nd, n, v.choices));
        cube.vertices.push_back(std::move(v));
    }
    for (int mask = 0; mask < total; ++mask) {
        for (int c = 0; c < nc; ++c) {
            if ((mask >> c) & 1) continue;
            CubeEdge e;
            e.from = mask;
            e.to = mask | (1 << c);
            e.crossing = c;
            int lower = 0;
            for (int c2 = 0; c2 < c; ++c2) lower += (mask >> c2) & 1;
            e.sign = lower % 2 ? -1 : 1;
            if (with_foams) {
                std::vector<int> from_vec = cube.vertices[e.from].choices;
                std::vector<int> to_vec = cube.vertices[e.to].choices;
                if (nd.cube_sites[c].positive) {
                    e.foam = zip_foam(nd, n, from_vec, to_vec, c);
                } else {
                    // Negative crossing: t 0 -> 1 is k 1 -> 0, an unzip.
                    e.foam = reflect(zip_foam(nd, n, to_vec, from_vec, c));
                }
            }
            cube.edges.push_back(std::move(e));
        }
    }
    return cube;
}

LaurentGraded euler_characteristic(const ColoredAnnularDiagram& d, int n) {
    CubeComplex cube = build_complex(d, n, false);
    LaurentGraded total(n);
    for (const CubeVertex& v : cube.vertices) {
        LaurentGraded term = evaluate_web(v.web, n) * LaurentGraded::q_power(n, v.qshift);
        if (v.hdeg % 2 != 0) term = -term;
        total += term;
    }
    return total;
}

namespace {

// Probe foams for a pure loop web: all labeled cups for essential loops,
// decorated cups for contractible ones.
std::vector<CellFoam> loop_web_probes(const AnnularWeb& w, int n) {
    std::vector<std::vector<CellFoam>> per_loop;
    for (const WebLoop& l : w.loops) {
        std::vector<CellFoam> cups;
        if (l.winding == Winding::Essential) {
            for (Subset s : subsets_of_size(n, l.thickness)) {
                CupParams cp;
                cp.thickness = l.thickness;
                cp.anchor_label = s;
                cp.ccw = l.ccw;
                cups.push_back(cup_foam(n, cp));
            }
        } else {
            if (l.thickness != 1)
                throw UnsupportedThickness("default probes need thickness-1 contractible loops");
            SymFn e1k = SymFn::one(1);
            for (int k = 0; k < n; ++k) {
                CupParams cp;
                cp.thickness = 1;
                cp.decoration = e1k;
                cp.ccw = l.ccw;
                cups.push_back(cup_foam(n, cp));
                e1k = e1k * SymFn::elementary(1, 1);
            }
        }
        per_loop.push_back(std::move(cups));
    }
    // Cartesian product of the per-loop probe lists.
    std::vector<CellFoam> out;
    std::vector<size_t> idx(per_loop.size(), 0);
    if (per_loop.empty()) return out;
    while (true) {
        CellFoam probe = per_loop[0][idx[0]];
        for (size_t l = 1; l < per_loop.size(); ++l)
            probe = disjoint_union(probe, per_loop[l][idx[l]]);
        out.push_back(std::move(probe));
        size_t k = 0;
        while (k < per_loop.size() && ++idx[k] == per_loop[k].size()) idx[k++] = 0;
        if (k == per_loop.size()) break;
    }
    return out;
}

}  // namespace

D2Report d2_probe_check(const ColoredAnnularDiagram& d, int n, bool negate) {
    NormalizedDiagram nd = normalize(d, n);
    CubeComplex cube = build_complex(d, n, true);
    D2Report report;
    int nc = cube.crossings;
    auto edge_at = [&](int from, int crossing) -> const CubeEdge& {
        for (const CubeEdge& e : cube.edges)
            if (e.from == from && e.crossing == crossing) return e;
        throw std::logic_error("cube edge lookup failed");
    };
    // Probes for an arbitrary cube vertex: cup probes over the all-smoothed
    // vertex (always a pure loop web for 1-colored diagrams), pushed to the
    // target along a zigzag of differential foams and their reflections.
    int smoothed_mask = 0;
    for (int c = 0; c < nc; ++c)
        if (!nd.cube_sites[c].positive) smoothed_mask |= 1 << c;
    auto vertex_probes = [&](int mask) {
        std::vector<CellFoam> probes = loop_web_probes(cube.vertices[smoothed_mask].web, n);
        int cur = smoothed_mask;
        for (int c = 0; c < nc; ++c) {
            int want = (mask >> c) & 1;
            int have = (cur >> c) & 1;
            if (want == have) continue;
            if (have == 0) {
                const CubeEdge& e = edge_at(cur, c);
                for (CellFoam& p : probes) p = glue(p, e.foam);
                cur |= 1 << c;
            } else {
                const CubeEdge& e = edge_at(cur & ~(1 << c), c);
                for (CellFoam& p : probes) p = glue(p, reflect(e.foam));
                cur &= ~(1 << c);
            }
        }
        return probes;
    };
    for (int mask = 0; mask < (1 << nc); ++mask) {
        for (int c1 = 0; c1 < nc; ++c1) {
            if ((mask >> c1) & 1) continue;
            for (int c2 = c1 + 1; c2 < nc; ++c2) {
                if ((mask >> c2) & 1) continue;
                SquareReport sq;
                sq.base = cube.vertices[mask].choices;
                sq.c1 = c1;
                sq.c2 = c2;
                std::vector<CellFoam> probes_in;
                try {
                    probes_in = vertex_probes(mask);
                } catch (const std::exception& e) {
                    sq.note = e.what();
                    report.squares.push_back(sq);
                    continue;
                }
                // Path A: flip c1 then c2; path B: flip c2 then c1.
                const CubeEdge& a1 = edge_at(mask, c1);
                const CubeEdge& a2 = edge_at(a1.to, c2);
                const CubeEdge& b1 = edge_at(mask, c2);
                const CubeEdge& b2 = edge_at(b1.to, c1);
                CellFoam pathA = glue(a1.foam, a2.foam);
                CellFoam pathB = glue(b1.foam, b2.foam);
                std::vector<CellFoam> probes_out;
                for (const CellFoam& v : probes_in) {
                    probes_out.push_back(glue(v, pathA));
                    probes_out.push_back(glue(v, pathB));
                }
                // The edge signs anticommute by construction, so d^2 = 0 is
                // the equality of the two composite foams on probes.
                bool equal;
                if (!negate) {
                    equal = probe_equal(pathA, pathB, probes_in, probes_out, n);
                } else {
                    // Negative control: compare against the sign-flipped square.
                    bool all_zero = true;
                    equal = true;
                    for (const CellFoam& v : probes_in) {
                        CellFoam av = glue(v, pathA);
                        CellFoam bv = glue(v, pathB);
                        for (const CellFoam& w : probes_out) {
                            MultiPoly pa = pair_foams(w, av, n);
                            MultiPoly pb = pair_foams(w, bv, n);
                            if (!pa.is_zero() || !pb.is_zero()) all_zero = false;
                            if (!(pa == -pb)) equal = false;
                        }
                    }
                    if (all_zero) equal = false;  // degenerate control
                }
                sq.checked = true;
                sq.passed = equal;
                report.squares.push_back(sq);
                report.any_checked = true;
                if (!equal) report.all_passed = false;
            }
        }
    }
    return report;
}

}  // namespace anchorfoam
