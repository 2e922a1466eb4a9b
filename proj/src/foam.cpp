#include "foam.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace anchorfoam {

namespace {

int walk_start(const CellFoam& f, int c1, bool fwd) {
    const Cell1& e = f.cells1[c1];
    return fwd ? e.v0 : e.v1;
}

int walk_end(const CellFoam& f, int c1, bool fwd) {
    const Cell1& e = f.cells1[c1];
    return fwd ? e.v1 : e.v0;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::string CellFoam::describe_cell0(int id) const {
    const std::string& nm = cells0[id].name;
    return nm.empty() ? "c0#" + std::to_string(id) : nm;
}

std::string CellFoam::describe_cell1(int id) const {
    const std::string& nm = cells1[id].name;
    return nm.empty() ? "c1#" + std::to_string(id) : nm;
}

void CellFoam::finalize() {
    occ_.assign(cells1.size(), {});
    for (size_t c = 0; c < cells2.size(); ++c)
        for (const auto& [e, fwd] : cells2[c].boundary)
            occ_[e].push_back({static_cast<int>(c), fwd});

    facet_cells2_.assign(facets.size(), {});
    for (size_t c = 0; c < cells2.size(); ++c)
        if (cells2[c].facet >= 0 && cells2[c].facet < static_cast<int>(facets.size()))
            facet_cells2_[cells2[c].facet].push_back(static_cast<int>(c));

    owner1_.assign(cells1.size(), -1);
    for (size_t e = 0; e < cells1.size(); ++e) {
        if (cells1[e].tag != Cell1Tag::FacetInterior) continue;
        if (!occ_[e].empty()) owner1_[e] = cells2[occ_[e][0].first].facet;
    }
    owner0_.assign(cells0.size(), -1);
    for (size_t e = 0; e < cells1.size(); ++e) {
        if (cells1[e].tag != Cell1Tag::FacetInterior || owner1_[e] < 0) continue;
        owner0_[cells1[e].v0] = owner1_[e];
        owner0_[cells1[e].v1] = owner1_[e];
    }

    // Maximal seam components: chain seam 1-cells through seam-subdivision points.
    bindings_.clear();
    std::vector<std::vector<std::pair<int, int>>> ends_at(cells0.size());  // (1-cell, end)
    for (size_t e = 0; e < cells1.size(); ++e) {
        if (cells1[e].tag != Cell1Tag::Seam) continue;
        ends_at[cells1[e].v0].push_back({static_cast<int>(e), 0});
        ends_at[cells1[e].v1].push_back({static_cast<int>(e), 1});
    }
    std::vector<bool> used(cells1.size(), false);
    auto continues_through = [&](int v) {
        return v >= 0 && cells0[v].tag == Cell0Tag::SeamSubdivision && ends_at[v].size() == 2;
    };
    auto walk = [&](int start_cell, int from_end) {
        // Walk away from `from_end` of start_cell, collecting the chain.
        Binding b;
        int e = start_cell;
        int enter_end = from_end;  // the end we came in through
        while (true) {
            used[e] = true;
            b.cells.push_back(e);
            int exit_end = 1 - enter_end;
            int v = exit_end == 0 ? cells1[e].v0 : cells1[e].v1;
            if (!continues_through(v)) break;
            // Find the other seam cell end at v.
            int ne = -1, nend = -1;
            for (auto [ce, cend] : ends_at[v]) {
                if (ce == e && cend == exit_end) continue;
                ne = ce;
                nend = cend;
                break;
            }
            if (ne < 0 || used[ne]) {
                if (ne == start_cell) b.is_circle = true;
                break;
            }
            e = ne;
            enter_end = nend;
        }
        return b;
    };
    // Interval bindings first: start every walk at a non-continuing endpoint.
    for (size_t e = 0; e < cells1.size(); ++e) {
        if (cells1[e].tag != Cell1Tag::Seam || used[e]) continue;
        int start_end;
        if (!continues_through(cells1[e].v0)) start_end = 0;
        else if (!continues_through(cells1[e].v1)) start_end = 1;
        else continue;  // mid-chain or circle; handled below
        Binding b = walk(static_cast<int>(e), start_end);
        b.is_circle = false;
        if (cells1[b.cells.front()].seam) b.cyclic = cells1[b.cells.front()].seam->cyclic;
        bindings_.push_back(std::move(b));
    }
    // Remaining seam cells close up into circles.
    for (size_t e = 0; e < cells1.size(); ++e) {
        if (cells1[e].tag != Cell1Tag::Seam || used[e]) continue;
        Binding b = walk(static_cast<int>(e), 0);
        b.is_circle = true;
        if (cells1[b.cells.front()].seam) b.cyclic = cells1[b.cells.front()].seam->cyclic;
        bindings_.push_back(std::move(b));
    }
}

bool CellFoam::valid(int n) const {
    for (const auto& d : validate(n))
        if (!d.warning) return false;
    return true;
}

int CellFoam::facet_euler(int f) const {
    int chi = 0;
    for (int c : facet_cells2_[f]) {
        (void)c;
        ++chi;
    }
    for (size_t e = 0; e < cells1.size(); ++e)
        if (cells1[e].tag == Cell1Tag::FacetInterior && owner1_[e] == f) --chi;
    for (size_t v = 0; v < cells0.size(); ++v)
        if (cells0[v].tag == Cell0Tag::FacetInterior && owner0_[v] == f) ++chi;
    return chi;
}

std::vector<Diagnostic> CellFoam::validate(int n) const {
    std::vector<Diagnostic> out;
    auto err = [&](const std::string& code, const std::string& detail) {
        out.push_back({code, detail, false});
    };

    for (size_t i = 0; i < cells1.size(); ++i) {
        const Cell1& e = cells1[i];
        if (e.v0 < 0 || e.v0 >= static_cast<int>(cells0.size()) || e.v1 < 0 ||
            e.v1 >= static_cast<int>(cells0.size()))
            err("BadCellReference", "1-cell " + describe_cell1(i) + " has invalid endpoints");
        if (e.tag == Cell1Tag::Seam && !e.seam)
            err("MissingSeamData", "seam 1-cell " + describe_cell1(i) + " lacks seam data");
    }
    for (size_t c = 0; c < cells2.size(); ++c) {
        const Cell2& cc = cells2[c];
        if (cc.facet < 0 || cc.facet >= static_cast<int>(facets.size())) {
            err("BadCellReference", "2-cell #" + std::to_string(c) + " has invalid facet");
            continue;
        }
        if (cc.boundary.empty()) {
            err("EmptyBoundaryWord", "2-cell #" + std::to_string(c));
            continue;
        }
        for (size_t k = 0; k < cc.boundary.size(); ++k) {
            auto [e, fwd] = cc.boundary[k];
            if (e < 0 || e >= static_cast<int>(cells1.size())) {
                err("BadCellReference", "2-cell #" + std::to_string(c) + " boundary");
                continue;
            }
            auto [e2, fwd2] = cc.boundary[(k + 1) % cc.boundary.size()];
            if (e2 < 0 || e2 >= static_cast<int>(cells1.size())) continue;
            if (walk_end(*this, e, fwd) != walk_start(*this, e2, fwd2))
                err("BoundaryWordBroken", "2-cell #" + std::to_string(c) + " at position " +
                                              std::to_string(k));
        }
    }
    if (!out.empty()) return out;  // structural references broken; stop here

    for (size_t f = 0; f < facets.size(); ++f) {
        if (facets[f].thickness < 0 || facets[f].thickness > n)
            err("ThicknessRange", "facet " + std::to_string(f));
        if (facets[f].decoration.arity() != facets[f].thickness)
            err("DecorationArity", "facet " + std::to_string(f));
        int qd;
        if (!facets[f].decoration.homogeneous(qd))
            err("DecorationNotHomogeneous", "facet " + std::to_string(f));
    }

    // Occurrence counts and orientation compatibility.
    for (size_t e = 0; e < cells1.size(); ++e) {
        const Cell1& c1 = cells1[e];
        const auto& oc = occ_[e];
        switch (c1.tag) {
            case Cell1Tag::Seam: {
                if (oc.size() != 3) {
                    err("SeamAdjacency", "seam " + describe_cell1(e) + " has " +
                                             std::to_string(oc.size()) + " facet sides");
                    break;
                }
                const SeamData& sd = *c1.seam;
                int ta = facets[sd.cyclic[0]].thickness, tb = facets[sd.cyclic[1]].thickness,
                    tc = facets[sd.cyclic[2]].thickness;
                if (ta + tb != tc)
                    err("SeamThicknessMismatch", "seam " + describe_cell1(e));
                std::multiset<int> expect{sd.cyclic[0], sd.cyclic[1], sd.cyclic[2]};
                std::multiset<int> got;
                for (auto [c2, fwd] : oc) got.insert(cells2[c2].facet);
                if (expect != got)
                    err("SeamFacetMismatch", "seam " + describe_cell1(e) +
                                                 " cyclic triple does not match adjacent facets");
                for (auto [c2, fwd] : oc) {
                    bool thin = cells2[c2].facet == sd.cyclic[0] || cells2[c2].facet == sd.cyclic[1];
                    bool thick = cells2[c2].facet == sd.cyclic[2];
                    if (thin && thick) continue;  // degenerate; already reported via thickness
                    if (thin && fwd != sd.dir_plus)
                        err("SeamOrientation", "thin facet disagrees with binding at " +
                                                   describe_cell1(e));
                    if (thick && fwd == sd.dir_plus)
                        err("SeamOrientation", "thick facet agrees with binding at " +
                                                   describe_cell1(e));
                }
                break;
            }
            case Cell1Tag::FacetInterior: {
                if (oc.size() != 2) {
                    err("InteriorAdjacency", describe_cell1(e));
                    break;
                }
                if (cells2[oc[0].first].facet != cells2[oc[1].first].facet)
                    err("InteriorFacetMismatch", describe_cell1(e));
                if (oc[0].second == oc[1].second)
                    err("OrientationIncompatible", describe_cell1(e));
                break;
            }
            case Cell1Tag::WebBoundary: {
                if (oc.size() != 1) err("BoundaryAdjacency", describe_cell1(e));
                if (closed()) err("ClosedFoamBoundaryCell", describe_cell1(e));
                break;
            }
        }
    }

    // 0-cell valences.
    std::vector<std::vector<std::pair<int, int>>> seam_ends(cells0.size());
    std::vector<int> interior_ends(cells0.size(), 0), boundary_ends(cells0.size(), 0);
    for (size_t e = 0; e < cells1.size(); ++e) {
        const Cell1& c1 = cells1[e];
        auto tally = [&](int v, int end) {
            if (c1.tag == Cell1Tag::Seam) seam_ends[v].push_back({static_cast<int>(e), end});
            else if (c1.tag == Cell1Tag::FacetInterior) interior_ends[v]++;
            else boundary_ends[v]++;
        };
        tally(c1.v0, 0);
        tally(c1.v1, 1);
    }
    for (size_t v = 0; v < cells0.size(); ++v) {
        switch (cells0[v].tag) {
            case Cell0Tag::SingularVertex:
                if (seam_ends[v].size() != 4)
                    err("SingularVertexValence", describe_cell0(v) + " has " +
                                                     std::to_string(seam_ends[v].size()) +
                                                     " incident bindings");
                break;
            case Cell0Tag::SeamSubdivision: {
                if (seam_ends[v].size() != 2) {
                    err("SeamSubdivisionValence", describe_cell0(v));
                    break;
                }
                auto [e1, end1] = seam_ends[v][0];
                auto [e2, end2] = seam_ends[v][1];
                const SeamData& s1 = *cells1[e1].seam;
                const SeamData& s2 = *cells1[e2].seam;
                // Through-direction: as oriented by dir_plus, one cell arrives, one departs.
                bool arrives1 = (end1 == 1) == s1.dir_plus;
                bool arrives2 = (end2 == 1) == s2.dir_plus;
                if (arrives1 == arrives2)
                    err("SeamDirectionBroken", describe_cell0(v));
                if (s1.cyclic != s2.cyclic)
                    err("SeamTripleMismatch", describe_cell0(v));
                break;
            }
            case Cell0Tag::FacetInterior:
                if (!seam_ends[v].empty() || boundary_ends[v] > 0)
                    err("InteriorVertexTag", describe_cell0(v));
                break;
            case Cell0Tag::WebBoundary:
                if (closed()) err("ClosedFoamBoundaryCell", describe_cell0(v));
                break;
        }
    }

    // Facet connectivity through interior 1-cells.
    {
        UnionFind uf(static_cast<int>(cells2.size()));
        for (size_t e = 0; e < cells1.size(); ++e) {
            if (cells1[e].tag != Cell1Tag::FacetInterior || occ_[e].size() != 2) continue;
            uf.unite(occ_[e][0].first, occ_[e][1].first);
        }
        for (size_t f = 0; f < facets.size(); ++f) {
            const auto& cs = facet_cells2_[f];
            if (cs.empty()) {
                err("EmptyFacet", "facet " + std::to_string(f));
                continue;
            }
            int rep = uf.find(cs[0]);
            for (int c : cs)
                if (uf.find(c) != rep) {
                    err("FacetDisconnected", "facet " + std::to_string(f));
                    break;
                }
        }
    }

    // Anchors.
    for (size_t a = 0; a < anchors.size(); ++a) {
        const AnchorPoint& p = anchors[a];
        if (p.cell2 < 0 || p.cell2 >= static_cast<int>(cells2.size())) {
            err("BadCellReference", "anchor #" + std::to_string(a));
            continue;
        }
        if (p.sign != 1 && p.sign != -1) err("AnchorSign", "anchor #" + std::to_string(a));
        if (p.label & ~full_subset(n)) {
            err("LabelRange", "anchor #" + std::to_string(a) + " label out of range for N=" +
                                  std::to_string(n));
            continue;
        }
        int th = facets[cells2[p.cell2].facet].thickness;
        if (subset_size(p.label) != th)
            err("AnchorLabelArity", "anchor #" + std::to_string(a) + " has |label| " +
                                        std::to_string(subset_size(p.label)) +
                                        " on thickness-" + std::to_string(th) + " facet");
    }

    // Boundary correspondences.
    auto check_boundary = [&](const FoamBoundary& b, bool is_top, const char* which) {
        if (b.edge_cell1.size() != b.web.edges.size() ||
            b.vertex_cell0.size() != b.web.vertices.size() ||
            b.loop_cells.size() != b.web.loops.size()) {
            err("BoundaryCorrespondence", std::string(which) + " correspondence size");
            return;
        }
        for (size_t e = 0; e < b.web.edges.size(); ++e) {
            int c1 = b.edge_cell1[e];
            if (c1 < 0 || c1 >= static_cast<int>(cells1.size()) ||
                cells1[c1].tag != Cell1Tag::WebBoundary) {
                err("BoundaryCorrespondence", std::string(which) + " edge " + std::to_string(e));
                continue;
            }
            if (occ_[c1].size() == 1) {
                auto [c2, fwd] = occ_[c1][0];
                if (fwd == is_top)
                    err("BoundaryOrientation", std::string(which) + " edge " + std::to_string(e));
                if (facets[cells2[c2].facet].thickness != b.web.edges[e].thickness)
                    err("BoundaryThickness", std::string(which) + " edge " + std::to_string(e));
            }
        }
        for (size_t l = 0; l < b.web.loops.size(); ++l) {
            auto [c1, c0] = b.loop_cells[l];
            if (c1 < 0 || c1 >= static_cast<int>(cells1.size()) || c0 < 0 ||
                c0 >= static_cast<int>(cells0.size())) {
                err("BoundaryCorrespondence", std::string(which) + " loop " + std::to_string(l));
                continue;
            }
            if (occ_[c1].size() == 1 &&
                facets[cells2[occ_[c1][0].first].facet].thickness != b.web.loops[l].thickness)
                err("BoundaryThickness", std::string(which) + " loop " + std::to_string(l));
        }
    };
    if (bottom) check_boundary(*bottom, false, "bottom");
    if (top) check_boundary(*top, true, "top");

    // Embeddable closed anchored foams have vanishing annular degree; warn otherwise.
    if (closed() && !anchors.empty()) {
        bool bad = false;
        std::vector<int> adeg(n, 0);
        for (const AnchorPoint& p : anchors)
            for (int i = 1; i <= n; ++i)
                if (subset_contains(p.label, i)) adeg[i - 1] += p.sign;
        for (int v : adeg)
            if (v != 0) bad = true;
        if (bad && !enumerate_colorings(*this, n).empty())
            out.push_back({"NonzeroAnnularDegree",
                           "closed foam with admissible colorings has adeg != 0", true});
    }

    return out;
}

std::vector<Coloring> enumerate_colorings(const CellFoam& f, int n) {
    int nf = static_cast<int>(f.facets.size());
    std::vector<Subset> forced(nf, 0);
    std::vector<bool> has_forced(nf, false);

    for (const AnchorPoint& p : f.anchors) {
        int fac = f.cells2[p.cell2].facet;
        if (has_forced[fac] && forced[fac] != p.label) return {};
        forced[fac] = p.label;
        has_forced[fac] = true;
    }
    for (int fac = 0; fac < nf; ++fac) {
        if (f.facets[fac].thickness == 0) {
            if (has_forced[fac] && forced[fac] != 0) return {};
            forced[fac] = 0;
            has_forced[fac] = true;
        }
        if (has_forced[fac] && subset_size(forced[fac]) != f.facets[fac].thickness) return {};
    }

    // One constraint per binding: c(f1) disjoint-union c(f2) = c(f3).
    std::vector<std::array<int, 3>> seams;
    for (const Binding& b : f.bindings()) seams.push_back(b.cyclic);

    std::vector<std::vector<Subset>> candidates(nf);
    for (int fac = 0; fac < nf; ++fac) {
        if (has_forced[fac]) candidates[fac] = {forced[fac]};
        else candidates[fac] = subsets_of_size(n, f.facets[fac].thickness);
    }

    // Assignment order: forced first, then ascending id.
    std::vector<int> order;
    for (int fac = 0; fac < nf; ++fac)
        if (has_forced[fac]) order.push_back(fac);
    for (int fac = 0; fac < nf; ++fac)
        if (!has_forced[fac]) order.push_back(fac);

    std::vector<int> rank(nf);
    for (int k = 0; k < nf; ++k) rank[order[k]] = k;
    // Check a seam as soon as its last facet is placed; partial disjointness earlier.
    std::vector<Coloring> out;
    Coloring cur(nf, 0);
    std::vector<bool> assigned(nf, false);

    auto consistent = [&](int fac) {
        for (const auto& s : seams) {
            bool involves = s[0] == fac || s[1] == fac || s[2] == fac;
            if (!involves) continue;
            bool all = assigned[s[0]] && assigned[s[1]] && assigned[s[2]];
            if (all) {
                if ((cur[s[0]] & cur[s[1]]) != 0) return false;
                if ((cur[s[0]] | cur[s[1]]) != cur[s[2]]) return false;
            } else {
                if (assigned[s[0]] && assigned[s[1]] && (cur[s[0]] & cur[s[1]])) return false;
                if (assigned[s[2]]) {
                    if (assigned[s[0]] && (cur[s[0]] & ~cur[s[2]])) return false;
                    if (assigned[s[1]] && (cur[s[1]] & ~cur[s[2]])) return false;
                }
            }
        }
        return true;
    };

    std::function<void(int)> dfs = [&](int k) {
        if (k == nf) {
            out.push_back(cur);
            return;
        }
        int fac = order[k];
        for (Subset s : candidates[fac]) {
            cur[fac] = s;
            assigned[fac] = true;
            if (consistent(fac)) dfs(k + 1);
            assigned[fac] = false;
        }
        cur[fac] = 0;
    };
    dfs(0);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Shared membership machinery for mono- and bicolored subsurfaces.
struct Membership {
    const CellFoam& f;
    const Coloring& c;
    // True when the facet belongs to the selected surface.
    std::function<bool(int)> facet_member;

    bool seam_member(int e) const {
        const SeamData& sd = *f.cells1[e].seam;
        int count = 0;
        for (int t = 0; t < 3; ++t)
            if (facet_member(sd.cyclic[t])) ++count;
        if (count != 0 && count != 2)
            throw InvalidLocalSurface("seam " + f.describe_cell1(e) + " meets surface in " +
                                      std::to_string(count) + " facets");
        return count == 2;
    }
};

int subsurface_euler_impl(const CellFoam& f, const Coloring& c,
                          const std::function<bool(int)>& facet_member) {
    if (!f.closed()) throw std::invalid_argument("subsurface_euler: foam must be closed");
    Membership m{f, c, facet_member};
    int chi = 0;
    for (size_t c2 = 0; c2 < f.cells2.size(); ++c2)
        if (facet_member(f.cells2[c2].facet)) ++chi;
    // 1-cells.
    std::vector<bool> seam_in(f.cells1.size(), false);
    for (size_t e = 0; e < f.cells1.size(); ++e) {
        switch (f.cells1[e].tag) {
            case Cell1Tag::FacetInterior:
                if (f.owner_facet1()[e] >= 0 && facet_member(f.owner_facet1()[e])) --chi;
                break;
            case Cell1Tag::Seam:
                if (m.seam_member(static_cast<int>(e))) {
                    seam_in[e] = true;
                    --chi;
                }
                break;
            case Cell1Tag::WebBoundary:
                throw std::invalid_argument("subsurface_euler: boundary cell in closed foam");
        }
    }
    // 0-cells.
    std::vector<std::vector<int>> seam_cells_at(f.cells0.size());
    for (size_t e = 0; e < f.cells1.size(); ++e) {
        if (f.cells1[e].tag != Cell1Tag::Seam) continue;
        seam_cells_at[f.cells1[e].v0].push_back(static_cast<int>(e));
        seam_cells_at[f.cells1[e].v1].push_back(static_cast<int>(e));
    }
    for (size_t v = 0; v < f.cells0.size(); ++v) {
        switch (f.cells0[v].tag) {
            case Cell0Tag::FacetInterior:
                if (f.owner_facet0()[v] >= 0 && facet_member(f.owner_facet0()[v])) ++chi;
                break;
            case Cell0Tag::SeamSubdivision: {
                // Both incident seam cells carry the same triple; membership matches them.
                if (!seam_cells_at[v].empty() && seam_in[seam_cells_at[v][0]]) ++chi;
                break;
            }
            case Cell0Tag::SingularVertex: {
                int member_bindings = 0;
                for (int e : seam_cells_at[v])
                    if (seam_in[e]) ++member_bindings;
                // The link of the vertex inside the surface is a circle through the
                // member bindings; one member binding cannot close up.
                if (member_bindings == 1)
                    throw InvalidLocalSurface("singular vertex " + f.describe_cell0(v));
                if (member_bindings >= 2) ++chi;
                break;
            }
            case Cell0Tag::WebBoundary:
                throw std::invalid_argument("subsurface_euler: boundary cell in closed foam");
        }
    }
    return chi;
}

}  // namespace

int subsurface_euler(const CellFoam& f, const Coloring& c, MonochromeSelector sel) {
    return subsurface_euler_impl(
        f, c, [&](int fac) { return subset_contains(c[fac], sel.i); });
}

int subsurface_euler(const CellFoam& f, const Coloring& c, BicolorSelector sel) {
    return subsurface_euler_impl(f, c, [&](int fac) {
        return subset_contains(c[fac], sel.i) != subset_contains(c[fac], sel.j);
    });
}

int theta_plus(const CellFoam& f, const Coloring& c, int i, int j) {
    int count = 0;
    for (const Binding& b : f.bindings()) {
        int thick = b.cyclic[2];
        if (!subset_contains(c[thick], i) || !subset_contains(c[thick], j)) continue;
        // Positive iff the left-hand cyclic order reads (i-facet, j-facet, thick).
        if (subset_contains(c[b.cyclic[0]], i) && subset_contains(c[b.cyclic[1]], j)) ++count;
    }
    return count;
}

CellFoam reflect(const CellFoam& f) {
    CellFoam r = f;
    for (Cell2& c : r.cells2) {
        std::reverse(c.boundary.begin(), c.boundary.end());
        for (auto& [e, fwd] : c.boundary) fwd = !fwd;
    }
    // Boundary words are reversed above, which flips every facet orientation
    // on top of the mirror; the induced binding directions flip with them
    // while the left-hand cyclic orders are left intact. Together this stores
    // the reflected foam of the evaluation (the equivalent reversed-direction,
    // reversed-cyclic presentation of the mirror).
    for (Cell1& e : r.cells1) {
        if (e.seam) e.seam->dir_plus = !e.seam->dir_plus;
    }
    for (AnchorPoint& p : r.anchors) p.sign = -p.sign;
    std::swap(r.bottom, r.top);
    r.finalize();
    return r;
}

CellFoam glue(const CellFoam& f, const CellFoam& g) {
    if (!f.top || !g.bottom) throw BoundaryMismatch("glue: missing boundary webs");
    if (!f.top->web.same_shape(g.bottom->web))
        throw BoundaryMismatch("glue: top web of first foam differs from bottom web of second");

    const FoamBoundary& tb = *f.top;
    const FoamBoundary& gb = *g.bottom;

    // Map G cells into the union. Identified cells reuse F ids.
    std::vector<int> g0(g.cells0.size(), -1), g1(g.cells1.size(), -1);
    for (size_t e = 0; e < gb.web.edges.size(); ++e) g1[gb.edge_cell1[e]] = tb.edge_cell1[e];
    for (size_t v = 0; v < gb.web.vertices.size(); ++v)
        g0[gb.vertex_cell0[v]] = tb.vertex_cell0[v];
    for (size_t l = 0; l < gb.web.loops.size(); ++l) {
        g1[gb.loop_cells[l].first] = tb.loop_cells[l].first;
        g0[gb.loop_cells[l].second] = tb.loop_cells[l].second;
    }

    CellFoam r;
    r.cells0 = f.cells0;
    r.cells1 = f.cells1;
    r.cells2 = f.cells2;
    r.facets = f.facets;
    r.anchors = f.anchors;

    for (size_t v = 0; v < g.cells0.size(); ++v) {
        if (g0[v] >= 0) continue;
        g0[v] = static_cast<int>(r.cells0.size());
        r.cells0.push_back(g.cells0[v]);
    }
    std::vector<int> gf(g.facets.size(), -1);
    for (size_t fa = 0; fa < g.facets.size(); ++fa) {
        gf[fa] = static_cast<int>(r.facets.size());
        r.facets.push_back(g.facets[fa]);
    }
    for (size_t e = 0; e < g.cells1.size(); ++e) {
        if (g1[e] >= 0) continue;
        g1[e] = static_cast<int>(r.cells1.size());
        Cell1 c = g.cells1[e];
        c.v0 = g0[c.v0];
        c.v1 = g0[c.v1];
        if (c.seam)
            for (int t = 0; t < 3; ++t) c.seam->cyclic[t] = gf[c.seam->cyclic[t]];
        r.cells1.push_back(c);
    }
    int c2_offset = static_cast<int>(r.cells2.size());
    for (const Cell2& c : g.cells2) {
        Cell2 cc = c;
        cc.facet = gf[c.facet];
        for (auto& [e, fwd] : cc.boundary) e = g1[e];
        r.cells2.push_back(cc);
    }
    for (const AnchorPoint& p : g.anchors) {
        AnchorPoint q = p;
        q.cell2 = p.cell2 + c2_offset;
        r.anchors.push_back(q);
    }

    // Re-tag identified cells.
    auto facet_of_boundary_cell = [&](const CellFoam& foam, int c1) {
        for (size_t c = 0; c < foam.cells2.size(); ++c)
            for (const auto& [e, fwd] : foam.cells2[c].boundary)
                if (e == c1) return foam.cells2[c].facet;
        return -1;
    };
    UnionFind uf(static_cast<int>(r.facets.size()));
    auto merge_at = [&](int f_c1, int g_c1_orig) {
        int fa = facet_of_boundary_cell(f, f_c1);
        int fb = gf[facet_of_boundary_cell(g, g_c1_orig)];
        uf.unite(fa, fb);
    };
    for (size_t e = 0; e < gb.web.edges.size(); ++e) {
        int c1 = tb.edge_cell1[e];
        r.cells1[c1].tag = Cell1Tag::FacetInterior;
        merge_at(c1, gb.edge_cell1[e]);
    }
    for (size_t l = 0; l < gb.web.loops.size(); ++l) {
        int c1 = tb.loop_cells[l].first;
        r.cells1[c1].tag = Cell1Tag::FacetInterior;
        merge_at(c1, gb.loop_cells[l].first);
        r.cells0[tb.loop_cells[l].second].tag = Cell0Tag::FacetInterior;
    }
    for (size_t v = 0; v < gb.web.vertices.size(); ++v)
        r.cells0[tb.vertex_cell0[v]].tag = Cell0Tag::SeamSubdivision;

    // Collapse facet classes: keep representatives, multiply decorations.
    std::vector<int> remap(r.facets.size(), -1);
    std::vector<Facet> merged;
    for (size_t fa = 0; fa < r.facets.size(); ++fa) {
        int rep = uf.find(static_cast<int>(fa));
        if (remap[rep] < 0) {
            remap[rep] = static_cast<int>(merged.size());
            merged.push_back(r.facets[rep]);
            merged.back().decoration = SymFn::one(r.facets[rep].thickness);
        }
        remap[fa] = remap[rep];
    }
    for (size_t fa = 0; fa < r.facets.size(); ++fa) {
        Facet& m = merged[remap[fa]];
        if (m.thickness != r.facets[fa].thickness)
            throw BoundaryMismatch("glue: facet thickness mismatch across boundary");
        m.decoration = m.decoration * r.facets[fa].decoration;
    }
    r.facets = std::move(merged);
    for (Cell2& c : r.cells2) c.facet = remap[c.facet];
    for (Cell1& c : r.cells1)
        if (c.seam)
            for (int t = 0; t < 3; ++t) c.seam->cyclic[t] = remap[c.seam->cyclic[t]];

    r.bottom = f.bottom;
    if (g.top) {
        FoamBoundary t = *g.top;
        for (int& e : t.edge_cell1) e = g1[e];
        for (int& v : t.vertex_cell0) v = g0[v];
        for (auto& [e, v] : t.loop_cells) {
            e = g1[e];
            v = g0[v];
        }
        r.top = std::move(t);
    } else {
        r.top.reset();
    }
    r.finalize();
    return r;
}

CellFoam disjoint_union(const CellFoam& f, const CellFoam& g) {
    CellFoam r = f;
    int off0 = static_cast<int>(r.cells0.size());
    int off1 = static_cast<int>(r.cells1.size());
    int off2 = static_cast<int>(r.cells2.size());
    int offf = static_cast<int>(r.facets.size());
    for (const Cell0& c : g.cells0) r.cells0.push_back(c);
    for (Cell1 c : g.cells1) {
        c.v0 += off0;
        c.v1 += off0;
        if (c.seam)
            for (int t = 0; t < 3; ++t) c.seam->cyclic[t] += offf;
        r.cells1.push_back(c);
    }
    for (Cell2 c : g.cells2) {
        c.facet += offf;
        for (auto& [e, fwd] : c.boundary) e += off1;
        r.cells2.push_back(c);
    }
    for (const Facet& fa : g.facets) r.facets.push_back(fa);
    for (AnchorPoint p : g.anchors) {
        p.cell2 += off2;
        r.anchors.push_back(p);
    }
    auto combine = [&](const std::optional<FoamBoundary>& a, const std::optional<FoamBoundary>& b)
        -> std::optional<FoamBoundary> {
        if (!a && !b) return std::nullopt;
        FoamBoundary out;
        if (a) out = *a;
        if (b) {
            FoamBoundary bb = *b;
            int voff = static_cast<int>(out.web.vertices.size());
            int eoff = static_cast<int>(out.web.edges.size());
            for (WebVertex v : bb.web.vertices) {
                for (HalfEdge& h : v.rot) h.edge += eoff;
                out.web.vertices.push_back(v);
            }
            for (WebEdge e : bb.web.edges) {
                e.from += voff;
                e.to += voff;
                out.web.edges.push_back(e);
            }
            for (const WebLoop& l : bb.web.loops) out.web.loops.push_back(l);
            for (int c : bb.edge_cell1) out.edge_cell1.push_back(c + off1);
            for (int c : bb.vertex_cell0) out.vertex_cell0.push_back(c + off0);
            for (auto [e, v] : bb.loop_cells) out.loop_cells.push_back({e + off1, v + off0});
        }
        return out;
    };
    r.bottom = combine(f.bottom, g.bottom);
    r.top = combine(f.top, g.top);
    r.finalize();
    return r;
}

// --- standard foams ---------------------------------------------------------

AnnularWeb circle_web(int thickness, bool essential, bool ccw) {
    AnnularWeb w;
    WebLoop l;
    l.thickness = thickness;
    l.ccw = ccw;
    l.winding = essential ? Winding::Essential : Winding::Contractible;
    w.loops.push_back(l);
    return w;
}

CellFoam sphere_foam(int n, const SphereParams& p) {
    if (p.thickness < 0 || p.thickness > n) throw BadParams("sphere: thickness out of range");
    SymFn dec = p.decoration.arity() == 0 && p.thickness != 0 ? SymFn::one(p.thickness)
                                                              : p.decoration;
    if (dec.arity() != p.thickness) throw BadParams("sphere: decoration arity");
    CellFoam f;
    f.cells0.push_back({Cell0Tag::FacetInterior, "pole"});
    f.cells1.push_back({0, 0, Cell1Tag::FacetInterior, std::nullopt, "equator"});
    f.cells2.push_back({{{0, true}}, 0, "north"});
    f.cells2.push_back({{{0, false}}, 0, "south"});
    f.facets.push_back({p.thickness, 1, dec, "sphere"});
    if (p.labels) {
        f.anchors.push_back({0, p.labels->first, 1});
        f.anchors.push_back({1, p.labels->second, -1});
    }
    f.finalize();
    return f;
}

CellFoam theta_foam(int n, const ThetaParams& p) {
    int a = p.a, b = p.b;
    if (a < 0 || b < 0 || a + b > n) throw BadParams("theta: thicknesses out of range");
    SymFn p1 = p.p1.arity() == a ? p.p1 : SymFn::one(a);
    SymFn p2 = p.p2.arity() == b ? p.p2 : SymFn::one(b);
    SymFn p3 = p.p3.arity() == a + b ? p.p3 : SymFn::one(a + b);
    CellFoam f;
    f.facets.push_back({a, 1, p1, "fa"});
    f.facets.push_back({b, 1, p2, "fb"});
    f.facets.push_back({a + b, 1, p3, "fc"});
    f.cells0.push_back({Cell0Tag::SeamSubdivision, "s"});
    SeamData sd;
    sd.dir_plus = true;
    sd.cyclic = p.lemma_cyclic ? std::array<int, 3>{1, 0, 2} : std::array<int, 3>{0, 1, 2};
    f.cells1.push_back({0, 0, Cell1Tag::Seam, sd, "seam"});
    f.cells2.push_back({{{0, true}}, 0, "da"});
    f.cells2.push_back({{{0, true}}, 1, "db"});
    f.cells2.push_back({{{0, false}}, 2, "dc"});
    if (p.anchored) {
        f.anchors.push_back({0, p.label_a, 1});
        f.anchors.push_back({1, p.label_b, 1});
        f.anchors.push_back({2, p.label_c, -1});
    }
    f.finalize();
    return f;
}

CellFoam cup_foam(int n, const CupParams& p) {
    if (p.thickness < 0 || p.thickness > n) throw BadParams("cup: thickness out of range");
    SymFn dec = p.decoration.arity() == 0 && p.thickness != 0 ? SymFn::one(p.thickness)
                                                              : p.decoration;
    if (dec.arity() != p.thickness) throw BadParams("cup: decoration arity");
    if (p.anchor_label && subset_size(*p.anchor_label) != p.thickness)
        throw BadParams("cup: anchor label arity");
    CellFoam f;
    f.cells0.push_back({Cell0Tag::WebBoundary, "base"});
    f.cells1.push_back({0, 0, Cell1Tag::WebBoundary, std::nullopt, "rim"});
    f.cells2.push_back({{{0, false}}, 0, "disk"});
    f.facets.push_back({p.thickness, 1, dec, "cup"});
    if (p.anchor_label) f.anchors.push_back({0, *p.anchor_label, 1});
    FoamBoundary tb;
    tb.web = circle_web(p.thickness, p.anchor_label.has_value(), p.ccw);
    tb.loop_cells.push_back({0, 0});
    f.top = std::move(tb);
    f.finalize();
    return f;
}

CellFoam cap_foam(int n, const CupParams& p) { return reflect(cup_foam(n, p)); }

CellFoam identity_foam(int n, const AnnularWeb& w) {
    CellFoam f;
    size_t nv = w.vertices.size(), ne = w.edges.size(), nl = w.loops.size();
    // 0-cells: bottom vertices, top vertices, bottom loop bases, top loop bases.
    auto b0 = [&](size_t v) { return static_cast<int>(v); };
    auto t0 = [&](size_t v) { return static_cast<int>(nv + v); };
    auto bl0 = [&](size_t l) { return static_cast<int>(2 * nv + l); };
    auto tl0 = [&](size_t l) { return static_cast<int>(2 * nv + nl + l); };
    for (size_t v = 0; v < nv; ++v)
        f.cells0.push_back({Cell0Tag::WebBoundary, "b:" + w.vertices[v].name});
    for (size_t v = 0; v < nv; ++v)
        f.cells0.push_back({Cell0Tag::WebBoundary, "t:" + w.vertices[v].name});
    for (size_t l = 0; l < nl; ++l) f.cells0.push_back({Cell0Tag::WebBoundary, "bl"});
    for (size_t l = 0; l < nl; ++l) f.cells0.push_back({Cell0Tag::WebBoundary, "tl"});

    // Facets: one per edge, one per loop.
    for (size_t e = 0; e < ne; ++e)
        f.facets.push_back({w.edges[e].thickness, 1, SymFn::one(w.edges[e].thickness),
                            "sheet:" + std::to_string(e)});
    for (size_t l = 0; l < nl; ++l)
        f.facets.push_back({w.loops[l].thickness, 1, SymFn::one(w.loops[l].thickness),
                            "annulus:" + std::to_string(l)});
    auto edge_facet = [&](size_t e) { return static_cast<int>(e); };
    auto loop_facet = [&](size_t l) { return static_cast<int>(ne + l); };

    // 1-cells: bottom edges, top edges, vertical seams per vertex, loop cells.
    auto b1 = [&](size_t e) { return static_cast<int>(e); };
    auto t1 = [&](size_t e) { return static_cast<int>(ne + e); };
    auto v1 = [&](size_t v) { return static_cast<int>(2 * ne + v); };
    auto bl1 = [&](size_t l) { return static_cast<int>(2 * ne + nv + l); };
    auto tl1 = [&](size_t l) { return static_cast<int>(2 * ne + nv + nl + l); };
    auto vl1 = [&](size_t l) { return static_cast<int>(2 * ne + nv + 2 * nl + l); };
    for (size_t e = 0; e < ne; ++e)
        f.cells1.push_back({b0(w.edges[e].from), b0(w.edges[e].to), Cell1Tag::WebBoundary,
                            std::nullopt, "b:" + std::to_string(e)});
    for (size_t e = 0; e < ne; ++e)
        f.cells1.push_back({t0(w.edges[e].from), t0(w.edges[e].to), Cell1Tag::WebBoundary,
                            std::nullopt, "t:" + std::to_string(e)});
    for (size_t v = 0; v < nv; ++v) {
        // Merge vertices (two in, one out) get an upward seam; splits a downward one.
        int ins = 0;
        for (const HalfEdge& h : w.vertices[v].rot)
            if (h.end == 1) ++ins;
        bool merge = ins == 2;
        SeamData sd;
        sd.dir_plus = merge;  // v0 = bottom, v1 = top; up for merges
        // Cyclic order of the three sheets from the vertex rotation; thick last.
        std::array<int, 3> cyc{};
        {
            std::vector<int> fs;
            for (const HalfEdge& h : w.vertices[v].rot) fs.push_back(edge_facet(h.edge));
            if (!merge) std::reverse(fs.begin(), fs.end());
            int thick_pos = 0;
            for (int t = 0; t < 3; ++t) {
                int e0 = fs[t], e1 = fs[(t + 1) % 3], e2 = fs[(t + 2) % 3];
                if (f.facets[e0].thickness == f.facets[e1].thickness + f.facets[e2].thickness)
                    thick_pos = t;
            }
            cyc = {fs[(thick_pos + 1) % 3], fs[(thick_pos + 2) % 3], fs[thick_pos]};
        }
        sd.cyclic = cyc;
        f.cells1.push_back({b0(v), t0(v), Cell1Tag::Seam, sd, "v:" + std::to_string(v)});
    }
    for (size_t l = 0; l < nl; ++l)
        f.cells1.push_back({bl0(l), bl0(l), Cell1Tag::WebBoundary, std::nullopt, "bl"});
    for (size_t l = 0; l < nl; ++l)
        f.cells1.push_back({tl0(l), tl0(l), Cell1Tag::WebBoundary, std::nullopt, "tl"});
    for (size_t l = 0; l < nl; ++l)
        f.cells1.push_back({bl0(l), tl0(l), Cell1Tag::FacetInterior, std::nullopt, "vl"});

    // 2-cells: a rectangle per edge and per loop.
    for (size_t e = 0; e < ne; ++e) {
        Cell2 c;
        c.facet = edge_facet(e);
        c.boundary = {{b1(e), true},
                      {v1(w.edges[e].to), true},
                      {t1(e), false},
                      {v1(w.edges[e].from), false}};
        c.name = "R:" + std::to_string(e);
        f.cells2.push_back(c);
    }
    for (size_t l = 0; l < nl; ++l) {
        Cell2 c;
        c.facet = loop_facet(l);
        c.boundary = {{bl1(l), true}, {vl1(l), true}, {tl1(l), false}, {vl1(l), false}};
        c.name = "RL:" + std::to_string(l);
        f.cells2.push_back(c);
    }

    FoamBoundary bb, tb;
    bb.web = w;
    tb.web = w;
    for (size_t e = 0; e < ne; ++e) {
        bb.edge_cell1.push_back(b1(e));
        tb.edge_cell1.push_back(t1(e));
    }
    for (size_t v = 0; v < nv; ++v) {
        bb.vertex_cell0.push_back(b0(v));
        tb.vertex_cell0.push_back(t0(v));
    }
    for (size_t l = 0; l < nl; ++l) {
        bb.loop_cells.push_back({bl1(l), bl0(l)});
        tb.loop_cells.push_back({tl1(l), tl0(l)});
    }
    f.bottom = std::move(bb);
    f.top = std::move(tb);
    f.finalize();
    return f;
}

CellFoam neck_cut_piece(int n, int thickness, Subset label) {
    CupParams cp;
    cp.thickness = thickness;
    cp.anchor_label = label;
    return disjoint_union(cap_foam(n, cp), cup_foam(n, cp));
}

}  // namespace anchorfoam
