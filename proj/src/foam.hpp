// Combinatorial anchored gl_N foams: tagged cell complexes with facets, seams,
// decorations, anchor points and optional boundary webs; validation, coloring
// enumeration, reflection and gluing.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "poly.hpp"
#include "web.hpp"

namespace anchorfoam {

enum class Cell0Tag { SingularVertex, SeamSubdivision, FacetInterior, WebBoundary };
enum class Cell1Tag { Seam, FacetInterior, WebBoundary };

struct SeamData {
    bool dir_plus = true;              // binding oriented v0 -> v1 when true
    std::array<int, 3> cyclic{};       // (f_thin1, f_thin2, f_thick), left-hand-rule order
};

struct Cell0 {
    Cell0Tag tag = Cell0Tag::FacetInterior;
    std::string name;
};

struct Cell1 {
    int v0 = -1, v1 = -1;
    Cell1Tag tag = Cell1Tag::FacetInterior;
    std::optional<SeamData> seam;
    std::string name;
};

struct Cell2 {
    // Boundary word: closed walk of directed 1-cells (id, forward?).
    std::vector<std::pair<int, bool>> boundary;
    int facet = -1;
    std::string name;
};

struct Facet {
    int thickness = 0;
    int orient = 1;  // +1: 2-cell words positively oriented as stored
    SymFn decoration;
    std::string name;
};

struct AnchorPoint {
    int cell2 = -1;
    Subset label = 0;
    int sign = 1;
};

// Bottom/top webs with correspondences from web cells into foam cells.
struct FoamBoundary {
    AnnularWeb web;
    std::vector<int> edge_cell1;    // web edge index -> foam 1-cell
    std::vector<int> vertex_cell0;  // web vertex index -> foam 0-cell
    // Vertex-free web loops correspond to a (1-cell, base 0-cell) pair.
    std::vector<std::pair<int, int>> loop_cells;
};

struct Diagnostic {
    std::string code;
    std::string detail;
    bool warning = false;
};

using Coloring = std::vector<Subset>;  // facet id -> subset of [N]

struct Binding {
    std::vector<int> cells;  // seam 1-cell ids of this maximal seam component
    bool is_circle = false;
    // Canonical form: the triple and the thicknesses as seen after normalizing
    // every member cell to a common traversal direction.
    std::array<int, 3> cyclic{};
};

class CellFoam {
public:
    std::vector<Cell0> cells0;
    std::vector<Cell1> cells1;
    std::vector<Cell2> cells2;
    std::vector<Facet> facets;
    std::vector<AnchorPoint> anchors;
    std::optional<FoamBoundary> bottom;
    std::optional<FoamBoundary> top;

    bool closed() const { return !bottom && !top; }

    // Derived incidence; rebuilt by finalize().
    const std::vector<std::vector<std::pair<int, bool>>>& occurrences() const {
        return occ_;  // 1-cell -> list of (2-cell, forward?)
    }
    const std::vector<int>& owner_facet1() const { return owner1_; }   // facet of interior 1-cells
    const std::vector<int>& owner_facet0() const { return owner0_; }   // facet of interior 0-cells
    const std::vector<Binding>& bindings() const { return bindings_; }
    const std::vector<std::vector<int>>& facet_cells2() const { return facet_cells2_; }

    void finalize();  // recompute incidence + bindings; call after structural edits

    std::vector<Diagnostic> validate(int n) const;
    bool valid(int n) const;

    // Open-facet Euler characteristic: 2-cells plus interior 1-/0-cells of the facet.
    int facet_euler(int f) const;

    std::string describe_cell0(int id) const;
    std::string describe_cell1(int id) const;

private:
    std::vector<std::vector<std::pair<int, bool>>> occ_;
    std::vector<int> owner1_, owner0_;
    std::vector<Binding> bindings_;
    std::vector<std::vector<int>> facet_cells2_;
};

// All admissible colorings (seam-compatible, anchor labels forced), in canonical
// lexicographic order of the per-facet bitmask vectors.
std::vector<Coloring> enumerate_colorings(const CellFoam& f, int n);

struct MonochromeSelector {
    int i;
};
struct BicolorSelector {
    int i, j;
};

class InvalidLocalSurface : public std::runtime_error {
public:
    explicit InvalidLocalSurface(const std::string& w) : std::runtime_error(w) {}
};

// Euler characteristic of F_i(c) or F_ij(c) by signed cell count.
int subsurface_euler(const CellFoam& f, const Coloring& c, MonochromeSelector sel);
int subsurface_euler(const CellFoam& f, const Coloring& c, BicolorSelector sel);

// Number of positive (i,j) bindings, i < j.
int theta_plus(const CellFoam& f, const Coloring& c, int i, int j);

CellFoam reflect(const CellFoam& f);

class BoundaryMismatch : public std::runtime_error {
public:
    explicit BoundaryMismatch(const std::string& w) : std::runtime_error(w) {}
};

// Compose along the common web: F with boundary (G0,G1), g with boundary (G1,G2).
CellFoam glue(const CellFoam& f, const CellFoam& g);

// Disjoint union, stacking boundaries side by side (both operands must be
// closed or have no shared boundary handling; used for closed foams).
CellFoam disjoint_union(const CellFoam& f, const CellFoam& g);

// --- Standard foam library -------------------------------------------------

// Thickness-a web circle, one edge subdivided by one vertex-free base point.
AnnularWeb circle_web(int thickness, bool essential, bool ccw = true);

struct SphereParams {
    int thickness = 1;
    SymFn decoration;                       // arity = thickness
    std::optional<std::pair<Subset, Subset>> labels;  // anchored if set (top, bottom)
};
CellFoam sphere_foam(int n, const SphereParams& p);

struct ThetaParams {
    int a = 1, b = 1;
    SymFn p1, p2, p3;   // arities a, b, a+b
    bool anchored = false;
    Subset label_a = 0, label_b = 0, label_c = 0;  // used when anchored
    // Left-hand-rule cyclic order of the seam: (f_b, f_a, f_thick) matches the
    // anchored theta evaluation formula; pass false to store (f_a, f_b, f_thick).
    bool lemma_cyclic = true;
};
CellFoam theta_foam(int n, const ThetaParams& p);

// Cup: foam from the empty web to a circle web; cap: reflection (circle to empty).
struct CupParams {
    int thickness = 1;
    SymFn decoration;
    std::optional<Subset> anchor_label;  // essential circle when set
    bool ccw = true;                     // boundary circle orientation
};
CellFoam cup_foam(int n, const CupParams& p);
CellFoam cap_foam(int n, const CupParams& p);

// Identity cobordism over a web (graph webs and vertex-free loops supported).
CellFoam identity_foam(int n, const AnnularWeb& w);

// Cap then cup on the essential a-circle, both anchor points labeled A: the
// summand foams of the neck-cutting relation.
CellFoam neck_cut_piece(int n, int thickness, Subset label);

class BadParams : public std::runtime_error {
public:
    explicit BadParams(const std::string& w) : std::runtime_error(w) {}
};

}  // namespace anchorfoam
