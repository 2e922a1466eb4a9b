// Annular MOY webs with a combinatorial planar embedding (rotation systems),
// and the decategorified evaluator producing graded ranks in Z[q^±1, a_i^±1].
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "poly.hpp"

namespace anchorfoam {

// A half-edge is (edge id, end); end 0 = tail (at `from`), end 1 = head (at `to`).
struct HalfEdge {
    int edge = -1;
    int end = 0;
    bool operator==(const HalfEdge&) const = default;
};

struct WebVertex {
    std::vector<HalfEdge> rot;  // counterclockwise cyclic order
    std::string name;
};

struct WebEdge {
    int from = -1, to = -1;  // flow direction: from -> to
    int thickness = 1;
    std::string name;
};

enum class Winding { Contractible, Essential };

struct WebLoop {
    int thickness = 1;
    bool ccw = true;
    Winding winding = Winding::Contractible;
};

// Directed edge side: traversing `edge` forward (from->to) when fwd, with the
// face of interest on the LEFT.
struct FaceMarker {
    int edge = -1;
    bool fwd = true;
};

struct AnnularWeb {
    std::vector<WebVertex> vertices;
    std::vector<WebEdge> edges;
    std::vector<WebLoop> loops;
    std::optional<FaceMarker> puncture;
    std::optional<FaceMarker> outer;

    bool pure_loops() const { return edges.empty(); }
    bool same_shape(const AnnularWeb& o) const;  // combinatorial equality for gluing
};

struct WebDiagnostic {
    std::string code;
    std::string detail;
};

std::vector<WebDiagnostic> validate_web(const AnnularWeb& w, int n);

// A dart traverses `edge` in the given direction; faces are traced with the
// face on the left of the dart.
struct Dart {
    int edge = -1;
    bool fwd = true;
    bool operator==(const Dart&) const = default;
};

struct Face {
    std::vector<Dart> darts;
};

// Faces of the graph part via rotation-system traversal (loops list excluded).
std::vector<Face> faces(const AnnularWeb& w);

// Deletes thickness-0 edges and loops, smoothing the resulting 2-valent vertices.
AnnularWeb zero_edge_removal(const AnnularWeb& w);

class UnsupportedThickness : public std::runtime_error {
public:
    explicit UnsupportedThickness(const std::string& w) : std::runtime_error(w) {}
};
class NonTerminating : public std::runtime_error {
public:
    explicit NonTerminating(const std::string& w) : std::runtime_error(w) {}
};

enum class ReducibleKind { None, Loop, Bigon, Square };

struct Reducible {
    ReducibleKind kind = ReducibleKind::None;
    int face = -1;        // face index for bigon/square
    int loop_vertex = -1; // bead vertex for loop removal
};

// One rewrite on the supported fragment: the web with a reducible configuration
// replaced, together with the graded multiplier of each summand.
struct ReduceSummand {
    AnnularWeb web;
    LaurentGraded multiplier;
};

Reducible find_reducible(const AnnularWeb& w, int n);
std::vector<ReduceSummand> reduce_step(const AnnularWeb& w, int n, const Reducible& r);

// Full evaluation by iterated rewriting. `shuffle` (optional) permutes the
// candidate order for confluence testing.
LaurentGraded evaluate_web(const AnnularWeb& w, int n);
LaurentGraded evaluate_web_randomized(const AnnularWeb& w, int n, std::mt19937_64& rng);

}  // namespace anchorfoam
