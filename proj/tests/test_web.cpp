#include <doctest.h>

#include <random>

#include "web.hpp"

using namespace anchorfoam;

namespace {

AnnularWeb theta_web() {
    AnnularWeb w;
    w.vertices.resize(2);
    w.edges.push_back({1, 0, 1, "d1"});
    w.edges.push_back({1, 0, 1, "d2"});
    w.edges.push_back({0, 1, 2, "E"});
    w.vertices[0].rot = {{0, 1}, {1, 1}, {2, 0}};
    w.vertices[1].rot = {{2, 1}, {1, 0}, {0, 0}};
    // Contractible placement: mark the face left of traversing d1 backwards as
    // both outer and puncture side (the web misses the annulus core).
    w.puncture = FaceMarker{0, false};
    w.outer = FaceMarker{0, false};
    return w;
}

// Annular closure of two bridge resolutions: four vertices on the annulus,
// two thickness-2 rungs, inner/outer parallel strands, both strands flowing
// counterclockwise. Rotation lists are in true plane-ccw order (the chart
// (angle, -radius) is orientation-preserving, so the puncture side sits on
// the LEFT of ccw flow). The puncture face is the inner square when
// `annular`, otherwise the web sits beside the core.
AnnularWeb necklace_web(bool annular) {
    AnnularWeb w;
    w.vertices.resize(4);  // m1, s1, m2, s2
    w.edges.push_back({0, 1, 2, "r1"});     // 0: m1 -> s1
    w.edges.push_back({1, 2, 1, "mid_i"});  // 1: s1 -> m2 inner
    w.edges.push_back({1, 2, 1, "mid_o"});  // 2: s1 -> m2 outer
    w.edges.push_back({2, 3, 2, "r2"});     // 3: m2 -> s2
    w.edges.push_back({3, 0, 1, "clo_i"});  // 4: s2 -> m1 inner
    w.edges.push_back({3, 0, 1, "clo_o"});  // 5: s2 -> m1 outer
    w.vertices[0].rot = {{0, 0}, {4, 1}, {5, 1}};  // m1
    w.vertices[1].rot = {{1, 0}, {0, 1}, {2, 0}};  // s1
    w.vertices[2].rot = {{3, 0}, {1, 1}, {2, 1}};  // m2
    w.vertices[3].rot = {{4, 0}, {3, 1}, {5, 0}};  // s2
    if (annular) {
        w.puncture = FaceMarker{1, true};   // left of mid_i along the flow
        w.outer = FaceMarker{2, false};     // left of mid_o against the flow
    } else {
        w.puncture = FaceMarker{2, false};
        w.outer = FaceMarker{2, false};
    }
    return w;
}

LaurentGraded qb(int n, int nn, int k) { return quantum_binomial(n, nn, k); }

LaurentGraded essential_sum(int n, int a, bool ccw) {
    LaurentGraded s(n);
    for (Subset sub : subsets_of_size(n, a))
        s += LaurentGraded::a_monomial(n, sub, ccw ? 1 : -1);
    return s;
}

// Independent q=1 oracle: count subset flows on the graph part directly.
long flow_count(const AnnularWeb& w, int n) {
    long count = 0;
    size_t ne = w.edges.size();
    std::vector<std::vector<Subset>> cands(ne);
    for (size_t e = 0; e < ne; ++e) cands[e] = subsets_of_size(n, w.edges[e].thickness);
    std::vector<size_t> idx(ne, 0);
    while (true) {
        bool ok = true;
        for (const WebVertex& v : w.vertices) {
            Subset in = 0, out = 0;
            bool disjoint = true;
            for (const HalfEdge& h : v.rot) {
                Subset s = cands[h.edge][idx[h.edge]];
                if (h.end == 1) {
                    if (in & s) disjoint = false;
                    in |= s;
                } else {
                    if (out & s) disjoint = false;
                    out |= s;
                }
            }
            if (!disjoint || in != out) ok = false;
        }
        if (ok) ++count;
        size_t k = 0;
        while (k < ne && ++idx[k] == cands[k].size()) idx[k++] = 0;
        if (k == ne || ne == 0) break;
    }
    long loops = 1;
    for (const WebLoop& l : w.loops)
        loops *= static_cast<long>(subsets_of_size(n, l.thickness).size());
    return count * loops * (ne == 0 ? 1 : 1);
}

}  // namespace

TEST_CASE("web validation") {
    AnnularWeb w = theta_web();
    CHECK(validate_web(w, 2).empty());
    // Flow violation: thicknesses 1,1,3.
    w.edges[2].thickness = 3;
    bool found = false;
    for (const auto& d : validate_web(w, 3))
        if (d.code == "FlowViolation") found = true;
    CHECK(found);
}

TEST_CASE("face traversal") {
    CHECK(faces(theta_web()).size() == 3);
    CHECK(faces(necklace_web(true)).size() == 4);
    // Bead loop: one vertex, one self-edge, two faces.
    AnnularWeb bead;
    bead.vertices.resize(1);
    bead.edges.push_back({0, 0, 1, "e"});
    bead.vertices[0].rot = {{0, 0}, {0, 1}};
    CHECK(faces(bead).size() == 2);
}

TEST_CASE("zero edge removal") {
    // A 0-edge bridging two circles: removing it leaves two bead loops.
    AnnularWeb w;
    w.vertices.resize(2);
    w.edges.push_back({0, 0, 1, "c1"});
    w.edges.push_back({1, 1, 1, "c2"});
    w.edges.push_back({0, 1, 0, "bridge"});
    w.vertices[0].rot = {{0, 0}, {2, 0}, {0, 1}};
    w.vertices[1].rot = {{1, 0}, {2, 1}, {1, 1}};
    AnnularWeb r = zero_edge_removal(w);
    CHECK(r.edges.size() == 2);
    CHECK(r.vertices.size() == 2);
    for (const WebVertex& v : r.vertices) CHECK(v.rot.size() == 2);

    // No zero edges: unchanged.
    AnnularWeb th = theta_web();
    AnnularWeb same = zero_edge_removal(th);
    CHECK(same.edges.size() == 3);
    CHECK(same.vertices.size() == 2);

    // A 0-thickness loop disappears.
    AnnularWeb lw;
    lw.loops.push_back({0, true, Winding::Contractible});
    CHECK(zero_edge_removal(lw).loops.empty());
}

TEST_CASE("loop evaluations") {
    // Contractible a-loop: [N a]_q.
    for (int n = 1; n <= 4; ++n)
        for (int a = 0; a <= n; ++a) {
            AnnularWeb w;
            w.loops.push_back({a, true, Winding::Contractible});
            CHECK(evaluate_web(w, n) == qb(n, n, a));
        }
    // Essential loops: sum of a-monomials, inverted when clockwise.
    for (int n = 1; n <= 4; ++n)
        for (int a = 1; a <= n; ++a) {
            AnnularWeb w;
            w.loops.push_back({a, true, Winding::Essential});
            CHECK(evaluate_web(w, n) == essential_sum(n, a, true));
            AnnularWeb cw;
            cw.loops.push_back({a, false, Winding::Essential});
            CHECK(evaluate_web(cw, n) == essential_sum(n, a, false));
        }
    // Two nested essential ccw 1-loops: (a1 + ... + aN)^2.
    AnnularWeb nested;
    nested.loops.push_back({1, true, Winding::Essential});
    nested.loops.push_back({1, true, Winding::Essential});
    LaurentGraded e1 = essential_sum(2, 1, true);
    CHECK(evaluate_web(nested, 2) == e1 * e1);
}

TEST_CASE("find_reducible") {
    CHECK(find_reducible(theta_web(), 2).kind == ReducibleKind::Bigon);
    AnnularWeb bead;
    bead.vertices.resize(1);
    bead.edges.push_back({0, 0, 1, "e"});
    bead.vertices[0].rot = {{0, 0}, {0, 1}};
    CHECK(find_reducible(bead, 2).kind == ReducibleKind::Loop);
    AnnularWeb empty;
    CHECK(find_reducible(empty, 2).kind == ReducibleKind::None);
}

TEST_CASE("theta web evaluates via bigon then loop") {
    // [2]_q * [N 2]_q; for N = 2 this is q + 1/q.
    for (int n = 2; n <= 4; ++n) {
        LaurentGraded got = evaluate_web(theta_web(), n);
        CHECK(got == qb(n, 2, 1) * qb(n, n, 2));
        CHECK(got.eval_all_one() == flow_count(theta_web(), n));
    }
    LaurentGraded n2 = evaluate_web(theta_web(), 2);
    CHECK(n2.to_string() == "q + q^-1");
}

TEST_CASE("annular theta evaluates to an essential 2-loop multiple") {
    // Theta wrapped around the puncture: puncture face between the 1-edges is
    // forbidden, so reduction goes through the return digon.
    AnnularWeb w = theta_web();
    // Faces: lens(d1,d2), lens(E,d1 or d2), outer. Mark the (d1,d2) lens as the
    // puncture face: left of d1 traversed forward faces d2's lens side or the
    // digon; pick by checking the orbit structure.
    std::vector<Face> fs = faces(w);
    int digon = -1;
    for (size_t i = 0; i < fs.size(); ++i) {
        if (fs[i].darts.size() != 2) continue;
        int e0 = fs[i].darts[0].edge, e1 = fs[i].darts[1].edge;
        if ((e0 == 0 && e1 == 1) || (e0 == 1 && e1 == 0)) digon = static_cast<int>(i);
    }
    REQUIRE(digon >= 0);
    w.puncture = FaceMarker{fs[digon].darts[0].edge, fs[digon].darts[0].fwd};
    // Outer face: the one containing E and exactly one thin edge, not the digon.
    for (size_t i = 0; i < fs.size(); ++i) {
        if (static_cast<int>(i) == digon || fs[i].darts.size() != 2) continue;
        w.outer = FaceMarker{fs[i].darts[0].edge, fs[i].darts[0].fwd};
        break;
    }
    LaurentGraded got = evaluate_web(w, 3);
    // One (1;2,1) return digon is the only legal move: [N-1] times an
    // essential 1-loop.
    LaurentGraded expect = qb(3, 2, 1) * essential_sum(3, 1, true);
    LaurentGraded expect_cw = qb(3, 2, 1) * essential_sum(3, 1, false);
    bool matches = (got == expect) || (got == expect_cw);
    CHECK(matches);
    CHECK(got.eval_all_one() == flow_count(theta_web(), 3));
}

TEST_CASE("necklace web, contractible placement") {
    // All reductions stay contractible: [2]^2 [N 2]_q.
    for (int n = 2; n <= 3; ++n) {
        AnnularWeb w = necklace_web(false);
        CHECK(validate_web(w, n).empty());
        LaurentGraded got = evaluate_web(w, n);
        CHECK(got == qb(n, 2, 1) * qb(n, 2, 1) * qb(n, n, 2));
        CHECK(got.eval_all_one() == flow_count(w, n));
    }
}

TEST_CASE("necklace web, annular placement") {
    // The inner face holds the puncture and the strands run counterclockwise:
    // [2]^2 times the sum of positive 2-subset monomials.
    for (int n = 2; n <= 3; ++n) {
        AnnularWeb w = necklace_web(true);
        LaurentGraded got = evaluate_web(w, n);
        CHECK(got == qb(n, 2, 1) * qb(n, 2, 1) * essential_sum(n, 2, true));
    }
}

TEST_CASE("confluence under randomized reduction orders") {
    std::mt19937_64 rng(424242);
    std::vector<AnnularWeb> corpus;
    corpus.push_back(theta_web());
    corpus.push_back(necklace_web(false));
    corpus.push_back(necklace_web(true));
    for (const AnnularWeb& w : corpus) {
        for (int n = 2; n <= 3; ++n) {
            LaurentGraded reference = evaluate_web(w, n);
            for (int trial = 0; trial < 10; ++trial) {
                LaurentGraded got = evaluate_web_randomized(w, n, rng);
                CHECK(got == reference);
            }
        }
    }
}

TEST_CASE("reduce_step multipliers") {
    // Contractible bead loop: single summand [N a]_q.
    AnnularWeb bead;
    bead.vertices.resize(1);
    bead.edges.push_back({0, 0, 1, "e"});
    bead.vertices[0].rot = {{0, 0}, {0, 1}};
    Reducible r = find_reducible(bead, 2);
    REQUIRE(r.kind == ReducibleKind::Loop);
    auto out = reduce_step(bead, 2, r);
    REQUIRE(out.size() == 1);
    CHECK(out[0].web.edges.empty());
    CHECK(out[0].multiplier == qb(2, 2, 1));

    // Theta web: the (1,1) digon contributes [2]_q.
    AnnularWeb th = theta_web();
    Reducible rb = find_reducible(th, 3);
    REQUIRE(rb.kind == ReducibleKind::Bigon);
    auto outs = reduce_step(th, 3, rb);
    REQUIRE(outs.size() == 1);
    bool is_digon_c = outs[0].multiplier == qb(3, 2, 1);
    bool is_digon_d = outs[0].multiplier == qb(3, 2, 1);  // [N-1] = [2] at N = 3
    CHECK((is_digon_c || is_digon_d));

    // Square face of the plane necklace: two summands with multipliers 1 and
    // [N-2]. The outer square carries the face markers, so rewrite the inner one.
    AnnularWeb neck = necklace_web(false);
    std::vector<Face> fs = faces(neck);
    int marked = -1, square_face = -1;
    for (size_t i = 0; i < fs.size(); ++i)
        for (const Dart& d : fs[i].darts)
            if (d.edge == neck.puncture->edge && d.fwd == neck.puncture->fwd)
                marked = static_cast<int>(i);
    for (size_t i = 0; i < fs.size(); ++i)
        if (fs[i].darts.size() == 4 && static_cast<int>(i) != marked)
            square_face = static_cast<int>(i);
    REQUIRE(square_face >= 0);
    Reducible rs;
    rs.kind = ReducibleKind::Square;
    rs.face = square_face;
    auto sq = reduce_step(neck, 3, rs);
    REQUIRE(sq.size() == 2);
    LaurentGraded m0 = sq[0].multiplier, m1 = sq[1].multiplier;
    bool match = (m0 == LaurentGraded::constant(3, 1) && m1 == qb(3, 1, 1)) ||
                 (m1 == LaurentGraded::constant(3, 1) && m0 == qb(3, 1, 1));
    CHECK(match);
    // Both summands evaluate; their weighted sum equals the direct value.
    LaurentGraded total(3);
    for (const ReduceSummand& s : sq) total += s.multiplier * evaluate_web(s.web, 3);
    CHECK(total == evaluate_web(neck, 3));
}

TEST_CASE("disjoint unions multiply") {
    AnnularWeb w = theta_web();
    w.loops.push_back({1, true, Winding::Essential});
    LaurentGraded lhs = evaluate_web(w, 2);
    CHECK(lhs == evaluate_web(theta_web(), 2) * essential_sum(2, 1, true));
}

TEST_CASE("contractible evaluations are a-free and symmetric") {
    for (int n = 2; n <= 3; ++n) {
        LaurentGraded v = evaluate_web(necklace_web(false), n);
        CHECK(v.a_free());
        CHECK(v.q_symmetric());
        CHECK(v.nonnegative());
    }
}
