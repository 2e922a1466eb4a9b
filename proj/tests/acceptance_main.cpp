// Acceptance suite: one line per criterion, exact checks throughout.
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "complex.hpp"
#include "eval.hpp"
#include "foam.hpp"
#include "oracles.hpp"
#include "statespace.hpp"
#include "web.hpp"

using namespace anchorfoam;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool passed, const std::string& detail) {
    std::cout << (passed ? "PASS" : "FAIL") << " criterion " << criterion << ": " << name
              << " (" << detail << ")" << std::endl;
    if (!passed) ++g_failures;
}

MultiPoly theta_formula(int n, Subset a, Subset b, Subset c, const SymFn& p1, const SymFn& p2,
                        const SymFn& p3) {
    if ((a & b) || (a | b) != c) return MultiPoly(n);
    int strict_ba = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (subset_contains(b, i) && subset_contains(a, j)) ++strict_ba;
    MultiPoly v = p1.substitute(n, a) * p2.substitute(n, b) * p3.substitute(n, c);
    if ((subset_index_sum(c) + strict_ba) % 2) v = -v;
    return v;
}

MultiPoly sphere_formula(int n, Subset a, Subset b, const SymFn& p) {
    if (a != b) return MultiPoly(n);
    MultiPoly v = p.substitute(n, a);
    if (subset_index_sum(a) % 2) v = -v;
    return v;
}

// --- criterion 1 -------------------------------------------------------------

void criterion1() {
    long cases = 0, bad = 0;
    for (int n = 1; n <= 4; ++n) {
        for (int sa = 0; sa <= n; ++sa)
            for (int sb = 0; sa + sb <= n; ++sb)
                for (Subset a : subsets_of_size(n, sa))
                    for (Subset b : subsets_of_size(n, sb))
                        for (Subset c : subsets_of_size(n, sa + sb)) {
                            ThetaParams tp;
                            tp.a = sa;
                            tp.b = sb;
                            tp.anchored = true;
                            tp.label_a = a;
                            tp.label_b = b;
                            tp.label_c = c;
                            tp.p1 = sa >= 1 ? SymFn::elementary(sa, 1) : SymFn::one(sa);
                            tp.p2 = SymFn::one(sb);
                            tp.p3 = SymFn::one(sa + sb);
                            CellFoam f = theta_foam(n, tp);
                            MultiPoly expect = theta_formula(n, a, b, c, tp.p1, tp.p2, tp.p3);
                            MultiPoly main_path = evaluate(f, n);
                            MultiPoly oracle_path = oracle::evaluate_bruteforce(f, n);
                            ++cases;
                            if (!(main_path == expect) || !(oracle_path == expect)) ++bad;
                        }
    }
    report(1, "theta sweep vs closed formula and per-coloring oracle", bad == 0,
           std::to_string(cases) + " cases, " + std::to_string(bad) + " mismatches");
}

// --- criterion 2 -------------------------------------------------------------

void criterion2() {
    long cases = 0, bad = 0;
    for (int n = 1; n <= 4; ++n)
        for (int sa = 0; sa <= n; ++sa) {
            std::vector<SymFn> decs;
            decs.push_back(SymFn::one(sa));
            if (sa >= 1) {
                decs.push_back(SymFn::elementary(sa, 1));
                decs.push_back(SymFn::elementary(sa, 1) * SymFn::elementary(sa, 1));
            }
            if (sa >= 2) decs.push_back(SymFn::elementary(sa, 2));
            for (Subset a : subsets_of_size(n, sa))
                for (Subset b : subsets_of_size(n, sa))
                    for (const SymFn& p : decs) {
                        SphereParams sp;
                        sp.thickness = sa;
                        sp.decoration = p;
                        sp.labels = {{a, b}};
                        MultiPoly got = evaluate(sphere_foam(n, sp), n);
                        ++cases;
                        if (!(got == sphere_formula(n, a, b, p))) ++bad;
                    }
        }
    report(2, "anchored sphere sweep vs closed formula", bad == 0,
           std::to_string(cases) + " cases, " + std::to_string(bad) + " mismatches");
}

// --- random closed-foam corpus for criteria 3-5 ------------------------------

std::vector<SymFn> decoration_pool(int arity, std::mt19937_64& rng) {
    std::vector<SymFn> pool;
    pool.push_back(SymFn::one(arity));
    if (arity >= 1) pool.push_back(SymFn::elementary(arity, 1));
    if (arity >= 2) pool.push_back(SymFn::elementary(arity, 2));
    (void)rng;
    return pool;
}

CellFoam random_tube(int n, std::mt19937_64& rng) {
    int a = 1 + static_cast<int>(rng() % n);
    bool essential = rng() % 2 == 0;
    auto pool = decoration_pool(a, rng);
    CupParams cup;
    cup.thickness = a;
    cup.decoration = pool[rng() % pool.size()];
    CupParams cap = cup;
    cap.decoration = pool[rng() % pool.size()];
    if (essential) {
        auto labels = subsets_of_size(n, a);
        Subset la = labels[rng() % labels.size()];
        Subset lz = la;
        if (2 * a == n && rng() % 4 == 0) lz = static_cast<Subset>(full_subset(n) & ~la);
        cup.anchor_label = la;
        cap.anchor_label = lz;
    }
    CellFoam f = cup_foam(n, cup);
    int middles = static_cast<int>(rng() % 3);
    for (int k = 0; k < middles; ++k) {
        if (essential && rng() % 2 == 0) {
            auto labels = subsets_of_size(n, a);
            f = glue(f, neck_cut_piece(n, a, labels[rng() % labels.size()]));
        } else {
            f = glue(f, identity_foam(n, circle_web(a, essential)));
        }
    }
    return glue(f, cap_foam(n, cap));
}

CellFoam random_theta(int n, std::mt19937_64& rng) {
    int a = 1 + static_cast<int>(rng() % n);
    int b_max = n - a;
    int b = b_max > 0 ? static_cast<int>(rng() % (b_max + 1)) : 0;
    ThetaParams tp;
    tp.a = a;
    tp.b = b;
    auto pa = decoration_pool(a, rng);
    auto pb = decoration_pool(b, rng);
    auto pc = decoration_pool(a + b, rng);
    tp.p1 = pa[rng() % pa.size()];
    tp.p2 = pb[rng() % pb.size()];
    tp.p3 = pc[rng() % pc.size()];
    if (rng() % 2 == 0) {
        tp.anchored = true;
        auto las = subsets_of_size(n, a);
        Subset la = las[rng() % las.size()];
        std::vector<Subset> lbs;
        for (Subset s : subsets_of_size(n, b))
            if ((s & la) == 0) lbs.push_back(s);
        Subset lb = lbs[rng() % lbs.size()];
        tp.label_a = la;
        tp.label_b = lb;
        tp.label_c = la | lb;
    }
    return theta_foam(n, tp);
}

CellFoam random_closed_foam(int n, std::mt19937_64& rng) {
    CellFoam f = rng() % 3 == 0 ? random_theta(n, rng) : random_tube(n, rng);
    if (rng() % 3 == 0) {
        CellFoam g = rng() % 3 == 0 ? random_theta(n, rng) : random_tube(n, rng);
        f = disjoint_union(f, g);
    }
    return f;
}

void criteria34(std::vector<CellFoam>& corpus_out) {
    std::mt19937_64 rng(0xf0a3);
    int total = 220;
    int not_polynomial = 0, odd_parity = 0, invalid = 0;
    int inhomogeneous = 0, adeg_warnings = 0;
    for (int t = 0; t < total; ++t) {
        int n = 2 + static_cast<int>(rng() % 3);  // N in 2..4
        CellFoam f = random_closed_foam(n, rng);
        bool clean = true;
        for (const Diagnostic& d : f.validate(n)) {
            if (d.warning) {
                if (d.code == "NonzeroAnnularDegree") ++adeg_warnings;
                continue;
            }
            clean = false;
        }
        if (!clean) {
            ++invalid;
            continue;
        }
        corpus_out.push_back(f);
        try {
            for (int i = 1; i <= n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    if (anchor_count(f, i, j) % 2) ++odd_parity;
            MultiPoly v = evaluate(f, n);
            if (!v.is_zero()) {
                auto h = v.homogeneous_qdeg();
                if (!h.homogeneous || h.qdeg != qdeg_foam(f, n)) ++inhomogeneous;
            }
        } catch (const NotPolynomial&) {
            ++not_polynomial;
        } catch (const OddAnchorParity&) {
            ++odd_parity;
        }
    }
    report(3, "polynomial-domain theorem on a random glued corpus",
           not_polynomial == 0 && odd_parity == 0 && invalid == 0,
           std::to_string(total) + " foams, " + std::to_string(not_polynomial) +
               " NotPolynomial, " + std::to_string(odd_parity) + " odd an(i,j), " +
               std::to_string(invalid) + " invalid");
    report(4, "grading theorem on the same corpus", inhomogeneous == 0 && adeg_warnings == 0,
           std::to_string(inhomogeneous) + " inhomogeneous, " + std::to_string(adeg_warnings) +
               " adeg warnings");
}

// --- criterion 5 -------------------------------------------------------------

void criterion5() {
    std::mt19937_64 rng(0x5eed5);
    int bad = 0, cases = 0;
    for (int n = 2; n <= 3; ++n) {
        std::vector<Permutation> perms;
        perms.push_back(Permutation::identity(n));
        perms.push_back(Permutation::transposition(n, 1, 2));
        if (n >= 3) {
            perms.push_back(Permutation::transposition(n, 2, 3));
            perms.push_back(Permutation::transposition(n, 1, 3));
            Permutation cyc;
            cyc.images = {2, 3, 1};
            perms.push_back(cyc);
        }
        for (int t = 0; t < 20; ++t) {
            CellFoam f = random_closed_foam(n, rng);
            const Permutation& sigma = perms[rng() % perms.size()];
            ++cases;
            try {
                PermutedFoam pf = permute_foam(sigma, f, n);
                MultiPoly lhs = permute_variables(sigma, evaluate(f, n));
                MultiPoly rhs = evaluate(pf.foam, n);
                if (pf.eps % 2) rhs = -rhs;
                if (!(lhs == rhs)) ++bad;
            } catch (const std::exception&) {
                ++bad;
            }
        }
    }
    report(5, "equivariance under the symmetric group action", bad == 0,
           std::to_string(cases) + " random (F, sigma) pairs, " + std::to_string(bad) +
               " mismatches");
}

// --- criterion 6 -------------------------------------------------------------

void criterion6() {
    long cases = 0, bad = 0;
    for (int n = 1; n <= 3; ++n)
        for (int a = 1; a <= n; ++a) {
            CellFoam cylinder = identity_foam(n, circle_web(a, true));
            for (Subset bot : subsets_of_size(n, a))
                for (Subset top : subsets_of_size(n, a)) {
                    CupParams cb{a, SymFn::one(a), bot};
                    CupParams ct{a, SymFn::one(a), top};
                    MultiPoly lhs =
                        evaluate(glue(glue(cup_foam(n, cb), cylinder), cap_foam(n, ct)), n);
                    MultiPoly rhs(n);
                    for (Subset aa : subsets_of_size(n, a)) {
                        CellFoam closed = glue(glue(cup_foam(n, cb), neck_cut_piece(n, a, aa)),
                                               cap_foam(n, ct));
                        MultiPoly v = evaluate(closed, n);
                        if (subset_index_sum(aa) % 2) v = -v;
                        rhs += v;
                    }
                    ++cases;
                    if (!(lhs == rhs)) ++bad;
                }
        }
    report(6, "neck-cutting relation under all cap closures", bad == 0,
           std::to_string(cases) + " closures, " + std::to_string(bad) + " mismatches");
}

// --- criterion 7 -------------------------------------------------------------

LaurentGraded essential_sum(int n, int a, bool ccw) {
    LaurentGraded s(n);
    for (Subset sub : subsets_of_size(n, a))
        s += LaurentGraded::a_monomial(n, sub, ccw ? 1 : -1);
    return s;
}

ColoredAnnularDiagram random_diagram(std::mt19937_64& rng) {
    ColoredAnnularDiagram d;
    int style = static_cast<int>(rng() % 3);
    if (style == 0) {
        // Annular braid closure on two strands.
        d.points = 2;
        d.strands = {{1, true}, {1, true}};
        int crossings = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < crossings; ++i) {
            Slice x;
            x.kind = rng() % 2 ? SliceKind::PositiveCrossing : SliceKind::NegativeCrossing;
            x.pos = 1;
            x.colors = {1, 1};
            d.slices.push_back(x);
        }
    } else if (style == 1) {
        // Contractible unknot with up to two kinks.
        d.points = 0;
        Slice cup{SliceKind::Cup, 1, {1}, true};
        Slice cap{SliceKind::Cap, 1, {1}, true};
        d.slices.push_back(cup);
        int kinks = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < kinks; ++i) {
            Slice x;
            x.kind = rng() % 2 ? SliceKind::PositiveCrossing : SliceKind::NegativeCrossing;
            x.pos = 1;
            x.colors = {1, 1};
            d.slices.push_back(x);
        }
        d.slices.push_back(cap);
    } else {
        // Essential strand with a finger kink.
        d.points = 1;
        d.strands = {{1, true}};
        Slice cup{SliceKind::Cup, 2, {1}, true};
        Slice x;
        x.kind = rng() % 2 ? SliceKind::PositiveCrossing : SliceKind::NegativeCrossing;
        x.pos = 1;
        x.colors = {1, 1};
        Slice cap{SliceKind::Cap, 2, {1}, true};
        d.slices = {cup, x, cap};
    }
    return d;
}

void criterion7() {
    bool loops_ok = true;
    for (int n = 1; n <= 4; ++n)
        for (int a = 0; a <= n; ++a) {
            AnnularWeb c;
            c.loops.push_back({a, true, Winding::Contractible});
            if (!(evaluate_web(c, n) == quantum_binomial(n, n, a))) loops_ok = false;
            if (a == 0) continue;
            AnnularWeb e;
            e.loops.push_back({a, true, Winding::Essential});
            if (!(evaluate_web(e, n) == essential_sum(n, a, true))) loops_ok = false;
            AnnularWeb ecw;
            ecw.loops.push_back({a, false, Winding::Essential});
            if (!(evaluate_web(ecw, n) == essential_sum(n, a, false))) loops_ok = false;
        }

    // Confluence corpus: resolution webs of randomized small diagrams.
    std::mt19937_64 rng(0xc0ffee);
    std::vector<AnnularWeb> corpus;
    while (corpus.size() < 50) {
        ColoredAnnularDiagram d = random_diagram(rng);
        CubeComplex cube = build_complex(d, 2, false);
        for (const CubeVertex& v : cube.vertices) {
            corpus.push_back(v.web);
            if (corpus.size() >= 56) break;
        }
    }
    int orders = 0, disagreements = 0;
    std::mt19937_64 order_rng(0xabcdef);
    for (const AnnularWeb& w : corpus) {
        LaurentGraded reference = evaluate_web(w, 2);
        LaurentGraded rand_val = evaluate_web_randomized(w, 2, order_rng);
        ++orders;
        if (!(rand_val == reference)) ++disagreements;
    }
    // Extra randomized orders on the most branching fixtures.
    for (int t = 0; t < 10; ++t) {
        const AnnularWeb& w = corpus[t % corpus.size()];
        if (!(evaluate_web_randomized(w, 3, order_rng) == evaluate_web(w, 3))) ++disagreements;
        ++orders;
    }
    report(7, "decategorified calculus and confluence", loops_ok && disagreements == 0,
           std::to_string(corpus.size()) + " webs, " + std::to_string(orders) +
               " randomized orders, " + std::to_string(disagreements) + " disagreements");
}

// --- criterion 8 -------------------------------------------------------------

void criterion8() {
    bool ok = true;
    std::string detail;
    for (int n = 1; n <= 4; ++n)
        for (int a = 1; a <= n; ++a) {
            std::vector<CellFoam> cups;
            auto subs = subsets_of_size(n, a);
            for (Subset s : subs) {
                CupParams cp;
                cp.thickness = a;
                cp.anchor_label = s;
                cups.push_back(cup_foam(n, cp));
            }
            GramMatrix m = gram(cups, n);
            BigInt det = 1;
            for (int r = 0; r < m.rows; ++r)
                for (int c = 0; c < m.cols; ++c) {
                    if (r == c) {
                        int sign = subset_index_sum(subs[r]) % 2 ? -1 : 1;
                        if (!(m.at(r, r) == MultiPoly::constant(n, sign))) ok = false;
                        det *= sign;
                    } else if (!m.at(r, c).is_zero()) {
                        ok = false;
                    }
                }
            if (!(det == 1 || det == -1)) ok = false;
            RankResult r = rank_at_specialization(m, Specialization::standard(n));
            if (r.rank != static_cast<int>(subs.size())) ok = false;
        }
    // Contractible 1-circle at N = 2.
    {
        int n = 2;
        CupParams plain{1, SymFn::one(1), std::nullopt};
        CupParams dotted{1, SymFn::elementary(1, 1), std::nullopt};
        std::vector<CellFoam> basis = {cup_foam(n, plain), cup_foam(n, dotted)};
        GramMatrix m = gram(basis, n);
        MultiPoly e1 = MultiPoly::variable(n, 1) + MultiPoly::variable(n, 2);
        bool entries = m.at(0, 0).is_zero() && m.at(0, 1) == MultiPoly::constant(n, -1) &&
                       m.at(1, 0) == MultiPoly::constant(n, -1) && m.at(1, 1) == -e1;
        Specialization s;
        s.values = {BigRat(0), BigRat(1)};
        RankResult r = rank_at_specialization(m, s);
        if (!entries || r.rank != 2) ok = false;
        detail = "essential cup Grams diagonal with det +-1 for N <= 4; contractible N=2 "
                 "Gram rank " +
                 std::to_string(r.rank) + " at x=(0,1)";
    }
    report(8, "state-space rank certificates", ok, detail);
}

// --- criterion 9 -------------------------------------------------------------

void criterion9() {
    bool ok = true;
    for (int n = 2; n <= 3; ++n) {
        ColoredAnnularDiagram contractible;
        contractible.points = 0;
        Slice cup{SliceKind::Cup, 1, {1}, true};
        Slice cap{SliceKind::Cap, 1, {1}, true};
        contractible.slices = {cup, cap};
        if (!(euler_characteristic(contractible, n) == quantum_binomial(n, n, 1))) ok = false;

        ColoredAnnularDiagram kink = contractible;
        Slice x{SliceKind::PositiveCrossing, 1, {1, 1}, true};
        kink.slices = {cup, x, cap};
        if (!(euler_characteristic(kink, n) == quantum_binomial(n, n, 1))) ok = false;

        ColoredAnnularDiagram essential;
        essential.points = 1;
        essential.strands = {{1, true}};
        if (!(euler_characteristic(essential, n) == essential_sum(n, 1, true))) ok = false;
    }
    report(9, "complex decategorification on unknot diagrams", ok,
           "[N]_q for 0-crossing and kinked contractible unknots, sum of a_i for the "
           "essential unknot, N = 2, 3");
}

// --- criterion 10 ------------------------------------------------------------

void criterion10() {
    ColoredAnnularDiagram d;
    d.points = 2;
    d.strands = {{1, true}, {1, true}};
    for (int i = 0; i < 2; ++i) {
        Slice x{SliceKind::PositiveCrossing, 1, {1, 1}, true};
        d.slices.push_back(x);
    }
    D2Report normal = d2_probe_check(d, 2, false);
    D2Report control = d2_probe_check(d, 2, true);
    bool ok = normal.any_checked && normal.all_passed && control.any_checked &&
              !control.all_passed;
    report(10, "d^2 probe check with sign-flip negative control", ok,
           std::string("square check ") + (normal.all_passed ? "passes" : "fails") +
               ", flipped control " + (!control.all_passed ? "fails as expected" : "passes"));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    std::vector<CellFoam> corpus;
    criteria34(corpus);
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (g_failures == 0) {
        std::cout << "acceptance: all criteria passed" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criteria FAILED" << std::endl;
    return 1;
}
