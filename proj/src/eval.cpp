#include "eval.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace anchorfoam {

int anchor_count(const CellFoam& f, int i, int j) {
    int count = 0;
    for (const AnchorPoint& p : f.anchors)
        if (subset_contains(p.label, i) != subset_contains(p.label, j)) ++count;
    return count;
}

DiffDenominator qtilde_monomial(const CellFoam& f, int n) {
    DiffDenominator d;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            int an = anchor_count(f, i, j);
            if (an % 2)
                throw OddAnchorParity("an(" + std::to_string(i) + "," + std::to_string(j) +
                                      ") = " + std::to_string(an) + " is odd");
            if (an) d.mul(i, j, an / 2);
        }
    return d;
}

ColoredEvaluation evaluate_colored(const CellFoam& f, int n, const Coloring& c) {
    ColoredEvaluation out;
    int s = 0;
    for (int i = 1; i <= n; ++i) {
        int chi = subsurface_euler(f, c, MonochromeSelector{i});
        if (chi % 2) throw InvalidLocalSurface("odd monochrome Euler characteristic");
        s += i * chi / 2;
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) s += theta_plus(f, c, i, j);
    out.sign_exponent = s;

    out.p = MultiPoly::constant(n, 1);
    for (size_t fa = 0; fa < f.facets.size(); ++fa)
        out.p = out.p * f.facets[fa].decoration.substitute(n, c[fa]);

    // Bicolored surfaces of genus > 1 have negative Euler characteristic; the
    // corresponding powers of (x_i - x_j) live in the numerator.
    DiffDenominator numerator_extra;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            int chi = subsurface_euler(f, c, BicolorSelector{i, j});
            if (chi % 2) throw InvalidLocalSurface("odd bicolored Euler characteristic");
            if (chi > 0) out.q.mul(i, j, chi / 2);
            if (chi < 0) numerator_extra.mul(i, j, -chi / 2);
        }

    out.qtilde = qtilde_monomial(f, n);

    MultiPoly num = out.p * out.qtilde.expand(n) * numerator_extra.expand(n);
    if (s % 2) num = -num;
    out.value = RationalFn(std::move(num), out.q);
    return out;
}

MultiPoly evaluate(const CellFoam& f, int n) {
    if (!f.closed()) throw std::invalid_argument("evaluate: foam must be closed");
    std::vector<Coloring> adm = enumerate_colorings(f, n);
    if (adm.empty()) return MultiPoly(n);
    // Common denominator across colorings, one exact division at the end.
    std::vector<ColoredEvaluation> evals;
    evals.reserve(adm.size());
    DiffDenominator common;
    for (const Coloring& c : adm) {
        evals.push_back(evaluate_colored(f, n, c));
        common = DiffDenominator::lcm(common, evals.back().q);
    }
    MultiPoly total(n);
    for (const ColoredEvaluation& e : evals)
        total += e.value.num() * common.quotient(e.q).expand(n);
    MultiPoly result;
    if (!try_exact_div(total, common, result))
        throw NotPolynomial("foam evaluation has a nontrivial denominator " +
                            common.to_string());
    return result;
}

int qdeg_foam(const CellFoam& f, int n) {
    int deg = 0;
    for (size_t fa = 0; fa < f.facets.size(); ++fa) {
        int a = f.facets[fa].thickness;
        deg -= a * (n - a) * f.facet_euler(static_cast<int>(fa));
        deg += f.facets[fa].decoration.qdeg();
    }
    for (const Binding& b : f.bindings()) {
        if (b.is_circle) continue;
        int a = f.facets[b.cyclic[0]].thickness;
        int bb = f.facets[b.cyclic[1]].thickness;
        deg += a * bb + (a + bb) * (n - a - bb);
    }
    for (size_t v = 0; v < f.cells0.size(); ++v) {
        if (f.cells0[v].tag != Cell0Tag::SingularVertex) continue;
        // The generator sheets a, b, c at the vertex are the facets that occur
        // as a thin side of an incident binding but never as its thick side.
        std::set<int> thin_seen, thick_seen;
        for (const Binding& bind : f.bindings()) {
            bool incident = false;
            for (int cell : bind.cells)
                if (f.cells1[cell].v0 == static_cast<int>(v) ||
                    f.cells1[cell].v1 == static_cast<int>(v))
                    incident = true;
            if (!incident) continue;
            thin_seen.insert(bind.cyclic[0]);
            thin_seen.insert(bind.cyclic[1]);
            thick_seen.insert(bind.cyclic[2]);
        }
        std::vector<int> gen;
        for (int fa : thin_seen)
            if (!thick_seen.count(fa)) gen.push_back(f.facets[fa].thickness);
        int a = gen.size() > 0 ? gen[0] : 0;
        int b = gen.size() > 1 ? gen[1] : 0;
        int c = gen.size() > 2 ? gen[2] : 0;
        deg -= a * b + a * c + b * c + (n - a - b - c) * (a + b + c);
    }
    for (const AnchorPoint& p : f.anchors) {
        int th = f.facets[f.cells2[p.cell2].facet].thickness;
        deg += th * (n - th);
    }
    return deg;
}

std::vector<int> adeg_foam(const CellFoam& f, int n) {
    std::vector<int> w(n, 0);
    for (const AnchorPoint& p : f.anchors)
        for (int i = 1; i <= n; ++i)
            if (subset_contains(p.label, i)) w[i - 1] += p.sign;
    return w;
}

PermutedFoam permute_foam(const Permutation& sigma, const CellFoam& f, int n) {
    PermutedFoam out;
    out.foam = f;
    for (AnchorPoint& p : out.foam.anchors) p.label = sigma.apply(p.label);
    out.foam.finalize();
    int eps = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            if (sigma(i) > sigma(j)) {
                int an = anchor_count(f, i, j);
                if (an % 2) throw OddAnchorParity("permute_foam: odd an(i,j)");
                eps += an / 2;
            }
        }
    out.eps = eps;
    return out;
}

namespace {

std::string subset_str(Subset s) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (int e : subset_elements(s)) {
        if (!first) os << ",";
        first = false;
        os << e;
    }
    os << "}";
    return os.str();
}

// Closed formula of the anchored theta evaluation.
MultiPoly theta_formula(int n, Subset a, Subset b, Subset c, const SymFn& p1, const SymFn& p2,
                        const SymFn& p3) {
    if ((a & b) || (a | b) != c) return MultiPoly(n);
    int strict_ba = 0;  // pairs (i,j) in B x A with i < j
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i < j && subset_contains(b, i) && subset_contains(a, j)) ++strict_ba;
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

std::vector<SymFn> decoration_samples(int arity) {
    std::vector<SymFn> out;
    out.push_back(SymFn::one(arity));
    if (arity >= 1) {
        out.push_back(SymFn::elementary(arity, 1));
        out.push_back(SymFn::elementary(arity, 1) * SymFn::elementary(arity, 1));
    }
    if (arity >= 2) out.push_back(SymFn::elementary(arity, 2));
    return out;
}

}  // namespace

std::vector<RelationResult> relation_suite(int n) {
    std::vector<RelationResult> results;

    // (i) Polynomial removal: merging decorations on a facet. A sphere glued
    // from a P-cup and a Q-cap equals the (P*Q)-sphere.
    {
        RelationResult r{"polynomial_removal"};
        for (int a = 1; a <= n; ++a) {
            for (const SymFn& p : decoration_samples(a)) {
                for (const SymFn& q : decoration_samples(a)) {
                    CupParams cup{a, p, std::nullopt}, cap{a, q, std::nullopt};
                    CellFoam glued = glue(cup_foam(n, cup), cap_foam(n, cap));
                    SphereParams sp;
                    sp.thickness = a;
                    sp.decoration = p * q;
                    CellFoam direct = sphere_foam(n, sp);
                    ++r.cases;
                    if (!(evaluate(glued, n) == evaluate(direct, n))) {
                        r.passed = false;
                        if (r.witness.empty())
                            r.witness = "a=" + std::to_string(a) + " P=" + p.to_string() +
                                        " Q=" + q.to_string();
                    }
                }
            }
        }
        results.push_back(r);
    }

    // (ii) Theta formula over all A, B with |A|+|B| <= n, all C.
    {
        RelationResult r{"theta_foam"};
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
                            tp.p1 = SymFn::elementary(sa, std::min(1, sa));
                            tp.p2 = SymFn::one(sb);
                            tp.p3 = SymFn::one(sa + sb);
                            CellFoam f = theta_foam(n, tp);
                            MultiPoly got = evaluate(f, n);
                            MultiPoly expect = theta_formula(n, a, b, c, tp.p1, tp.p2, tp.p3);
                            ++r.cases;
                            if (!(got == expect)) {
                                r.passed = false;
                                if (r.witness.empty())
                                    r.witness = "A=" + subset_str(a) + " B=" + subset_str(b) +
                                                " C=" + subset_str(c);
                            }
                        }
        results.push_back(r);
    }

    // (iii) Anchored sphere formula over all A, B and a decoration sample.
    {
        RelationResult r{"anchored_sphere"};
        for (int sa = 0; sa <= n; ++sa)
            for (Subset a : subsets_of_size(n, sa))
                for (Subset b : subsets_of_size(n, sa))
                    for (const SymFn& p : decoration_samples(sa)) {
                        SphereParams sp;
                        sp.thickness = sa;
                        sp.decoration = p;
                        sp.labels = {{a, b}};
                        CellFoam f = sphere_foam(n, sp);
                        MultiPoly got = evaluate(f, n);
                        MultiPoly expect = sphere_formula(n, a, b, p);
                        ++r.cases;
                        if (!(got == expect)) {
                            r.passed = false;
                            if (r.witness.empty())
                                r.witness = "A=" + subset_str(a) + " B=" + subset_str(b) +
                                            " P=" + p.to_string();
                        }
                    }
        results.push_back(r);
    }

    // (iv) Neck-cutting: identity on the essential a-circle against the signed
    // sum of cup-cap pieces, under every cap closure (B, B').
    {
        RelationResult r{"neck_cutting"};
        for (int a = 1; a <= n; ++a) {
            CellFoam cylinder = identity_foam(n, circle_web(a, true));
            for (Subset bot : subsets_of_size(n, a))
                for (Subset top : subsets_of_size(n, a)) {
                    CupParams cb{a, SymFn::one(a), bot}, ct{a, SymFn::one(a), top};
                    CellFoam lhs = glue(glue(cup_foam(n, cb), cylinder), cap_foam(n, ct));
                    MultiPoly lhs_val = evaluate(lhs, n);
                    MultiPoly rhs_val(n);
                    for (Subset aa : subsets_of_size(n, a)) {
                        CellFoam piece = neck_cut_piece(n, a, aa);
                        CellFoam closed = glue(glue(cup_foam(n, cb), piece), cap_foam(n, ct));
                        MultiPoly v = evaluate(closed, n);
                        if (subset_index_sum(aa) % 2) v = -v;
                        rhs_val += v;
                    }
                    ++r.cases;
                    if (!(lhs_val == rhs_val)) {
                        r.passed = false;
                        if (r.witness.empty())
                            r.witness = "a=" + std::to_string(a) + " B=" + subset_str(bot) +
                                        " B'=" + subset_str(top);
                    }
                }
        }
        results.push_back(r);
    }

    return results;
}

}  // namespace anchorfoam
