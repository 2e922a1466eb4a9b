// Anchored gl_N foam evaluation <F>, colored summands <F,c>, quantum and
// annular degrees, the S_N action, and the local-relation suite.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "foam.hpp"
#include "poly.hpp"

namespace anchorfoam {

class OddAnchorParity : public std::runtime_error {
public:
    explicit OddAnchorParity(const std::string& w) : std::runtime_error(w) {}
};
class NotPolynomial : public std::runtime_error {
public:
    explicit NotPolynomial(const std::string& w) : std::runtime_error(w) {}
};

struct ColoredEvaluation {
    int sign_exponent = 0;        // s(F,c)
    MultiPoly p;                  // product of decorations
    DiffDenominator q;            // prod (x_i-x_j)^{chi(F_ij)/2}
    DiffDenominator qtilde;       // prod (x_i-x_j)^{an(i,j)/2}
    RationalFn value;             // (-1)^s * p * qtilde / q
};

// Number of anchor points whose label contains exactly one of i, j.
int anchor_count(const CellFoam& f, int i, int j);
// prod (x_i-x_j)^{an(i,j)/2}; throws OddAnchorParity.
DiffDenominator qtilde_monomial(const CellFoam& f, int n);

ColoredEvaluation evaluate_colored(const CellFoam& f, int n, const Coloring& c);

// Sum over admissible colorings over a common denominator, then exact division.
MultiPoly evaluate(const CellFoam& f, int n);

// qdeg(F): the foam degree plus anchor contributions.
int qdeg_foam(const CellFoam& f, int n);

// adeg(F) in Z^N.
std::vector<int> adeg_foam(const CellFoam& f, int n);

// sigma(F): anchor labels permuted; returns the sign exponent eps(F, sigma).
struct PermutedFoam {
    CellFoam foam;
    int eps;  // sign is (-1)^eps
};
PermutedFoam permute_foam(const Permutation& sigma, const CellFoam& f, int n);

// The local relations as an executable suite.
struct RelationResult {
    std::string name;
    int cases = 0;
    bool passed = true;
    std::string witness;  // first counterexample, if any
};
std::vector<RelationResult> relation_suite(int n);

}  // namespace anchorfoam
