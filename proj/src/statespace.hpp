// Universal construction: bilinear pairing of boundary foams, Gram matrices
// over R_N, numeric rank certificates, and induced matrices of foam maps at
// generic specializations.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eval.hpp"
#include "foam.hpp"
#include "poly.hpp"

namespace anchorfoam {

// Assignment x_i -> rational value; all values pairwise distinct.
struct Specialization {
    std::vector<BigRat> values;

    static Specialization standard(int n);  // x_i = i
    static Specialization random(int n, std::uint64_t seed);
    void validate() const;
};

struct GramMatrix {
    int rows = 0, cols = 0;
    std::vector<MultiPoly> entries;  // row-major
    const MultiPoly& at(int r, int c) const { return entries[r * cols + c]; }
};

class SingularGram : public std::runtime_error {
public:
    explicit SingularGram(const std::string& w) : std::runtime_error(w) {}
};

// <F,G> = evaluation of the closed foam obtained by stacking reflect(F) on G.
MultiPoly pair_foams(const CellFoam& f, const CellFoam& g, int n);

GramMatrix gram(const std::vector<CellFoam>& foams, int n, int threads = 1);
GramMatrix gram(const std::vector<CellFoam>& rows, const std::vector<CellFoam>& cols, int n,
                int threads = 1);

struct RankResult {
    int rank = 0;
    bool degenerate_warning = false;  // lower than a second random specialization
    std::uint64_t retry_seed = 0;
};
RankResult rank_at_specialization(const GramMatrix& m, const Specialization& s,
                                  std::uint64_t seed = 0x5eed);

// Exact rank of a rational matrix by Gaussian elimination.
int rational_rank(std::vector<std::vector<BigRat>> m);

// True iff <W, F o V> = <W, G o V> for all probes V, W. Soundness is relative
// to the probes spanning the state spaces.
bool probe_equal(const CellFoam& f, const CellFoam& g, const std::vector<CellFoam>& probes_in,
                 const std::vector<CellFoam>& probes_out, int n);

// Coordinates of F o basis_in in basis_out through the specialized pairing.
std::vector<std::vector<BigRat>> induced_matrix(const CellFoam& f,
                                                const std::vector<CellFoam>& basis_in,
                                                const std::vector<CellFoam>& basis_out, int n,
                                                const Specialization& s);

}  // namespace anchorfoam
