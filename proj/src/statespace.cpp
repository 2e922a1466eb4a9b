#include "statespace.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <set>

namespace anchorfoam {

Specialization Specialization::standard(int n) {
    Specialization s;
    for (int i = 1; i <= n; ++i) s.values.push_back(BigRat(i));
    return s;
}

Specialization Specialization::random(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Specialization s;
    std::set<std::pair<long, long>> used;
    while (static_cast<int>(s.values.size()) < n) {
        long num = static_cast<long>(rng() % 2000) - 1000;
        long den = 1 + static_cast<long>(rng() % 17);
        if (!used.insert({num, den}).second) continue;
        BigRat v(num, den);
        bool distinct = true;
        for (const BigRat& o : s.values)
            if (o == v) distinct = false;
        if (distinct) s.values.push_back(v);
    }
    return s;
}

void Specialization::validate() const {
    for (size_t i = 0; i < values.size(); ++i)
        for (size_t j = i + 1; j < values.size(); ++j)
            if (values[i] == values[j])
                throw std::invalid_argument("specialization values must be pairwise distinct");
}

MultiPoly pair_foams(const CellFoam& f, const CellFoam& g, int n) {
    if (!f.top || !g.top) throw BoundaryMismatch("pair: foams must be bounded above");
    return evaluate(glue(g, reflect(f)), n);
}

GramMatrix gram(const std::vector<CellFoam>& foams, int n, int threads) {
    return gram(foams, foams, n, threads);
}

GramMatrix gram(const std::vector<CellFoam>& rows, const std::vector<CellFoam>& cols, int n,
                int threads) {
    GramMatrix m;
    m.rows = static_cast<int>(rows.size());
    m.cols = static_cast<int>(cols.size());
    m.entries.assign(static_cast<size_t>(m.rows) * m.cols, MultiPoly(n));
    auto fill = [&](int begin, int end) {
        for (int k = begin; k < end; ++k)
            m.entries[k] = pair_foams(rows[k / m.cols], cols[k % m.cols], n);
    };
    int total = m.rows * m.cols;
    if (threads <= 1 || total < 4) {
        fill(0, total);
        return m;
    }
    int nw = std::min(threads, total);
    std::vector<std::future<void>> futs;
    int chunk = (total + nw - 1) / nw;
    for (int w = 0; w < nw; ++w)
        futs.push_back(std::async(std::launch::async, fill, w * chunk,
                                  std::min(total, (w + 1) * chunk)));
    for (auto& f : futs) f.get();
    return m;
}

int rational_rank(std::vector<std::vector<BigRat>> m) {
    int rank = 0;
    size_t rows = m.size();
    if (rows == 0) return 0;
    size_t cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pivot = r;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            BigRat factor = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
        }
        ++r;
        ++rank;
    }
    return rank;
}

namespace {

std::vector<std::vector<BigRat>> specialize(const GramMatrix& m, const Specialization& s) {
    std::vector<std::vector<BigRat>> out(m.rows, std::vector<BigRat>(m.cols));
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) out[r][c] = m.at(r, c).eval(s.values);
    return out;
}

}  // namespace

RankResult rank_at_specialization(const GramMatrix& m, const Specialization& s,
                                  std::uint64_t seed) {
    s.validate();
    RankResult out;
    out.rank = rational_rank(specialize(m, s));
    if (m.rows == 0 || m.cols == 0) return out;
    int n = m.entries.empty() ? 0 : m.entries[0].nvars();
    Specialization probe = Specialization::random(n, seed);
    out.retry_seed = seed;
    int rank2 = rational_rank(specialize(m, probe));
    if (rank2 > out.rank) out.degenerate_warning = true;
    return out;
}

bool probe_equal(const CellFoam& f, const CellFoam& g, const std::vector<CellFoam>& probes_in,
                 const std::vector<CellFoam>& probes_out, int n) {
    for (const CellFoam& v : probes_in) {
        CellFoam fv = glue(v, f);
        CellFoam gv = glue(v, g);
        for (const CellFoam& w : probes_out) {
            if (!(pair_foams(w, fv, n) == pair_foams(w, gv, n))) return false;
        }
    }
    return true;
}

std::vector<std::vector<BigRat>> induced_matrix(const CellFoam& f,
                                                const std::vector<CellFoam>& basis_in,
                                                const std::vector<CellFoam>& basis_out, int n,
                                                const Specialization& s) {
    s.validate();
    // Solve Gram_out * M = B where B[k][i] = <out_k, F o in_i>.
    GramMatrix gout = gram(basis_out, n);
    std::vector<std::vector<BigRat>> a = specialize(gout, s);
    size_t rows = basis_out.size(), cols = basis_in.size();
    std::vector<std::vector<BigRat>> b(rows, std::vector<BigRat>(cols));
    for (size_t i = 0; i < cols; ++i) {
        CellFoam fi = glue(basis_in[i], f);
        for (size_t k = 0; k < rows; ++k)
            b[k][i] = pair_foams(basis_out[k], fi, n).eval(s.values);
    }
    // Gaussian elimination with the augmented system.
    size_t dim = rows;
    for (size_t c = 0; c < dim; ++c) {
        size_t pivot = c;
        while (pivot < dim && a[pivot][c] == 0) ++pivot;
        if (pivot == dim) throw SingularGram("output Gram matrix is singular at specialization");
        std::swap(a[pivot], a[c]);
        std::swap(b[pivot], b[c]);
        for (size_t i = 0; i < dim; ++i) {
            if (i == c || a[i][c] == 0) continue;
            BigRat factor = a[i][c] / a[c][c];
            for (size_t j = 0; j < dim; ++j) a[i][j] -= factor * a[c][j];
            for (size_t j = 0; j < cols; ++j) b[i][j] -= factor * b[c][j];
        }
    }
    std::vector<std::vector<BigRat>> out(dim, std::vector<BigRat>(cols));
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < cols; ++j) out[i][j] = b[i][j] / a[i][i];
    return out;
}

}  // namespace anchorfoam
