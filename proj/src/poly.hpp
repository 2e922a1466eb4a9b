// Exact arithmetic in Z[x_1..x_N], its localization at the differences
// (x_i - x_j), Laurent polynomials in q and a_1..a_N, and symmetric
// polynomials in the elementary basis.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace anchorfoam {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Subsets of [N] = {1..N} as bitmasks, bit (i-1) <-> element i.
using Subset = std::uint16_t;

inline int subset_size(Subset s) { return __builtin_popcount(s); }
inline bool subset_contains(Subset s, int i) { return (s >> (i - 1)) & 1u; }
inline Subset full_subset(int n) { return static_cast<Subset>((1u << n) - 1u); }
inline int subset_index_sum(Subset s) {
    int t = 0;
    for (int i = 1; s; ++i, s >>= 1)
        if (s & 1u) t += i;
    return t;
}
std::vector<Subset> subsets_of_size(int n, int k);
std::vector<int> subset_elements(Subset s);

struct EvalContext {
    int n = 1;
    explicit EvalContext(int n_) : n(n_) {
        if (n < 1 || n > 16) throw std::invalid_argument("EvalContext: N must be in 1..16");
    }
};

class ContextMismatch : public std::runtime_error {
public:
    ContextMismatch() : std::runtime_error("operands over different EvalContext") {}
};

// Exponent vector of length N. Graded-lex with x1 > x2 > ... > xN, larger first.
using Monomial = std::vector<int>;

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sparse polynomial over Z in x_1..x_N with no stored zero coefficients.
class MultiPoly {
public:
    MultiPoly() : n_(0) {}
    explicit MultiPoly(int n) : n_(n) {}
    static MultiPoly constant(int n, const BigInt& c);
    static MultiPoly variable(int n, int i);  // x_i, 1-based
    static MultiPoly difference(int n, int i, int j);  // x_i - x_j

    int nvars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const std::map<Monomial, BigInt, GrlexGreater>& terms() const { return terms_; }

    void add_term(const Monomial& m, const BigInt& c);

    MultiPoly operator-() const;
    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly operator*(const BigInt& c) const;
    bool operator==(const MultiPoly& o) const { return n_ == o.n_ && terms_ == o.terms_; }

    // Total-degree homogeneity; degree with deg(x_i) = 2 is twice this.
    // Returns false in `homogeneous` if mixed degrees; throws on zero.
    struct Homogeneity {
        bool homogeneous;
        int qdeg;  // meaningful only when homogeneous
    };
    Homogeneity homogeneous_qdeg() const;

    MultiPoly permuted(const std::vector<int>& images) const;  // x_i -> x_images[i-1]
    BigRat eval(const std::vector<BigRat>& xs) const;

    std::string to_string() const;

private:
    int n_;
    std::map<Monomial, BigInt, GrlexGreater> terms_;
};

// Product of (x_i - x_j)^{e_ij} over pairs 1 <= i < j <= N; no zero exponents stored.
class DiffDenominator {
public:
    DiffDenominator() = default;

    bool is_one() const { return exps_.empty(); }
    const std::map<std::pair<int, int>, int>& exps() const { return exps_; }
    void mul(int i, int j, int e);  // multiply by (x_i-x_j)^e, requires i<j
    static DiffDenominator lcm(const DiffDenominator& a, const DiffDenominator& b);
    // this / d, requires d to divide componentwise
    DiffDenominator quotient(const DiffDenominator& d) const;
    DiffDenominator times(const DiffDenominator& d) const;
    MultiPoly expand(int n) const;
    int total_exponent() const;
    bool operator==(const DiffDenominator& o) const { return exps_ == o.exps_; }
    std::string to_string() const;

private:
    std::map<std::pair<int, int>, int> exps_;
};

class NotDivisible : public std::runtime_error {
public:
    explicit NotDivisible(const std::string& what) : std::runtime_error(what) {}
};

// Exact division p / (x_i - x_j); throws NotDivisible.
MultiPoly divide_by_difference(const MultiPoly& p, int i, int j);
// Exact division by a difference monomial; throws NotDivisible.
MultiPoly exact_div(const MultiPoly& p, const DiffDenominator& d);
bool try_exact_div(const MultiPoly& p, const DiffDenominator& d, MultiPoly& out);

// Numerator over a difference-monomial denominator. Lazily normalized:
// equality is tested by cross-multiplication.
class RationalFn {
public:
    RationalFn() = default;
    explicit RationalFn(MultiPoly num) : num_(std::move(num)) {}
    RationalFn(MultiPoly num, DiffDenominator den)
        : num_(std::move(num)), den_(std::move(den)) {}

    const MultiPoly& num() const { return num_; }
    const DiffDenominator& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFn operator+(const RationalFn& o) const;
    RationalFn operator-() const;
    RationalFn operator*(const RationalFn& o) const;
    bool equals(const RationalFn& o) const;

    // Exact division of num by den; throws NotDivisible.
    MultiPoly to_poly() const;

    RationalFn permuted(const std::vector<int>& images) const;

private:
    MultiPoly num_;
    DiffDenominator den_;
};

// Pi(A,B) = prod_{(i,j) in A x B, i <= j} (x_i - x_j) * prod_{(i,j) in B x A, i <= j} (x_i - x_j).
// Zero iff A and B intersect; as a DiffDenominator-style exponent map otherwise.
MultiPoly pi_product(int n, Subset a, Subset b);
// Same but as exponent data; valid only when A and B are disjoint.
DiffDenominator pi_product_monomial(int n, Subset a, Subset b);

// Symmetric polynomial in k variables, stored in the elementary basis:
// terms map (d_1..d_k) -> coeff for e_1^{d_1} ... e_k^{d_k}.
class SymFn {
public:
    SymFn() : k_(0) {}
    explicit SymFn(int k) : k_(k) {}
    static SymFn one(int k);
    static SymFn elementary(int k, int m);  // e_m in k variables

    int arity() const { return k_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    const std::map<std::vector<int>, BigInt>& terms() const { return terms_; }
    void add_term(const std::vector<int>& exp, const BigInt& c);

    SymFn operator*(const SymFn& o) const;
    SymFn operator+(const SymFn& o) const;
    bool operator==(const SymFn& o) const { return k_ == o.k_ && terms_ == o.terms_; }

    // Substitutes the variables {x_a : a in A} in increasing order; |A| must equal arity.
    MultiPoly substitute(int n, Subset a) const;

    // qdeg with deg(e_m) = 2m. Homogeneity check; degree of 1 (or 0) is 0.
    bool homogeneous(int& qdeg_out) const;
    int qdeg() const;

    std::string to_string() const;

private:
    int k_;
    std::map<std::vector<int>, BigInt> terms_;
};

class ArityMismatch : public std::runtime_error {
public:
    explicit ArityMismatch(const std::string& what) : std::runtime_error(what) {}
};

// Laurent polynomial in q and a_1..a_N (integer exponents), for graded ranks
// and Euler characteristics.
class LaurentGraded {
public:
    using Key = std::pair<int, std::vector<int>>;  // (q exponent, a exponents)

    LaurentGraded() : n_(0) {}
    explicit LaurentGraded(int n) : n_(n) {}
    static LaurentGraded constant(int n, const BigInt& c);
    static LaurentGraded q_power(int n, int k);
    static LaurentGraded a_monomial(int n, Subset a, int sign_exp);  // prod_{i in A} a_i^{sign_exp}

    int nvars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, BigInt>& terms() const { return terms_; }
    void add_term(int qexp, const std::vector<int>& aexp, const BigInt& c);

    LaurentGraded operator+(const LaurentGraded& o) const;
    LaurentGraded operator-(const LaurentGraded& o) const;
    LaurentGraded operator-() const;
    LaurentGraded operator*(const LaurentGraded& o) const;
    LaurentGraded& operator+=(const LaurentGraded& o);
    bool operator==(const LaurentGraded& o) const { return n_ == o.n_ && terms_ == o.terms_; }

    bool a_free() const;  // all a-exponents zero
    bool q_symmetric() const;  // invariant under q -> q^{-1}
    bool nonnegative() const;
    BigInt eval_all_one() const;  // q = 1, a_i = 1

    std::string to_string() const;

private:
    int n_;
    std::map<Key, BigInt> terms_;
};

// [n]_q and the quantum binomial [n k]_q as Laurent polynomials with zero a-part.
LaurentGraded quantum_integer(int n_ctx, int n);
LaurentGraded quantum_binomial(int n_ctx, int n, int k);

// Bijection of [N]; images[i-1] = sigma(i).
struct Permutation {
    std::vector<int> images;

    static Permutation identity(int n);
    static Permutation transposition(int n, int i, int j);
    int n() const { return static_cast<int>(images.size()); }
    int operator()(int i) const { return images[i - 1]; }
    Permutation compose(const Permutation& tau) const;  // (this o tau)(i) = this(tau(i))
    Subset apply(Subset s) const;
    bool is_identity() const;
    void validate() const;
};

RationalFn permute_variables(const Permutation& sigma, const RationalFn& f);
MultiPoly permute_variables(const Permutation& sigma, const MultiPoly& p);

}  // namespace anchorfoam
