#include "poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace anchorfoam {

std::vector<Subset> subsets_of_size(int n, int k) {
    std::vector<Subset> out;
    Subset top = full_subset(n);
    for (Subset s = 0;; ++s) {
        if (subset_size(s) == k) out.push_back(s);
        if (s == top) break;
    }
    return out;
}

std::vector<int> subset_elements(Subset s) {
    std::vector<int> out;
    for (int i = 1; i <= 16; ++i)
        if (subset_contains(s, i)) out.push_back(i);
    return out;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da > db;
    return a > b;  // lexicographic on exponents, x1 first
}

MultiPoly MultiPoly::constant(int n, const BigInt& c) {
    MultiPoly p(n);
    if (c != 0) p.terms_[Monomial(n, 0)] = c;
    return p;
}

MultiPoly MultiPoly::variable(int n, int i) {
    MultiPoly p(n);
    Monomial m(n, 0);
    m[i - 1] = 1;
    p.terms_[m] = 1;
    return p;
}

MultiPoly MultiPoly::difference(int n, int i, int j) {
    MultiPoly p = variable(n, i);
    p -= variable(n, j);
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Monomial& m = terms_.begin()->first;
    return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

void MultiPoly::add_term(const Monomial& m, const BigInt& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(n_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    r += o;
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly r = *this;
    r -= o;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (n_ != o.n_) {
        if (is_zero() && terms_.empty()) n_ = o.n_;
        else if (!o.is_zero()) throw ContextMismatch();
    }
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    if (n_ != o.n_) {
        if (is_zero() && terms_.empty()) n_ = o.n_;
        else if (!o.is_zero()) throw ContextMismatch();
    }
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    if (n_ != o.n_ && !is_zero() && !o.is_zero()) throw ContextMismatch();
    MultiPoly r(std::max(n_, o.n_));
    Monomial prod(r.n_, 0);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            for (int t = 0; t < r.n_; ++t) prod[t] = ma[t] + mb[t];
            r.add_term(prod, ca * cb);
        }
    }
    return r;
}

MultiPoly MultiPoly::operator*(const BigInt& c) const {
    MultiPoly r(n_);
    if (c == 0) return r;
    for (const auto& [m, cc] : terms_) r.terms_.emplace(m, cc * c);
    return r;
}

MultiPoly::Homogeneity MultiPoly::homogeneous_qdeg() const {
    if (terms_.empty()) throw std::domain_error("homogeneous_qdeg of zero polynomial");
    int deg = -1;
    for (const auto& [m, c] : terms_) {
        int d = std::accumulate(m.begin(), m.end(), 0);
        if (deg < 0) deg = d;
        else if (d != deg) return {false, 0};
    }
    return {true, 2 * deg};
}

MultiPoly MultiPoly::permuted(const std::vector<int>& images) const {
    MultiPoly r(n_);
    Monomial mm(n_, 0);
    for (const auto& [m, c] : terms_) {
        std::fill(mm.begin(), mm.end(), 0);
        for (int t = 0; t < n_; ++t) mm[images[t] - 1] = m[t];
        r.add_term(mm, c);
    }
    return r;
}

BigRat MultiPoly::eval(const std::vector<BigRat>& xs) const {
    BigRat total = 0;
    for (const auto& [m, c] : terms_) {
        BigRat t(c);
        for (int i = 0; i < n_; ++i)
            for (int e = 0; e < m[i]; ++e) t *= xs[i];
        total += t;
    }
    return total;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        BigInt coeff = c;
        if (first) {
            if (coeff < 0) {
                os << "-";
                coeff = -coeff;
            }
        } else {
            os << (coeff < 0 ? " - " : " + ");
            if (coeff < 0) coeff = -coeff;
        }
        first = false;
        bool any_var = std::any_of(m.begin(), m.end(), [](int e) { return e > 0; });
        bool coeff_shown = false;
        if (coeff != 1 || !any_var) {
            os << coeff.str();
            coeff_shown = true;
        }
        bool started = coeff_shown;
        for (int i = 0; i < n_; ++i) {
            if (m[i] == 0) continue;
            if (started) os << "*";
            os << "x" << (i + 1);
            if (m[i] > 1) os << "^" << m[i];
            started = true;
        }
    }
    return os.str();
}

void DiffDenominator::mul(int i, int j, int e) {
    if (e == 0) return;
    if (!(i < j)) throw std::invalid_argument("DiffDenominator: need i < j");
    auto key = std::make_pair(i, j);
    exps_[key] += e;
    if (exps_[key] == 0) exps_.erase(key);
    if (exps_.count(key) && exps_[key] < 0)
        throw std::invalid_argument("DiffDenominator: negative exponent");
}

DiffDenominator DiffDenominator::lcm(const DiffDenominator& a, const DiffDenominator& b) {
    DiffDenominator r = a;
    for (const auto& [k, e] : b.exps_) {
        auto it = r.exps_.find(k);
        if (it == r.exps_.end()) r.exps_[k] = e;
        else it->second = std::max(it->second, e);
    }
    return r;
}

DiffDenominator DiffDenominator::quotient(const DiffDenominator& d) const {
    DiffDenominator r = *this;
    for (const auto& [k, e] : d.exps_) {
        auto it = r.exps_.find(k);
        if (it == r.exps_.end() || it->second < e)
            throw std::invalid_argument("DiffDenominator::quotient: not divisible");
        it->second -= e;
        if (it->second == 0) r.exps_.erase(it);
    }
    return r;
}

DiffDenominator DiffDenominator::times(const DiffDenominator& d) const {
    DiffDenominator r = *this;
    for (const auto& [k, e] : d.exps_) {
        r.exps_[k] += e;
    }
    return r;
}

MultiPoly DiffDenominator::expand(int n) const {
    MultiPoly p = MultiPoly::constant(n, 1);
    for (const auto& [k, e] : exps_) {
        MultiPoly d = MultiPoly::difference(n, k.first, k.second);
        for (int t = 0; t < e; ++t) p = p * d;
    }
    return p;
}

int DiffDenominator::total_exponent() const {
    int t = 0;
    for (const auto& [k, e] : exps_) t += e;
    return t;
}

std::string DiffDenominator::to_string() const {
    if (exps_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, e] : exps_) {
        if (!first) os << "*";
        first = false;
        os << "(x" << k.first << "-x" << k.second << ")";
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

MultiPoly divide_by_difference(const MultiPoly& p, int i, int j) {
    // Single-divisor monomial division; divisor x_i - x_j has grlex lead x_i.
    MultiPoly rem = p;
    MultiPoly q(p.nvars());
    while (!rem.is_zero()) {
        const Monomial lead = rem.terms().begin()->first;
        const BigInt c = rem.terms().begin()->second;
        if (lead[i - 1] == 0)
            throw NotDivisible("polynomial not divisible by (x" + std::to_string(i) + "-x" +
                               std::to_string(j) + ")");
        Monomial t = lead;
        t[i - 1] -= 1;
        q.add_term(t, c);
        // rem -= c * x^t * (x_i - x_j): cancels lead, adds c * x^t * x_j.
        rem.add_term(lead, -c);
        Monomial tj = t;
        tj[j - 1] += 1;
        rem.add_term(tj, c);
    }
    return q;
}

MultiPoly exact_div(const MultiPoly& p, const DiffDenominator& d) {
    MultiPoly q = p;
    if (p.is_zero()) return p;
    for (const auto& [k, e] : d.exps())
        for (int t = 0; t < e; ++t) q = divide_by_difference(q, k.first, k.second);
    return q;
}

bool try_exact_div(const MultiPoly& p, const DiffDenominator& d, MultiPoly& out) {
    try {
        out = exact_div(p, d);
        return true;
    } catch (const NotDivisible&) {
        return false;
    }
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    DiffDenominator l = DiffDenominator::lcm(den_, o.den_);
    MultiPoly a = num_ * l.quotient(den_).expand(num_.nvars());
    MultiPoly b = o.num_ * l.quotient(o.den_).expand(o.num_.nvars());
    return RationalFn(a + b, l);
}

RationalFn RationalFn::operator-() const { return RationalFn(-num_, den_); }

RationalFn RationalFn::operator*(const RationalFn& o) const {
    return RationalFn(num_ * o.num_, den_.times(o.den_));
}

bool RationalFn::equals(const RationalFn& o) const {
    // num/den == num'/den'  <=>  num * den' == num' * den
    MultiPoly lhs = num_ * o.den_.expand(num_.nvars());
    MultiPoly rhs = o.num_ * den_.expand(o.num_.nvars());
    return lhs == rhs;
}

MultiPoly RationalFn::to_poly() const { return exact_div(num_, den_); }

RationalFn RationalFn::permuted(const std::vector<int>& images) const {
    MultiPoly n = num_.permuted(images);
    DiffDenominator d;
    int sign_flips = 0;
    for (const auto& [k, e] : den_.exps()) {
        int a = images[k.first - 1], b = images[k.second - 1];
        if (a > b) {
            std::swap(a, b);
            sign_flips += e;
        }
        d.mul(a, b, e);
    }
    if (sign_flips % 2) n = -n;
    return RationalFn(std::move(n), std::move(d));
}

MultiPoly pi_product(int n, Subset a, Subset b) {
    if (a & b) return MultiPoly(n);  // shares an element: some factor is x_i - x_i = 0
    // Every factor already has i <= j once A and B are disjoint, so no sign flips.
    return pi_product_monomial(n, a, b).expand(n);
}

DiffDenominator pi_product_monomial(int n, Subset a, Subset b) {
    if (a & b) throw std::invalid_argument("pi_product_monomial: sets intersect");
    DiffDenominator d;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            int e = 0;
            if (subset_contains(a, i) && subset_contains(b, j)) ++e;  // (i,j) in A<=B
            if (subset_contains(b, i) && subset_contains(a, j)) ++e;  // (i,j) in B<=A
            if (e) d.mul(i, j, e);
        }
    }
    return d;
}

SymFn SymFn::one(int k) {
    SymFn f(k);
    f.terms_[std::vector<int>(k, 0)] = 1;
    return f;
}

SymFn SymFn::elementary(int k, int m) {
    if (m < 0 || m > k) throw std::invalid_argument("elementary: need 0 <= m <= k");
    if (m == 0) return one(k);
    SymFn f(k);
    std::vector<int> exp(k, 0);
    exp[m - 1] = 1;
    f.terms_[exp] = 1;
    return f;
}

bool SymFn::is_one() const {
    if (terms_.size() != 1) return false;
    const auto& [e, c] = *terms_.begin();
    return c == 1 && std::all_of(e.begin(), e.end(), [](int d) { return d == 0; });
}

void SymFn::add_term(const std::vector<int>& exp, const BigInt& c) {
    if (static_cast<int>(exp.size()) != k_) throw ArityMismatch("SymFn term arity");
    if (c == 0) return;
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
        terms_.emplace(exp, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SymFn SymFn::operator*(const SymFn& o) const {
    if (k_ != o.k_) throw ArityMismatch("SymFn product arity");
    SymFn r(k_);
    std::vector<int> exp(k_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            for (int t = 0; t < k_; ++t) exp[t] = ea[t] + eb[t];
            r.add_term(exp, ca * cb);
        }
    return r;
}

SymFn SymFn::operator+(const SymFn& o) const {
    if (k_ != o.k_) throw ArityMismatch("SymFn sum arity");
    SymFn r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MultiPoly SymFn::substitute(int n, Subset a) const {
    if (subset_size(a) != k_) throw ArityMismatch("SymFn substitution: |A| != arity");
    std::vector<int> vars = subset_elements(a);
    // Expand each elementary symmetric e_m(x_A) once.
    std::vector<MultiPoly> elem(k_ + 1, MultiPoly::constant(n, 0));
    elem[0] = MultiPoly::constant(n, 1);
    for (int m = 1; m <= k_; ++m) {
        MultiPoly em(n);
        for (Subset s : subsets_of_size(k_, m)) {
            Monomial mono(n, 0);
            for (int t = 0; t < k_; ++t)
                if (subset_contains(s, t + 1)) mono[vars[t] - 1] += 1;
            em.add_term(mono, 1);
        }
        elem[m] = em;
    }
    MultiPoly total(n);
    for (const auto& [exp, c] : terms_) {
        MultiPoly term = MultiPoly::constant(n, c);
        for (int m = 1; m <= k_; ++m)
            for (int t = 0; t < exp[m - 1]; ++t) term = term * elem[m];
        total += term;
    }
    return total;
}

bool SymFn::homogeneous(int& qdeg_out) const {
    qdeg_out = 0;
    if (terms_.empty()) return true;
    int deg = -1;
    for (const auto& [exp, c] : terms_) {
        int d = 0;
        for (int m = 1; m <= k_; ++m) d += 2 * m * exp[m - 1];
        if (deg < 0) deg = d;
        else if (d != deg) return false;
    }
    qdeg_out = deg;
    return true;
}

int SymFn::qdeg() const {
    int d = 0;
    if (!homogeneous(d)) throw std::domain_error("SymFn::qdeg: not homogeneous");
    return d;
}

std::string SymFn::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [exp, c] : terms_) {
        BigInt coeff = c;
        if (first) {
            if (coeff < 0) {
                os << "-";
                coeff = -coeff;
            }
        } else {
            os << (coeff < 0 ? " - " : " + ");
            if (coeff < 0) coeff = -coeff;
        }
        first = false;
        bool any = std::any_of(exp.begin(), exp.end(), [](int e) { return e > 0; });
        bool shown = false;
        if (coeff != 1 || !any) {
            os << coeff.str();
            shown = true;
        }
        for (int m = 1; m <= k_; ++m) {
            if (exp[m - 1] == 0) continue;
            if (shown) os << "*";
            os << "e" << m;
            if (exp[m - 1] > 1) os << "^" << exp[m - 1];
            shown = true;
        }
    }
    return os.str();
}

LaurentGraded LaurentGraded::constant(int n, const BigInt& c) {
    LaurentGraded p(n);
    if (c != 0) p.terms_[{0, std::vector<int>(n, 0)}] = c;
    return p;
}

LaurentGraded LaurentGraded::q_power(int n, int k) {
    LaurentGraded p(n);
    p.terms_[{k, std::vector<int>(n, 0)}] = 1;
    return p;
}

LaurentGraded LaurentGraded::a_monomial(int n, Subset a, int sign_exp) {
    LaurentGraded p(n);
    std::vector<int> ae(n, 0);
    for (int i = 1; i <= n; ++i)
        if (subset_contains(a, i)) ae[i - 1] = sign_exp;
    p.terms_[{0, ae}] = 1;
    return p;
}

void LaurentGraded::add_term(int qexp, const std::vector<int>& aexp, const BigInt& c) {
    if (c == 0) return;
    Key k{qexp, aexp};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(std::move(k), c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentGraded LaurentGraded::operator+(const LaurentGraded& o) const {
    LaurentGraded r = *this;
    r += o;
    return r;
}

LaurentGraded& LaurentGraded::operator+=(const LaurentGraded& o) {
    if (n_ != o.n_) {
        if (terms_.empty()) n_ = o.n_;
        else if (!o.terms_.empty()) throw ContextMismatch();
    }
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
}

LaurentGraded LaurentGraded::operator-(const LaurentGraded& o) const { return *this + (-o); }

LaurentGraded LaurentGraded::operator-() const {
    LaurentGraded r(n_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

LaurentGraded LaurentGraded::operator*(const LaurentGraded& o) const {
    if (n_ != o.n_ && !terms_.empty() && !o.terms_.empty()) throw ContextMismatch();
    LaurentGraded r(std::max(n_, o.n_));
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_) {
            std::vector<int> ae(r.n_, 0);
            for (int t = 0; t < r.n_; ++t) ae[t] = ka.second[t] + kb.second[t];
            r.add_term(ka.first + kb.first, ae, ca * cb);
        }
    return r;
}

bool LaurentGraded::a_free() const {
    for (const auto& [k, c] : terms_)
        for (int e : k.second)
            if (e != 0) return false;
    return true;
}

bool LaurentGraded::q_symmetric() const {
    for (const auto& [k, c] : terms_) {
        Key mirror{-k.first, k.second};
        auto it = terms_.find(mirror);
        if (it == terms_.end() || it->second != c) return false;
    }
    return true;
}

bool LaurentGraded::nonnegative() const {
    for (const auto& [k, c] : terms_)
        if (c < 0) return false;
    return true;
}

BigInt LaurentGraded::eval_all_one() const {
    BigInt t = 0;
    for (const auto& [k, c] : terms_) t += c;
    return t;
}

std::string LaurentGraded::to_string() const {
    if (terms_.empty()) return "0";
    // Canonical order: q exponent descending, then a-exponent vector lexicographically
    // descending (so a1 prints before a2).
    std::vector<const std::pair<const Key, BigInt>*> items;
    for (const auto& kv : terms_) items.push_back(&kv);
    std::sort(items.begin(), items.end(), [](auto* x, auto* y) {
        if (x->first.first != y->first.first) return x->first.first > y->first.first;
        return x->first.second > y->first.second;
    });
    std::ostringstream os;
    bool first = true;
    for (auto* kv : items) {
        BigInt coeff = kv->second;
        if (first) {
            if (coeff < 0) {
                os << "-";
                coeff = -coeff;
            }
        } else {
            os << (coeff < 0 ? " - " : " + ");
            if (coeff < 0) coeff = -coeff;
        }
        first = false;
        int qe = kv->first.first;
        const std::vector<int>& ae = kv->first.second;
        bool any_var = qe != 0 || std::any_of(ae.begin(), ae.end(), [](int e) { return e != 0; });
        bool shown = false;
        if (coeff != 1 || !any_var) {
            os << coeff.str();
            shown = true;
        }
        if (qe != 0) {
            if (shown) os << "*";
            os << "q";
            if (qe != 1) os << "^" << qe;
            shown = true;
        }
        for (size_t i = 0; i < ae.size(); ++i) {
            if (ae[i] == 0) continue;
            if (shown) os << "*";
            os << "a" << (i + 1);
            if (ae[i] != 1) os << "^" << ae[i];
            shown = true;
        }
    }
    return os.str();
}

LaurentGraded quantum_integer(int n_ctx, int n) {
    LaurentGraded p(n_ctx);
    if (n == 0) return p;
    int an = std::abs(n);
    std::vector<int> zero(n_ctx, 0);
    for (int k = an - 1; k >= 1 - an; k -= 2) p.add_term(k, zero, n > 0 ? 1 : -1);
    return p;
}

LaurentGraded quantum_binomial(int n_ctx, int n, int k) {
    if (k < 0) throw std::invalid_argument("quantum_binomial: k must be nonnegative");
    if (k == 0) return LaurentGraded::constant(n_ctx, 1);
    // Dense division in q: numerator [n][n-1]...[n-k+1], denominator [k]!.
    // Work with ordinary polynomials after shifting exponents to be nonnegative.
    auto to_dense = [](const LaurentGraded& p, int& low) {
        low = 0;
        std::vector<BigInt> c;
        if (p.is_zero()) return c;
        int lo = p.terms().begin()->first.first, hi = lo;
        for (const auto& [key, v] : p.terms()) {
            lo = std::min(lo, key.first);
            hi = std::max(hi, key.first);
        }
        low = lo;
        c.assign(hi - lo + 1, 0);
        for (const auto& [key, v] : p.terms()) c[key.first - lo] = v;
        return c;
    };
    LaurentGraded num = LaurentGraded::constant(n_ctx, 1);
    LaurentGraded den = LaurentGraded::constant(n_ctx, 1);
    for (int t = 0; t < k; ++t) {
        num = num * quantum_integer(n_ctx, n - t);
        den = den * quantum_integer(n_ctx, k - t);
    }
    if (num.is_zero()) return num;
    int nlow = 0, dlow = 0;
    std::vector<BigInt> nc = to_dense(num, nlow);
    std::vector<BigInt> dc = to_dense(den, dlow);
    // Long division nc / dc, exactness asserted.
    if (nc.size() < dc.size()) throw std::logic_error("quantum_binomial: inexact division");
    std::vector<BigInt> q(nc.size() - dc.size() + 1, 0);
    for (int i = static_cast<int>(nc.size()) - 1; i >= static_cast<int>(dc.size()) - 1; --i) {
        BigInt lead = nc[i];
        if (lead == 0) continue;
        const BigInt& dl = dc.back();
        if (lead % dl != 0) throw std::logic_error("quantum_binomial: inexact division");
        BigInt f = lead / dl;
        int shift = i - static_cast<int>(dc.size()) + 1;
        q[shift] = f;
        for (size_t t = 0; t < dc.size(); ++t) nc[shift + t] -= f * dc[t];
    }
    for (const BigInt& c : nc)
        if (c != 0) throw std::logic_error("quantum_binomial: nonzero remainder");
    LaurentGraded out(n_ctx);
    std::vector<int> zero(n_ctx, 0);
    int qlow = nlow - dlow;
    for (size_t t = 0; t < q.size(); ++t)
        if (q[t] != 0) out.add_term(qlow + static_cast<int>(t), zero, q[t]);
    return out;
}

Permutation Permutation::identity(int n) {
    Permutation s;
    s.images.resize(n);
    std::iota(s.images.begin(), s.images.end(), 1);
    return s;
}

Permutation Permutation::transposition(int n, int i, int j) {
    Permutation s = identity(n);
    std::swap(s.images[i - 1], s.images[j - 1]);
    return s;
}

Permutation Permutation::compose(const Permutation& tau) const {
    Permutation r;
    r.images.resize(images.size());
    for (size_t i = 0; i < images.size(); ++i) r.images[i] = images[tau.images[i] - 1];
    return r;
}

Subset Permutation::apply(Subset s) const {
    Subset r = 0;
    for (int i = 1; i <= n(); ++i)
        if (subset_contains(s, i)) r |= static_cast<Subset>(1u << (images[i - 1] - 1));
    return r;
}

bool Permutation::is_identity() const {
    for (size_t i = 0; i < images.size(); ++i)
        if (images[i] != static_cast<int>(i) + 1) return false;
    return true;
}

void Permutation::validate() const {
    std::vector<bool> seen(images.size(), false);
    for (int v : images) {
        if (v < 1 || v > n() || seen[v - 1])
            throw std::invalid_argument("Permutation: images not a bijection");
        seen[v - 1] = true;
    }
}

RationalFn permute_variables(const Permutation& sigma, const RationalFn& f) {
    return f.permuted(sigma.images);
}

MultiPoly permute_variables(const Permutation& sigma, const MultiPoly& p) {
    return p.permuted(sigma.images);
}

}  // namespace anchorfoam
