#pragma once

// Arithmetic in the tower F_p < F_q < F_q2, q = p^e, with canonical moduli.
//
// Elements of F_q2 are indexed 0..q^2-1: index = a + q*b encodes A + B*h,
// where A, B in F_q (F_q index = sum of F_p digits d_i p^i for sum d_i g^i),
// g a root of the degree-e modulus over F_p and h a root of the degree-2
// modulus over F_q.  Indices < q are exactly F_q, indices < p exactly F_p.
// All binary operations are table-driven; the tables are built once per
// Field and the values are immutable afterwards, so sharing a Field across
// threads is safe.

#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace carlitz {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Value outside an operation's mathematical domain (zero divisor at working
// precision, substitution outside the unit disk, log outside its disk, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Work estimate exceeds the configured term budget.
class BudgetError : public Error {
public:
    BudgetError(const std::string& msg, long long required)
        : Error(msg), required_budget(required) {}
    long long required_budget;
};

namespace detail {

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense little-endian polynomials over F_p, for modulus construction only.
using PPoly = std::vector<int>;

inline void ptrim(PPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PPoly pmod(PPoly a, const PPoly& m, int p) {
    ptrim(a);
    while (a.size() >= m.size() && !a.empty()) {
        int lead = a.back();  // m is monic
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) {
            int& c = a[shift + i];
            c = (c - lead * m[i]) % p;
            if (c < 0) c += p;
        }
        ptrim(a);
    }
    return a;
}

inline PPoly pmul(const PPoly& a, const PPoly& b, int p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    ptrim(r);
    return r;
}

// Trial division by every monic polynomial of degree 1..deg(f)/2.
inline bool is_irreducible(const PPoly& f, int p) {
    int deg = static_cast<int>(f.size()) - 1;
    if (deg <= 0) return false;
    if (deg == 1) return true;
    for (int d = 1; 2 * d <= deg; ++d) {
        long long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long long k = 0; k < count; ++k) {
            PPoly g(d + 1, 0);
            long long kk = k;
            for (int i = 0; i < d; ++i) { g[i] = static_cast<int>(kk % p); kk /= p; }
            g[d] = 1;
            if (pmod(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

struct FieldElement;

class Field {
public:
    // Canonical moduli: the monic irreducible whose non-leading coefficient
    // vector is least in base-p (resp. base-q) counting order, c_0 the least
    // significant digit.  This pins the serialized output bit-exactly.
    Field(int p, int e) : p_(p), e_(e) {
        if (!detail::is_prime(p)) throw Error("p must be prime");
        if (e < 1) throw Error("e must be >= 1");
        long long q = 1;
        for (int i = 0; i < e; ++i) {
            q *= p;
            if (q > 64) throw Error("field tower supports q <= 64 only");
        }
        q_ = static_cast<int>(q);
        q2_ = q_ * q_;
        build_modulus_e();
        build_fq_tables();
        build_modulus_2();
        build_fq2_tables();
        find_zeta_ram();
    }

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }
    int size() const { return q2_; }             // |F_q2|
    int lattice_den() const { return q_ - 1 == 0 ? 1 : q_ - 1; }

    const std::vector<int>& modulus_e() const { return mod_e_; }
    const std::vector<uint16_t>& modulus_2() const { return mod_2_; }

    // raw index arithmetic (hot path)
    uint16_t add(uint16_t a, uint16_t b) const { return add_[idx(a, b)]; }
    uint16_t sub(uint16_t a, uint16_t b) const { return add_[idx(a, neg_[b])]; }
    uint16_t neg(uint16_t a) const { return neg_[a]; }
    uint16_t mul(uint16_t a, uint16_t b) const { return mul_[idx(a, b)]; }
    uint16_t inv(uint16_t a) const {
        if (a == 0) throw DomainError("division by zero in F_q2");
        return inv_[a];
    }
    uint16_t div(uint16_t a, uint16_t b) const { return mul(a, inv(b)); }

    uint16_t pow(uint16_t a, long long n) const {
        if (a == 0) {
            if (n < 0) throw DomainError("division by zero in F_q2");
            return n == 0 ? 1 : 0;
        }
        long long m = n % (q2_ - 1);
        if (m < 0) m += q2_ - 1;
        uint16_t r = 1, base = a;
        while (m) {
            if (m & 1) r = mul(r, base);
            base = mul(base, base);
            m >>= 1;
        }
        return r;
    }

    // x -> x^{p^m}; m < 0 is the inverse automorphism (Frobenius has order
    // dividing 2e on F_q2, so p^{-1} power = p^{2e-1} power).
    uint16_t frobenius(uint16_t a, long long m) const {
        long long r = m % (2 * e_);
        if (r < 0) r += 2 * e_;
        uint16_t x = a;
        for (long long i = 0; i < r; ++i) x = frob_[x];
        return x;
    }

    uint16_t zeta_ram() const { return zeta_ram_; }

    bool in_fq(uint16_t a) const { return frobenius(a, e_) == a; }
    bool in_fp(uint16_t a) const { return a < static_cast<uint16_t>(p_); }

    uint16_t from_int(long long n) const {
        long long r = n % p_;
        if (r < 0) r += p_;
        return static_cast<uint16_t>(r);
    }

    // F_p digit vector of an element, length 2e, basis {g^i h^j}.
    std::vector<int> digits(uint16_t a) const {
        std::vector<int> d(2 * e_, 0);
        int A = a % q_, B = a / q_;
        for (int i = 0; i < e_; ++i) { d[i] = A % p_; A /= p_; }
        for (int i = 0; i < e_; ++i) { d[e_ + i] = B % p_; B /= p_; }
        return d;
    }

    // "c0+c1*g" polynomial-in-generator form; for e > 1 the F_q2 generator
    // over F_q prints as h.
    std::string to_string(uint16_t a) const {
        auto d = digits(a);
        std::string out;
        auto append = [&](int c, const std::string& mono) {
            if (c == 0) return;
            if (!out.empty()) out += "+";
            if (c != 1 || mono.empty()) out += std::to_string(c);
            if (c != 1 && !mono.empty()) out += "*";
            out += mono;
        };
        for (int i = 0; i < 2 * e_; ++i) {
            int gi = i % e_, hj = i / e_;
            std::string mono;
            if (gi == 1) mono = "g";
            else if (gi > 1) mono = "g^" + std::to_string(gi);
            if (hj == 1) mono += (mono.empty() ? "h" : "*h");
            if (e_ == 1 && hj == 1) mono = "g";  // e=1: single generator named g
            append(d[i], mono);
        }
        return out.empty() ? "0" : out;
    }

    uint16_t from_string(const std::string& s) const;  // json_io.hpp

    FieldElement elem(long long n) const;
    FieldElement elem_idx(uint16_t v) const;

private:
    size_t idx(uint16_t a, uint16_t b) const { return static_cast<size_t>(a) * q2_ + b; }

    void build_modulus_e() {
        if (e_ == 1) { mod_e_ = {0, 1}; return; }  // x: F_q = F_p
        long long count = 1;
        for (int i = 0; i < e_; ++i) count *= p_;
        for (long long k = 0; k < count; ++k) {
            detail::PPoly f(e_ + 1, 0);
            long long kk = k;
            for (int i = 0; i < e_; ++i) { f[i] = static_cast<int>(kk % p_); kk /= p_; }
            f[e_] = 1;
            if (detail::is_irreducible(f, p_)) {
                mod_e_.assign(f.begin(), f.end());
                return;
            }
        }
        throw Error("no irreducible modulus found");  // unreachable
    }

    int fq_digits_to_idx(const detail::PPoly& a) const {
        int r = 0, w = 1;
        for (int i = 0; i < e_; ++i) {
            r += (i < static_cast<int>(a.size()) ? a[i] : 0) * w;
            w *= p_;
        }
        return r;
    }

    void build_fq_tables() {
        fq_mul_.assign(static_cast<size_t>(q_) * q_, 0);
        detail::PPoly m(mod_e_.begin(), mod_e_.end());
        for (int a = 0; a < q_; ++a) {
            detail::PPoly pa(e_);
            for (int i = 0, x = a; i < e_; ++i, x /= p_) pa[i] = x % p_;
            detail::ptrim(pa);
            for (int b = 0; b <= a; ++b) {
                detail::PPoly pb(e_);
                for (int i = 0, x = b; i < e_; ++i, x /= p_) pb[i] = x % p_;
                detail::ptrim(pb);
                int r = fq_digits_to_idx(detail::pmod(detail::pmul(pa, pb, p_), m, p_));
                fq_mul_[static_cast<size_t>(a) * q_ + b] = static_cast<uint16_t>(r);
                fq_mul_[static_cast<size_t>(b) * q_ + a] = static_cast<uint16_t>(r);
            }
        }
    }

    uint16_t fq_mul(int a, int b) const { return fq_mul_[static_cast<size_t>(a) * q_ + b]; }
    int fq_add(int a, int b) const {
        int r = 0, w = 1;
        for (int i = 0; i < e_; ++i) {
            r += ((a % p_ + b % p_) % p_) * w;
            a /= p_; b /= p_; w *= p_;
        }
        return r;
    }
    int fq_neg(int a) const {
        int r = 0, w = 1;
        for (int i = 0; i < e_; ++i) {
            r += ((p_ - a % p_) % p_) * w;
            a /= p_; w *= p_;
        }
        return r;
    }

    void build_modulus_2() {
        for (long long k = 0; k < static_cast<long long>(q_) * q_; ++k) {
            int c0 = static_cast<int>(k % q_), c1 = static_cast<int>(k / q_);
            bool has_root = false;
            for (int x = 0; x < q_ && !has_root; ++x) {
                int v = fq_add(fq_add(fq_mul(x, x), fq_mul(c1, x)), c0);
                has_root = (v == 0);
            }
            if (!has_root) {
                mod_2_ = {static_cast<uint16_t>(c0), static_cast<uint16_t>(c1)};
                return;
            }
        }
        throw Error("no irreducible quadratic found");  // unreachable
    }

    void build_fq2_tables() {
        add_.assign(static_cast<size_t>(q2_) * q2_, 0);
        mul_.assign(static_cast<size_t>(q2_) * q2_, 0);
        neg_.assign(q2_, 0);
        int m0 = mod_2_[0], m1 = mod_2_[1];
        for (int x = 0; x < q2_; ++x) {
            int A1 = x % q_, B1 = x / q_;
            neg_[x] = static_cast<uint16_t>(fq_neg(A1) + q_ * fq_neg(B1));
            for (int y = 0; y < q2_; ++y) {
                int A2 = y % q_, B2 = y / q_;
                add_[idx(static_cast<uint16_t>(x), static_cast<uint16_t>(y))] =
                    static_cast<uint16_t>(fq_add(A1, A2) + q_ * fq_add(B1, B2));
                // h^2 = -m1 h - m0
                int bb = fq_mul(B1, B2);
                int lo = fq_add(fq_mul(A1, A2), fq_neg(fq_mul(bb, m0)));
                int hi = fq_add(fq_add(fq_mul(A1, B2), fq_mul(A2, B1)), fq_neg(fq_mul(bb, m1)));
                mul_[idx(static_cast<uint16_t>(x), static_cast<uint16_t>(y))] =
                    static_cast<uint16_t>(lo + q_ * hi);
            }
        }
        inv_.assign(q2_, 0);
        for (int x = 1; x < q2_; ++x) inv_[x] = pow(static_cast<uint16_t>(x), q2_ - 2);
        frob_.assign(q2_, 0);
        for (int x = 0; x < q2_; ++x) frob_[x] = pow(static_cast<uint16_t>(x), p_);
    }

    void find_zeta_ram() {
        if (q_ % 2 == 0) { zeta_ram_ = 1; return; }  // -1 = 1
        uint16_t minus_one = neg_[1];
        for (int x = 1; x < q2_; ++x) {
            if (pow(static_cast<uint16_t>(x), q_ - 1) == minus_one) {
                zeta_ram_ = static_cast<uint16_t>(x);
                return;
            }
        }
        throw Error("no (q-1)-th root of -1 in F_q2");  // unreachable: q odd
    }

    int p_, e_, q_, q2_;
    std::vector<int> mod_e_;          // F_p coefficients, monic, length e+1
    std::vector<uint16_t> mod_2_;     // {c0, c1}: x^2 + c1 x + c0 over F_q
    std::vector<uint16_t> fq_mul_;
    std::vector<uint16_t> add_, mul_, neg_, inv_, frob_;
    uint16_t zeta_ram_ = 1;
};

struct FieldElement {
    const Field* F = nullptr;
    uint16_t v = 0;

    FieldElement() = default;
    FieldElement(const Field* f, uint16_t val) : F(f), v(val) {}

    bool is_zero() const { return v == 0; }

    friend FieldElement operator+(FieldElement a, FieldElement b) { return {a.F, a.F->add(a.v, b.v)}; }
    friend FieldElement operator-(FieldElement a, FieldElement b) { return {a.F, a.F->sub(a.v, b.v)}; }
    friend FieldElement operator*(FieldElement a, FieldElement b) { return {a.F, a.F->mul(a.v, b.v)}; }
    friend FieldElement operator/(FieldElement a, FieldElement b) { return {a.F, a.F->div(a.v, b.v)}; }
    FieldElement operator-() const { return {F, F->neg(v)}; }
    friend bool operator==(FieldElement a, FieldElement b) { return a.v == b.v; }
    friend bool operator!=(FieldElement a, FieldElement b) { return a.v != b.v; }

    FieldElement inv() const { return {F, F->inv(v)}; }
    FieldElement pow(long long n) const { return {F, F->pow(v, n)}; }
    FieldElement frobenius(long long m) const { return {F, F->frobenius(v, m)}; }
    std::string str() const { return F->to_string(v); }
};

inline FieldElement Field::elem(long long n) const { return {this, from_int(n)}; }
inline FieldElement Field::elem_idx(uint16_t v) const { return {this, v}; }

// --- monic enumeration -----------------------------------------------------
//
// Monic degree-d polynomials over F_q in base-q counting order: the k-th
// polynomial has coefficient c_m = digit m of k (c_0 least significant),
// coefficients as canonical F_q indices.  Used as the deterministic order of
// zeta partial sums.

// Applies fn to each coefficient vector c[0..d] (c[d] = 1).  The vector is
// reused between calls.
template <class Fn>
inline void for_each_monic(const Field& F, int d, Fn&& fn) {
    if (d < 0) throw Error("enumerate_monic: negative degree");
    std::vector<uint16_t> c(static_cast<size_t>(d) + 1, 0);
    c[d] = 1;
    int q = F.q();
    for (;;) {
        fn(static_cast<const std::vector<uint16_t>&>(c));
        int i = 0;
        while (i < d && c[i] == static_cast<uint16_t>(q - 1)) c[i++] = 0;
        if (i == d) break;
        ++c[i];
    }
}

inline std::vector<std::vector<uint16_t>> enumerate_monic(const Field& F, int d) {
    std::vector<std::vector<uint16_t>> out;
    for_each_monic(F, d, [&](const std::vector<uint16_t>& c) { out.push_back(c); });
    return out;
}

}  // namespace carlitz
