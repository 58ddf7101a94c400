#pragma once

// Dense univariate polynomials over an exact coefficient domain, ascending
// coefficient order, canonical form (no trailing zero). The zero polynomial
// has an empty coefficient list and degree "minus infinity".

#include "tmtlc/domain.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace tmtlc {

inline constexpr long kNegInfDeg = std::numeric_limits<long>::min();

template <class K>
class Poly;

namespace detail {

// Kronecker-substitution product for integer polynomials: both factors are
// packed into a single integer at u = 2^slot, multiplied with GMP, and the
// balanced digits of the product are read back. The slot width is sized from
// the factors so every product coefficient fits.
inline std::vector<Int> mul_int_kronecker(const std::vector<Int>& a, const std::vector<Int>& b);

inline bool want_kronecker(size_t la, size_t lb) { return la * lb >= 1024 && la > 4 && lb > 4; }

}  // namespace detail

template <class K>
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit Poly(K constant) {
        if (!dom::is_zero(constant)) c_.push_back(std::move(constant));
    }

    static Poly monomial(const K& coeff, long deg) {
        if (dom::is_zero(coeff)) return Poly();
        std::vector<K> v(static_cast<size_t>(deg) + 1, dom::zero_like(coeff));
        v.back() = coeff;
        return Poly(std::move(v));
    }

    long degree() const { return c_.empty() ? kNegInfDeg : static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<K>& coeffs() const { return c_; }

    const K& lead() const { return c_.back(); }

    // Lowest-order nonzero coefficient; precondition: nonzero polynomial.
    const K& trail() const {
        for (const K& x : c_)
            if (!dom::is_zero(x)) return x;
        return c_.front();  // unreachable for canonical nonzero input
    }

    long low_order() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!dom::is_zero(c_[i])) return static_cast<long>(i);
        return kNegInfDeg;
    }

    K coeff(long i) const {
        if (i < 0 || i >= static_cast<long>(c_.size()))
            return c_.empty() ? K{} : dom::zero_like(c_.front());
        return c_[static_cast<size_t>(i)];
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), a.exemplar_zero(b));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    Poly operator-() const {
        Poly r = *this;
        for (K& x : r.c_) x = -x;
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        if constexpr (std::is_same_v<K, Int>) {
            if (detail::want_kronecker(a.c_.size(), b.c_.size()))
                return Poly(detail::mul_int_kronecker(a.c_, b.c_));
        }
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, dom::zero_like(a.c_.front()));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    Poly scaled(const K& s) const {
        Poly r = *this;
        for (K& x : r.c_) x = x * s;
        r.trim();
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Quotient/remainder over a field domain; deg(rem) < deg(b).
    friend std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        static_assert(dom::is_field_v<K>, "divrem requires field coefficients");
        if (b.is_zero()) throw undefined_input("divrem: zero divisor");
        if (a.degree() < b.degree()) return {Poly(), a};
        K linv = dom::inv(b.lead());
        std::vector<K> rem = a.c_;
        std::vector<K> quo(a.c_.size() - b.c_.size() + 1, dom::zero_like(b.lead()));
        for (long i = static_cast<long>(rem.size()) - 1;
             i >= static_cast<long>(b.c_.size()) - 1; --i) {
            if (dom::is_zero(rem[i])) continue;
            K q = rem[i] * linv;
            long shift = i - b.degree();
            quo[static_cast<size_t>(shift)] = q;
            for (size_t j = 0; j < b.c_.size(); ++j)
                rem[static_cast<size_t>(shift) + j] = rem[static_cast<size_t>(shift) + j] - q * b.c_[j];
        }
        rem.resize(b.c_.size() - 1, dom::zero_like(b.lead()));
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }

    Poly monic() const {
        static_assert(dom::is_field_v<K>);
        if (is_zero()) return *this;
        return scaled(dom::inv(lead()));
    }

    // Monic gcd over a field domain.
    friend Poly gcd(Poly a, Poly b) {
        static_assert(dom::is_field_v<K>, "gcd requires field coefficients");
        while (!b.is_zero()) {
            auto [q, r] = divrem(a, b);
            (void)q;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    K eval(const K& x) const {
        if (is_zero()) return dom::zero_like(x);
        K acc = dom::zero_like(x);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // Substitution t -> t^d.
    Poly compose_power(long d) const {
        if (is_zero() || d == 1) return *this;
        std::vector<K> r(static_cast<size_t>(degree()) * d + 1, dom::zero_like(c_.front()));
        for (size_t i = 0; i < c_.size(); ++i) r[i * static_cast<size_t>(d)] = c_[i];
        return Poly(std::move(r));
    }

    // Coefficient reversal: t^{deg} * p(1/t).
    Poly reversed() const {
        std::vector<K> r(c_.rbegin(), c_.rend());
        return Poly(std::move(r));
    }

  private:
    void trim() {
        while (!c_.empty() && dom::is_zero(c_.back())) c_.pop_back();
    }
    K exemplar_zero(const Poly& other) const {
        if (!c_.empty()) return dom::zero_like(c_.front());
        if (!other.c_.empty()) return dom::zero_like(other.c_.front());
        return K{};
    }

    std::vector<K> c_;
};

// ---- Integer-coefficient helpers ----

inline Int content(const Poly<Int>& p) {
    Int g = 0;
    for (const Int& x : p.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

// Primitive part with positive leading coefficient.
inline Poly<Int> primitive(const Poly<Int>& p) {
    if (p.is_zero()) return p;
    Int g = content(p);
    if (p.lead() < 0) g = -g;
    std::vector<Int> r;
    r.reserve(p.coeffs().size());
    for (const Int& x : p.coeffs()) r.push_back(x / g);
    return Poly<Int>(std::move(r));
}

// Divide every coefficient by g (must divide exactly).
inline Poly<Int> div_scalar_exact(const Poly<Int>& p, const Int& g) {
    if (g == 0) throw undefined_input("div_scalar_exact: zero divisor");
    std::vector<Int> r;
    r.reserve(p.coeffs().size());
    for (const Int& x : p.coeffs()) {
        if (x % g != 0) throw undefined_input("div_scalar_exact: inexact");
        r.push_back(x / g);
    }
    return Poly<Int>(std::move(r));
}

inline Poly<Rat> to_rational(const Poly<Int>& p) {
    std::vector<Rat> r;
    r.reserve(p.coeffs().size());
    for (const Int& x : p.coeffs()) r.emplace_back(x);
    return Poly<Rat>(std::move(r));
}

namespace detail {

// Pack signed coefficients at u = 2^(8*sb): positive and negative parts are
// written into byte buffers at their slot offsets and imported once each.
inline Int kron_pack(const std::vector<Int>& v, size_t sb) {
    std::vector<unsigned char> pos(sb * v.size() + 8, 0), neg(sb * v.size() + 8, 0);
    bool any_neg = false;
    for (size_t i = 0; i < v.size(); ++i) {
        int sgn = mpz_sgn(v[i].get_mpz_t());
        if (sgn == 0) continue;
        unsigned char* dst = (sgn > 0) ? &pos[i * sb] : &neg[i * sb];
        if (sgn < 0) any_neg = true;
        mpz_export(dst, nullptr, -1, 1, -1, 0, v[i].get_mpz_t());
    }
    Int p, q;
    mpz_import(p.get_mpz_t(), pos.size(), -1, 1, -1, 0, pos.data());
    if (any_neg) {
        mpz_import(q.get_mpz_t(), neg.size(), -1, 1, -1, 0, neg.data());
        p -= q;
    }
    return p;
}

// Inverse of kron_pack for balanced digits |c| < 2^(8*sb - 1): exports once
// and walks the buffer with borrow propagation.
inline std::vector<Int> kron_unpack(const Int& x, size_t sb, size_t len) {
    std::vector<Int> out(len);
    if (x == 0) return out;
    bool neg = x < 0;
    size_t need = (mpz_sizeinbase(x.get_mpz_t(), 2) + 7) / 8 + 1;
    std::vector<unsigned char> buf(std::max(sb * len + 16, need), 0);
    size_t written = 0;
    if (neg) {
        Int ax = -x;
        mpz_export(buf.data(), &written, -1, 1, -1, 0, ax.get_mpz_t());
    } else {
        mpz_export(buf.data(), &written, -1, 1, -1, 0, x.get_mpz_t());
    }
    Int c, full = 1, half = 1;
    mpz_mul_2exp(full.get_mpz_t(), full.get_mpz_t(), 8 * sb);
    mpz_mul_2exp(half.get_mpz_t(), half.get_mpz_t(), 8 * sb - 1);
    int carry = 0;
    for (size_t i = 0; i < len; ++i) {
        mpz_import(c.get_mpz_t(), sb, -1, 1, -1, 0, &buf[i * sb]);
        if (carry) c += 1;
        if (c >= half) {
            c -= full;
            carry = 1;
        } else {
            carry = 0;
        }
        out[i] = neg ? Int(-c) : c;
    }
    return out;
}

inline size_t kron_max_bits(const std::vector<Int>& v) {
    size_t bits = 1;
    for (const Int& x : v)
        if (x != 0) bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
    return bits;
}

// Packed exact division: div_exact via mpz_divexact on Kronecker images. The
// slot width is guessed from the inputs; the candidate quotient is verified
// by multiplying back, growing the slot on mismatch. Returns false when the
// division is not exact or no slot fits.
inline bool div_exact_kronecker(const Poly<Int>& a, const Poly<Int>& b, Poly<Int>& out) {
    size_t bits_a = 1, bits_b = 1;
    for (const Int& x : a.coeffs())
        if (x != 0) bits_a = std::max(bits_a, mpz_sizeinbase(x.get_mpz_t(), 2));
    for (const Int& x : b.coeffs())
        if (x != 0) bits_b = std::max(bits_b, mpz_sizeinbase(x.get_mpz_t(), 2));
    long dq = a.degree() - b.degree();
    for (size_t slot = bits_a + bits_b + 16; slot <= 4 * (bits_a + bits_b) + 256; slot *= 2) {
        size_t sb = (slot + 7) / 8;
        Int pa = kron_pack(a.coeffs(), sb), pb = kron_pack(b.coeffs(), sb);
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), pa.get_mpz_t(), pb.get_mpz_t());
        if (r != 0) continue;  // slot too small or division inexact
        Poly<Int> cand(kron_unpack(q, sb, static_cast<size_t>(dq) + 1));
        if (cand * b == a) {
            out = std::move(cand);
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Exact division over Z[u]; throws if the division is not exact. Large
// operands go through the packed fast path, small ones through synthetic
// division.
inline Poly<Int> div_exact(const Poly<Int>& a, const Poly<Int>& b) {
    if (b.is_zero()) throw undefined_input("div_exact: zero divisor");
    if (a.is_zero()) return a;
    if (a.degree() < b.degree()) throw undefined_input("div_exact: inexact division");
    if (a.degree() >= 64 && b.degree() >= 16) {
        Poly<Int> out;
        if (detail::div_exact_kronecker(a, b, out)) return out;
        // fall through: either inexact (synthetic path reports it) or the
        // packed guesses missed; the slow path is always correct
    }
    std::vector<Int> rem = a.coeffs();
    long db = b.degree();
    const Int& lb = b.lead();
    std::vector<Int> quo(static_cast<size_t>(a.degree() - db) + 1);
    for (long i = a.degree(); i >= db; --i) {
        Int& top = rem[static_cast<size_t>(i)];
        if (top == 0) continue;
        Int q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        if (r != 0) throw undefined_input("div_exact: inexact division");
        long shift = i - db;
        quo[static_cast<size_t>(shift)] = q;
        for (long j = 0; j <= db; ++j)
            rem[static_cast<size_t>(shift + j)] -= q * b.coeff(j);
    }
    for (const Int& x : rem)
        if (x != 0) throw undefined_input("div_exact: inexact division");
    return Poly<Int>(std::move(quo));
}

namespace detail {

inline std::vector<Int> mul_int_kronecker(const std::vector<Int>& a, const std::vector<Int>& b) {
    size_t nconv = std::min(a.size(), b.size());
    size_t lg = 0;
    while ((size_t{1} << lg) < nconv) ++lg;
    // |product coeff| <= nconv * 2^(bits_a + bits_b); balanced digits need
    // one sign bit plus one bit of slack.
    size_t slot = kron_max_bits(a) + kron_max_bits(b) + lg + 2;
    size_t sb = (slot + 7) / 8;
    Int prod = kron_pack(a, sb) * kron_pack(b, sb);
    return kron_unpack(prod, sb, a.size() + b.size() - 1);
}

// Fraction-free pseudo-remainder: lc(b)^{deg a - deg b + 1} * a mod b.
inline Poly<Int> pseudo_rem(Poly<Int> a, const Poly<Int>& b) {
    long db = b.degree();
    const Int& c = b.lead();
    while (!a.is_zero() && a.degree() >= db) {
        long shift = a.degree() - db;
        Poly<Int> scaled = a.scaled(c) - b.scaled(a.lead()) * Poly<Int>::monomial(Int(1), shift);
        a = std::move(scaled);
    }
    return a;
}

// Strip the largest power of u dividing p (valid inside the PRS once the
// running gcd is known to have nonzero trailing coefficient).
inline Poly<Int> strip_u_power(const Poly<Int>& p) {
    long lo = p.low_order();
    if (lo <= 0) return p;
    std::vector<Int> v(p.coeffs().begin() + lo, p.coeffs().end());
    return Poly<Int>(std::move(v));
}

}  // namespace detail

namespace detail {

inline uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline uint64_t invmod64(uint64_t a, uint64_t p) {
    // extended Euclid; p prime, a nonzero mod p
    int64_t t = 0, nt = 1;
    uint64_t r = p, nr = a % p;
    while (nr != 0) {
        uint64_t q = r / nr;
        int64_t tmp = t - static_cast<int64_t>(q) * nt;
        t = nt;
        nt = tmp;
        uint64_t rt = r - q * nr;
        r = nr;
        nr = rt;
    }
    return t < 0 ? static_cast<uint64_t>(t + static_cast<int64_t>(p)) : static_cast<uint64_t>(t);
}

// monic gcd in F_p[u]; inputs as residue vectors, ascending
inline std::vector<uint64_t> gcd_modp(std::vector<uint64_t> a, std::vector<uint64_t> b, uint64_t p) {
    auto deg = [](const std::vector<uint64_t>& v) {
        for (size_t i = v.size(); i-- > 0;)
            if (v[i] != 0) return static_cast<long>(i);
        return -1L;
    };
    long da = deg(a), db = deg(b);
    if (da < db) {
        std::swap(a, b);
        std::swap(da, db);
    }
    while (db >= 0) {
        uint64_t linv = invmod64(b[static_cast<size_t>(db)], p);
        while (da >= db) {
            uint64_t c = mulmod64(a[static_cast<size_t>(da)], linv, p);
            if (c != 0)
                for (long j = 0; j <= db; ++j) {
                    uint64_t s = mulmod64(c, b[static_cast<size_t>(j)], p);
                    uint64_t& t = a[static_cast<size_t>(da - db + j)];
                    t = (t >= s) ? t - s : t + (p - s);
                }
            while (da >= 0 && a[static_cast<size_t>(da)] == 0) --da;
        }
        std::swap(a, b);
        std::swap(da, db);
    }
    a.resize(static_cast<size_t>(da) + 1);
    uint64_t linv = invmod64(a.back(), p);
    for (uint64_t& x : a) x = mulmod64(x, linv, p);
    return a;
}

inline const std::vector<uint64_t>& gcd_primes() {
    static const std::vector<uint64_t> primes = [] {
        std::vector<uint64_t> v;
        Int n = (Int(1) << 62) - 1;
        while (v.size() < 128) {
            mpz_nextprime(n.get_mpz_t(), n.get_mpz_t());
            v.push_back(mpz_get_ui(n.get_mpz_t()));
        }
        return v;
    }();
    return primes;
}

inline std::vector<uint64_t> residues(const Poly<Int>& f, uint64_t p) {
    std::vector<uint64_t> v(f.coeffs().size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = mpz_fdiv_ui(f.coeffs()[i].get_mpz_t(), p);
    return v;
}

inline bool divides_exactly(const Poly<Int>& d, const Poly<Int>& a) {
    try {
        div_exact(a, d);
        return true;
    } catch (const undefined_input&) {
        return false;
    }
}

// Brown's modular gcd for primitive inputs with positive degree; the CRT
// lift is verified by exact division, so unlucky primes cannot leak through.
// Returns false only if the prime pool runs out.
inline bool gcd_int_modular(const Poly<Int>& a, const Poly<Int>& b, Poly<Int>& out) {
    Int lg;
    mpz_gcd(lg.get_mpz_t(), a.lead().get_mpz_t(), b.lead().get_mpz_t());
    long best_deg = -1;
    std::vector<Int> lift;
    Int modulus = 1;
    bool stable = false;
    for (uint64_t p : gcd_primes()) {
        if (mpz_fdiv_ui(a.lead().get_mpz_t(), p) == 0 || mpz_fdiv_ui(b.lead().get_mpz_t(), p) == 0)
            continue;
        std::vector<uint64_t> g = gcd_modp(residues(a, p), residues(b, p), p);
        long dg = static_cast<long>(g.size()) - 1;
        if (dg == 0) {
            out = Poly<Int>(Int(1));
            return true;
        }
        if (best_deg >= 0 && dg > best_deg) continue;  // unlucky prime
        if (best_deg < 0 || dg < best_deg) {
            best_deg = dg;
            lift.assign(g.size(), Int(0));
            modulus = 1;
            stable = false;
        }
        // scale the monic image so its lead matches gcd(lc a, lc b) mod p
        uint64_t scale = mpz_fdiv_ui(lg.get_mpz_t(), p);
        bool changed = false;
        Int half = modulus * p;  // full modulus after this prime
        uint64_t minv = mpz_fdiv_ui(modulus.get_mpz_t(), p);
        minv = invmod64(minv, p);
        for (size_t i = 0; i < g.size(); ++i) {
            uint64_t target = mulmod64(g[i], scale, p);
            uint64_t cur = mpz_fdiv_ui(lift[i].get_mpz_t(), p);
            uint64_t delta = (target >= cur) ? target - cur : target + (p - cur);
            if (delta != 0) {
                Int x = lift[i] + modulus * Int(mulmod64(delta, minv, p));
                // balanced representative
                Int m2 = half / 2;
                Int r;
                mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), half.get_mpz_t());
                if (r > m2) r -= half;
                if (r != lift[i]) {
                    lift[i] = r;
                    changed = true;
                }
            }
        }
        modulus = half;
        if (!changed && modulus > 1) {
            if (stable) {
                Poly<Int> cand = primitive(Poly<Int>(lift));
                if (!cand.is_zero() && divides_exactly(cand, a) && divides_exactly(cand, b)) {
                    out = std::move(cand);
                    return true;
                }
                stable = false;
            } else {
                stable = true;
            }
        } else {
            stable = false;
        }
    }
    return false;
}

}  // namespace detail

// gcd over Z[u]; result primitive with positive leading coefficient (the
// integer content gcd is intentionally dropped). Small inputs go through a
// primitive PRS, large ones through the modular algorithm.
inline Poly<Int> gcd_int(const Poly<Int>& a, const Poly<Int>& b) {
    if (a.is_zero()) return primitive(b);
    if (b.is_zero()) return primitive(a);
    long ulow = std::min(a.low_order(), b.low_order());
    Poly<Int> x = primitive(detail::strip_u_power(a));
    Poly<Int> y = primitive(detail::strip_u_power(b));
    if (x.degree() < y.degree()) std::swap(x, y);
    Poly<Int> g;
    bool done = false;
    if (y.degree() >= 12) {
        done = detail::gcd_int_modular(x, y, g);
        if (done && g.degree() == 0) g = Poly<Int>(Int(1));
    }
    if (!done) {
        while (!y.is_zero() && y.degree() > 0) {
            Poly<Int> r = detail::pseudo_rem(x, y);
            x = std::move(y);
            y = r.is_zero() ? std::move(r) : primitive(detail::strip_u_power(r));
        }
        g = y.is_zero() ? std::move(x) : Poly<Int>(Int(1));
    }
    if (ulow > 0) g = g * Poly<Int>::monomial(Int(1), ulow);
    return g;
}

// ---- Text rendering: "u^3 - 2*u + 1" ----

template <class K>
std::string to_string(const Poly<K>& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (long i = p.degree(); i >= 0; --i) {
        K c = p.coeff(i);
        if (dom::is_zero(c)) continue;
        std::string cs = to_string(c);
        bool neg = !cs.empty() && cs[0] == '-';
        if (out.empty()) {
            if (neg) {
                out += "-";
                cs = cs.substr(1);
            }
        } else {
            out += neg ? " - " : " + ";
            if (neg) cs = cs.substr(1);
        }
        bool unit_coeff = (cs == "1") && i > 0;
        if (i == 0) {
            out += cs;
        } else {
            if (!unit_coeff) out += cs + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

namespace dom {

// Z[u] as a coefficient domain (a ring; division is partial).
template <>
struct traits<Poly<Int>> {
    static constexpr bool is_field = false;
    static Poly<Int> zero(const Poly<Int>&) { return Poly<Int>(); }
    static Poly<Int> one(const Poly<Int>&) { return Poly<Int>(Int(1)); }
    static Poly<Int> from_long(const Poly<Int>&, long n) { return Poly<Int>(Int(n)); }
    static bool is_zero(const Poly<Int>& p) { return p.is_zero(); }
    static Poly<Int> inv(const Poly<Int>&) { throw undefined_input("Z[u]: not a field"); }
};

}  // namespace dom

}  // namespace tmtlc
