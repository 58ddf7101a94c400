#pragma once

// Truncated formal Laurent series a_k t^{-k} over an exact coefficient
// domain, and the Mahler-product generator for g_P. Truncation is explicit:
// coefficients beyond the stored window are unknown, never silently zero.

#include "tmtlc/poly.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tmtlc {

struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class K>
class LaurentSeries {
  public:
    // coeffs[i] is the coefficient a_{kmin+i} of t^{-(kmin+i)}; indices above
    // kmin + coeffs.size() - 1 are unknown, indices below kmin are zero.
    LaurentSeries(long kmin, std::vector<K> coeffs)
        : kmin_(kmin), c_(std::move(coeffs)) {
        if (c_.empty()) throw undefined_input("LaurentSeries: empty coefficient window");
        normalize_lead();
    }

    long trunc() const { return kmin_ + static_cast<long>(c_.size()) - 1; }
    long kmin() const { return kmin_; }
    bool known(long k) const { return k <= trunc(); }

    K coeff(long k) const {
        if (k > trunc())
            throw precision_error("LaurentSeries: coefficient index " + std::to_string(k) +
                                  " beyond truncation order " + std::to_string(trunc()));
        if (k < kmin_) return dom::zero_like(c_.front());
        return c_[static_cast<size_t>(k - kmin_)];
    }

    // Test hook: inject a coefficient defect.
    void set_coeff(long k, K v) {
        if (k < kmin_ || k > trunc()) throw undefined_input("set_coeff: out of window");
        c_[static_cast<size_t>(k - kmin_)] = std::move(v);
    }

    bool all_known_zero() const {
        for (const K& x : c_)
            if (!dom::is_zero(x)) return false;
        return true;
    }

    // Lowest index k with a_k != 0, if any is known.
    std::optional<long> first_nonzero() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!dom::is_zero(c_[i])) return kmin_ + static_cast<long>(i);
        return std::nullopt;
    }

    K exemplar() const { return dom::zero_like(c_.front()); }

    // t^j * alpha (j may be negative).
    LaurentSeries shifted(long j) const { return LaurentSeries(kmin_ - j, c_); }

    // alpha(t^d), d >= 2: coefficient a_k moves to index d*k.
    LaurentSeries substituted(long d) const {
        if (d < 2) throw undefined_input("substituted: d must be >= 2");
        long nk = d * kmin_;
        long nt = d * trunc();
        std::vector<K> out(static_cast<size_t>(nt - nk) + 1, exemplar());
        for (size_t i = 0; i < c_.size(); ++i)
            out[static_cast<size_t>(d) * i] = c_[i];
        return LaurentSeries(nk, std::move(out));
    }

    // Q(t) * alpha for a polynomial Q; known window shrinks by deg Q.
    LaurentSeries multiplied(const Poly<K>& q) const {
        if (q.is_zero()) throw undefined_input("multiplied: zero polynomial");
        long dq = q.degree();
        long nk = kmin_ - dq;
        long nt = trunc() - dq;
        if (nt < nk) throw precision_error("multiplied: window exhausted");
        std::vector<K> out;
        out.reserve(static_cast<size_t>(nt - nk) + 1);
        for (long k = nk; k <= nt; ++k) {
            K acc = exemplar();
            for (long j = 0; j <= dq; ++j) acc = acc + q.coeff(j) * coeff(k + j);
            out.push_back(std::move(acc));
        }
        return LaurentSeries(nk, std::move(out));
    }

    // Coefficient-wise equality on all indices <= kmax known to both sides.
    friend bool equal_to_order(const LaurentSeries& a, const LaurentSeries& b, long kmax) {
        if (a.trunc() < kmax || b.trunc() < kmax)
            throw precision_error("equal_to_order: insufficient coefficients");
        for (long k = std::min(a.kmin_, b.kmin_); k <= kmax; ++k)
            if (!(a.coeff(k) == b.coeff(k))) return false;
        return true;
    }

  private:
    // Known-zero leading coefficients are absorbed into the below-window
    // zero convention so that the lead coefficient is nonzero when one exists.
    void normalize_lead() {
        size_t i = 0;
        while (i + 1 < c_.size() && dom::is_zero(c_[i])) ++i;
        if (i > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(i));
            kmin_ += static_cast<long>(i);
        }
    }

    long kmin_;
    std::vector<K> c_;
};

template <class K>
struct Measure {
    long nu;        // valuation: degree of the leading term
    Rat abs;        // |alpha| = 2^nu
    Rat norm;       // distance to nearest polynomial, 2^{-k0}; 0 if no tail known
    bool norm_truncation_limited;  // true when norm==0 merely for lack of data
};

template <class K>
Measure<K> measure(const LaurentSeries<K>& a) {
    auto fnz = a.first_nonzero();
    if (!fnz) throw undefined_input("measure: valuation of zero-range series undefined");
    Measure<K> m{};
    m.nu = -*fnz;
    m.abs = (m.nu >= 0) ? Rat(Int(1) << m.nu) : Rat(1, Int(1) << (-m.nu));
    m.norm = 0;
    m.norm_truncation_limited = true;
    for (long k = std::max(1L, a.kmin()); k <= a.trunc(); ++k) {
        if (!dom::is_zero(a.coeff(k))) {
            m.norm = Rat(1, Int(1) << k);
            m.norm_truncation_limited = false;
            break;
        }
    }
    return m;
}

// ---- Mahler generator ----

template <class K>
struct MahlerSpec {
    Poly<K> P;  // polynomial in t, monic, deg >= 1 (deg 0 content allowed for t+0)
    long d;     // substitution exponent, >= 2
};

// g_P(t) = t^{-1} * prod_{i>=0} P*(t^{-d^i}) with P*(t) = t^{deg P} P(1/t),
// truncated so a_1..a_N are exact. Requires monic P so every factor is
// 1 + (lower order).
template <class K>
LaurentSeries<K> expand_product(const MahlerSpec<K>& spec, long N) {
    if (spec.d < 2) throw undefined_input("expand_product: d must be >= 2");
    if (spec.P.degree() < 1) throw undefined_input("expand_product: deg P must be >= 1");
    K one = dom::one_like(spec.P.lead());
    if (!(spec.P.lead() == one)) throw undefined_input("expand_product: P must be monic");

    long dp = spec.P.degree();
    // tail[m] is the coefficient of t^{-m} in the product; result a_{m+1} = tail[m]
    std::vector<K> tail(static_cast<size_t>(N), dom::zero_like(one));
    tail[0] = one;
    // factor i contributes exponents that are multiples of d^i; beyond N-1 it is 1
    for (long step = 1; step <= N - 1; step *= spec.d) {
        // P*(x) = sum_j P.coeff(dp - j) x^j; constant term is P.lead() = 1
        for (long m = N - 1; m >= 0; --m) {
            K acc = tail[static_cast<size_t>(m)];
            for (long j = 1; j <= dp; ++j) {
                long src = m - j * step;
                if (src < 0) break;
                acc = acc + spec.P.coeff(dp - j) * tail[static_cast<size_t>(src)];
            }
            tail[static_cast<size_t>(m)] = std::move(acc);
        }
        if (step > (N - 1) / spec.d) break;  // avoid overflow in step *= d
    }
    return LaurentSeries<K>(1, std::move(tail));
}

// Closed form for d=2, P = t+u: a_n = u^{tau2(n-1)}, with 0^0 = 1.
template <class K>
K coeff_closed_form(const K& u, long n) {
    if (n < 1) throw undefined_input("coeff_closed_form: n must be >= 1");
    long e = tau2(Int(n - 1));
    if (e == 0) return dom::one_like(u);
    return dom::pow_long(u, e);
}

// The functional equation g_P(t) = t^{d-1-deg P} P(t) g_P(t^d), checked
// coefficient-wise to order N. For d=2 and linear P the monomial factor is 1.
template <class K>
bool functional_equation_check(const MahlerSpec<K>& spec, long N) {
    if (N < spec.d) throw undefined_input("functional_equation_check: N < d");
    auto g = expand_product(spec, N);
    return functional_equation_check_against(spec, g, N);
}

// Same identity, against a caller-provided series (fault-injection hook).
template <class K>
bool functional_equation_check_against(const MahlerSpec<K>& spec, const LaurentSeries<K>& g,
                                       long N) {
    auto gfine = expand_product(spec, N);
    auto rhs = gfine.substituted(spec.d).multiplied(spec.P).shifted(spec.d - 1 - spec.P.degree());
    return equal_to_order(g, rhs, N);
}

// a_n * a_{2^D + 1 - n} = u^D for 1 <= n <= 2^D (d=2, P = t+u).
template <class K>
bool mirror_identity_check(const K& u, long D) {
    if (dom::is_zero(u)) throw undefined_input("mirror_identity_check: u = 0");
    if (D < 1) throw undefined_input("mirror_identity_check: D must be >= 1");
    long M = 1L << D;
    MahlerSpec<K> spec{Poly<K>(std::vector<K>{u, dom::one_like(u)}), 2};
    auto g = expand_product(spec, M);
    K target = dom::pow_long(u, D);
    for (long n = 1; n <= M; ++n)
        if (!(g.coeff(n) * g.coeff(M + 1 - n) == target)) return false;
    return true;
}

// g_u helper: the Mahler datum {P = t+u, d = 2}.
template <class K>
MahlerSpec<K> gu_spec(const K& u) {
    return MahlerSpec<K>{Poly<K>(std::vector<K>{u, dom::one_like(u)}), 2};
}

}  // namespace tmtlc
