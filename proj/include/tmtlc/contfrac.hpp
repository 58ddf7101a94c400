#pragma once

// Continued fractions of Laurent series over a field domain, in the
// normalized form b0 + K(beta_i / b*_i) with monic partial quotients.
// Expansion runs the Euclidean algorithm on A / t^N where A collects the
// known coefficients; remainders are kept monic and the discarded leading
// coefficients reproduce the beta_i exactly.

#include "tmtlc/laurent.hpp"
#include "tmtlc/ratfunc.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace tmtlc {

template <class K>
struct CFTerm {
    K beta;                       // nonzero scalar
    Poly<K> bstar;                // monic, deg >= 1
    std::optional<K> alpha_lin;   // set when bstar = t + alpha
};

template <class K>
struct ContinuedFraction {
    Poly<K> b0;
    std::vector<CFTerm<K>> terms;   // only certified terms are emitted
    long certified_count = 0;
    bool terminating = false;       // remainder vanished on the known window
    bool hit_max_terms = false;     // maxTerms reached before certification limit

    const CFTerm<K>& term(long i) const { return terms[static_cast<size_t>(i - 1)]; }

    long max_quotient_degree() const {
        long m = 0;
        for (const auto& t : terms) m = std::max(m, t.bstar.degree());
        return m;
    }
};

template <class K>
struct Convergent {
    Poly<K> p;
    Poly<K> q;
    long s = 0;  // deg q
    bool coprime = true;
};

template <class K>
ContinuedFraction<K> cf_expand(const LaurentSeries<K>& alpha, long max_terms) {
    static_assert(dom::is_field_v<K>, "cf_expand requires a field domain");
    const long N = alpha.trunc();
    K one = dom::one_like(alpha.coeff(alpha.kmin()));

    // alpha = A / t^N on the known window
    std::vector<K> acoef(static_cast<size_t>(N - alpha.kmin()) + 1, dom::zero_like(one));
    for (long k = alpha.kmin(); k <= N; ++k)
        acoef[static_cast<size_t>(N - k)] = alpha.coeff(k);
    Poly<K> A(std::move(acoef));
    Poly<K> B = Poly<K>::monomial(one, N);

    ContinuedFraction<K> cf;
    if (A.is_zero()) {
        cf.terminating = true;
        return cf;
    }
    auto [b0, r1] = divrem(A, B);
    cf.b0 = b0;

    if (r1.is_zero()) {
        cf.terminating = true;
        return cf;
    }

    // Monic remainder chain; the normalization constants are the beta_i.
    std::vector<long> s{0};  // s[k] = deg q_k
    Poly<K> g_prev = B;
    K c = r1.lead();
    Poly<K> g_cur = r1.monic();
    std::vector<CFTerm<K>> raw;
    bool terminated = false;

    while (static_cast<long>(raw.size()) < max_terms + 1 && s.back() <= N) {
        auto [Q, h] = divrem(g_prev, g_cur);
        CFTerm<K> term;
        term.beta = c;
        term.bstar = Q;
        if (Q.degree() == 1) term.alpha_lin = Q.coeff(0);
        s.push_back(s.back() + Q.degree());
        raw.push_back(std::move(term));
        if (h.is_zero()) {
            terminated = true;
            break;
        }
        c = h.lead();
        g_prev = std::move(g_cur);
        g_cur = h.monic();
    }

    long emitted = static_cast<long>(raw.size());
    // A zero Euclid remainder proves alpha rational only when the whole
    // window backs it: deg q_final must satisfy 2 * s_final <= N.
    if (terminated && 2 * s.back() <= N) {
        cf.terminating = true;
        cf.terms = std::move(raw);
        cf.certified_count = emitted;
        return cf;
    }

    // Term k is certified when s_k + s_{k+1} <= N: by the Legendre analogue
    // the expansion through term k consumes only known coefficients.
    long cert = 0;
    for (long k = 1; k + 1 <= emitted; ++k)
        if (s[static_cast<size_t>(k)] + s[static_cast<size_t>(k + 1)] <= N) cert = k;
    if (emitted == max_terms + 1 && cert == max_terms) {
        // stopped by maxTerms, not by precision
        cf.hit_max_terms = true;
    }
    raw.resize(static_cast<size_t>(cert));
    cf.terms = std::move(raw);
    cf.certified_count = cert;
    return cf;
}

namespace detail {

// Bivariate chain element: polynomial in t, ascending, coefficients in Z[u].
using TPoly = std::vector<Poly<Int>>;

inline long tdeg(const TPoly& f) {
    for (long i = static_cast<long>(f.size()) - 1; i >= 0; --i)
        if (!f[i].is_zero()) return i;
    return -1;
}

struct TPseudoDiv {
    TPoly quo, rem;
    Poly<Int> scale;  // scale * a = quo * b + rem
};

// Fraction-free pseudo-division in t over Z[u].
inline TPseudoDiv tpoly_pseudo_div(const TPoly& a, const TPoly& b) {
    long db = tdeg(b);
    const Poly<Int>& c = b[static_cast<size_t>(db)];
    TPoly r(a.begin(), a.begin() + (tdeg(a) + 1));
    long da = tdeg(r);
    TPoly q(da >= db ? static_cast<size_t>(da - db) + 1 : 0);
    Poly<Int> scale(Int(1));
    while ((da = tdeg(r)) >= db) {
        Poly<Int> top = std::move(r[static_cast<size_t>(da)]);
        long sh = da - db;
        for (auto& x : q)
            if (!x.is_zero()) x = x * c;
        q[static_cast<size_t>(sh)] = q[static_cast<size_t>(sh)] + top;
        for (long j = 0; j < da; ++j)
            if (!r[static_cast<size_t>(j)].is_zero()) r[static_cast<size_t>(j)] = r[static_cast<size_t>(j)] * c;
        r[static_cast<size_t>(da)] = Poly<Int>();
        for (long j = 0; j < db; ++j) r[static_cast<size_t>(sh + j)] = r[static_cast<size_t>(sh + j)] - top * b[static_cast<size_t>(j)];
        scale = scale * c;
        r.resize(static_cast<size_t>(tdeg(r)) + 1);
    }
    return {std::move(q), std::move(r), std::move(scale)};
}

// Divide out the Z[u]-content. The content candidate is sampled from two
// coefficients and verified by exact division, folding in any coefficient
// the candidate fails to divide; the result is exact regardless of how
// lucky the sample was.
inline TPoly tpoly_strip_content(const TPoly& f) {
    long d = tdeg(f);
    Poly<Int> g = gcd_int(f[static_cast<size_t>(d)], f[0].is_zero() ? f[static_cast<size_t>(d)] : f[0]);
    for (;;) {
        if (g.degree() == 0) {
            Int ic = 0;
            for (const Poly<Int>& c : f) {
                if (c.is_zero()) continue;
                Int cc = content(c);
                mpz_gcd(ic.get_mpz_t(), ic.get_mpz_t(), cc.get_mpz_t());
                if (ic == 1) break;
            }
            if (ic == 1 || ic == 0) return f;
            TPoly out(f.size());
            for (size_t i = 0; i < f.size(); ++i)
                out[i] = f[i].is_zero() ? f[i] : div_scalar_exact(f[i], ic);
            return out;
        }
        TPoly out(f.size());
        bool ok = true;
        for (size_t i = 0; i < f.size(); ++i) {
            if (f[i].is_zero()) {
                out[i] = f[i];
                continue;
            }
            try {
                out[i] = div_exact(f[i], g);
            } catch (const undefined_input&) {
                g = gcd_int(g, f[i]);
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        Int ic = 0;
        for (const Poly<Int>& c : out) {
            if (c.is_zero()) continue;
            Int cc = content(c);
            mpz_gcd(ic.get_mpz_t(), ic.get_mpz_t(), cc.get_mpz_t());
            if (ic == 1) break;
        }
        if (ic != 1 && ic != 0)
            for (Poly<Int>& c : out)
                if (!c.is_zero()) c = div_scalar_exact(c, ic);
        return out;
    }
}

}  // namespace detail

// Q(u) expansion via a fraction-free chain over Z[u][t]. The reduced
// coefficient arithmetic of the generic path is quadratic in the term index;
// here the remainder chain stays integral, each step needs two rational
// reductions, and the products run through the packed integer fast path.
// Semantics are identical to the generic template (which remains callable as
// cf_expand<RatFunc> for cross-checks).
inline ContinuedFraction<RatFunc> cf_expand(const LaurentSeries<RatFunc>& alpha, long max_terms) {
    const long N = alpha.trunc();
    ContinuedFraction<RatFunc> cf;

    // polynomial part
    std::vector<RatFunc> b0c;
    for (long k = alpha.kmin(); k <= 0; ++k) {
        long j = -k;
        if (static_cast<long>(b0c.size()) <= j) b0c.resize(static_cast<size_t>(j) + 1);
        b0c[static_cast<size_t>(j)] = alpha.coeff(k);
    }
    cf.b0 = Poly<RatFunc>(std::move(b0c));

    // fractional part: clear denominators into Z[u][t]
    long k0 = 0;
    for (long k = std::max(alpha.kmin(), 1L); k <= N; ++k)
        if (!alpha.coeff(k).is_zero()) {
            k0 = k;
            break;
        }
    if (k0 == 0) {
        cf.terminating = true;
        return cf;
    }
    Poly<Int> den(Int(1));
    for (long k = k0; k <= N; ++k) {
        RatFunc x = alpha.coeff(k);
        den = den * div_exact(x.den(), gcd_int(den, x.den()));
    }
    detail::TPoly f_cur(static_cast<size_t>(N - k0) + 1);
    for (long k = k0; k <= N; ++k) {
        RatFunc x = alpha.coeff(k);
        if (!x.is_zero()) f_cur[static_cast<size_t>(N - k)] = x.num() * div_exact(den, x.den());
    }
    f_cur = detail::tpoly_strip_content(f_cur);
    detail::TPoly f_prev(static_cast<size_t>(N) + 1);
    f_prev[static_cast<size_t>(N)] = Poly<Int>(Int(1));

    std::vector<long> s{0};
    RatFunc beta = alpha.coeff(k0);
    std::vector<CFTerm<RatFunc>> raw;
    bool terminated = false;

    while (static_cast<long>(raw.size()) < max_terms + 1 && s.back() <= N) {
        long dprev = detail::tdeg(f_prev), dcur = detail::tdeg(f_cur);
        detail::TPseudoDiv pd = detail::tpoly_pseudo_div(f_prev, f_cur);
        Poly<Int> qden = pd.scale * f_prev[static_cast<size_t>(dprev)];
        const Poly<Int>& lc_cur = f_cur[static_cast<size_t>(dcur)];

        CFTerm<RatFunc> term;
        term.beta = beta;
        std::vector<RatFunc> qc(pd.quo.size());
        for (size_t i = 0; i < pd.quo.size(); ++i)
            if (!pd.quo[i].is_zero()) qc[i] = RatFunc(pd.quo[i] * lc_cur, qden);
        term.bstar = Poly<RatFunc>(std::move(qc));
        if (term.bstar.degree() == 1) term.alpha_lin = term.bstar.coeff(0);
        s.push_back(s.back() + term.bstar.degree());
        raw.push_back(std::move(term));

        if (detail::tdeg(pd.rem) < 0) {
            terminated = true;
            break;
        }
        beta = RatFunc(pd.rem[static_cast<size_t>(detail::tdeg(pd.rem))], qden);
        f_prev = std::move(f_cur);
        f_cur = detail::tpoly_strip_content(pd.rem);
    }

    long emitted = static_cast<long>(raw.size());
    if (terminated && 2 * s.back() <= N) {
        cf.terminating = true;
        cf.terms = std::move(raw);
        cf.certified_count = emitted;
        return cf;
    }
    long cert = 0;
    for (long k = 1; k + 1 <= emitted; ++k)
        if (s[static_cast<size_t>(k)] + s[static_cast<size_t>(k + 1)] <= N) cert = k;
    if (emitted == max_terms + 1 && cert == max_terms) cf.hit_max_terms = true;
    raw.resize(static_cast<size_t>(cert));
    cf.terms = std::move(raw);
    cf.certified_count = cert;
    return cf;
}

// Exact convergent p_k / q_k via the three-term recurrence
// q_{k} = b*_k q_{k-1} + beta_k q_{k-2}, seeded by p_0 = b0, q_0 = 1.
template <class K>
Convergent<K> convergents(const ContinuedFraction<K>& cf, long k) {
    if (k < 0 || k > static_cast<long>(cf.terms.size()))
        throw undefined_input("convergents: index beyond certified prefix");
    K one;
    if (!cf.b0.is_zero())
        one = dom::one_like(cf.b0.lead());
    else if (!cf.terms.empty())
        one = dom::one_like(cf.terms.front().beta);
    else
        throw undefined_input("convergents: empty continued fraction");

    Poly<K> pm1(one), qm1;                 // p_{-1} = 1, q_{-1} = 0
    Poly<K> p0 = cf.b0, q0 = Poly<K>(one); // p_0 = b0, q_0 = 1
    for (long i = 1; i <= k; ++i) {
        const auto& t = cf.term(i);
        Poly<K> p = t.bstar * p0 + pm1.scaled(t.beta);
        Poly<K> q = t.bstar * q0 + qm1.scaled(t.beta);
        pm1 = std::move(p0);
        qm1 = std::move(q0);
        p0 = std::move(p);
        q0 = std::move(q);
    }
    Convergent<K> c;
    c.p = p0;
    c.q = q0;
    c.s = q0.degree();
    c.coprime = gcd(p0, q0).degree() == 0;
    return c;
}

struct LegendreResult {
    bool holds;
    bool terminating;  // difference vanished on the whole known window
};

// Exact valuation test nu(alpha - p/q) = -deg q - next_degree. Throws
// precision_error when the window cannot resolve the first tail term.
template <class K>
LegendreResult legendre_verify(const LaurentSeries<K>& alpha, const Convergent<K>& c,
                               long next_degree) {
    auto prod = alpha.multiplied(c.q);  // q * alpha
    // subtract p: indices k = -deg p .. 0
    long lo = std::min(prod.kmin(), -std::max(c.p.degree(), 0L));
    std::vector<K> diff;
    K zero = dom::zero_like(alpha.coeff(alpha.kmin()));
    for (long k = lo; k <= prod.trunc(); ++k) {
        K v = prod.known(k) ? prod.coeff(k) : zero;
        if (k <= 0 && -k <= c.p.degree()) v = v - c.p.coeff(-k);
        diff.push_back(std::move(v));
    }
    LaurentSeries<K> r(lo, std::move(diff));
    auto fnz = r.first_nonzero();
    if (!fnz) {
        // agreement on the whole window; a terminating convergent if the
        // window is long enough to certify rationality
        if (alpha.trunc() >= 2 * c.s) return LegendreResult{true, true};
        throw precision_error("legendre_verify: window exhausted");
    }
    // nu(alpha - p/q) = -k0 - deg q must equal -s - next_degree, i.e. k0 = next_degree
    return LegendreResult{*fnz == next_degree, false};
}

// ---- Recurrence engines ----

template <class K>
struct RecurrenceTerm {
    K alpha;
    K beta;
};

template <class K>
struct RecurrenceResult {
    std::vector<RecurrenceTerm<K>> terms;  // terms[i-1] = (alpha_i, beta_i)
    bool aborted = false;
    long abort_index = 0;  // first index whose beta vanished
};

// alpha_{2k+1} = -u, alpha_{2k+2} = u; beta_1 = 1, beta_2 = u^2 - u,
// beta_{2k+3} = -beta_{k+2}/beta_{2k+2}, beta_{2k+4} = alpha_{k+2} + u^2 - beta_{2k+3}.
template <class K>
RecurrenceResult<K> beta_recurrence(const K& u, long M) {
    static_assert(dom::is_field_v<K>);
    if (M < 2) throw undefined_input("beta_recurrence: M must be >= 2");
    if (dom::is_zero(u)) throw undefined_input("beta_recurrence: u = 0");
    RecurrenceResult<K> out;
    K one = dom::one_like(u);
    K usq = u * u;
    auto alpha_of = [&](long i) { return (i % 2 == 1) ? -u : u; };
    auto beta_of = [&](long i) { return out.terms[static_cast<size_t>(i - 1)].beta; };

    auto push = [&](long i, K beta) {
        if (dom::is_zero(beta)) {
            out.aborted = true;
            out.abort_index = i;
            return false;
        }
        out.terms.push_back(RecurrenceTerm<K>{alpha_of(i), std::move(beta)});
        return true;
    };

    if (!push(1, one)) return out;
    if (M >= 2 && !push(2, usq - u)) return out;
    for (long i = 3; i <= M; ++i) {
        if (i % 2 == 1) {
            long k = (i - 3) / 2;
            K b = -(beta_of(k + 2) / beta_of(2 * k + 2));
            if (!push(i, std::move(b))) return out;
        } else {
            long k = (i - 4) / 2;
            K b = alpha_of(k + 2) + usq - beta_of(2 * k + 3);
            if (!push(i, std::move(b))) return out;
        }
    }
    return out;
}

// Shifted-family recurrence: from the continued fraction of t^n g_u, produce
// (alpha_{2n,i}, beta_{2n,i}) for t^{2n} g_u. beta_{2n,1} = u^{tau2(2n)},
// beta_{2n,2} = u^2 - u^{tau2(n+1)-tau2(n)}; the tail recurses exactly like
// beta_recurrence but consumes beta_{n,k+2}, alpha_{n,k+2} from the input.
// A vanishing beta aborts and reports the index of the nonlinear quotient.
template <class K>
RecurrenceResult<K> shifted_recurrence(long n, const ContinuedFraction<K>& cf_shift_n,
                                       const K& u, long M) {
    static_assert(dom::is_field_v<K>);
    if (n < 0) throw undefined_input("shifted_recurrence: n must be >= 0");
    if (dom::is_zero(u)) throw undefined_input("shifted_recurrence: u = 0");
    RecurrenceResult<K> out;
    K usq = u * u;
    auto alpha_of = [&](long i) { return (i % 2 == 1) ? -u : u; };
    auto beta_of = [&](long i) { return out.terms[static_cast<size_t>(i - 1)].beta; };
    auto input_beta = [&](long i) -> const K& { return cf_shift_n.term(i).beta; };
    auto input_alpha = [&](long i) -> const K& {
        const auto& t = cf_shift_n.term(i);
        if (!t.alpha_lin)
            throw undefined_input("shifted_recurrence: nonlinear quotient in input CF");
        return *t.alpha_lin;
    };

    auto push = [&](long i, K beta) {
        if (dom::is_zero(beta)) {
            out.aborted = true;
            out.abort_index = i;
            return false;
        }
        out.terms.push_back(RecurrenceTerm<K>{alpha_of(i), std::move(beta)});
        return true;
    };

    long e1 = tau2(Int(2 * n));
    if (!push(1, dom::pow_long(u, e1))) return out;
    if (M >= 2) {
        long e2 = tau2(Int(n + 1)) - tau2(Int(n));  // may be negative: field inversion
        if (!push(2, usq - dom::pow_long(u, e2))) return out;
    }
    for (long i = 3; i <= M; ++i) {
        if (i % 2 == 1) {
            long k = (i - 3) / 2;
            if (k + 2 > static_cast<long>(cf_shift_n.terms.size()))
                throw precision_error("shifted_recurrence: input CF too short");
            K b = -(input_beta(k + 2) / beta_of(2 * k + 2));
            if (!push(i, std::move(b))) return out;
        } else {
            long k = (i - 4) / 2;
            if (k + 2 > static_cast<long>(cf_shift_n.terms.size()))
                throw precision_error("shifted_recurrence: input CF too short");
            K b = input_alpha(k + 2) + usq - beta_of(2 * k + 3);
            if (!push(i, std::move(b))) return out;
        }
    }
    return out;
}

// Convergent lifting: p/q of t^n g_u maps to ((t+u) p(t^2)) / q(t^2),
// the 2k-th convergent of t^{2n} g_u when the result is reduced.
template <class K>
Convergent<K> lift_convergent(const Convergent<K>& c, const K& u) {
    Convergent<K> out;
    Poly<K> tpu(std::vector<K>{u, dom::one_like(u)});
    out.p = tpu * c.p.compose_power(2);
    out.q = c.q.compose_power(2);
    out.s = out.q.degree();
    out.coprime = gcd(out.p, out.q).degree() == 0;
    return out;
}

// Recovery of (alpha_m, beta_m), m >= 3, from the Hankel determinant rows
// det1[l] = det H(1,l) and det2[l] = det H(2,l), all-linear case:
//   beta_m  = -det1[m-3] det1[m-1] / det1[m-2]^2
//   alpha_m = (-1/det2[m-2]) (det1[m-2] det2[m-1] / det1[m-1]
//                             + det1[m-1] det2[m-3] / det1[m-2])
template <class K>
RecurrenceTerm<K> coeffs_from_hankel(const std::vector<K>& det1, const std::vector<K>& det2,
                                     long m) {
    static_assert(dom::is_field_v<K>);
    if (m < 3) throw undefined_input("coeffs_from_hankel: m must be >= 3");
    auto d1 = [&](long l) -> const K& { return det1.at(static_cast<size_t>(l)); };
    auto d2 = [&](long l) -> const K& { return det2.at(static_cast<size_t>(l)); };
    if (dom::is_zero(d1(m - 2)) || dom::is_zero(d1(m - 1)) || dom::is_zero(d2(m - 2)))
        throw undefined_input("coeffs_from_hankel: vanishing denominator determinant");
    RecurrenceTerm<K> out;
    out.beta = -(d1(m - 3) * d1(m - 1)) / (d1(m - 2) * d1(m - 2));
    K t1 = d1(m - 2) * d2(m - 1) / d1(m - 1);
    K t2 = d1(m - 1) * d2(m - 3) / d1(m - 2);
    out.alpha = -(t1 + t2) / d2(m - 2);
    return out;
}

}  // namespace tmtlc
